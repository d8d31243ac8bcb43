#include "compactor/algebra.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "compactor/errors.hpp"

namespace compactor {

BagGraph bag_graph(const Graph& g, const vset& bag) {
    BagGraph bg;
    bg.n = static_cast<int>(bag.size());
    bg.adj.assign(bag.size(), 0);
    for (size_t i = 0; i < bag.size(); ++i)
        for (size_t j = 0; j < bag.size(); ++j)
            if (i != j && g.has_edge(bag[i], bag[j])) bg.adj[i] |= 1u << j;
    return bg;
}

namespace {

uint32_t shift_up(uint32_t mask, int p) {
    uint32_t low = mask & ((1u << p) - 1);
    return low | ((mask & ~((1u << p) - 1)) << 1);
}

uint32_t drop_bit(uint32_t mask, int p) {
    uint32_t low = mask & ((1u << p) - 1);
    return low | ((mask >> (p + 1)) << p);
}

bool bag_edges_covered(const BagGraph& bag, uint32_t ann) {
    for (int i = 0; i < bag.n; ++i) {
        if ((ann >> i) & 1u) continue;
        if (bag.adj[i] & ~ann) return false;  // an edge with both endpoints unannotated
    }
    return true;
}

bool bag_conflict(const BagGraph& bag, uint32_t ann) {
    for (int i = 0; i < bag.n; ++i)
        if (((ann >> i) & 1u) && (bag.adj[i] & ann)) return true;
    return false;
}

uint32_t bag_dominated(const BagGraph& bag, uint32_t ann) {
    uint32_t dom = ann;
    for (int i = 0; i < bag.n; ++i)
        if (bag.adj[i] & ann) dom |= 1u << i;
    return dom;
}

class VcAlgebra final : public ProblemAlgebra {
public:
    std::string name() const override { return "vc"; }

    bool predicate(const Graph& g, const vset& a) const override {
        for (auto [u, v] : g.edges())
            if (!vs::contains(a, u) && !vs::contains(a, v)) return false;
        return true;
    }

    AlgebraState leaf_state(const BagGraph& bag, uint32_t ann) const override {
        return {ann, bag_edges_covered(bag, ann) ? 1u : 0u};
    }

    AlgebraState introduce(const AlgebraState& s, const BagGraph& bag_after, int p,
                           bool annotated) const override {
        uint32_t ann = shift_up(s.ann, p) | (annotated ? 1u << p : 0u);
        bool covered = s.payload != 0;
        if (covered && !((ann >> p) & 1u) && (bag_after.adj[p] & ~ann)) covered = false;
        return {ann, covered ? 1u : 0u};
    }

    AlgebraState forget(const AlgebraState& s, int p, const BagGraph&) const override {
        return {drop_bit(s.ann, p), s.payload};
    }

    std::optional<AlgebraState> join(const AlgebraState& s1, const AlgebraState& s2,
                                     const BagGraph& bag) const override {
        if (s1.ann != s2.ann) return std::nullopt;
        bool covered = s1.payload && s2.payload && bag_edges_covered(bag, s1.ann);
        return AlgebraState{s1.ann, covered ? 1u : 0u};
    }

    bool combine(const Graph& center, const vset& a0, const std::vector<vset>& boundaries,
                 const std::vector<AlgebraState>& states) const override {
        for (size_t i = 0; i < states.size(); ++i) {
            assert(states[i].ann == boundary_index_mask(boundaries[i], a0));
            (void)boundaries;
            if (states[i].payload == 0) return false;
        }
        return predicate(center, a0);
    }

    std::string encode_payload(const AlgebraState& s) const override {
        return s.payload ? "c1" : "c0";
    }

    std::optional<uint64_t> decode_payload(const std::string& text) const override {
        if (text == "c1") return 1;
        if (text == "c0") return 0;
        return std::nullopt;
    }
};

class IsAlgebra final : public ProblemAlgebra {
public:
    std::string name() const override { return "is"; }

    bool predicate(const Graph& g, const vset& a) const override {
        for (auto [u, v] : g.edges())
            if (vs::contains(a, u) && vs::contains(a, v)) return false;
        return true;
    }

    AlgebraState leaf_state(const BagGraph& bag, uint32_t ann) const override {
        return {ann, bag_conflict(bag, ann) ? 0u : 1u};
    }

    AlgebraState introduce(const AlgebraState& s, const BagGraph& bag_after, int p,
                           bool annotated) const override {
        uint32_t ann = shift_up(s.ann, p) | (annotated ? 1u << p : 0u);
        bool ok = s.payload != 0;
        if (ok && annotated && (bag_after.adj[p] & ann)) ok = false;
        return {ann, ok ? 1u : 0u};
    }

    AlgebraState forget(const AlgebraState& s, int p, const BagGraph&) const override {
        return {drop_bit(s.ann, p), s.payload};
    }

    std::optional<AlgebraState> join(const AlgebraState& s1, const AlgebraState& s2,
                                     const BagGraph& bag) const override {
        if (s1.ann != s2.ann) return std::nullopt;
        bool ok = s1.payload && s2.payload && !bag_conflict(bag, s1.ann);
        return AlgebraState{s1.ann, ok ? 1u : 0u};
    }

    bool combine(const Graph& center, const vset& a0, const std::vector<vset>& boundaries,
                 const std::vector<AlgebraState>& states) const override {
        for (size_t i = 0; i < states.size(); ++i) {
            assert(states[i].ann == boundary_index_mask(boundaries[i], a0));
            (void)boundaries;
            if (states[i].payload == 0) return false;
        }
        return predicate(center, a0);
    }

    std::string encode_payload(const AlgebraState& s) const override {
        return s.payload ? "f1" : "f0";
    }

    std::optional<uint64_t> decode_payload(const std::string& text) const override {
        if (text == "f1") return 1;
        if (text == "f0") return 0;
        return std::nullopt;
    }
};

// payload layout: bit 0 = interior all dominated, bits 1.. = undominated bag positions
class DsAlgebra final : public ProblemAlgebra {
    static uint64_t pack(uint32_t undom, bool interior_ok) {
        return (static_cast<uint64_t>(undom) << 1) | (interior_ok ? 1u : 0u);
    }
    static uint32_t undom_of(const AlgebraState& s) { return static_cast<uint32_t>(s.payload >> 1); }
    static bool interior_of(const AlgebraState& s) { return s.payload & 1u; }

public:
    std::string name() const override { return "ds"; }

    bool predicate(const Graph& g, const vset& a) const override {
        return closed_neighborhood(g, a) == g.vertices();
    }

    AlgebraState leaf_state(const BagGraph& bag, uint32_t ann) const override {
        uint32_t undom = ((1u << bag.n) - 1) & ~bag_dominated(bag, ann);
        return {ann, pack(undom, true)};
    }

    AlgebraState introduce(const AlgebraState& s, const BagGraph& bag_after, int p,
                           bool annotated) const override {
        uint32_t ann = shift_up(s.ann, p) | (annotated ? 1u << p : 0u);
        uint32_t undom = shift_up(undom_of(s), p);
        if (annotated) undom &= ~bag_after.adj[p];
        bool p_dominated = annotated || (bag_after.adj[p] & ann);
        if (!p_dominated) undom |= 1u << p;
        return {ann, pack(undom, interior_of(s))};
    }

    AlgebraState forget(const AlgebraState& s, int p, const BagGraph&) const override {
        bool interior_ok = interior_of(s) && !((undom_of(s) >> p) & 1u);
        return {drop_bit(s.ann, p), pack(drop_bit(undom_of(s), p), interior_ok)};
    }

    std::optional<AlgebraState> join(const AlgebraState& s1, const AlgebraState& s2,
                                     const BagGraph& bag) const override {
        if (s1.ann != s2.ann) return std::nullopt;
        uint32_t undom = undom_of(s1) & undom_of(s2) & ~bag_dominated(bag, s1.ann);
        return AlgebraState{s1.ann, pack(undom, interior_of(s1) && interior_of(s2))};
    }

    bool combine(const Graph& center, const vset& a0, const std::vector<vset>& boundaries,
                 const std::vector<AlgebraState>& states) const override {
        for (size_t i = 0; i < states.size(); ++i) {
            assert(states[i].ann == boundary_index_mask(boundaries[i], a0));
            if (!interior_of(states[i])) return false;
        }
        vset dominated = closed_neighborhood(center, a0);
        for (size_t i = 0; i < states.size(); ++i) {
            uint32_t undom = undom_of(states[i]);
            for (size_t j = 0; j < boundaries[i].size(); ++j)
                if (!((undom >> j) & 1u)) dominated = vs::unite(dominated, {boundaries[i][j]});
        }
        return dominated == center.vertices();
    }

    std::string encode_payload(const AlgebraState& s) const override {
        std::string out = "u";
        uint32_t undom = undom_of(s);
        bool first = true;
        for (int i = 0; i < 32; ++i)
            if ((undom >> i) & 1u) {
                if (!first) out += ',';
                out += std::to_string(i + 1);
                first = false;
            }
        if (first) out += '-';
        out += ";i";
        out += interior_of(s) ? '1' : '0';
        return out;
    }

    std::optional<uint64_t> decode_payload(const std::string& text) const override {
        if (text.size() < 4 || text[0] != 'u') return std::nullopt;
        auto sep = text.find(";i");
        if (sep == std::string::npos || sep + 3 != text.size()) return std::nullopt;
        char flag = text[sep + 2];
        if (flag != '0' && flag != '1') return std::nullopt;
        uint32_t undom = 0;
        std::string list = text.substr(1, sep - 1);
        if (list != "-") {
            std::istringstream ls(list);
            std::string tok;
            while (std::getline(ls, tok, ',')) {
                if (tok.empty()) return std::nullopt;
                for (char c : tok)
                    if (c < '0' || c > '9') return std::nullopt;
                int idx = std::stoi(tok);
                if (idx < 1 || idx > 32) return std::nullopt;
                undom |= 1u << (idx - 1);
            }
        }
        return pack(undom, flag == '1');
    }
};

}  // namespace

const ProblemAlgebra& vc_algebra() {
    static const VcAlgebra inst;
    return inst;
}

const ProblemAlgebra& is_algebra() {
    static const IsAlgebra inst;
    return inst;
}

const ProblemAlgebra& ds_algebra() {
    static const DsAlgebra inst;
    return inst;
}

const ProblemAlgebra* algebra_by_name(const std::string& name) {
    if (name == "vc") return &vc_algebra();
    if (name == "is") return &is_algebra();
    if (name == "ds") return &ds_algebra();
    return nullptr;
}

namespace {

int position_in(const vset& bag, vertex_t v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) throw internal_error("vertex not in bag");
    return static_cast<int>(it - bag.begin());
}

}  // namespace

AlgebraState state_of(const ProblemAlgebra& alg, const BStructure& x,
                      const NiceTreeDecomposition& nd) {
    if (nd.root < 0 || nd.nodes[nd.root].bag != x.boundary)
        throw domain_error("state_of: decomposition not rooted at the boundary");
    std::vector<AlgebraState> st(nd.nodes.size());
    // children precede parents in a post-order walk
    std::vector<int> order;
    order.reserve(nd.nodes.size());
    std::vector<int> stack{nd.root};
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        order.push_back(u);
        for (int c : nd.nodes[u].children) stack.push_back(c);
    }
    std::reverse(order.begin(), order.end());
    for (int u : order) {
        const auto& node = nd.nodes[u];
        BagGraph bg = bag_graph(x.graph, node.bag);
        switch (node.kind) {
            case NodeKind::Leaf:
                st[u] = alg.leaf_state(bg, boundary_index_mask(node.bag, x.annotated));
                break;
            case NodeKind::Introduce:
                st[u] = alg.introduce(st[node.children[0]], bg, position_in(node.bag, node.special),
                                      vs::contains(x.annotated, node.special));
                break;
            case NodeKind::Forget:
                st[u] = alg.forget(st[node.children[0]],
                                   position_in(nd.nodes[node.children[0]].bag, node.special), bg);
                break;
            case NodeKind::Join: {
                auto j = alg.join(st[node.children[0]], st[node.children[1]], bg);
                if (!j) throw internal_error("state_of: join traces disagree");
                st[u] = *j;
                break;
            }
        }
    }
    return st[nd.root];
}

AlgebraState state_of(const ProblemAlgebra& alg, const BStructure& x, const TreeDecomposition& d) {
    return state_of(alg, x, make_nice(d, x.graph, x.boundary));
}

}  // namespace compactor

#include "compactor/protrusion.hpp"

#include <algorithm>
#include <map>

#include "compactor/errors.hpp"

namespace compactor {

namespace {

bool is_modulator(const Graph& g, const vset& x, int t) {
    return std::holds_alternative<TreeDecomposition>(decompose_bounded(g.minus(x), t));
}

TreeDecomposition component_decomposition(const Graph& comp, int t) {
    auto r = decompose_bounded(comp, t);
    if (std::holds_alternative<TreeDecomposition>(r)) return std::get<TreeDecomposition>(r);
    // heuristic miss on a large component: fall back to any valid decomposition,
    // the extra bag width only loosens the measured constants
    return decompose_any(comp);
}

}  // namespace

Y0Result build_y0(const Graph& g, const vset& x, int r, int t) {
    if (r < 1) throw domain_error("build_y0: r must be positive");
    if (!vs::is_subset(x, g.vertices())) throw domain_error("build_y0: x not within vertices");
    if (!is_modulator(g, x, t)) throw domain_error("build_y0: x is not a t-treewidth modulator");

    Y0Result result;
    result.y0 = x;
    for (const vset& comp_verts : connected_components(g.minus(x))) {
        Graph comp = g.induced(comp_verts);
        TreeDecomposition dec = component_decomposition(comp, t);

        size_t nn = dec.bags.size();
        std::vector<std::vector<int>> nadj(nn);
        for (auto [a, b] : dec.edges) {
            nadj[a].push_back(b);
            nadj[b].push_back(a);
        }
        // root at the bag holding the minimum vertex
        int root = 0;
        for (size_t i = 0; i < nn; ++i)
            if (vs::contains(dec.bags[i], comp_verts.front())) {
                root = static_cast<int>(i);
                break;
            }
        std::vector<int> parent(nn, -1), depth(nn, 0), order;
        std::vector<bool> alive(nn, true);
        {
            std::vector<int> stack{root};
            std::vector<bool> seen(nn, false);
            seen[root] = true;
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                order.push_back(u);
                for (int w : nadj[u])
                    if (!seen[w]) {
                        seen[w] = true;
                        parent[w] = u;
                        depth[w] = depth[u] + 1;
                        stack.push_back(w);
                    }
            }
        }

        for (;;) {
            // subtree vertex unions over the still-alive nodes
            std::vector<vset> sub(nn);
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                int u = *it;
                if (!alive[u]) continue;
                sub[u] = dec.bags[u];
                for (int w : nadj[u])
                    if (alive[w] && parent[w] == u) sub[u] = vs::unite(sub[u], sub[w]);
            }
            int cut = -1;
            for (int u : order) {
                if (!alive[u]) continue;
                if (static_cast<int>(vs::intersect(neighborhood(g, sub[u]), x).size()) < r) continue;
                if (cut == -1 || depth[u] > depth[cut] || (depth[u] == depth[cut] && u < cut))
                    cut = u;
            }
            if (cut == -1) break;
            result.y0 = vs::unite(result.y0, dec.bags[cut]);
            ++result.cuts;
            if (sub[cut].size() > dec.bags[cut].size()) ++result.witnesses;
            // drop the whole subtree; vertices below the cut bag disappear with it
            std::vector<int> stack{cut};
            while (!stack.empty()) {
                int u = stack.back();
                stack.pop_back();
                alive[u] = false;
                for (int w : nadj[u])
                    if (alive[w] && parent[w] == u) stack.push_back(w);
            }
        }
    }
    return result;
}

std::vector<vset> clusters(const Graph& g, const vset& y0) {
    std::map<vset, vset> by_neighborhood;  // neighborhood in y0 -> union of components
    for (const vset& comp : connected_components(g.minus(y0))) {
        vset nb = vs::intersect(neighborhood(g, comp), y0);
        auto& acc = by_neighborhood[nb];
        acc = vs::unite(acc, comp);
    }
    std::vector<vset> out;
    out.reserve(by_neighborhood.size());
    for (auto& [nb, verts] : by_neighborhood) out.push_back(verts);
    std::sort(out.begin(), out.end(),
              [](const vset& a, const vset& b) { return a.front() < b.front(); });
    return out;
}

ProtrusionDecomposition protrusion_decomposition(const Graph& g, const vset& x, int t, int r) {
    if (!is_modulator(g, x, t)) throw domain_error("protrusion_decomposition: x is not a t-modulator");
    Y0Result y0r = build_y0(g, x, r, t);

    ProtrusionDecomposition pd;
    pd.center = y0r.y0;
    pd.gamma = t;
    for (const vset& yi : clusters(g, y0r.y0)) {
        vset bi = vs::intersect(neighborhood(g, yi), y0r.y0);
        BGraph prot{g.induced(closed_neighborhood(g, yi)), bi};

        auto inner_r = decompose_bounded(g.induced(yi), t);
        if (std::holds_alternative<NotBounded>(inner_r))
            throw pipeline_error("protrusion interior decomposition exceeded the width bound");
        TreeDecomposition inner = std::get<TreeDecomposition>(inner_r);
        TreeDecomposition rooted;
        rooted.bags.reserve(inner.bags.size() + 1);
        for (const auto& bag : inner.bags) rooted.bags.push_back(vs::unite(bag, bi));
        rooted.edges = inner.edges;
        int root = static_cast<int>(rooted.bags.size());
        rooted.bags.push_back(bi);
        rooted.edges.emplace_back(root, 0);
        rooted.root = root;

        pd.beta = std::max(pd.beta, width(rooted));
        pd.protrusions.push_back(std::move(prot));
        pd.decompositions.push_back(std::move(rooted));
    }
    pd.alpha = std::max<int>(static_cast<int>(pd.protrusions.size()),
                             static_cast<int>(pd.center.size()));
    return pd;
}

PdReport validate_protrusion_decomposition(const Graph& g, const ProtrusionDecomposition& pd) {
    PdReport rep;
    size_t s = pd.protrusions.size();
    if (pd.decompositions.size() != s) {
        rep.detail = "decomposition count mismatch";
        return rep;
    }

    rep.cond[0] = static_cast<int>(s) <= pd.alpha;

    rep.rooted_ok = true;
    rep.cond[1] = true;
    for (size_t i = 0; i < s; ++i) {
        const auto& dec = pd.decompositions[i];
        const auto& prot = pd.protrusions[i];
        bool rooted = dec.root.has_value() && validate(dec, prot.graph) &&
                      dec.bags[*dec.root] == prot.boundary;
        rep.rooted_ok = rep.rooted_ok && rooted;
        if (!dec.bags.empty()) rep.max_rooted_width = std::max(rep.max_rooted_width, width(dec));
        rep.cond[1] = rep.cond[1] && rooted && width(dec) <= pd.beta;
        rep.max_boundary = std::max(rep.max_boundary, static_cast<int>(prot.boundary.size()));
    }

    rep.cond[2] = true;  // each G_i a subgraph of g
    for (const auto& prot : pd.protrusions) {
        if (!vs::is_subset(prot.graph.vertices(), g.vertices())) {
            rep.cond[2] = false;
            break;
        }
        for (auto [u, v] : prot.graph.edges())
            if (!g.has_edge(u, v)) {
                rep.cond[2] = false;
                break;
            }
    }

    rep.cond[3] = true;  // interiors pairwise disjoint
    std::vector<vset> interiors;
    for (const auto& prot : pd.protrusions)
        interiors.push_back(vs::subtract(prot.graph.vertices(), prot.boundary));
    vset interior_union;
    for (const auto& xi : interiors) {
        if (!vs::intersect(interior_union, xi).empty()) rep.cond[3] = false;
        interior_union = vs::unite(interior_union, xi);
    }

    bool center_consistent = pd.center == vs::subtract(g.vertices(), interior_union);
    rep.cond[4] = static_cast<int>(pd.center.size()) <= pd.alpha && center_consistent;

    rep.cond[5] = true;  // interior treewidth <= gamma, via the stripped decompositions
    for (size_t i = 0; i < s; ++i) {
        TreeDecomposition stripped;
        for (const auto& bag : pd.decompositions[i].bags)
            stripped.bags.push_back(vs::subtract(bag, pd.protrusions[i].boundary));
        stripped.edges = pd.decompositions[i].edges;
        Graph interior_graph = g.induced(interiors[i]);
        if (!validate(stripped, interior_graph) || width(stripped) > pd.gamma) {
            rep.cond[5] = false;
            break;
        }
    }

    // boundaries inside the center, and every edge represented
    bool boundaries_ok = true;
    for (const auto& prot : pd.protrusions)
        boundaries_ok = boundaries_ok && vs::is_subset(prot.boundary, pd.center);
    rep.edge_cover_ok = true;
    for (auto [u, v] : g.edges()) {
        bool in_center = vs::contains(pd.center, u) && vs::contains(pd.center, v);
        bool in_prot = false;
        for (const auto& prot : pd.protrusions)
            if (prot.graph.has_vertex(u) && prot.graph.has_edge(u, v)) {
                in_prot = true;
                break;
            }
        if (!in_center && !in_prot) {
            rep.edge_cover_ok = false;
            break;
        }
    }

    rep.ok = rep.cond[0] && rep.cond[1] && rep.cond[2] && rep.cond[3] && rep.cond[4] &&
             rep.cond[5] && rep.rooted_ok && boundaries_ok && rep.edge_cover_ok;
    if (!rep.ok && rep.detail.empty()) {
        rep.detail = "failed:";
        for (int i = 0; i < 6; ++i)
            if (!rep.cond[i]) rep.detail += " cond" + std::to_string(i + 1);
        if (!rep.rooted_ok) rep.detail += " rootedness";
        if (!boundaries_ok) rep.detail += " boundary-in-center";
        if (!rep.edge_cover_ok) rep.detail += " edge-cover";
    }
    return rep;
}

std::variant<ProtrusionDecomposition, NullReport> full_pipeline_decomposition(
    const Graph& g, int k, const ProblemAlgebra& alg, const PipelineOptions& opt,
    PipelineStats* stats) {
    vset modulator;
    bool fallback = false;
    int iters = 0, repls = 0;

    if (opt.external_modulator) {
        modulator = *opt.external_modulator;
        if (!vs::is_subset(modulator, g.vertices()))
            throw domain_error("external modulator not within vertices");
        if (!is_modulator(g, modulator, opt.t))
            throw domain_error("external modulator does not bound the treewidth");
    } else if (alg.name() == "vc") {
        // a vertex cover of size k' <= k is itself a t-treewidth modulator, so a
        // negative approximation verdict certifies the null instance
        ModulatorResult mr = approx_modulator(g, k, opt.t, opt.mod);
        iters = mr.iterations;
        repls = mr.replacements;
        if (mr.kind == ModulatorResult::Kind::NoSmallModulator) return NullReport{};
        modulator = std::move(mr.modulator);
    } else if (alg.name() == "ds") {
        throw domain_error("the ds algebra requires an externally supplied modulator");
    } else {
        // no treewidth-modulability promise: a declined approximation says
        // nothing about solutions, so condense around the whole vertex set
        ModulatorResult mr{};
        bool approx_ok = true;
        try {
            mr = approx_modulator(g, k, opt.t, opt.mod);
        } catch (const stalled_error&) {
            approx_ok = false;
        }
        iters = mr.iterations;
        repls = mr.replacements;
        if (approx_ok && mr.kind == ModulatorResult::Kind::Found) {
            modulator = std::move(mr.modulator);
        } else {
            modulator = g.vertices();
            fallback = true;
        }
    }

    ProtrusionDecomposition pd = protrusion_decomposition(g, modulator, opt.t, opt.r);
    if (stats) {
        stats->modulator = modulator;
        stats->modulator_iterations = iters;
        stats->modulator_replacements = repls;
        stats->modulator_fallback = fallback;
    }
    return pd;
}

}  // namespace compactor

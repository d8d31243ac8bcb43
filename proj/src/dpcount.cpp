#include "compactor/dpcount.hpp"

#include <algorithm>
#include <bit>

#include "compactor/errors.hpp"

namespace compactor {

const BigUInt& CountTable::at(const AlgebraState& s, int kprime) const {
    static const BigUInt zero;
    auto it = counts.find(s);
    if (it == counts.end() || kprime < 0 || kprime > k_max) return zero;
    return it->second[kprime];
}

BigUInt CountTable::total(int kprime) const {
    BigUInt sum;
    if (kprime < 0 || kprime > k_max) return sum;
    for (const auto& [s, vec] : counts) sum += vec[kprime];
    return sum;
}

namespace {

using StateCounts = std::map<AlgebraState, std::vector<BigUInt>>;

void bump(StateCounts& m, const AlgebraState& s, int kprime, const BigUInt& by, int k) {
    if (kprime > k || by.is_zero()) return;
    auto& vec = m[s];
    if (vec.empty()) vec.resize(k + 1);
    vec[kprime] += by;
}

int position_in(const vset& bag, vertex_t v) {
    auto it = std::lower_bound(bag.begin(), bag.end(), v);
    if (it == bag.end() || *it != v) throw internal_error("vertex not in bag");
    return static_cast<int>(it - bag.begin());
}

}  // namespace

CountTable count_table(const BGraph& bg, const NiceTreeDecomposition& nd,
                       const ProblemAlgebra& alg, int k) {
    if (k < 0) throw domain_error("count_table: negative k");
    if (nd.root < 0 || nd.nodes[nd.root].bag != bg.boundary)
        throw domain_error("count_table: decomposition not rooted at the boundary");
    if (!is_nice_form(nd)) throw domain_error("count_table: decomposition is not nice");
    if (!validate(nd.to_tree_decomposition(), bg.graph))
        throw domain_error("count_table: not a decomposition of the graph");

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

    std::vector<StateCounts> tab(nd.nodes.size());
    for (int u : order) {
        const auto& node = nd.nodes[u];
        BagGraph bgph = bag_graph(bg.graph, node.bag);
        StateCounts& out = tab[u];
        switch (node.kind) {
            case NodeKind::Leaf: {
                for (uint32_t ann = 0; ann < (1u << node.bag.size()); ++ann)
                    bump(out, alg.leaf_state(bgph, ann), std::popcount(ann), BigUInt(1), k);
                break;
            }
            case NodeKind::Introduce: {
                int p = position_in(node.bag, node.special);
                for (const auto& [s, vec] : tab[node.children[0]])
                    for (int annotated = 0; annotated <= 1; ++annotated) {
                        AlgebraState ns = alg.introduce(s, bgph, p, annotated != 0);
                        for (int kp = 0; kp <= k; ++kp)
                            if (!vec[kp].is_zero()) bump(out, ns, kp + annotated, vec[kp], k);
                    }
                break;
            }
            case NodeKind::Forget: {
                int p = position_in(nd.nodes[node.children[0]].bag, node.special);
                for (const auto& [s, vec] : tab[node.children[0]]) {
                    AlgebraState ns = alg.forget(s, p, bgph);
                    for (int kp = 0; kp <= k; ++kp)
                        if (!vec[kp].is_zero()) bump(out, ns, kp, vec[kp], k);
                }
                break;
            }
            case NodeKind::Join: {
                const StateCounts& left = tab[node.children[0]];
                const StateCounts& right = tab[node.children[1]];
                for (const auto& [s1, v1] : left)
                    for (const auto& [s2, v2] : right) {
                        auto js = alg.join(s1, s2, bgph);
                        if (!js) continue;
                        int r = std::popcount(s1.ann);
                        for (int k1 = 0; k1 <= k; ++k1) {
                            if (v1[k1].is_zero()) continue;
                            for (int k2 = 0; k2 <= k; ++k2) {
                                if (v2[k2].is_zero()) continue;
                                int kp = k1 + k2 - r;
                                if (kp >= 0 && kp <= k) bump(out, *js, kp, v1[k1] * v2[k2], k);
                            }
                        }
                    }
                break;
            }
        }
        for (int c : node.children) tab[c].clear();
    }

    CountTable result;
    result.boundary = bg.boundary;
    result.k_max = k;
    result.counts = std::move(tab[nd.root]);
    return result;
}

std::vector<BigUInt> table_polynomial(const CountTable& t, const AlgebraState& s,
                                      int shift, int degree_cap) {
    std::vector<BigUInt> coeff(degree_cap + 1);
    for (int j = 0; j <= degree_cap; ++j) coeff[j] = t.at(s, j + shift);
    return coeff;
}

}  // namespace compactor

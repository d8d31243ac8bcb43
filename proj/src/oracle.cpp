#include "compactor/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "compactor/errors.hpp"

namespace compactor {
namespace oracle {

namespace {

double binom_estimate(int n, int k) {
    double r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

bool forest(const Graph& g) {
    return g.m() == g.n() - static_cast<int>(connected_components(g).size());
}

}  // namespace

BigUInt brute_count(const Graph& g, int k, const ProblemAlgebra& alg) {
    if (k < 0) throw domain_error("brute_count: negative k");
    if (k > g.n()) return BigUInt();
    if (binom_estimate(g.n(), k) > 1e7)
        throw unsupported_error("brute_count: too many subsets");
    const vset& verts = g.vertices();
    int n = g.n();
    BigUInt total;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        vset a(k);
        for (int i = 0; i < k; ++i) a[i] = verts[idx[i]];
        if (alg.predicate(g, a)) total += BigUInt(1);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return total;
}

int treewidth_by_elimination(const Graph& g) {
    if (g.n() > 8) throw unsupported_error("treewidth_by_elimination limited to |V| <= 8");
    if (g.n() == 0) return -1;
    const vset& verts = g.vertices();
    int n = g.n();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    int best = n;  // width never exceeds n - 1
    do {
        std::vector<uint32_t> adj(n, 0);
        for (int i = 0; i < n; ++i)
            for (vertex_t w : g.neighbors(verts[i]))
                adj[i] |= 1u << (std::lower_bound(verts.begin(), verts.end(), w) - verts.begin());
        uint32_t gone = 0;
        int worst = 0;
        for (int v : perm) {
            uint32_t nb = adj[v] & ~gone;
            worst = std::max(worst, std::popcount(nb));
            uint32_t it = nb;
            while (it) {
                int a = std::countr_zero(it);
                it &= it - 1;
                adj[a] |= nb & ~(1u << a);
            }
            gone |= 1u << v;
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

int brute_min_modulator(const Graph& g, int t) {
    if (g.n() > 14) throw unsupported_error("brute_min_modulator limited to |V| <= 14");
    if (t < 0) throw domain_error("brute_min_modulator: negative t");
    const vset& verts = g.vertices();
    int n = g.n();
    auto ok = [&](const vset& a) {
        Graph rest = g.minus(a);
        if (t == 0) return rest.m() == 0;
        if (t == 1) return forest(rest);
        return treewidth_by_elimination(rest) <= t;  // guards |V - A| <= 8 itself
    };
    for (int size = 0; size <= n; ++size) {
        std::vector<int> idx(size);
        std::iota(idx.begin(), idx.end(), 0);
        for (;;) {
            vset a(size);
            for (int i = 0; i < size; ++i) a[i] = verts[idx[i]];
            if (ok(a)) return size;
            int i = size - 1;
            while (i >= 0 && idx[i] == n - size + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
        }
        if (size == 0 && n == 0) break;
    }
    throw internal_error("brute_min_modulator: removing everything must succeed");
}

AlgebraState definitional_state(const std::string& problem, const Graph& g,
                                const vset& boundary, const vset& annotated) {
    uint32_t ann = 0;
    for (size_t i = 0; i < boundary.size(); ++i)
        if (vs::contains(annotated, boundary[i])) ann |= 1u << i;

    if (problem == "vc") {
        bool covered = true;
        for (auto [u, v] : g.edges())
            if (!vs::contains(annotated, u) && !vs::contains(annotated, v)) {
                covered = false;
                break;
            }
        return {ann, covered ? 1u : 0u};
    }
    if (problem == "is") {
        bool ok = true;
        for (auto [u, v] : g.edges())
            if (vs::contains(annotated, u) && vs::contains(annotated, v)) {
                ok = false;
                break;
            }
        return {ann, ok ? 1u : 0u};
    }
    if (problem == "ds") {
        vset dominated = closed_neighborhood(g, annotated);
        uint32_t undom = 0;
        for (size_t i = 0; i < boundary.size(); ++i)
            if (!vs::contains(dominated, boundary[i])) undom |= 1u << i;
        bool interior_ok = true;
        for (vertex_t v : g.vertices())
            if (!vs::contains(boundary, v) && !vs::contains(dominated, v)) {
                interior_ok = false;
                break;
            }
        return {ann, (static_cast<uint64_t>(undom) << 1) | (interior_ok ? 1u : 0u)};
    }
    throw domain_error("definitional_state: unknown problem '" + problem + "'");
}

CountTable brute_state_table(const BGraph& bg, const ProblemAlgebra& alg, int k) {
    if (bg.graph.n() > 20) throw unsupported_error("brute_state_table: graph too large");
    if (k < 0) throw domain_error("brute_state_table: negative k");
    const vset& verts = bg.graph.vertices();
    int n = bg.graph.n();
    CountTable tbl;
    tbl.boundary = bg.boundary;
    tbl.k_max = k;
    for (uint64_t mask = 0; mask < (1ull << n); ++mask) {
        int size = std::popcount(mask);
        if (size > k) continue;
        vset a;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1u) a.push_back(verts[i]);
        AlgebraState s = definitional_state(alg.name(), bg.graph, bg.boundary, a);
        auto& vec = tbl.counts[s];
        if (vec.empty()) vec.resize(k + 1);
        vec[size] += BigUInt(1);
    }
    return tbl;
}

}  // namespace oracle
}  // namespace compactor

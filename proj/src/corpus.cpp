#include "compactor/corpus.hpp"

#include <algorithm>
#include <set>

#include "compactor/errors.hpp"

namespace compactor {

namespace {

vset iota_verts(int n) {
    vset v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

}  // namespace

Graph path_graph(int n) {
    std::vector<std::pair<vertex_t, vertex_t>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    return Graph(iota_verts(n), es);
}

Graph cycle_graph(int n) {
    if (n < 3) throw domain_error("cycle needs at least 3 vertices");
    std::vector<std::pair<vertex_t, vertex_t>> es;
    for (int i = 0; i + 1 < n; ++i) es.emplace_back(i, i + 1);
    es.emplace_back(0, n - 1);
    return Graph(iota_verts(n), es);
}

Graph star_graph(int leaves) {
    std::vector<std::pair<vertex_t, vertex_t>> es;
    for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
    return Graph(iota_verts(leaves + 1), es);
}

Graph complete_graph(int n) {
    std::vector<std::pair<vertex_t, vertex_t>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return Graph(iota_verts(n), es);
}

Graph random_tree(int n, SplitMix64& rng) {
    std::vector<std::pair<vertex_t, vertex_t>> es;
    for (int v = 1; v < n; ++v) es.emplace_back(static_cast<vertex_t>(rng.below(v)), v);
    return Graph(iota_verts(n), es);
}

Graph random_sparse(int n, int max_edges, SplitMix64& rng) {
    std::set<std::pair<vertex_t, vertex_t>> es;
    if (n > 1 && rng.coin())  // half the samples start from a spanning tree
        for (int v = 1; v < n; ++v) es.insert(std::minmax<vertex_t>(static_cast<vertex_t>(rng.below(v)), v));
    int want = static_cast<int>(rng.below(max_edges + 1));
    int guard = 8 * want + 16;
    while (static_cast<int>(es.size()) < want && guard-- > 0 && n > 1) {
        vertex_t u = static_cast<vertex_t>(rng.below(n));
        vertex_t v = static_cast<vertex_t>(rng.below(n));
        if (u == v) continue;
        es.insert(std::minmax(u, v));
    }
    return Graph(iota_verts(n), {es.begin(), es.end()});
}

Graph random_outerplanar(int n, SplitMix64& rng) {
    if (n < 3) return path_graph(n);
    std::set<std::pair<vertex_t, vertex_t>> es;
    for (int i = 0; i + 1 < n; ++i) es.insert({i, i + 1});
    es.insert({0, n - 1});
    // non-crossing chords from a random triangulation, each kept on a coin
    std::vector<std::pair<int, int>> stack{{0, n - 1}};
    while (!stack.empty()) {
        auto [a, b] = stack.back();
        stack.pop_back();
        if (b - a < 2) continue;
        int m = a + 1 + static_cast<int>(rng.below(b - a - 1));
        if (m - a >= 2 && rng.coin()) es.insert({a, m});
        if (b - m >= 2 && rng.coin()) es.insert({m, b});
        stack.push_back({a, m});
        stack.push_back({m, b});
    }
    return Graph(iota_verts(n), {es.begin(), es.end()});
}

Graph random_partial_2tree(int n, SplitMix64& rng) {
    if (n <= 2) return path_graph(n);
    std::vector<std::pair<vertex_t, vertex_t>> grown{{0, 1}};
    for (int v = 2; v < n; ++v) {
        auto [a, b] = grown[rng.below(grown.size())];
        grown.emplace_back(a, v);
        grown.emplace_back(b, v);
    }
    std::vector<std::pair<vertex_t, vertex_t>> kept;
    for (auto e : grown)
        if (rng.below(8) != 0) kept.push_back(e);  // drop roughly an eighth
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    return Graph(iota_verts(n), kept);
}

Graph spider_graph(int hubs, int n) {
    if (hubs < 1 || n < hubs) throw domain_error("spider_graph: need n >= hubs >= 1");
    std::vector<std::pair<vertex_t, vertex_t>> es;
    for (int i = 0; i + 1 < hubs; ++i) es.emplace_back(i, i + 1);
    uint32_t patterns = (1u << hubs) - 1;
    for (int v = hubs; v < n; ++v) {
        uint32_t mask = static_cast<uint32_t>((v - hubs) % patterns) + 1;
        for (int h = 0; h < hubs; ++h)
            if ((mask >> h) & 1u) es.emplace_back(h, v);
    }
    return Graph(iota_verts(n), es);
}

std::vector<Graph> acceptance_corpus(uint64_t seed, int count, int max_n) {
    SplitMix64 rng(seed);
    std::vector<Graph> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        int n = 1 + static_cast<int>(rng.below(max_n));
        switch (i % 7) {
            case 0:
                out.push_back(path_graph(n));
                break;
            case 1:
                out.push_back(cycle_graph(std::max(3, n)));
                break;
            case 2:
                out.push_back(star_graph(std::max(1, n - 1)));
                break;
            case 3:
                out.push_back(random_tree(n, rng));
                break;
            case 4:
                out.push_back(random_sparse(n, 2 * n, rng));
                break;
            case 5:
                out.push_back(random_outerplanar(n, rng));
                break;
            default:
                out.push_back(random_partial_2tree(n, rng));
                break;
        }
    }
    return out;
}

BGraph random_bgraph(int max_n, int max_b, SplitMix64& rng) {
    int n = 1 + static_cast<int>(rng.below(max_n));
    Graph g = random_sparse(n, 2 * n, rng);
    int bsize = static_cast<int>(rng.below(std::min(max_b, n) + 1));
    vset bd;
    while (static_cast<int>(bd.size()) < bsize)
        bd = vs::unite(bd, {static_cast<vertex_t>(rng.below(n))});
    return BGraph{std::move(g), std::move(bd)};
}

}  // namespace compactor

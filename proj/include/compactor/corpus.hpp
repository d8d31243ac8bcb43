#pragma once

#include <cstdint>
#include <vector>

#include "compactor/bstructure.hpp"
#include "compactor/graph.hpp"

namespace compactor {

// Deterministic generator; identical seeds give identical corpora on every
// platform (no standard-library distributions involved).
struct SplitMix64 {
    uint64_t state;
    explicit SplitMix64(uint64_t seed) : state(seed) {}

    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t n) { return n == 0 ? 0 : next() % n; }
    bool coin() { return next() & 1u; }
};

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph star_graph(int leaves);
Graph complete_graph(int n);
Graph random_tree(int n, SplitMix64& rng);
// at most max_edges edges, possibly disconnected
Graph random_sparse(int n, int max_edges, SplitMix64& rng);
// cycle plus a coin-filtered set of non-crossing chords; treewidth <= 2
Graph random_outerplanar(int n, SplitMix64& rng);
// subgraph of a randomly grown 2-tree; treewidth <= 2
Graph random_partial_2tree(int n, SplitMix64& rng);
// small hub path with n - hubs leaves attached to rotating hub subsets; the
// vertex-cover size stays <= hubs however large n grows
Graph spider_graph(int hubs, int n);

// paths, cycles, stars, trees, sparse and outerplanar samples, |V| <= max_n
std::vector<Graph> acceptance_corpus(uint64_t seed, int count, int max_n);

BGraph random_bgraph(int max_n, int max_b, SplitMix64& rng);

}  // namespace compactor

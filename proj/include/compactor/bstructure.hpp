#pragma once

#include <cstdint>
#include <vector>

#include "compactor/graph.hpp"

namespace compactor {

// (G, B, A): graph with an ordered boundary and an annotated vertex set.
// The boundary order (its "index") is ascending vertex id; index 1 is the
// smallest boundary vertex.
struct BStructure {
    Graph graph;
    vset boundary;
    vset annotated;
};

// b-graph: every vertex annotated, written (G, B, -).
struct BGraph {
    Graph graph;
    vset boundary;

    BStructure as_structure() const { return BStructure{graph, boundary, graph.vertices()}; }
};

BStructure make_bstructure(Graph g, vset boundary, vset annotated);
BGraph make_bgraph(Graph g, vset boundary);

// 0-based bitmask of boundary indices of `subset` ∩ boundary.
uint32_t boundary_index_mask(const vset& boundary, const vset& subset);
// inverse: the boundary vertices at the masked indices
vset boundary_vertices_at(const vset& boundary, uint32_t mask);

// adjacency-by-index encoding of G[B]; equality across structures means the
// index-labeled boundary graphs are identical
std::vector<uint32_t> boundary_graph_bits(const Graph& g, const vset& boundary);

bool compatible(const BStructure& x, const BStructure& y);

struct GlueResult {
    Graph graph;
    vset annotated;
    // image of y's vertices in the glued graph (x's vertices keep their ids)
    std::vector<std::pair<vertex_t, vertex_t>> y_image;
};

// Disjoint union with equal-index boundary vertices identified. x's boundary
// ids prevail; y's interior is relabeled to fresh ids above both graphs.
GlueResult glue(const BStructure& x, const BStructure& y);

}  // namespace compactor

#include "compactor/bstructure.hpp"

#include <algorithm>

#include "compactor/errors.hpp"

namespace compactor {

BStructure make_bstructure(Graph g, vset boundary, vset annotated) {
    if (!vs::is_subset(boundary, g.vertices())) throw domain_error("boundary not within vertices");
    if (!vs::is_subset(annotated, g.vertices())) throw domain_error("annotated not within vertices");
    return BStructure{std::move(g), std::move(boundary), std::move(annotated)};
}

BGraph make_bgraph(Graph g, vset boundary) {
    if (!vs::is_subset(boundary, g.vertices())) throw domain_error("boundary not within vertices");
    return BGraph{std::move(g), std::move(boundary)};
}

uint32_t boundary_index_mask(const vset& boundary, const vset& subset) {
    uint32_t mask = 0;
    for (size_t i = 0; i < boundary.size(); ++i)
        if (vs::contains(subset, boundary[i])) mask |= 1u << i;
    return mask;
}

vset boundary_vertices_at(const vset& boundary, uint32_t mask) {
    vset out;
    for (size_t i = 0; i < boundary.size(); ++i)
        if (mask & (1u << i)) out.push_back(boundary[i]);
    return out;
}

std::vector<uint32_t> boundary_graph_bits(const Graph& g, const vset& boundary) {
    std::vector<uint32_t> bits(boundary.size(), 0);
    for (size_t i = 0; i < boundary.size(); ++i)
        for (size_t j = 0; j < boundary.size(); ++j)
            if (i != j && g.has_edge(boundary[i], boundary[j])) bits[i] |= 1u << j;
    return bits;
}

bool compatible(const BStructure& x, const BStructure& y) {
    if (x.boundary.size() != y.boundary.size()) return false;
    if (boundary_index_mask(x.boundary, x.annotated) != boundary_index_mask(y.boundary, y.annotated))
        return false;
    return boundary_graph_bits(x.graph, x.boundary) == boundary_graph_bits(y.graph, y.boundary);
}

GlueResult glue(const BStructure& x, const BStructure& y) {
    if (!compatible(x, y)) throw domain_error("glue: incompatible b-structures");

    vertex_t fresh = 0;
    if (!x.graph.vertices().empty()) fresh = std::max(fresh, x.graph.vertices().back() + 1);
    if (!y.graph.vertices().empty()) fresh = std::max(fresh, y.graph.vertices().back() + 1);

    std::vector<std::pair<vertex_t, vertex_t>> y_image;
    auto map_of = [&y_image](vertex_t v) {
        for (auto [a, b] : y_image)
            if (a == v) return b;
        return v;  // unreachable once fully built
    };
    for (size_t i = 0; i < y.boundary.size(); ++i) y_image.emplace_back(y.boundary[i], x.boundary[i]);
    for (vertex_t v : y.graph.vertices())
        if (!vs::contains(y.boundary, v)) y_image.emplace_back(v, fresh++);

    std::vector<vertex_t> verts = x.graph.vertices();
    for (auto [from, to] : y_image)
        if (!vs::contains(y.boundary, from)) verts.push_back(to);

    std::vector<std::pair<vertex_t, vertex_t>> edges = x.graph.edges();
    for (auto [u, v] : y.graph.edges()) {
        vertex_t mu = map_of(u), mv = map_of(v);
        if (vs::contains(y.boundary, u) && vs::contains(y.boundary, v))
            continue;  // boundary-internal edge already present in x (identical boundary graphs)
        if (mu > mv) std::swap(mu, mv);
        edges.emplace_back(mu, mv);
    }

    std::vector<vertex_t> ann = x.annotated;
    for (vertex_t v : y.annotated) ann.push_back(map_of(v));

    return GlueResult{Graph(vs::make(std::move(verts)), edges), vs::make(std::move(ann)), std::move(y_image)};
}

}  // namespace compactor

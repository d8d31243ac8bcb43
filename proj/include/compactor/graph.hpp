#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace compactor {

// Vertex ids double as the injective labeling: every iteration order below is
// ascending by id, so index computations stay stable across induced subgraphs.
using vertex_t = int32_t;

// Sorted ascending, no duplicates. The canonical vertex-set representation.
using vset = std::vector<vertex_t>;

namespace vs {
vset make(std::vector<vertex_t> v);  // sorts + dedups
bool contains(const vset& s, vertex_t v);
bool is_subset(const vset& a, const vset& b);
vset unite(const vset& a, const vset& b);
vset intersect(const vset& a, const vset& b);
vset subtract(const vset& a, const vset& b);
}  // namespace vs

// Immutable labeled simple undirected graph.
class Graph {
public:
    Graph() = default;
    Graph(vset vertices, const std::vector<std::pair<vertex_t, vertex_t>>& edges);

    int n() const { return static_cast<int>(verts_.size()); }
    int m() const { return m_; }
    const vset& vertices() const { return verts_; }
    bool has_vertex(vertex_t v) const { return index_.count(v) > 0; }
    // ascending neighbor list
    const vset& neighbors(vertex_t v) const;
    int degree(vertex_t v) const { return static_cast<int>(neighbors(v).size()); }
    bool has_edge(vertex_t u, vertex_t v) const;
    // canonical edge list: u < v, sorted lexicographically
    std::vector<std::pair<vertex_t, vertex_t>> edges() const;

    Graph induced(const vset& s) const;
    Graph minus(const vset& s) const;

private:
    vset verts_;
    std::unordered_map<vertex_t, size_t> index_;
    std::vector<vset> adj_;
    int m_ = 0;
};

// One edge per line as two whitespace-separated names; a single name declares
// an isolated vertex; '#' starts a comment line. Labels follow first appearance.
// `names`, when given, receives the name of each vertex id.
Graph parse_edge_list(std::istream& in, std::vector<std::string>* names = nullptr);
Graph parse_edge_list(const std::string& text, std::vector<std::string>* names = nullptr);

vset neighborhood(const Graph& g, const vset& s);         // N(S)
vset closed_neighborhood(const Graph& g, const vset& s);  // N[S]
vset boundary_of(const Graph& g, const vset& s);          // vertices of S with a neighbor outside S
std::vector<vset> connected_components(const Graph& g);   // ordered by minimum vertex

// Exhaustive desk-scale check: does g contain a subdivision of h as a subgraph?
// Guards: |V(h)| <= 6, |V(g)| <= 20.
bool contains_topological_minor(const Graph& g, const Graph& h);

}  // namespace compactor

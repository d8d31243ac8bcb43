#include "compactor/graph.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <sstream>

#include "compactor/errors.hpp"

namespace compactor {

namespace vs {

vset make(std::vector<vertex_t> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool contains(const vset& s, vertex_t v) {
    return std::binary_search(s.begin(), s.end(), v);
}

bool is_subset(const vset& a, const vset& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

vset unite(const vset& a, const vset& b) {
    vset r;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

vset intersect(const vset& a, const vset& b) {
    vset r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

vset subtract(const vset& a, const vset& b) {
    vset r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
    return r;
}

}  // namespace vs

Graph::Graph(vset vertices, const std::vector<std::pair<vertex_t, vertex_t>>& edges)
    : verts_(std::move(vertices)) {
    for (size_t i = 0; i + 1 < verts_.size(); ++i)
        if (verts_[i] >= verts_[i + 1]) throw domain_error("vertex set not strictly sorted");
    index_.reserve(verts_.size());
    for (size_t i = 0; i < verts_.size(); ++i) index_[verts_[i]] = i;
    adj_.resize(verts_.size());
    for (auto [u, v] : edges) {
        if (u == v) throw domain_error("self-loop at vertex " + std::to_string(u));
        auto iu = index_.find(u), iv = index_.find(v);
        if (iu == index_.end() || iv == index_.end())
            throw domain_error("edge endpoint is not a vertex");
        adj_[iu->second].push_back(v);
        adj_[iv->second].push_back(u);
    }
    for (auto& nb : adj_) {
        std::sort(nb.begin(), nb.end());
        if (std::adjacent_find(nb.begin(), nb.end()) != nb.end())
            throw domain_error("parallel edge");
        m_ += static_cast<int>(nb.size());
    }
    m_ /= 2;
}

const vset& Graph::neighbors(vertex_t v) const {
    auto it = index_.find(v);
    if (it == index_.end()) throw domain_error("no such vertex: " + std::to_string(v));
    return adj_[it->second];
}

bool Graph::has_edge(vertex_t u, vertex_t v) const {
    auto it = index_.find(u);
    if (it == index_.end()) return false;
    return vs::contains(adj_[it->second], v);
}

std::vector<std::pair<vertex_t, vertex_t>> Graph::edges() const {
    std::vector<std::pair<vertex_t, vertex_t>> out;
    out.reserve(m_);
    for (size_t i = 0; i < verts_.size(); ++i)
        for (vertex_t w : adj_[i])
            if (verts_[i] < w) out.emplace_back(verts_[i], w);
    return out;
}

Graph Graph::induced(const vset& s) const {
    if (!vs::is_subset(s, verts_)) throw domain_error("induced: set not within vertices");
    std::vector<std::pair<vertex_t, vertex_t>> es;
    for (vertex_t v : s)
        for (vertex_t w : neighbors(v))
            if (v < w && vs::contains(s, w)) es.emplace_back(v, w);
    return Graph(s, es);
}

Graph Graph::minus(const vset& s) const {
    return induced(vs::subtract(verts_, s));
}

Graph parse_edge_list(std::istream& in, std::vector<std::string>* names) {
    std::unordered_map<std::string, vertex_t> ids;
    std::vector<std::string> name_of;
    std::vector<std::pair<vertex_t, vertex_t>> edges;
    auto intern = [&](const std::string& name) {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        vertex_t id = static_cast<vertex_t>(name_of.size());
        ids.emplace(name, id);
        name_of.push_back(name);
        return id;
    };
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a) || a[0] == '#') continue;
        if (!(ls >> b)) {
            intern(a);  // isolated vertex declaration
            continue;
        }
        if (ls >> extra) throw parse_error("expected at most two names", line_no);
        vertex_t u = intern(a), v = intern(b);
        if (u == v) throw parse_error("self-loop '" + a + "'", line_no);
        auto e = std::minmax(u, v);
        for (const auto& prev : edges)
            if (prev == std::make_pair(e.first, e.second))
                throw parse_error("duplicate edge '" + a + " " + b + "'", line_no);
        edges.emplace_back(e.first, e.second);
    }
    vset verts(name_of.size());
    for (size_t i = 0; i < verts.size(); ++i) verts[i] = static_cast<vertex_t>(i);
    if (names) *names = name_of;
    return Graph(std::move(verts), edges);
}

Graph parse_edge_list(const std::string& text, std::vector<std::string>* names) {
    std::istringstream in(text);
    return parse_edge_list(in, names);
}

vset neighborhood(const Graph& g, const vset& s) {
    if (!vs::is_subset(s, g.vertices())) throw domain_error("neighborhood: set not within vertices");
    std::vector<vertex_t> out;
    for (vertex_t v : s)
        for (vertex_t w : g.neighbors(v))
            if (!vs::contains(s, w)) out.push_back(w);
    return vs::make(std::move(out));
}

vset closed_neighborhood(const Graph& g, const vset& s) {
    return vs::unite(s, neighborhood(g, s));
}

vset boundary_of(const Graph& g, const vset& s) {
    if (!vs::is_subset(s, g.vertices())) throw domain_error("boundary_of: set not within vertices");
    std::vector<vertex_t> out;
    for (vertex_t v : s)
        for (vertex_t w : g.neighbors(v))
            if (!vs::contains(s, w)) {
                out.push_back(v);
                break;
            }
    return out;  // already sorted: s is sorted
}

std::vector<vset> connected_components(const Graph& g) {
    std::vector<vset> comps;
    std::unordered_map<vertex_t, bool> seen;
    for (vertex_t start : g.vertices()) {
        if (seen[start]) continue;
        std::vector<vertex_t> stack{start}, comp;
        seen[start] = true;
        while (!stack.empty()) {
            vertex_t v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (vertex_t w : g.neighbors(v))
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        comps.push_back(vs::make(std::move(comp)));
    }
    return comps;  // min-vertex order: starts iterate ascending
}

namespace {

// Search for internally-disjoint paths realizing each h-edge between mapped
// branch vertices. `used` holds vertices unavailable as path interiors.
bool connect_edges(const Graph& g, const std::vector<std::pair<vertex_t, vertex_t>>& want,
                   size_t i, std::vector<bool>& used,
                   const std::unordered_map<vertex_t, size_t>& gidx) {
    if (i == want.size()) return true;
    auto [s, t] = want[i];
    // DFS over simple paths from s to t avoiding used interiors
    std::vector<vertex_t> path{s};
    std::vector<size_t> cursor{0};
    while (!path.empty()) {
        vertex_t v = path.back();
        const auto& nb = g.neighbors(v);
        bool advanced = false;
        for (size_t& c = cursor.back(); c < nb.size();) {
            vertex_t w = nb[c++];
            if (w == t) {
                if (connect_edges(g, want, i + 1, used, gidx)) return true;
                continue;
            }
            if (used[gidx.at(w)]) continue;
            used[gidx.at(w)] = true;
            path.push_back(w);
            cursor.push_back(0);
            advanced = true;
            break;
        }
        if (!advanced) {
            if (path.size() > 1) used[gidx.at(path.back())] = false;
            path.pop_back();
            cursor.pop_back();
        }
    }
    return false;
}

}  // namespace

bool contains_topological_minor(const Graph& g, const Graph& h) {
    if (h.n() > 6 || g.n() > 20)
        throw unsupported_error("topological minor check limited to |V(h)| <= 6, |V(g)| <= 20");
    if (h.n() > g.n() || h.m() > g.m()) return false;
    if (h.n() == 0) return true;

    std::unordered_map<vertex_t, size_t> gidx;
    for (size_t i = 0; i < g.vertices().size(); ++i) gidx[g.vertices()[i]] = i;

    // branch vertices in descending h-degree order for earlier pruning
    std::vector<vertex_t> hv = h.vertices();
    std::sort(hv.begin(), hv.end(), [&](vertex_t a, vertex_t b) {
        return h.degree(a) != h.degree(b) ? h.degree(a) > h.degree(b) : a < b;
    });

    std::unordered_map<vertex_t, vertex_t> image;
    std::vector<bool> used(g.vertices().size(), false);

    std::function<bool(size_t)> place = [&](size_t i) -> bool {
        if (i == hv.size()) {
            std::vector<std::pair<vertex_t, vertex_t>> want;
            for (auto [a, b] : h.edges()) want.emplace_back(image[a], image[b]);
            std::vector<bool> path_used = used;
            return connect_edges(g, want, 0, path_used, gidx);
        }
        vertex_t x = hv[i];
        for (vertex_t cand : g.vertices()) {
            if (used[gidx[cand]] || g.degree(cand) < h.degree(x)) continue;
            used[gidx[cand]] = true;
            image[x] = cand;
            if (place(i + 1)) return true;
            used[gidx[cand]] = false;
        }
        return false;
    };
    return place(0);
}

}  // namespace compactor

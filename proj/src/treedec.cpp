#include "compactor/treedec.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <set>

#include "compactor/errors.hpp"

namespace compactor {

bool validate(const TreeDecomposition& d, const Graph& g) {
    size_t nn = d.bags.size();
    if (nn == 0) return g.n() == 0;
    if (d.edges.size() != nn - 1) return false;
    // tree connectivity over nodes
    std::vector<std::vector<int>> nadj(nn);
    for (auto [a, b] : d.edges) {
        if (a < 0 || b < 0 || a >= static_cast<int>(nn) || b >= static_cast<int>(nn) || a == b)
            return false;
        nadj[a].push_back(b);
        nadj[b].push_back(a);
    }
    std::vector<bool> seen(nn, false);
    std::vector<int> stack{0};
    seen[0] = true;
    size_t reached = 0;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        ++reached;
        for (int w : nadj[u])
            if (!seen[w]) {
                seen[w] = true;
                stack.push_back(w);
            }
    }
    if (reached != nn) return false;

    // axiom 1: vertex coverage
    vset covered;
    for (const auto& bag : d.bags) covered = vs::unite(covered, bag);
    if (covered != g.vertices()) return false;

    // axiom 2: edge coverage
    for (auto [u, v] : g.edges()) {
        bool ok = false;
        for (const auto& bag : d.bags)
            if (vs::contains(bag, u) && vs::contains(bag, v)) {
                ok = true;
                break;
            }
        if (!ok) return false;
    }

    // axiom 3: occurrence sets connected
    for (vertex_t v : g.vertices()) {
        std::vector<int> occ;
        for (size_t i = 0; i < nn; ++i)
            if (vs::contains(d.bags[i], v)) occ.push_back(static_cast<int>(i));
        if (occ.empty()) return false;
        std::set<int> occ_set(occ.begin(), occ.end());
        std::vector<int> st{occ[0]};
        std::set<int> vis{occ[0]};
        while (!st.empty()) {
            int u = st.back();
            st.pop_back();
            for (int w : nadj[u])
                if (occ_set.count(w) && !vis.count(w)) {
                    vis.insert(w);
                    st.push_back(w);
                }
        }
        if (vis.size() != occ.size()) return false;
    }
    return true;
}

int width(const TreeDecomposition& d) {
    if (d.bags.empty()) throw domain_error("width of empty decomposition");
    size_t mx = 0;
    for (const auto& bag : d.bags) mx = std::max(mx, bag.size());
    return static_cast<int>(mx) - 1;
}

namespace {

// q(S, v): number of vertices outside S∪{v} adjacent to v or connected to it
// through S, on index bitmasks.
int elimination_degree(const std::vector<uint32_t>& adj, uint32_t s, int v) {
    uint32_t comp = 1u << v;
    uint32_t nb = 0;
    for (;;) {
        nb = 0;
        uint32_t c = comp;
        while (c) {
            int i = std::countr_zero(c);
            c &= c - 1;
            nb |= adj[i];
        }
        uint32_t grow = (nb & s) & ~comp;
        if (!grow) break;
        comp |= grow;
    }
    return std::popcount(nb & ~s & ~(1u << v));
}

std::vector<uint32_t> index_adjacency(const Graph& g) {
    const auto& verts = g.vertices();
    std::vector<uint32_t> adj(verts.size(), 0);
    for (size_t i = 0; i < verts.size(); ++i)
        for (vertex_t w : g.neighbors(verts[i])) {
            size_t j = std::lower_bound(verts.begin(), verts.end(), w) - verts.begin();
            adj[i] |= 1u << j;
        }
    return adj;
}

// subset DP over elimination orders; returns dp table (dp[full] = treewidth)
std::vector<int8_t> treewidth_dp(const std::vector<uint32_t>& adj) {
    int n = static_cast<int>(adj.size());
    std::vector<int8_t> dp(size_t{1} << n, 0);
    dp[0] = -1;
    for (uint32_t s = 1; s < (1u << n); ++s) {
        int best = 127;
        uint32_t it = s;
        while (it) {
            int v = std::countr_zero(it);
            it &= it - 1;
            uint32_t rest = s & ~(1u << v);
            int cand = std::max<int>(dp[rest], elimination_degree(adj, rest, v));
            best = std::min(best, cand);
        }
        dp[s] = static_cast<int8_t>(best);
    }
    return dp;
}

// elimination order realizing dp[full]; smallest vertex index breaks ties
std::vector<int> optimal_elimination_order(const std::vector<uint32_t>& adj,
                                           const std::vector<int8_t>& dp) {
    int n = static_cast<int>(adj.size());
    std::vector<int> order(n);
    uint32_t s = (n == 32 ? ~0u : (1u << n) - 1);
    for (int pos = n - 1; pos >= 0; --pos) {
        uint32_t it = s;
        while (it) {
            int v = std::countr_zero(it);
            it &= it - 1;
            uint32_t rest = s & ~(1u << v);
            if (std::max<int>(dp[rest], elimination_degree(adj, rest, v)) == dp[s]) {
                order[pos] = v;
                s = rest;
                break;
            }
        }
    }
    return order;
}

// greedy elimination order; score = fill-in when by_fill, degree otherwise.
// Minimum degree is exact for treewidth <= 2: a width-<=2 graph always has a
// vertex of degree <= 2 and eliminating it yields a minor of the graph.
std::vector<int> greedy_order(const Graph& g, bool by_fill) {
    const auto& verts = g.vertices();
    int n = static_cast<int>(verts.size());
    std::vector<std::set<int>> h(n);
    for (int i = 0; i < n; ++i)
        for (vertex_t w : g.neighbors(verts[i]))
            h[i].insert(static_cast<int>(std::lower_bound(verts.begin(), verts.end(), w) - verts.begin()));
    std::vector<bool> gone(n, false);
    std::vector<int> order;
    order.reserve(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_score = -1;
        for (int v = 0; v < n; ++v) {
            if (gone[v]) continue;
            long score = 0;
            if (by_fill) {
                std::vector<int> nb(h[v].begin(), h[v].end());
                for (size_t a = 0; a < nb.size(); ++a)
                    for (size_t b = a + 1; b < nb.size(); ++b)
                        if (!h[nb[a]].count(nb[b])) ++score;
            } else {
                score = static_cast<long>(h[v].size());
            }
            if (best == -1 || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        order.push_back(best);
        std::vector<int> nb(h[best].begin(), h[best].end());
        for (size_t a = 0; a < nb.size(); ++a)
            for (size_t b = a + 1; b < nb.size(); ++b) {
                h[nb[a]].insert(nb[b]);
                h[nb[b]].insert(nb[a]);
            }
        for (int w : nb) h[w].erase(best);
        h[best].clear();
        gone[best] = true;
    }
    return order;
}

TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order);

// better of the min-fill and min-degree orders
TreeDecomposition heuristic_decomposition(const Graph& g) {
    TreeDecomposition fill = decomposition_from_order(g, greedy_order(g, true));
    TreeDecomposition deg = decomposition_from_order(g, greedy_order(g, false));
    return width(deg) < width(fill) ? deg : fill;
}

// classic clique-tree construction from an elimination order (index space)
TreeDecomposition decomposition_from_order(const Graph& g, const std::vector<int>& order) {
    const auto& verts = g.vertices();
    int n = static_cast<int>(verts.size());
    std::vector<std::set<int>> h(n);
    for (int i = 0; i < n; ++i)
        for (vertex_t w : g.neighbors(verts[i]))
            h[i].insert(static_cast<int>(std::lower_bound(verts.begin(), verts.end(), w) - verts.begin()));
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;

    TreeDecomposition d;
    std::vector<std::vector<int>> bag_idx(n);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> nb(h[v].begin(), h[v].end());
        bag_idx[i] = nb;
        bag_idx[i].push_back(v);
        std::sort(bag_idx[i].begin(), bag_idx[i].end());
        for (size_t a = 0; a < nb.size(); ++a)
            for (size_t b = a + 1; b < nb.size(); ++b) {
                h[nb[a]].insert(nb[b]);
                h[nb[b]].insert(nb[a]);
            }
        for (int w : nb) h[w].erase(v);
        h[v].clear();
        // attach to the bag of the earliest-eliminated remaining neighbor
        int attach = -1;
        for (int w : nb) attach = (attach == -1 || pos[w] < attach) ? pos[w] : attach;
        if (attach == -1 && i + 1 < n) attach = i + 1;
        if (attach != -1) d.edges.emplace_back(i, attach);
    }
    for (int i = 0; i < n; ++i) {
        vset bag;
        for (int idx : bag_idx[i]) bag.push_back(verts[idx]);
        d.bags.push_back(vs::make(std::move(bag)));
    }
    if (n == 0) d.bags.push_back({});
    return d;
}

}  // namespace

int exact_treewidth(const Graph& g) {
    if (g.n() > 14) throw unsupported_error("exact_treewidth limited to |V| <= 14");
    if (g.n() == 0) return -1;
    auto adj = index_adjacency(g);
    auto dp = treewidth_dp(adj);
    return dp[(1u << g.n()) - 1];
}

std::variant<TreeDecomposition, NotBounded> decompose_bounded(const Graph& g, int t) {
    if (g.n() == 0) {
        TreeDecomposition d;
        d.bags.push_back({});
        return d;
    }
    if (g.n() <= 14) {
        auto adj = index_adjacency(g);
        auto dp = treewidth_dp(adj);
        if (dp[(1u << g.n()) - 1] > t) return NotBounded{true};
        return decomposition_from_order(g, optimal_elimination_order(adj, dp));
    }
    auto d = heuristic_decomposition(g);
    if (width(d) <= t) return d;
    return NotBounded{false};
}

TreeDecomposition decompose_any(const Graph& g) {
    if (g.n() == 0) {
        TreeDecomposition d;
        d.bags.push_back({});
        return d;
    }
    if (g.n() <= 14) {
        auto adj = index_adjacency(g);
        auto dp = treewidth_dp(adj);
        return decomposition_from_order(g, optimal_elimination_order(adj, dp));
    }
    return heuristic_decomposition(g);
}

TreeDecomposition decompose_containing(const Graph& g, const vset& bag) {
    if (!vs::is_subset(bag, g.vertices())) throw domain_error("decompose_containing: bag not within vertices");
    auto edges = g.edges();
    for (size_t i = 0; i < bag.size(); ++i)
        for (size_t j = i + 1; j < bag.size(); ++j)
            if (!g.has_edge(bag[i], bag[j])) edges.emplace_back(bag[i], bag[j]);
    Graph forced(g.vertices(), edges);
    // a clique always sits inside one bag, and the bags remain valid for g
    return decompose_any(forced);
}

TreeDecomposition NiceTreeDecomposition::to_tree_decomposition() const {
    TreeDecomposition d;
    for (const auto& node : nodes) d.bags.push_back(node.bag);
    for (size_t i = 0; i < nodes.size(); ++i)
        for (int c : nodes[i].children) d.edges.emplace_back(static_cast<int>(i), c);
    d.root = root;
    return d;
}

NiceTreeDecomposition make_nice(const TreeDecomposition& d, const Graph& g, const vset& root_bag) {
    if (!validate(d, g)) throw domain_error("make_nice: invalid tree decomposition");
    if (!vs::is_subset(root_bag, g.vertices())) throw domain_error("make_nice: root bag not within vertices");

    NiceTreeDecomposition nd;
    auto add = [&nd](vset bag) {
        nd.nodes.push_back({std::move(bag), -1, {}, NodeKind::Leaf, -1});
        return static_cast<int>(nd.nodes.size()) - 1;
    };
    auto link = [&nd](int parent, int child) {
        nd.nodes[parent].children.push_back(child);
        nd.nodes[child].parent = parent;
    };
    // forget surplus (descending), then introduce missing (ascending)
    auto morph = [&](int below, const vset& from, const vset& to) {
        vset cur = from;
        int cur_id = below;
        vset drop = vs::subtract(from, to);
        for (auto it = drop.rbegin(); it != drop.rend(); ++it) {
            cur = vs::subtract(cur, {*it});
            int id = add(cur);
            link(id, cur_id);
            cur_id = id;
        }
        for (vertex_t v : vs::subtract(to, from)) {
            cur = vs::unite(cur, {v});
            int id = add(cur);
            link(id, cur_id);
            cur_id = id;
        }
        return cur_id;
    };

    if (g.n() == 0 && root_bag.empty()) {
        int r = add({});
        nd.root = r;
        return nd;
    }

    // attach point: smallest bag containing root_bag
    int attach = -1;
    for (size_t i = 0; i < d.bags.size(); ++i) {
        if (!vs::is_subset(root_bag, d.bags[i])) continue;
        if (attach == -1 || d.bags[i].size() < d.bags[attach].size()) attach = static_cast<int>(i);
    }
    if (attach == -1) throw domain_error("make_nice: root bag is not contained in any bag");

    std::vector<std::vector<int>> nadj(d.bags.size());
    for (auto [a, b] : d.edges) {
        nadj[a].push_back(b);
        nadj[b].push_back(a);
    }

    std::function<int(int, int)> build = [&](int u, int parent) -> int {
        std::vector<int> kids;
        for (int w : nadj[u])
            if (w != parent) kids.push_back(w);
        if (kids.empty()) return add(d.bags[u]);
        std::vector<int> tops;
        tops.reserve(kids.size());
        for (int c : kids) tops.push_back(morph(build(c, u), d.bags[c], d.bags[u]));
        int acc = tops[0];
        for (size_t i = 1; i < tops.size(); ++i) {
            int j = add(d.bags[u]);
            link(j, acc);
            link(j, tops[i]);
            acc = j;
        }
        return acc;
    };

    nd.root = morph(build(attach, -1), d.bags[attach], root_bag);

    // classify
    for (size_t i = 0; i < nd.nodes.size(); ++i) {
        auto& node = nd.nodes[i];
        if (node.children.empty()) {
            node.kind = NodeKind::Leaf;
        } else if (node.children.size() == 2) {
            node.kind = NodeKind::Join;
        } else {
            const vset& cb = nd.nodes[node.children[0]].bag;
            vset in = vs::subtract(node.bag, cb);
            vset out = vs::subtract(cb, node.bag);
            if (in.size() == 1 && out.empty()) {
                node.kind = NodeKind::Introduce;
                node.special = in[0];
            } else if (out.size() == 1 && in.empty()) {
                node.kind = NodeKind::Forget;
                node.special = out[0];
            } else {
                throw internal_error("make_nice produced a non-nice unary node");
            }
        }
    }
    return nd;
}

bool is_nice_form(const NiceTreeDecomposition& nd) {
    if (nd.root < 0 || nd.root >= static_cast<int>(nd.nodes.size())) return false;
    for (const auto& node : nd.nodes) {
        if (node.children.size() > 2) return false;
        if (node.children.size() == 2) {
            if (nd.nodes[node.children[0]].bag != node.bag) return false;
            if (nd.nodes[node.children[1]].bag != node.bag) return false;
        }
        if (node.children.size() == 1) {
            const vset& cb = nd.nodes[node.children[0]].bag;
            size_t diff = vs::subtract(node.bag, cb).size() + vs::subtract(cb, node.bag).size();
            if (diff != 1) return false;
        }
    }
    return true;
}

}  // namespace compactor

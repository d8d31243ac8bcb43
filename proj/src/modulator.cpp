#include "compactor/modulator.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <functional>
#include <map>
#include <sstream>

#include "compactor/dpcount.hpp"
#include "compactor/errors.hpp"
#include "compactor/treedec.hpp"

namespace compactor {

namespace {

// lexicographic k-subsets of items; visit returns true to stop
bool for_each_subset_of_size(const vset& items, int k,
                             const std::function<bool(const vset&)>& visit) {
    int n = static_cast<int>(items.size());
    if (k > n) return false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        vset pick(k);
        for (int i = 0; i < k; ++i) pick[i] = items[idx[i]];
        if (visit(pick)) return true;
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return false;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool is_forest(const Graph& g) {
    return g.m() == g.n() - static_cast<int>(connected_components(g).size());
}

// proof-grade for t <= 1 or |V| <= 14; heuristic acceptance otherwise
bool interior_tw_at_most(const Graph& interior, int t) {
    if (t >= 0 && interior.n() == 0) return true;
    if (t == 0) return interior.m() == 0;
    if (t == 1) return is_forest(interior);
    return std::holds_alternative<TreeDecomposition>(decompose_bounded(interior, t));
}

// index-bitmask view of a graph with at most 32 vertices
struct MaskView {
    vset verts;
    std::vector<uint32_t> adj;

    static MaskView of(const Graph& g) {
        MaskView mv;
        mv.verts = g.vertices();
        mv.adj.assign(mv.verts.size(), 0);
        for (size_t i = 0; i < mv.verts.size(); ++i)
            for (vertex_t w : g.neighbors(mv.verts[i]))
                mv.adj[i] |= 1u << (std::lower_bound(mv.verts.begin(), mv.verts.end(), w) -
                                    mv.verts.begin());
        return mv;
    }

    int n() const { return static_cast<int>(verts.size()); }

    vset to_vset(uint32_t m) const {
        vset out;
        while (m) {
            int i = std::countr_zero(m);
            m &= m - 1;
            out.push_back(verts[i]);
        }
        return out;
    }

    int edges_within(uint32_t m) const {
        int twice = 0;
        uint32_t it = m;
        while (it) {
            int v = std::countr_zero(it);
            it &= it - 1;
            twice += std::popcount(adj[v] & m);
        }
        return twice / 2;
    }

    int components_within(uint32_t m) const {
        int comps = 0;
        uint32_t left = m;
        while (left) {
            ++comps;
            uint32_t frontier = left & (~left + 1);  // lowest remaining vertex
            uint32_t comp = 0;
            while (frontier) {
                comp |= frontier;
                uint32_t next = 0;
                uint32_t it = frontier;
                while (it) {
                    int v = std::countr_zero(it);
                    it &= it - 1;
                    next |= adj[v] & m & ~comp;
                }
                frontier = next;
            }
            left &= ~comp;
        }
        return comps;
    }

    bool forest_within(uint32_t m) const {
        return edges_within(m) == std::popcount(m) - components_within(m);
    }

    // component label per position (or -1), labels in ascending min-vertex order
    void label_components(uint32_t m, std::vector<int>& label) const {
        label.assign(verts.size(), -1);
        int next = 0;
        uint32_t left = m;
        while (left) {
            uint32_t frontier = left & (~left + 1);
            uint32_t comp = 0;
            while (frontier) {
                comp |= frontier;
                uint32_t nb = 0;
                uint32_t it = frontier;
                while (it) {
                    int v = std::countr_zero(it);
                    it &= it - 1;
                    nb |= adj[v] & m & ~comp;
                }
                frontier = nb;
            }
            uint32_t it = comp;
            while (it) {
                label[std::countr_zero(it)] = next;
                it &= it - 1;
            }
            ++next;
            left &= ~comp;
        }
    }
};

// boundary of a candidate set on the mask view; true when the region
// conditions hold for (t, d)
bool mask_region_ok(const MaskView& mv, const Graph& g, uint32_t ymask, int t, int d) {
    uint32_t full = mv.n() == 32 ? ~0u : (1u << mv.n()) - 1;
    uint32_t outside = full & ~ymask;
    uint32_t bd = 0;
    uint32_t it = ymask;
    while (it) {
        int v = std::countr_zero(it);
        it &= it - 1;
        if (mv.adj[v] & outside) bd |= 1u << v;
    }
    if (std::popcount(bd) > d) return false;
    uint32_t interior = ymask & ~bd;
    if (t == 0) return mv.edges_within(interior) == 0;
    if (t == 1) return mv.forest_within(interior);
    return interior_tw_at_most(g.induced(mv.to_vset(interior)), t);
}

}  // namespace

std::string TypeVector::encode() const {
    std::ostringstream out;
    for (size_t i = 0; i < per_size.size(); ++i) {
        if (i) out << ';';
        for (size_t j = 0; j < per_size[i].size(); ++j) {
            if (j) out << ',';
            out << std::hex << per_size[i][j].ann << 'p' << per_size[i][j].payload;
        }
    }
    return out.str();
}

AlgebraState modulator_state(int t, const Graph& g, const vset& boundary, const vset& annotated) {
    uint32_t ann = boundary_index_mask(boundary, annotated);
    if (t == 0) {
        bool edgeless = g.minus(annotated).m() == 0;
        return {ann, edgeless ? 1u : 0u};
    }
    if (t == 1) {
        Graph rest = g.minus(annotated);
        uint64_t payload = is_forest(rest) ? 1u : 0u;
        auto comps = connected_components(rest);
        uint64_t next_block = 0;
        std::map<size_t, uint64_t> block_of;  // component index -> canonical block id
        for (size_t p = 0; p < boundary.size(); ++p) {
            if ((ann >> p) & 1u) continue;
            size_t ci = 0;
            while (!vs::contains(comps[ci], boundary[p])) ++ci;
            auto it = block_of.find(ci);
            uint64_t blk = (it == block_of.end()) ? (block_of[ci] = ++next_block) : it->second;
            payload |= blk << (1 + 4 * p);
        }
        return {ann, payload};
    }
    throw unsupported_error("modulator states are realized for t <= 1 only");
}

TypeVector modulator_type_vector(int t, const BGraph& bg, int d) {
    TypeVector tv;
    tv.per_size.resize(d + 1);
    int n = bg.graph.n();
    if (t <= 1 && n <= 20) {
        // bitmask route, identical output to the definitional states
        MaskView mv = MaskView::of(bg.graph);
        std::vector<int> bpos;
        for (vertex_t v : bg.boundary)
            bpos.push_back(static_cast<int>(
                std::lower_bound(mv.verts.begin(), mv.verts.end(), v) - mv.verts.begin()));
        uint32_t fullmask = n == 0 ? 0 : (n == 32 ? ~0u : (1u << n) - 1);
        std::vector<int> label;
        std::vector<std::vector<AlgebraState>> acc(d + 1);
        for (uint32_t am = 0;; ++am) {
            int size = std::popcount(am);
            if (size <= d) {
                uint32_t ann = 0;
                for (size_t p = 0; p < bpos.size(); ++p)
                    if ((am >> bpos[p]) & 1u) ann |= 1u << p;
                uint32_t alive = fullmask & ~am;
                uint64_t payload = 0;
                if (t == 0) {
                    payload = mv.edges_within(alive) == 0 ? 1u : 0u;
                } else {
                    payload = mv.forest_within(alive) ? 1u : 0u;
                    mv.label_components(alive, label);
                    int remap[33];
                    std::fill(std::begin(remap), std::end(remap), 0);
                    int next = 0;
                    for (size_t p = 0; p < bpos.size(); ++p) {
                        if ((ann >> p) & 1u) continue;
                        int comp = label[bpos[p]];
                        if (remap[comp + 1] == 0) remap[comp + 1] = ++next;
                        payload |= static_cast<uint64_t>(remap[comp + 1]) << (1 + 4 * p);
                    }
                }
                acc[size].push_back({ann, payload});
            }
            if (am == fullmask) break;
        }
        for (int i = 0; i <= d; ++i) {
            std::sort(acc[i].begin(), acc[i].end());
            acc[i].erase(std::unique(acc[i].begin(), acc[i].end()), acc[i].end());
            tv.per_size[i] = std::move(acc[i]);
        }
        return tv;
    }
    for (int i = 0; i <= d; ++i) {
        std::vector<AlgebraState> states;
        for_each_subset_of_size(bg.graph.vertices(), i, [&](const vset& a) {
            states.push_back(modulator_state(t, bg.graph, bg.boundary, a));
            return false;
        });
        std::sort(states.begin(), states.end());
        states.erase(std::unique(states.begin(), states.end()), states.end());
        tv.per_size[i] = std::move(states);
    }
    return tv;
}

TypeVector type_vector(const BGraph& bg, const ProblemAlgebra& alg, int d) {
    if (static_cast<int>(bg.boundary.size()) > d)
        throw domain_error("type_vector: boundary larger than d");
    auto nd = make_nice(decompose_containing(bg.graph, bg.boundary), bg.graph, bg.boundary);
    CountTable tbl = count_table(bg, nd, alg, d);
    TypeVector tv;
    tv.per_size.resize(d + 1);
    for (const auto& [state, vec] : tbl.counts)
        for (int i = 0; i <= d; ++i)
            if (!vec[i].is_zero()) tv.per_size[i].push_back(state);
    for (auto& states : tv.per_size) std::sort(states.begin(), states.end());
    return tv;
}

vset vc_modulator_2approx(const Graph& g) {
    vset cover;
    for (auto [u, v] : g.edges())
        if (!vs::contains(cover, u) && !vs::contains(cover, v))
            cover = vs::unite(cover, {u, v});
    return cover;
}

namespace {

// visit candidate regions ascending by size; returns true if the visitor
// stopped the scan. Exhaustive for |V| <= 20; connected growth plus whole
// component bundles beyond that.
bool scan_regions(const Graph& g, int t, int d, int b, size_t cap,
                  const std::function<bool(const vset&)>& visit) {
    int n = g.n();
    int hi = std::min(2 * b, n);
    if (n <= 20) {
        MaskView mv = MaskView::of(g);
        for (int sz = b + 1; sz <= hi; ++sz) {
            size_t emitted = 0;
            // Gosper's hack over fixed-popcount masks
            uint32_t m = (1u << sz) - 1;
            uint32_t limit = (n == 32) ? ~0u : (1u << n);
            while (m < limit) {
                if (mask_region_ok(mv, g, m, t, d)) {
                    ++emitted;
                    if (visit(mv.to_vset(m))) return true;
                    if (emitted >= cap) break;
                }
                uint32_t c = m & (~m + 1);
                uint32_t r = m + c;
                if (r >= limit) break;
                m = (((r ^ m) >> 2) / c) | r;
            }
        }
        return false;
    }

    std::vector<std::vector<vset>> buckets(hi - b);
    // connected sets with minimum vertex v, exclusive-neighborhood growth
    for (vertex_t v : g.vertices()) {
        std::map<vertex_t, bool> seen;
        seen[v] = true;
        for (vertex_t w : g.neighbors(v)) seen[w] = true;
        std::vector<vertex_t> sub{v};
        std::function<void(std::vector<vertex_t>&, std::vector<vertex_t>)> extend =
            [&](std::vector<vertex_t>& s, std::vector<vertex_t> ext) {
                if (static_cast<int>(s.size()) > b &&
                    buckets[s.size() - b - 1].size() < cap)
                    buckets[s.size() - b - 1].push_back(vs::make(s));
                if (static_cast<int>(s.size()) == hi) return;
                while (!ext.empty()) {
                    vertex_t w = ext.front();
                    ext.erase(ext.begin());
                    std::vector<vertex_t> next_ext = ext;
                    std::vector<vertex_t> marked;
                    for (vertex_t u : g.neighbors(w))
                        if (u > v && !seen.count(u)) {
                            next_ext.push_back(u);
                            seen[u] = true;
                            marked.push_back(u);
                        }
                    s.push_back(w);
                    extend(s, std::move(next_ext));
                    s.pop_back();
                    for (vertex_t u : marked) seen.erase(u);
                }
            };
        std::vector<vertex_t> ext0;
        for (vertex_t w : g.neighbors(v))
            if (w > v) ext0.push_back(w);
        extend(sub, std::move(ext0));
    }
    // bundles of whole components, for graphs that fall apart
    auto comps = connected_components(g);
    for (size_t i = 0; i < comps.size(); ++i) {
        vset acc;
        for (size_t j = i; j < comps.size(); ++j) {
            acc = vs::unite(acc, comps[j]);
            if (static_cast<int>(acc.size()) > hi) break;
            if (static_cast<int>(acc.size()) > b) buckets[acc.size() - b - 1].push_back(acc);
        }
    }
    for (auto& bkt : buckets) {
        std::sort(bkt.begin(), bkt.end());
        bkt.erase(std::unique(bkt.begin(), bkt.end()), bkt.end());
        for (const auto& y : bkt) {
            vset bd = boundary_of(g, y);
            if (static_cast<int>(bd.size()) > d) continue;
            if (!interior_tw_at_most(g.induced(vs::subtract(y, bd)), t)) continue;
            if (visit(y)) return true;
        }
    }
    return false;
}

}  // namespace

std::optional<vset> find_replaceable_region(const Graph& g, int t, int d, int b) {
    if (d < 1 || b < 1) throw domain_error("find_replaceable_region: d and b must be positive");
    std::optional<vset> found;
    scan_regions(g, t, d, b, SIZE_MAX, [&](const vset& y) {
        found = y;
        return true;
    });
    return found;
}

namespace {

std::string catalog_key(const BGraph& bg, const TypeVector& tv) {
    std::ostringstream out;
    out << bg.boundary.size() << ':';
    for (uint32_t bits : boundary_graph_bits(bg.graph, bg.boundary)) out << std::hex << bits << ',';
    out << '|' << tv.encode();
    return out.str();
}

// all b-graphs on 0..seed_size-1 vertices with interior treewidth <= t,
// smallest-first so the first insertion per key is a minimum representative
void seed_catalog(std::map<std::string, BGraph>& catalog, int t, int d, int seed_size) {
    for (int n = 0; n <= seed_size; ++n) {
        int pairs = n * (n - 1) / 2;
        for (uint32_t em = 0; em < (1u << pairs); ++em) {
            std::vector<std::pair<vertex_t, vertex_t>> edges;
            int bit = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j, ++bit)
                    if ((em >> bit) & 1u) edges.emplace_back(i, j);
            vset verts(n);
            for (int i = 0; i < n; ++i) verts[i] = i;
            Graph g(verts, edges);
            for (uint32_t bm = 0; bm < (1u << n); ++bm) {
                if (std::popcount(bm) > d) continue;
                vset bd;
                for (int i = 0; i < n; ++i)
                    if ((bm >> i) & 1u) bd.push_back(i);
                if (!interior_tw_at_most(g.minus(bd), t)) continue;
                BGraph bg{g, bd};
                auto key = catalog_key(bg, modulator_type_vector(t, bg, d));
                catalog.emplace(std::move(key), std::move(bg));
            }
        }
    }
}

std::optional<vset> exact_small_modulator(const Graph& g, int t, int kmax) {
    for (int s = 0; s <= std::min<int>(kmax, g.n()); ++s) {
        std::optional<vset> hit;
        for_each_subset_of_size(g.vertices(), s, [&](const vset& a) {
            if (interior_tw_at_most(g.minus(a), t)) {
                hit = a;
                return true;
            }
            return false;
        });
        if (hit) return hit;
    }
    return std::nullopt;
}

}  // namespace

ModulatorResult approx_modulator(const Graph& g, int k, int t, const ModulatorOptions& opt) {
    if (k < 0) throw domain_error("approx_modulator: negative k");
    if (opt.c < 1 || opt.b < 1 || opt.d < 1) throw domain_error("approx_modulator: bad config");
    long budget = static_cast<long>(opt.c) * k;

    ModulatorResult result;
    if (t == 0 && !opt.force_region_search && opt.c >= 2) {
        vset cover = vc_modulator_2approx(g);
        if (static_cast<long>(cover.size()) <= budget) {
            result.modulator = std::move(cover);
            return result;
        }
        // cover <= 2 * minimum, so a cover beyond c*k >= 2k certifies minimum > k
        result.kind = ModulatorResult::Kind::NoSmallModulator;
        return result;
    }
    if (t > 1) throw unsupported_error("approx_modulator: region replacement supports t <= 1");

    result.region_search_used = true;
    std::map<std::string, BGraph> catalog;
    seed_catalog(catalog, t, opt.d, opt.catalog_seed_size);

    Graph cur = g;
    result.trace.t = t;
    result.trace.d = opt.d;
    vset partial;
    for (;; ++result.iterations) {
        if (result.iterations > g.n() + 2) throw internal_error("replacement loop did not terminate");
        if (std::holds_alternative<TreeDecomposition>(decompose_bounded(cur, t))) {
            partial = {};
            break;
        }
        if (cur.n() <= 14) {
            // small enough to solve outright: the minimum here equals the
            // minimum of the original graph, replacements being type-preserving
            auto exact = exact_small_modulator(cur, t, cur.n());
            if (exact && static_cast<long>(exact->size()) <= std::max<long>(k, budget)) {
                partial = *exact;
                break;
            }
            result.kind = ModulatorResult::Kind::NoSmallModulator;
            return result;
        }
        if (static_cast<long>(cur.n()) <= budget) {
            partial = cur.vertices();
            break;
        }
        bool seen_any = false, progress = false;
        scan_regions(cur, t, opt.d, opt.b, opt.scan_cap, [&](const vset& y) {
            seen_any = true;
            vset bd = boundary_of(cur, y);
            BGraph region_bg{cur.induced(y), bd};
            auto key = catalog_key(region_bg, modulator_type_vector(t, region_bg, opt.d));
            auto it = catalog.find(key);
            if (it == catalog.end()) {
                catalog.emplace(std::move(key), region_bg);
                return false;
            }
            if (it->second.graph.n() >= static_cast<int>(y.size())) {
                if (it->second.graph.n() > static_cast<int>(y.size())) it->second = region_bg;
                return false;
            }
            // strictly smaller representative known: substitute it
            const BGraph& rep = it->second;
            vset interior = vs::subtract(y, bd);
            BStructure host{cur.minus(interior), bd, {}};
            BStructure guest{rep.graph, rep.boundary, {}};
            GlueResult glued = glue(host, guest);
            vset embedded = bd;
            for (auto [from, to] : glued.y_image)
                if (!vs::contains(rep.boundary, from)) embedded.push_back(to);
            embedded = vs::make(std::move(embedded));
            result.trace.steps.push_back(
                {region_bg.graph, bd, glued.graph.induced(embedded), bd});
            cur = glued.graph;
            progress = true;
            return true;
        });
        if (!seen_any) {
            result.kind = ModulatorResult::Kind::NoSmallModulator;
            return result;
        }
        if (!progress)
            throw stalled_error("approx_modulator: regions exist but no replacement shrinks the graph");
        ++result.replacements;
    }

    vset lifted = lift_solution(result.trace, partial);
    if (std::holds_alternative<NotBounded>(decompose_bounded(g.minus(lifted), t)))
        throw internal_error("approx_modulator: lifted set is not a modulator");
    if (static_cast<long>(lifted.size()) > budget)
        throw internal_error("approx_modulator: lifted set exceeds the budget");
    result.modulator = std::move(lifted);
    return result;
}

vset lift_solution(const ReplacementTrace& trace, vset a) {
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
        const ReplacementStep& step = *it;
        const vset& rep_verts = step.rep_graph.vertices();
        vset in_rep = vs::intersect(a, rep_verts);
        if (static_cast<int>(in_rep.size()) > trace.d) {
            // normalize: the representative's interior has treewidth <= t, so
            // its boundary alone can stand in for any larger intersection
            a = vs::unite(vs::subtract(a, rep_verts), step.rep_boundary);
            in_rep = step.rep_boundary;
        }
        AlgebraState want = modulator_state(trace.t, step.rep_graph, step.rep_boundary, in_rep);
        std::optional<vset> pick;
        vset direct = vs::intersect(in_rep, step.region_graph.vertices());
        if (direct.size() == in_rep.size() &&
            modulator_state(trace.t, step.region_graph, step.region_boundary, direct) == want)
            pick = direct;
        if (!pick)
            for_each_subset_of_size(step.region_graph.vertices(),
                                    static_cast<int>(in_rep.size()), [&](const vset& l) {
                                        if (modulator_state(trace.t, step.region_graph,
                                                            step.region_boundary, l) == want) {
                                            pick = l;
                                            return true;
                                        }
                                        return false;
                                    });
        if (!pick) throw internal_error("lift_solution: no matching subset despite type equality");
        a = vs::unite(vs::subtract(a, rep_verts), *pick);
    }
    return a;
}

}  // namespace compactor

#include "doctest.h"

#include <bit>
#include <map>

#include "compactor/compactorfile.hpp"
#include "compactor/corpus.hpp"
#include "compactor/errors.hpp"
#include "compactor/oracle.hpp"
#include "testutil.hpp"

using namespace compactor;
using testutil::from_edges;

namespace {

// reference extractor: explicit enumeration of all interior-size vectors
// instead of the polynomial product, and no nonzero pruning of mappings
BigUInt extract_enumerated(const CompactorFile& f) {
    if (f.null_file) return BigUInt();
    const ProblemAlgebra& alg = *algebra_by_name(f.problem);
    vset center_verts(f.center_n);
    for (int i = 0; i < f.center_n; ++i) center_verts[i] = i + 1;
    std::vector<std::pair<vertex_t, vertex_t>> ce;
    for (auto [u, v] : f.center_edges) ce.emplace_back(u, v);
    Graph center(center_verts, ce);

    size_t s = f.tables.size();
    std::vector<vset> boundaries(s);
    for (size_t i = 0; i < s; ++i)
        for (int idx : f.boundaries[i]) boundaries[i].push_back(idx);
    std::vector<std::map<std::pair<AlgebraState, int>, BigUInt>> tables(s);
    std::vector<std::vector<AlgebraState>> states(s);
    for (size_t i = 0; i < s; ++i) {
        for (const auto& e : f.tables[i]) tables[i][{e.state, e.kprime}] += e.count;
        for (const auto& [key, cnt] : tables[i])
            if (states[i].empty() || states[i].back() != key.first)
                states[i].push_back(key.first);
    }

    BigUInt total;
    std::vector<AlgebraState> mapping(s);
    std::function<void(const vset&, size_t, int)> zeta_sum;
    std::vector<int> zeta(s);
    for (uint32_t am = 0; am < (1u << f.center_n); ++am) {
        if (std::popcount(am) > f.k) continue;
        vset a0;
        for (int i = 0; i < f.center_n; ++i)
            if ((am >> i) & 1u) a0.push_back(center_verts[i]);
        int rem = f.k - static_cast<int>(a0.size());
        // all mappings whose annotated boundary matches a0
        std::function<void(size_t)> pick = [&](size_t i) {
            if (i == s) {
                if (!alg.combine(center, a0, boundaries, mapping)) return;
                std::function<void(size_t, int)> sum_zeta = [&](size_t j, int left) {
                    if (j == s) {
                        if (left != 0) return;
                        BigUInt prod(1);
                        for (size_t q = 0; q < s; ++q) {
                            int shift = std::popcount(mapping[q].ann);
                            auto it = tables[q].find({mapping[q], zeta[q] + shift});
                            if (it == tables[q].end()) return;  // zero factor
                            prod = prod * it->second;
                        }
                        total += prod;
                        return;
                    }
                    for (int z = 0; z <= left; ++z) {
                        zeta[j] = z;
                        sum_zeta(j + 1, left - z);
                    }
                };
                sum_zeta(0, rem);
                return;
            }
            for (const AlgebraState& st : states[i]) {
                if (st.ann != boundary_index_mask(boundaries[i], a0)) continue;
                mapping[i] = st;
                pick(i + 1);
            }
            // also the "no matching state" case contributes nothing
        };
        pick(0);
    }
    return total;
}

}  // namespace

TEST_CASE("condense and extract on the small staples") {
    PipelineOptions opt;
    Graph c3 = from_edges("a b, b c, c a");
    CompactorFile f = condense(c3, 2, vc_algebra(), opt);
    CHECK_FALSE(f.null_file);
    CHECK(extract(f) == BigUInt(3));

    CompactorFile k8 = condense(complete_graph(8), 1, vc_algebra(), opt);
    CHECK(k8.null_file);
    CHECK(extract(k8).is_zero());
    CHECK(oracle::brute_count(complete_graph(8), 1, vc_algebra()).is_zero());

    Graph e5 = parse_edge_list("a\nb\nc\nd\ne\n");
    CHECK(extract(condense(e5, 2, vc_algebra(), opt)) == BigUInt(10));

    Graph p3 = from_edges("a b, b c");
    CHECK(extract(condense(p3, 1, vc_algebra(), opt)) == BigUInt(1));

    Graph c4 = from_edges("a b, b c, c d, d a");
    CHECK(extract(condense(c4, 2, is_algebra(), opt)) == BigUInt(2));
    CHECK(count_end_to_end(c4, 2, vc_algebra(), opt) ==
          oracle::brute_count(c4, 2, vc_algebra()));

    Graph star = star_graph(3);
    CHECK(count_end_to_end(star, 1, vc_algebra(), opt) == BigUInt(1));
    CHECK(count_end_to_end(c4, 0, vc_algebra(), opt).is_zero());
    CHECK(count_end_to_end(e5, 0, vc_algebra(), opt) == BigUInt(1));
}

TEST_CASE("end to end equals brute force on a seeded mini corpus") {
    PipelineOptions opt;
    auto corpus = acceptance_corpus(12345, 40, 12);
    for (const Graph& g : corpus)
        for (int k = 0; k <= 3; ++k)
            for (const auto* alg : {&vc_algebra(), &is_algebra()})
                CHECK(count_end_to_end(g, k, *alg, opt) == oracle::brute_count(g, k, *alg));
}

TEST_CASE("ds end to end with an external modulator") {
    PipelineOptions opt;
    SplitMix64 rng(7);
    for (int trial = 0; trial < 6; ++trial) {
        Graph g = random_sparse(4 + static_cast<int>(rng.below(7)), 14, rng);
        opt.external_modulator = vc_modulator_2approx(g);
        for (int k = 0; k <= 3; ++k)
            CHECK(count_end_to_end(g, k, ds_algebra(), opt) ==
                  oracle::brute_count(g, k, ds_algebra()));
    }
}

TEST_CASE("polynomial extractor equals the zeta enumeration") {
    PipelineOptions opt;
    auto corpus = acceptance_corpus(777, 30, 11);
    int compared = 0;
    for (const Graph& g : corpus)
        for (int k = 0; k <= 4; ++k)
            for (const auto* alg : {&vc_algebra(), &is_algebra()}) {
                CompactorFile f = condense(g, k, *alg, opt);
                if (f.null_file || f.tables.size() > 3 || f.center_n > 16) continue;
                ++compared;
                CHECK(extract(f) == extract_enumerated(f));
            }
    CHECK(compared > 50);
}

TEST_CASE("contribution bijection against the oracle solution partition") {
    PipelineOptions opt;
    auto corpus = acceptance_corpus(4242, 24, 10);
    for (const Graph& g : corpus) {
        int k = 2 + (g.n() % 2);
        for (const auto* alg : {&vc_algebra(), &is_algebra()}) {
            PipelineStats stats;
            auto outcome = full_pipeline_decomposition(g, k, *alg, opt, &stats);
            if (std::holds_alternative<NullReport>(outcome)) continue;
            const auto& pd = std::get<ProtrusionDecomposition>(outcome);

            // partition the oracle solutions by signature
            std::map<std::string, long> got;
            testutil::visit_subsets_of_size(g.vertices(), k, [&](const vset& a) {
                if (!alg->predicate(g, a)) return false;
                std::string sig;
                for (vertex_t v : vs::intersect(a, pd.center)) sig += std::to_string(v) + ",";
                for (size_t i = 0; i < pd.protrusions.size(); ++i) {
                    const auto& prot = pd.protrusions[i];
                    vset ai = vs::intersect(a, prot.graph.vertices());
                    AlgebraState st =
                        oracle::definitional_state(alg->name(), prot.graph, prot.boundary, ai);
                    vset interior = vs::subtract(ai, prot.boundary);
                    sig += "|" + std::to_string(st.ann) + "." + std::to_string(st.payload) +
                           "." + std::to_string(interior.size());
                }
                ++got[sig];
                return false;
            });

            // the same partition predicted from the tables
            std::map<std::string, long> want;
            std::vector<CountTable> tables;
            for (size_t i = 0; i < pd.protrusions.size(); ++i)
                tables.push_back(oracle::brute_state_table(pd.protrusions[i], *alg, k));
            std::vector<vset> boundaries;
            for (const auto& prot : pd.protrusions) boundaries.push_back(prot.boundary);
            Graph center_graph = g.induced(pd.center);
            testutil::visit_all_subsets(pd.center, [&](const vset& a0) {
                if (static_cast<int>(a0.size()) > k) return;
                std::vector<std::vector<std::pair<AlgebraState, int>>> options;
                for (size_t i = 0; i < pd.protrusions.size(); ++i) {
                    uint32_t ann = boundary_index_mask(boundaries[i], a0);
                    int shift = std::popcount(ann);
                    std::vector<std::pair<AlgebraState, int>> opts;
                    for (const auto& [st, vec] : tables[i].counts) {
                        if (st.ann != ann) continue;
                        for (int z = 0; z + shift <= k; ++z)
                            if (!vec[z + shift].is_zero()) opts.emplace_back(st, z);
                    }
                    options.push_back(std::move(opts));
                }
                std::vector<std::pair<AlgebraState, int>> chosen(options.size());
                std::function<void(size_t, int)> rec = [&](size_t i, int left) {
                    if (i == options.size()) {
                        if (left != 0) return;
                        std::vector<AlgebraState> mapping;
                        for (auto& [st, z] : chosen) mapping.push_back(st);
                        if (!alg->combine(center_graph, a0, boundaries, mapping)) return;
                        std::string sig;
                        for (vertex_t v : a0) sig += std::to_string(v) + ",";
                        BigUInt prod(1);
                        for (size_t q = 0; q < chosen.size(); ++q) {
                            auto& [st, z] = chosen[q];
                            int shift = std::popcount(st.ann);
                            sig += "|" + std::to_string(st.ann) + "." +
                                   std::to_string(st.payload) + "." + std::to_string(z);
                            prod = prod * tables[q].at(st, z + shift);
                        }
                        want[sig] += std::stol(prod.to_decimal());
                        return;
                    }
                    for (auto& opt2 : options[i]) {
                        if (opt2.second > left) continue;
                        chosen[i] = opt2;
                        rec(i + 1, left - opt2.second);
                    }
                };
                rec(0, k - static_cast<int>(a0.size()));
            });
            CHECK(got == want);
        }
    }
}

TEST_CASE("serialization round trip and checksum") {
    PipelineOptions opt;
    Graph c3 = from_edges("a b, b c, c a");
    CompactorFile f = condense(c3, 2, vc_algebra(), opt);
    std::string bytes = serialize(f);
    CHECK(deserialize(bytes) == f);
    CHECK(serialize(deserialize(bytes)) == bytes);
    CHECK(serialize(condense(c3, 2, vc_algebra(), opt)) == bytes);  // deterministic

    CompactorFile null_file = condense(complete_graph(8), 1, vc_algebra(), opt);
    std::string null_bytes = serialize(null_file);
    CHECK(deserialize(null_bytes) == null_file);
    REQUIRE(null_bytes.rbegin()[0] == '\n');
    CHECK(null_bytes.substr(null_bytes.size() - 5) == "NULL\n");
    int newlines = 0;
    for (char c : null_bytes) newlines += c == '\n';
    CHECK(newlines == 3);

    // a tampered count digit must be rejected
    auto pos = bytes.rfind(" 1\n");
    REQUIRE(pos != std::string::npos);
    std::string tampered = bytes;
    tampered[pos + 1] = '2';
    CHECK_THROWS_AS(deserialize(tampered), parse_error);
}

TEST_CASE("deserialize input validation") {
    CHECK_THROWS_AS(deserialize(""), parse_error);
    CHECK_THROWS_AS(deserialize("COMPACTOR v2 vc k=1\nCHECKSUM 0000000000000000\nNULL\n"),
                    parse_error);
    CHECK_THROWS_AS(deserialize("COMPACTOR v1 zz k=1\nCHECKSUM 0000000000000000\nNULL\n"),
                    parse_error);
    PipelineOptions opt;
    std::string good = serialize(condense(star_graph(3), 1, vc_algebra(), opt));
    CHECK(extract(deserialize(good)) == BigUInt(1));
}

TEST_CASE("compactor size stays flat as n grows at fixed k") {
    PipelineOptions opt;
    int k = 3;
    long prev = -1;
    for (int n : {20, 40, 80}) {
        CondenseReport rep;
        Graph g = spider_graph(2, n);
        CompactorFile f = condense(g, k, vc_algebra(), opt, &rep);
        REQUIRE_FALSE(f.null_file);
        CHECK(rep.protrusion_count <= opt.mod.c * k);
        CHECK(rep.stored_values <=
              static_cast<long>(rep.max_states_per_protrusion) * (k + 1) * rep.protrusion_count);
        if (prev >= 0) CHECK(rep.stored_values <= prev);
        prev = rep.stored_values;
        CHECK(extract(f) == oracle::brute_count(g, k, vc_algebra()));
    }
}

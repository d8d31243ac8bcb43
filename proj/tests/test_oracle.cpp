#include "doctest.h"

#include "compactor/errors.hpp"
#include "compactor/corpus.hpp"
#include "compactor/oracle.hpp"
#include "testutil.hpp"

using namespace compactor;
using testutil::from_edges;

TEST_CASE("brute_count on the standard small cases") {
    Graph c3 = from_edges("a b, b c, c a");
    CHECK(oracle::brute_count(c3, 2, vc_algebra()) == BigUInt(3));
    Graph p3 = from_edges("a b, b c");
    CHECK(oracle::brute_count(p3, 1, vc_algebra()) == BigUInt(1));
    Graph c4 = from_edges("a b, b c, c d, d a");
    CHECK(oracle::brute_count(c4, 2, is_algebra()) == BigUInt(2));
    CHECK(oracle::brute_count(c4, 7, is_algebra()).is_zero());
    CHECK_THROWS_AS(oracle::brute_count(c4, -1, is_algebra()), domain_error);
}

TEST_CASE("brute_min_modulator") {
    Graph c4 = from_edges("a b, b c, c d, d a");
    CHECK(oracle::brute_min_modulator(c4, 0) == 2);
    SplitMix64 rng(3);
    CHECK(oracle::brute_min_modulator(random_tree(9, rng), 1) == 0);
    CHECK(oracle::brute_min_modulator(complete_graph(4), 1) == 2);
    CHECK_THROWS_AS(oracle::brute_min_modulator(path_graph(15), 0), unsupported_error);
}

TEST_CASE("brute_state_table edge cases") {
    BGraph empty{Graph(), {}};
    CountTable t0 = oracle::brute_state_table(empty, vc_algebra(), 0);
    REQUIRE(t0.counts.size() == 1);
    CHECK(t0.counts.begin()->second[0] == BigUInt(1));

    Graph p2 = from_edges("a b");
    CountTable t1 = oracle::brute_state_table(BGraph{p2, {}}, vc_algebra(), 0);
    BigUInt total;
    for (const auto& [s, vec] : t1.counts) total += vec[0];
    CHECK(total == BigUInt(1));  // k = 0 counts exactly the empty annotation
}

TEST_CASE("brute_count equals the combine-accepted boundaryless table mass") {
    SplitMix64 rng(17);
    Graph empty_center;
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = random_sparse(2 + static_cast<int>(rng.below(7)), 12, rng);
        int k = static_cast<int>(rng.below(3));
        for (const auto* alg : {&vc_algebra(), &is_algebra(), &ds_algebra()}) {
            CountTable tbl = oracle::brute_state_table(BGraph{g, {}}, *alg, k);
            BigUInt accepted;
            for (const auto& [s, vec] : tbl.counts)
                if (alg->combine(empty_center, {}, {vset{}}, {s})) accepted += vec[k];
            CHECK(accepted == oracle::brute_count(g, k, *alg));
        }
    }
}

TEST_CASE("elimination-order treewidth reference") {
    CHECK(oracle::treewidth_by_elimination(complete_graph(5)) == 4);
    CHECK(oracle::treewidth_by_elimination(cycle_graph(5)) == 2);
    CHECK(oracle::treewidth_by_elimination(path_graph(6)) == 1);
    CHECK_THROWS_AS(oracle::treewidth_by_elimination(path_graph(9)), unsupported_error);
}

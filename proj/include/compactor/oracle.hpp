#pragma once

#include <string>

#include "compactor/algebra.hpp"
#include "compactor/bigint.hpp"
#include "compactor/bstructure.hpp"
#include "compactor/dpcount.hpp"

namespace compactor {
// Deliberately naive references. They recompute everything from definitions
// and share nothing with the pipeline beyond graph-core; the DP, the
// compactor and the modulator are all checked against these.
namespace oracle {

// number of k-subsets satisfying the predicate; guard C(|V|, k) <= 1e7
BigUInt brute_count(const Graph& g, int k, const ProblemAlgebra& alg);

// minimum |A| with tw(g - A) <= t; |V| <= 14, and t >= 2 additionally needs
// the permutation-based treewidth reference (|V - A| <= 8)
int brute_min_modulator(const Graph& g, int t);

// definitional state of a b-structure: payload recomputed from the whole
// structure, no transitions involved
AlgebraState definitional_state(const std::string& problem, const Graph& g,
                                const vset& boundary, const vset& annotated);

// table by enumerating every annotation; guard 2^|V| <= 1e6
CountTable brute_state_table(const BGraph& bg, const ProblemAlgebra& alg, int k);

// treewidth as a minimum over all elimination orders, tried literally; |V| <= 8
int treewidth_by_elimination(const Graph& g);

}  // namespace oracle
}  // namespace compactor

#pragma once

#include <map>
#include <vector>

#include "compactor/algebra.hpp"
#include "compactor/bigint.hpp"
#include "compactor/bstructure.hpp"
#include "compactor/treedec.hpp"

namespace compactor {

// For each reachable state R and annotation size k', the number of vertex sets
// A of size k' whose b-structure (G, B, A) has state R. Counts are exact.
struct CountTable {
    vset boundary;
    int k_max = 0;
    std::map<AlgebraState, std::vector<BigUInt>> counts;  // each vector has k_max+1 slots

    const BigUInt& at(const AlgebraState& s, int kprime) const;
    BigUInt total(int kprime) const;  // sum over states
};

// Bottom-up table computation over a nice decomposition rooted at B(bg):
// leaves enumerate bag annotations, introduce shifts size by the annotation
// bit, forget projects the two histories, join convolves with the bag
// annotation double-count removed.
CountTable count_table(const BGraph& bg, const NiceTreeDecomposition& nd,
                       const ProblemAlgebra& alg, int k);

// Packages one state's counts as a polynomial in interior-annotation size:
// coefficient j = table[state, j + shift], for j in [0, degree_cap].
std::vector<BigUInt> table_polynomial(const CountTable& t, const AlgebraState& s,
                                      int shift, int degree_cap);

}  // namespace compactor

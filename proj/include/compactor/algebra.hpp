#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compactor/bstructure.hpp"
#include "compactor/graph.hpp"
#include "compactor/treedec.hpp"

namespace compactor {

// Bag-local graph: vertices are bag positions 0..n-1 in ascending vertex order.
struct BagGraph {
    int n = 0;
    std::vector<uint32_t> adj;  // adjacency bitmask per position

    bool edge(int i, int j) const { return (adj[i] >> j) & 1u; }
};

BagGraph bag_graph(const Graph& g, const vset& bag);

// Equivalence-class id of a b-structure: the annotated-boundary index set plus
// a problem-specific finite payload. Equality is structural.
struct AlgebraState {
    uint32_t ann = 0;      // 0-based bitmask over boundary positions
    uint64_t payload = 0;

    friend auto operator<=>(const AlgebraState&, const AlgebraState&) = default;
};

// DP transitions, acceptance and center combination for one vertex-certified
// property. Stateless; instances are shared singletons.
class ProblemAlgebra {
public:
    virtual ~ProblemAlgebra() = default;
    virtual std::string name() const = 0;

    // the closed-world meaning of (G, A) |= phi
    virtual bool predicate(const Graph& g, const vset& a) const = 0;

    virtual AlgebraState leaf_state(const BagGraph& bag, uint32_t ann) const = 0;
    // bag_after already contains the new vertex at position new_index
    virtual AlgebraState introduce(const AlgebraState& s, const BagGraph& bag_after,
                                   int new_index, bool annotated) const = 0;
    // removed_index refers to the child's bag; bag_after is the shrunk bag
    virtual AlgebraState forget(const AlgebraState& s, int removed_index,
                                const BagGraph& bag_after) const = 0;
    // defined only when the annotated-boundary traces agree
    virtual std::optional<AlgebraState> join(const AlgebraState& s1, const AlgebraState& s2,
                                             const BagGraph& bag) const = 0;

    // evaluates satisfaction of the glued whole from the center structure and
    // one state per protrusion; states' ann must match a0 on each boundary
    virtual bool combine(const Graph& center, const vset& a0,
                         const std::vector<vset>& boundaries,
                         const std::vector<AlgebraState>& states) const = 0;

    // canonical payload rendering for the compactor file format
    virtual std::string encode_payload(const AlgebraState& s) const = 0;
    virtual std::optional<uint64_t> decode_payload(const std::string& text) const = 0;
};

const ProblemAlgebra& vc_algebra();
const ProblemAlgebra& is_algebra();
const ProblemAlgebra& ds_algebra();
const ProblemAlgebra* algebra_by_name(const std::string& name);  // nullptr if unknown

// Fold leaf/introduce/forget/join over the nice form of d rooted at B(x).
AlgebraState state_of(const ProblemAlgebra& alg, const BStructure& x, const TreeDecomposition& d);
AlgebraState state_of(const ProblemAlgebra& alg, const BStructure& x,
                      const NiceTreeDecomposition& nd);

}  // namespace compactor

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "compactor/algebra.hpp"
#include "compactor/bstructure.hpp"
#include "compactor/graph.hpp"

namespace compactor {

// Reachable algebra states per annotation size 0..d. Together with the
// boundary-indexed graph this is the catalog key for region replacement.
struct TypeVector {
    std::vector<std::vector<AlgebraState>> per_size;  // sorted, deduplicated
    std::string encode() const;

    friend bool operator==(const TypeVector&, const TypeVector&) = default;
};

// Finite-state abstraction of "removing A leaves treewidth <= t", computed
// definitionally from the whole b-structure (no DP transitions).
// t = 0: edge-cover flag. t = 1: component partition of the unannotated
// boundary in G - A plus an acyclicity flag. t >= 2 is unsupported.
AlgebraState modulator_state(int t, const Graph& g, const vset& boundary, const vset& annotated);

// Definitional type vector of a b-graph under the treewidth-t state.
TypeVector modulator_type_vector(int t, const BGraph& bg, int d);

// Type vector of a b-graph under a problem algebra, derived from its count
// table: the states with a nonzero count per annotation size.
TypeVector type_vector(const BGraph& bg, const ProblemAlgebra& alg, int d);

// Endpoints of a greedily maximal matching: a vertex cover within twice the
// optimum, hence a 0-treewidth modulator.
vset vc_modulator_2approx(const Graph& g);

// A vertex set Y with |boundary(Y)| <= d, b < |Y| <= 2b and interior treewidth
// <= t; nullopt when the bounded search finds none (exhaustive for |V| <= 20).
std::optional<vset> find_replaceable_region(const Graph& g, int t, int d, int b);

struct ReplacementStep {
    Graph region_graph;    // G_i[Y]
    vset region_boundary;  // boundary of Y in G_i
    Graph rep_graph;       // the substituted representative, as embedded in G_{i+1}
    vset rep_boundary;     // shares ids with region_boundary
};

struct ReplacementTrace {
    int t = 0;
    int d = 0;
    std::vector<ReplacementStep> steps;
};

struct ModulatorOptions {
    int b = 8;
    int d = 5;
    int c = 4;                  // size budget multiplier: accept modulators up to c*k
    bool force_region_search = false;
    int catalog_seed_size = 4;  // pre-enumerate all b-graphs up to this many vertices
    int scan_cap = 512;         // candidate regions inspected per iteration before stalling
};

struct ModulatorResult {
    enum class Kind { Found, NoSmallModulator };
    Kind kind = Kind::Found;
    vset modulator;
    int iterations = 0;
    int replacements = 0;
    bool region_search_used = false;
    ReplacementTrace trace;
};

// Either a verified t-treewidth modulator of size <= c*k, or the report that
// no modulator of size <= k exists. Throws stalled_error when the replacement
// loop cannot shrink the graph further.
ModulatorResult approx_modulator(const Graph& g, int k, int t, const ModulatorOptions& opt);

// Replay the trace backwards, exchanging the modulator's intersection with
// each substituted representative for a same-size same-state subset of the
// original region.
vset lift_solution(const ReplacementTrace& trace, vset a);

}  // namespace compactor

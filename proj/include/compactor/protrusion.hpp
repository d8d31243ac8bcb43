#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "compactor/algebra.hpp"
#include "compactor/bstructure.hpp"
#include "compactor/graph.hpp"
#include "compactor/modulator.hpp"
#include "compactor/treedec.hpp"

namespace compactor {

// Center K plus boundaried pieces; interiors X_i = V(G_i) \ B_i partition
// V(g) \ K, every boundary lies in the center, and each rooted decomposition
// has root bag B_i.
struct ProtrusionDecomposition {
    vset center;
    std::vector<BGraph> protrusions;
    std::vector<TreeDecomposition> decompositions;  // rooted, root bag = B_i
    int alpha = 0;
    int beta = 0;
    int gamma = 0;
};

struct Y0Result {
    vset y0;
    int cuts = 0;       // separator bags moved into y0
    int witnesses = 0;  // carved pieces with >= r neighbors in x
};

// Grow x into y0 so every component Z of g - y0 sees fewer than r vertices of
// x: walk a width-<=t decomposition of each component of g - x and repeatedly
// cut the deepest subtree whose neighborhood into x reaches r, moving that
// bag into y0. |y0| <= |x| + (t+1) * cuts.
Y0Result build_y0(const Graph& g, const vset& x, int r, int t);

// Components of g - y0 grouped by their exact neighborhood in y0, ordered by
// minimum vertex.
std::vector<vset> clusters(const Graph& g, const vset& y0);

// Lemma-style construction: per cluster Y_i, the protrusion is
// (G[N[Y_i]], N(Y_i), -) with a decomposition of G[Y_i] re-rooted at a new
// bag N(Y_i) added to every bag.
ProtrusionDecomposition protrusion_decomposition(const Graph& g, const vset& x, int t, int r);

struct PdReport {
    bool ok = false;
    std::array<bool, 6> cond{};  // the six conditions, in order
    bool rooted_ok = false;      // decompositions valid, rooted at their boundary
    bool edge_cover_ok = false;  // every edge in the center graph or a protrusion
    int max_rooted_width = -1;
    int max_boundary = 0;
    std::string detail;
};

PdReport validate_protrusion_decomposition(const Graph& g, const ProtrusionDecomposition& pd);

struct NullReport {};  // verified: no annotation of size <= k satisfies the property

struct PipelineOptions {
    int t = 0;
    int r = 4;
    ModulatorOptions mod;
    std::optional<vset> external_modulator;
};

struct PipelineStats {
    vset modulator;
    int modulator_iterations = 0;
    int modulator_replacements = 0;
    bool modulator_fallback = false;  // whole vertex set used as the modulator
};

// Chain the modulator approximation and the protrusion construction. A null
// verdict is only derived for algebras whose solutions are themselves
// modulators (vc); other algebras fall back to the trivial modulator when the
// approximation declines, and ds requires an external modulator.
std::variant<ProtrusionDecomposition, NullReport> full_pipeline_decomposition(
    const Graph& g, int k, const ProblemAlgebra& alg, const PipelineOptions& opt,
    PipelineStats* stats = nullptr);

}  // namespace compactor

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "compactor/algebra.hpp"
#include "compactor/bigint.hpp"
#include "compactor/dpcount.hpp"
#include "compactor/protrusion.hpp"

namespace compactor {

struct TableEntry {
    AlgebraState state;
    int kprime = 0;
    BigUInt count;

    friend bool operator==(const TableEntry&, const TableEntry&) = default;
};

// The condenser's output: center graph (vertices renamed 1..n0 in label
// order), boundary lists as center references, and the per-protrusion count
// tables. Everything the extractor needs, in O(k^2) stored values.
struct CompactorFile {
    std::string problem;
    int k = 0;
    bool null_file = false;
    int center_n = 0;
    std::vector<std::pair<int, int>> center_edges;  // 1-based, u < v, sorted
    std::vector<std::vector<int>> boundaries;       // 1-based center indices, ascending
    std::vector<std::vector<TableEntry>> tables;    // nonzero entries, sorted

    friend bool operator==(const CompactorFile&, const CompactorFile&) = default;
};

struct CondenseReport {
    PipelineStats pipeline;
    PdReport pd_report;
    int protrusion_count = 0;
    int alpha = 0, beta = 0, gamma = 0;
    int max_states_per_protrusion = 0;
    long stored_values = 0;
};

CompactorFile condense(const Graph& g, int k, const ProblemAlgebra& alg,
                       const PipelineOptions& opt, CondenseReport* report = nullptr);

// The double sum over center annotations A0 and per-protrusion state mappings,
// with the inner vector sum realized as a truncated polynomial product.
BigUInt extract(const CompactorFile& f);

std::string serialize(const CompactorFile& f);
CompactorFile deserialize(const std::string& bytes);

BigUInt count_end_to_end(const Graph& g, int k, const ProblemAlgebra& alg,
                         const PipelineOptions& opt);

}  // namespace compactor

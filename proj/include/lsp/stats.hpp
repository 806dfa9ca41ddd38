#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "lsp/apsp.hpp"
#include "lsp/graph.hpp"

namespace lsp {

enum class ExperimentKind {
    LspDensity,       // (examined LSPs + |E|) / n^2 against the ~2.64 constant
    DistanceStats,    // mean/variance of all off-diagonal distances
    HopStats,         // mean edge count of shortest paths
    EdgeSpProb,       // fraction of edges that are themselves shortest paths
    EssentialDegree,  // max out-degree of the shortest-path edge subgraph
    BallSizes,        // mean |Ball(a, alpha ln n / n)| per alpha
    UpdateChurn,      // per-update churn of the dynamic structure
    ExamineScaling,   // examined LSPs / n^2 across a size ladder
};

std::string experiment_kind_name(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& text);

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::LspDensity;
    uint32_t n = 100;
    uint32_t trials = 1;
    WeightModel model = WeightModel::uniform01();
    Seed seed{};
    QueueKind queue = QueueKind::Bucket;

    std::vector<double> alphas{0.25, 0.5, 0.75, 1.0};  // BallSizes
    uint32_t updates = 100;                            // UpdateChurn
    std::vector<uint32_t> ladder{500, 1000, 2000};     // ExamineScaling

    // Guard against accidentally huge dense instances.
    uint64_t memory_cap_bytes = 8ull << 30;
};

// Closed-form reference quantities: exact H_{n-1}/(n-1) (the expected
// distance and the edge-shortest-path probability under mean-1 exponential
// weights), the distance variance pi^2/(2n^2), ln n, and the empirical LSP
// density constant pi^2/6 + 1.
struct ReferenceValues {
    double mean_distance;
    double var_distance;
    double log_n;
    double lsp_density;
};
ReferenceValues reference_values(uint32_t n);
double harmonic(uint32_t k);

// Aggregate statistics for one metric at one size.
struct SummaryEntry {
    uint32_t n = 0;
    std::string metric;
    double mean = 0, variance = 0, min = 0, max = 0;
    double reference = 0;
    bool has_reference = false;
};

struct ExperimentSummary {
    ExperimentKind kind;
    uint32_t trials = 0;
    std::vector<SummaryEntry> entries;
    bool sp_churn_symmetric = true;  // UpdateChurn: sp_minus == sp_plus on every row

    const SummaryEntry* find(const std::string& metric, uint32_t n = 0) const;
};

// Runs the experiment, streaming one CSV row per trial metric (schema in a
// leading "#schema:" comment) plus aggregate rows with trial = -1, and
// returns the aggregates. UpdateChurn instead emits the ChurnReport row
// format, one row per update. Timing metrics are zeroed when include_timing
// is false so byte-identical reruns are possible.
ExperimentSummary run_experiment(const ExperimentSpec& spec, std::ostream& csv_out,
                                 bool include_timing = true);

}  // namespace lsp

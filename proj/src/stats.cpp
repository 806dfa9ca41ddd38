#include "lsp/stats.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "lsp/path_system.hpp"

namespace lsp {

std::string experiment_kind_name(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::LspDensity: return "lsp-density";
        case ExperimentKind::DistanceStats: return "distance-stats";
        case ExperimentKind::HopStats: return "hop-stats";
        case ExperimentKind::EdgeSpProb: return "edge-sp-prob";
        case ExperimentKind::EssentialDegree: return "essential-degree";
        case ExperimentKind::BallSizes: return "ball-sizes";
        case ExperimentKind::UpdateChurn: return "update-churn";
        case ExperimentKind::ExamineScaling: return "examine-scaling";
    }
    return "?";
}

ExperimentKind parse_experiment_kind(const std::string& text) {
    for (ExperimentKind k :
         {ExperimentKind::LspDensity, ExperimentKind::DistanceStats, ExperimentKind::HopStats,
          ExperimentKind::EdgeSpProb, ExperimentKind::EssentialDegree, ExperimentKind::BallSizes,
          ExperimentKind::UpdateChurn, ExperimentKind::ExamineScaling})
        if (experiment_kind_name(k) == text) return k;
    throw std::invalid_argument("unknown experiment kind: " + text);
}

double harmonic(uint32_t k) {
    double h = 0.0;
    for (uint32_t i = 1; i <= k; ++i) h += 1.0 / i;
    return h;
}

ReferenceValues reference_values(uint32_t n) {
    if (n < 2) throw std::invalid_argument("reference_values: n must be >= 2");
    double pi2 = std::numbers::pi * std::numbers::pi;
    return ReferenceValues{harmonic(n - 1) / (n - 1), pi2 / (2.0 * double(n) * n), std::log(double(n)),
                           pi2 / 6.0 + 1.0};
}

const SummaryEntry* ExperimentSummary::find(const std::string& metric, uint32_t n) const {
    for (const auto& e : entries)
        if (e.metric == metric && (n == 0 || e.n == n)) return &e;
    return nullptr;
}

namespace {

struct MetricValue {
    std::string name;
    double value;
    double reference = 0;
    bool has_reference = false;
    bool timing = false;
};

class RowWriter {
public:
    RowWriter(std::ostream& out, ExperimentKind kind, const WeightModel& model, bool include_timing)
        : out_(out), kind_(experiment_kind_name(kind)), model_(model.name()), timing_(include_timing) {
        out_ << "#schema: kind,n,model,seed,trial,metric,value,reference (trial -1 rows are "
                "mean_/var_/min_/max_ aggregates)\n";
        out_ << "kind,n,model,seed,trial,metric,value,reference\n";
    }

    void row(uint32_t n, uint64_t seed, int64_t trial, const MetricValue& m) {
        char buf[128];
        double v = (m.timing && !timing_) ? 0.0 : m.value;
        std::snprintf(buf, sizeof buf, ",%" PRId64 ",%s,%.17g,", trial, m.name.c_str(), v);
        out_ << kind_ << ',' << n << ',' << model_ << ',' << seed << buf;
        if (m.has_reference) {
            char ref[64];
            std::snprintf(ref, sizeof ref, "%.17g", m.reference);
            out_ << ref;
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
    std::string kind_;
    std::string model_;
    bool timing_;
};

class Aggregator {
public:
    void add(uint32_t n, const MetricValue& m) {
        auto& acc = slots_[{n, m.name}];
        if (acc.count == 0) {
            acc.min = acc.max = m.value;
        } else {
            acc.min = std::min(acc.min, m.value);
            acc.max = std::max(acc.max, m.value);
        }
        ++acc.count;
        acc.sum += m.value;
        acc.sum_sq += m.value * m.value;
        acc.reference = m.reference;
        acc.has_reference = m.has_reference;
        acc.timing = m.timing;
        order_.emplace_back(n, m.name);
    }

    // Emits aggregate rows (trial = -1) and fills the summary.
    void finish(RowWriter& writer, uint64_t seed, ExperimentSummary& summary) {
        std::vector<std::pair<uint32_t, std::string>> seen;
        for (auto& key : order_) {
            if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
            seen.push_back(key);
            const Acc& acc = slots_[key];
            double mean = acc.sum / acc.count;
            double var = acc.count > 1 ? std::max(0.0, (acc.sum_sq - acc.sum * acc.sum / acc.count) /
                                                            (acc.count - 1))
                                       : 0.0;
            SummaryEntry e{key.first, key.second, mean, var, acc.min, acc.max, acc.reference,
                           acc.has_reference};
            summary.entries.push_back(e);
            MetricValue m{"mean_" + key.second, mean, acc.reference, acc.has_reference, acc.timing};
            writer.row(key.first, seed, -1, m);
            writer.row(key.first, seed, -1, {"var_" + key.second, var, 0, false, acc.timing});
            writer.row(key.first, seed, -1, {"min_" + key.second, acc.min, 0, false, acc.timing});
            writer.row(key.first, seed, -1, {"max_" + key.second, acc.max, 0, false, acc.timing});
        }
    }

private:
    struct Acc {
        uint64_t count = 0;
        double sum = 0, sum_sq = 0, min = 0, max = 0;
        double reference = 0;
        bool has_reference = false;
        bool timing = false;
    };
    std::map<std::pair<uint32_t, std::string>, Acc> slots_;
    std::vector<std::pair<uint32_t, std::string>> order_;
};

void check_memory_cap(uint64_t n, uint64_t cap_bytes) {
    // Rough footprint of one dense solve: distance/p/q tables, extension
    // pools and the bucket structure, about 100 bytes per vertex pair.
    uint64_t estimate = n * n * 100;
    if (estimate > cap_bytes)
        throw std::invalid_argument("experiment would need ~" + std::to_string(estimate >> 20) +
                                    " MiB for n=" + std::to_string(n) + ", over the configured cap");
}

// One solve-based trial: returns the headline metrics for the kind.
std::vector<MetricValue> solve_trial(const ExperimentSpec& spec, uint32_t n, Seed trial_seed) {
    auto refs = reference_values(n);
    WeightedDigraph g = gen_complete(n, spec.model, trial_seed);
    ApspResult result = solve_apsp(g, spec.queue);
    std::vector<MetricValue> metrics;

    switch (spec.kind) {
        case ExperimentKind::LspDensity: {
            double total = double(result.examined_lsp_count) + double(g.edge_count());
            metrics.push_back({"lsp_total", total});
            metrics.push_back({"lsp_ratio", total / (double(n) * n), refs.lsp_density, true});
            break;
        }
        case ExperimentKind::DistanceStats: {
            double sum = 0, sum_sq = 0, mn = WeightedDigraph::kAbsent, mx = 0;
            uint64_t count = 0;
            for (Vertex u = 0; u < n; ++u)
                for (Vertex v = 0; v < n; ++v) {
                    if (u == v) continue;
                    double d = result.distance(u, v);
                    sum += d;
                    sum_sq += d * d;
                    mn = std::min(mn, d);
                    mx = std::max(mx, d);
                    ++count;
                }
            double mean = sum / count;
            metrics.push_back({"dist_mean", mean, refs.mean_distance, true});
            metrics.push_back({"dist_var", sum_sq / count - mean * mean, refs.var_distance, true});
            metrics.push_back({"dist_min", mn});
            metrics.push_back({"dist_max", mx});
            break;
        }
        case ExperimentKind::HopStats:
            metrics.push_back({"hops_mean", result.mean_hops(), refs.log_n, true});
            break;
        case ExperimentKind::EdgeSpProb: {
            auto essential = essential_subgraph(result, g);
            metrics.push_back({"edge_sp_fraction",
                               double(essential.edges.size()) / double(g.edge_count()),
                               refs.mean_distance, true});
            metrics.push_back({"essential_edges", double(essential.edges.size())});
            break;
        }
        case ExperimentKind::EssentialDegree: {
            auto essential = essential_subgraph(result, g);
            metrics.push_back({"delta", double(essential.max_out_degree), refs.log_n, true});
            break;
        }
        case ExperimentKind::BallSizes: {
            for (double alpha : spec.alphas) {
                double radius = alpha * refs.log_n / n;
                uint64_t total = 0;
                for (Vertex a = 0; a < n; ++a)
                    for (Vertex b = 0; b < n; ++b)
                        if (result.distance(a, b) <= radius) ++total;
                char name[64];
                std::snprintf(name, sizeof name, "ball_mean_alpha_%g", alpha);
                metrics.push_back({name, double(total) / n, std::pow(double(n), alpha), true});
            }
            break;
        }
        case ExperimentKind::ExamineScaling:
            metrics.push_back(
                {"examined_ratio", double(result.examined_lsp_count) / (double(n) * n)});
            break;
        default:
            throw std::logic_error("solve_trial: wrong kind");
    }
    metrics.push_back({"micros", result.solve_micros, 0, false, true});
    return metrics;
}

ExperimentSummary run_update_churn(const ExperimentSpec& spec, std::ostream& out, bool timing) {
    write_churn_csv_header(out);
    ExperimentSummary summary{spec.kind, spec.trials, {}, true};

    double sp_sum = 0, lsp_sum = 0, lambda_max = 0, micros_sum = 0;
    double sp_sq = 0, lsp_sq = 0;
    double sp_min = 0, sp_max = 0, lsp_min = 0, lsp_max = 0;
    uint64_t rows = 0;

    for (uint32_t trial = 0; trial < spec.trials; ++trial) {
        Seed trial_seed = derive_seed(spec.seed, trial);
        WeightedDigraph g = gen_complete(spec.n, spec.model, trial_seed);
        PathSystem system(std::move(g));
        for (uint32_t step = 0; step < spec.updates; ++step) {
            EdgeUpdate update =
                sample_edge_update(system.graph(), spec.model, derive_seed(trial_seed, 1000 + step));
            ChurnReport report = system.apply_update(update);
            write_churn_csv_row(out, trial_seed.value, spec.n, step, report, timing);
            if (report.sp_minus != report.sp_plus) summary.sp_churn_symmetric = false;
            double sp = double(report.sp_minus), lsp = double(report.lsp_minus);
            if (rows == 0) {
                sp_min = sp_max = sp;
                lsp_min = lsp_max = lsp;
            }
            sp_sum += sp;
            sp_sq += sp * sp;
            sp_min = std::min(sp_min, sp);
            sp_max = std::max(sp_max, sp);
            lsp_sum += lsp;
            lsp_sq += lsp * lsp;
            lsp_min = std::min(lsp_min, lsp);
            lsp_max = std::max(lsp_max, lsp);
            lambda_max = std::max(lambda_max, double(report.lambda));
            micros_sum += report.micros;
            ++rows;
        }
    }
    auto push = [&](const std::string& name, double mean, double var, double mn, double mx,
                    double ref, bool has_ref) {
        summary.entries.push_back({spec.n, name, mean, var, mn, mx, ref, has_ref});
    };
    double log_n = std::log(double(spec.n));
    if (rows) {
        push("sp_minus", sp_sum / rows,
             rows > 1 ? std::max(0.0, (sp_sq - sp_sum * sp_sum / rows) / (rows - 1)) : 0.0, sp_min,
             sp_max, log_n, true);
        push("lsp_minus", lsp_sum / rows,
             rows > 1 ? std::max(0.0, (lsp_sq - lsp_sum * lsp_sum / rows) / (rows - 1)) : 0.0,
             lsp_min, lsp_max, log_n * log_n, true);
        push("lambda_max", lambda_max, 0, lambda_max, lambda_max, log_n, true);
        push("micros_mean", timing ? micros_sum / rows : 0.0, 0, 0, 0, 0, false);
    }
    return summary;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentSpec& spec, std::ostream& csv_out,
                                 bool include_timing) {
    if (spec.trials < 1) throw std::invalid_argument("experiment needs at least one trial");
    if (spec.n < 2) throw std::invalid_argument("experiment needs n >= 2");

    if (spec.kind == ExperimentKind::UpdateChurn) {
        if (spec.updates < 1) throw std::invalid_argument("update-churn needs at least one update");
        check_memory_cap(spec.n, spec.memory_cap_bytes);
        return run_update_churn(spec, csv_out, include_timing);
    }

    std::vector<uint32_t> sizes =
        spec.kind == ExperimentKind::ExamineScaling ? spec.ladder : std::vector<uint32_t>{spec.n};
    if (sizes.empty()) throw std::invalid_argument("examine-scaling needs a size ladder");
    for (uint32_t n : sizes) {
        if (n < 2) throw std::invalid_argument("experiment needs n >= 2");
        check_memory_cap(n, spec.memory_cap_bytes);
    }

    RowWriter writer(csv_out, spec.kind, spec.model, include_timing);
    Aggregator agg;
    for (uint32_t n : sizes)
        for (uint32_t trial = 0; trial < spec.trials; ++trial) {
            Seed trial_seed = derive_seed(spec.seed, uint64_t(n) * 1000003 + trial);
            for (const auto& metric : solve_trial(spec, n, trial_seed)) {
                writer.row(n, spec.seed.value, trial, metric);
                if (!metric.timing || include_timing) agg.add(n, metric);
            }
        }

    ExperimentSummary summary{spec.kind, spec.trials, {}, true};
    agg.finish(writer, spec.seed.value, summary);
    return summary;
}

}  // namespace lsp

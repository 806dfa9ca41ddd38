#include "lsp/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "lsp/apsp.hpp"
#include "lsp/graph.hpp"
#include "lsp/oracle.hpp"
#include "lsp/path_system.hpp"
#include "lsp/stats.hpp"

namespace lsp {

namespace {

// Writes to a file or, for "-", to stdout.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (path != "-") {
            file_.open(path);
            if (!file_) throw std::runtime_error("cannot open for writing: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct CommonOptions {
    uint32_t n = 100;
    std::string model = "uniform";
    uint64_t seed = kDefaultSeed;
    std::string out = "-";
    bool no_timing = false;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_timing_flag = true) {
    cmd->add_option("--n", opt.n, "vertex count")->check(CLI::Range(2u, 65535u));
    cmd->add_option("--model", opt.model, "weight model: uniform|exp|int:<max>");
    cmd->add_option("--seed", opt.seed, "random seed (default 42)");
    cmd->add_option("--out", opt.out, "output path, '-' for stdout");
    if (with_timing_flag)
        cmd->add_flag("--no-timing", opt.no_timing, "zero out timing columns for reproducible output");
}

QueueKind parse_queue(const std::string& text) {
    if (text == "bucket") return QueueKind::Bucket;
    if (text == "comparison") return QueueKind::Comparison;
    throw CLI::ValidationError("--queue", "expected bucket|comparison");
}

int run_gen(const CommonOptions& opt, double p, bool has_p) {
    WeightModel model = WeightModel::parse(opt.model);
    WeightedDigraph g = has_p ? gen_gnp(opt.n, p, model, Seed{opt.seed})
                              : gen_complete(opt.n, model, Seed{opt.seed});
    OutputTarget out(opt.out);
    save_graph(g, out.stream());
    return 0;
}

int run_solve(const CommonOptions& opt, const std::string& in_path, const std::string& queue_name,
              const std::string& summary_path) {
    WeightedDigraph g = in_path.empty()
                            ? gen_complete(opt.n, WeightModel::parse(opt.model), Seed{opt.seed})
                            : load_graph_file(in_path);
    QueueKind queue = parse_queue(queue_name);
    ApspResult result = solve_apsp(g, queue);

    {
        OutputTarget out(opt.out);
        write_dist_csv(result, out.stream());
    }

    nlohmann::json summary{{"n", result.n},
                           {"edges", g.edge_count()},
                           {"queue", queue_name},
                           {"fallback_engaged", result.fallback_engaged},
                           {"examined_lsp_count", result.examined_lsp_count},
                           {"lsp_total", result.examined_lsp_count + g.edge_count()},
                           {"micros", opt.no_timing ? 0.0 : result.solve_micros}};
    if (summary_path == "-" && opt.out == "-") {
        std::cerr << summary.dump(2) << '\n';  // keep the CSV on stdout clean
    } else {
        OutputTarget out(summary_path);
        out.stream() << summary.dump(2) << '\n';
    }
    return 0;
}

int run_verify(const CommonOptions& opt, const std::string& mode_name, uint32_t trials,
               const std::string& queue_name) {
    oracle::VerifyMode mode;
    if (mode_name == "dist-only")
        mode = oracle::VerifyMode::DistOnly;
    else if (mode_name == "full-lsp")
        mode = oracle::VerifyMode::FullLsp;
    else
        throw CLI::ValidationError("--mode", "expected dist-only|full-lsp");
    if (mode == oracle::VerifyMode::FullLsp && opt.n > 64)
        throw CLI::ValidationError("--n", "full-lsp mode needs n <= 64");

    WeightModel model = WeightModel::parse(opt.model);
    QueueKind queue = parse_queue(queue_name);
    uint32_t failures = 0;
    nlohmann::json failing = nlohmann::json::array();
    for (uint32_t trial = 0; trial < trials; ++trial) {
        Seed seed = derive_seed(Seed{opt.seed}, trial);
        WeightedDigraph g = gen_complete(opt.n, model, seed);
        ApspResult result = solve_apsp(g, queue);
        auto report = oracle::verify_apsp(result, g, mode);
        bool ok = report.pass;
        if (mode == oracle::VerifyMode::FullLsp) {
            PathSystem system(g);
            auto dyn_report = oracle::verify_path_system(system, mode);
            if (!dyn_report.pass) {
                ok = false;
                if (failing.size() < 5) failing.push_back(dyn_report.to_json());
            }
        }
        if (!report.pass && failing.size() < 5) failing.push_back(report.to_json());
        if (!ok) ++failures;
    }

    nlohmann::json summary{{"mode", mode_name}, {"n", opt.n},      {"trials", trials},
                           {"failures", failures}, {"pass", failures == 0}, {"failing", failing}};
    OutputTarget out(opt.out);
    out.stream() << summary.dump(2) << '\n';
    return failures == 0 ? 0 : 1;
}

int run_dyn(const CommonOptions& opt, uint32_t updates) {
    WeightModel model = WeightModel::parse(opt.model);
    Seed seed{opt.seed};
    PathSystem system(gen_complete(opt.n, model, seed));
    OutputTarget out(opt.out);
    write_churn_csv_header(out.stream());
    for (uint32_t step = 0; step < updates; ++step) {
        EdgeUpdate update = sample_edge_update(system.graph(), model, derive_seed(seed, 1000 + step));
        ChurnReport report = system.apply_update(update);
        write_churn_csv_row(out.stream(), seed.value, opt.n, step, report, !opt.no_timing);
    }
    return 0;
}

int run_stats(const CommonOptions& opt, const std::string& kind_name, uint32_t trials,
              uint32_t updates, const std::string& queue_name, std::vector<double> alphas,
              std::vector<uint32_t> ladder, double mem_cap_gb) {
    ExperimentSpec spec;
    spec.kind = parse_experiment_kind(kind_name);
    spec.n = opt.n;
    spec.trials = trials;
    spec.model = WeightModel::parse(opt.model);
    spec.seed = Seed{opt.seed};
    spec.queue = parse_queue(queue_name);
    spec.updates = updates;
    if (!alphas.empty()) spec.alphas = std::move(alphas);
    if (!ladder.empty()) spec.ladder = std::move(ladder);
    spec.memory_cap_bytes = static_cast<uint64_t>(mem_cap_gb * double(1ull << 30));
    OutputTarget out(opt.out);
    run_experiment(spec, out.stream(), !opt.no_timing);
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"all-pairs shortest paths over locally shortest paths: generators, static and "
                 "dynamic solvers, oracle verification, and experiments"};
    app.require_subcommand(1);

    CommonOptions gen_opt, solve_opt, verify_opt, dyn_opt, stats_opt;

    auto* gen = app.add_subcommand("gen", "generate a random graph file");
    add_common(gen, gen_opt, false);
    double gnp_p = 1.0;
    auto* p_option = gen->add_option("--p", gnp_p, "edge probability; omit for a complete graph")
                         ->check(CLI::Range(0.0, 1.0));

    auto* solve = app.add_subcommand("solve", "run the static solver; distance CSV plus JSON summary");
    add_common(solve, solve_opt);
    std::string solve_in, solve_queue = "bucket", solve_summary = "-";
    solve->add_option("--in", solve_in, "read a graph file instead of generating");
    solve->add_option("--queue", solve_queue, "bucket|comparison");
    solve->add_option("--summary", solve_summary, "summary JSON path ('-': stdout, or stderr when the CSV has stdout)");

    auto* verify = app.add_subcommand("verify", "check solver output against brute-force oracles");
    add_common(verify, verify_opt);
    std::string verify_mode = "dist-only", verify_queue = "bucket";
    uint32_t verify_trials = 1;
    verify->add_option("--mode", verify_mode, "dist-only|full-lsp");
    verify->add_option("--trials", verify_trials, "independent seeds to check");
    verify->add_option("--queue", verify_queue, "bucket|comparison");

    auto* dyn = app.add_subcommand("dyn", "random edge updates on the dynamic structure; churn CSV");
    add_common(dyn, dyn_opt);
    uint32_t dyn_updates = 100;
    dyn->add_option("--updates", dyn_updates, "number of random edge updates");

    auto* stats = app.add_subcommand("stats", "run a statistics experiment; CSV rows");
    add_common(stats, stats_opt);
    std::string stats_kind = "lsp-density", stats_queue = "bucket";
    uint32_t stats_trials = 1, stats_updates = 100;
    std::vector<double> stats_alphas;
    std::vector<uint32_t> stats_ladder;
    double stats_mem_cap = 8.0;
    stats->add_option("--kind", stats_kind,
                      "lsp-density|distance-stats|hop-stats|edge-sp-prob|essential-degree|"
                      "ball-sizes|update-churn|examine-scaling");
    stats->add_option("--trials", stats_trials, "trials per size");
    stats->add_option("--updates", stats_updates, "updates per trial (update-churn)");
    stats->add_option("--queue", stats_queue, "bucket|comparison");
    stats->add_option("--alphas", stats_alphas, "ball radii as multiples of ln(n)/n")->delimiter(',');
    stats->add_option("--ladder", stats_ladder, "sizes for examine-scaling")->delimiter(',');
    stats->add_option("--mem-cap-gb", stats_mem_cap, "refuse experiments estimated above this");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed()) return run_gen(gen_opt, gnp_p, p_option->count() > 0);
        if (solve->parsed()) return run_solve(solve_opt, solve_in, solve_queue, solve_summary);
        if (verify->parsed()) return run_verify(verify_opt, verify_mode, verify_trials, verify_queue);
        if (dyn->parsed()) return run_dyn(dyn_opt, dyn_updates);
        if (stats->parsed())
            return run_stats(stats_opt, stats_kind, stats_trials, stats_updates, stats_queue,
                             stats_alphas, stats_ladder, stats_mem_cap);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace lsp

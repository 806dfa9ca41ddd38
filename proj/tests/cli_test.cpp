#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "lsp/cli.hpp"
#include "lsp/graph.hpp"

using namespace lsp;

namespace {

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / ("lspaths_test_" + name)).string();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    explicit TempFile(const std::string& name) : path(temp_path(name)) {}
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
};

}  // namespace

TEST_CASE("gen writes a loadable graph file") {
    TempFile file("gen.graph");
    REQUIRE(dispatch({"gen", "--n", "12", "--seed", "5", "--out", file.path}) == 0);
    WeightedDigraph g = load_graph_file(file.path);
    CHECK(g.n() == 12);
    CHECK(g.is_complete());
    CHECK(g == gen_complete(12, WeightModel::uniform01(), Seed{5}));
}

TEST_CASE("gen honors the gnp flag") {
    TempFile file("gnp.graph");
    REQUIRE(dispatch({"gen", "--n", "40", "--p", "0.3", "--seed", "5", "--out", file.path}) == 0);
    WeightedDigraph g = load_graph_file(file.path);
    CHECK(!g.is_complete());
    CHECK(g == gen_gnp(40, 0.3, WeightModel::uniform01(), Seed{5}));
}

TEST_CASE("solve emits byte-identical output for identical arguments") {
    TempFile dist_a("dist_a.csv"), dist_b("dist_b.csv");
    TempFile sum_a("sum_a.json"), sum_b("sum_b.json");
    std::vector<std::string> base{"solve", "--n",   "40",        "--model", "uniform",
                                  "--seed", "7",    "--queue",   "bucket",  "--no-timing"};
    auto run = [&](const std::string& dist, const std::string& summary) {
        auto args = base;
        args.insert(args.end(), {"--out", dist, "--summary", summary});
        return dispatch(args);
    };
    REQUIRE(run(dist_a.path, sum_a.path) == 0);
    REQUIRE(run(dist_b.path, sum_b.path) == 0);
    CHECK(slurp(dist_a.path) == slurp(dist_b.path));
    CHECK(slurp(sum_a.path) == slurp(sum_b.path));
    CHECK(slurp(sum_a.path).find("\"examined_lsp_count\"") != std::string::npos);
    CHECK(slurp(dist_a.path).substr(0, 2) == "0,");  // diagonal entry first
}

TEST_CASE("solve reads graph files") {
    TempFile graph("roundtrip.graph"), dist("roundtrip.csv"), summary("roundtrip.json");
    REQUIRE(dispatch({"gen", "--n", "10", "--seed", "3", "--out", graph.path}) == 0);
    REQUIRE(dispatch({"solve", "--in", graph.path, "--out", dist.path, "--summary", summary.path,
                      "--no-timing"}) == 0);
    CHECK(!slurp(dist.path).empty());
}

TEST_CASE("verify exercises the oracle suite") {
    TempFile report("verify.json");
    CHECK(dispatch({"verify", "--n", "16", "--mode", "full-lsp", "--trials", "4", "--seed", "2",
                    "--out", report.path}) == 0);
    CHECK(slurp(report.path).find("\"pass\": true") != std::string::npos);
    CHECK(dispatch({"verify", "--n", "30", "--mode", "dist-only", "--trials", "3", "--out",
                    report.path}) == 0);
}

TEST_CASE("dyn emits one symmetric churn row per update") {
    TempFile csv("dyn.csv");
    REQUIRE(dispatch({"dyn", "--n", "25", "--updates", "12", "--seed", "3", "--no-timing", "--out",
                      csv.path}) == 0);
    std::istringstream lines(slurp(csv.path));
    std::string line;
    std::getline(lines, line);
    CHECK(line.rfind("#schema:", 0) == 0);
    std::getline(lines, line);
    CHECK(line == "seed,n,update_index,sp_minus,sp_plus,lsp_minus,lsp_plus,lambda,micros");
    int rows = 0;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream row(line);
        std::string field;
        while (std::getline(row, field, ',')) fields.push_back(field);
        REQUIRE(fields.size() == 9);
        CHECK(fields[3] == fields[4]);  // sp_minus == sp_plus
        CHECK(fields[8] == "0.0");      // --no-timing
        ++rows;
    }
    CHECK(rows == 12);
}

TEST_CASE("stats runs an experiment end to end") {
    TempFile csv("stats.csv");
    REQUIRE(dispatch({"stats", "--kind", "distance-stats", "--n", "30", "--trials", "2",
                      "--model", "exp", "--no-timing", "--out", csv.path}) == 0);
    std::string text = slurp(csv.path);
    CHECK(text.find("dist_mean") != std::string::npos);
    CHECK(text.find("mean_dist_mean") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
    CHECK(dispatch({}) == 2);
    CHECK(dispatch({"frobnicate"}) == 2);
    CHECK(dispatch({"solve", "--queue", "magic"}) == 2);
    CHECK(dispatch({"gen", "--n", "1"}) == 2);
    CHECK(dispatch({"stats", "--kind", "nope"}) == 2);
    CHECK(dispatch({"verify", "--n", "100", "--mode", "full-lsp"}) == 2);  // needs n <= 64
}

TEST_CASE("help exits cleanly") {
    CHECK(dispatch({"--help"}) == 0);
}

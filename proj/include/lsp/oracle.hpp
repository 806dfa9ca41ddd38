#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lsp/graph.hpp"

#include "json.hpp"

namespace lsp {

struct ApspResult;
class PathSystem;

// Deliberately simple reference implementations used as ground truth. None of
// this is shared with the solvers it checks.
namespace oracle {

struct SsspResult {
    std::vector<double> dist;     // +infinity when unreachable
    std::vector<Vertex> parent;   // penultimate vertex on source~>v, kNoVertex at source/unreachable
};

SsspResult dijkstra_sssp(const WeightedDigraph& g, Vertex source);

// Row-major n x n distance matrix from per-source Dijkstra runs.
std::vector<double> dijkstra_all_pairs(const WeightedDigraph& g);

std::vector<double> floyd_warshall(const WeightedDigraph& g);

// One locally shortest path: its vertex sequence (>= 2 vertices) and cost.
struct LspDescriptor {
    std::vector<Vertex> vertices;
    double cost = 0.0;

    bool operator<(const LspDescriptor& other) const { return vertices < other.vertices; }
    bool operator==(const LspDescriptor& other) const { return vertices == other.vertices; }
    std::string to_string() const;
};

// Constructively enumerates every LSP with at least one edge: each candidate
// is an edge (u,p) followed by the unique shortest path p~>v, kept when its
// prefix minus the last edge is itself a shortest path. Includes cyclic
// candidates with u == v. Guarded to n <= 64; throws "ambiguous instance"
// when two candidate shortest paths for some pair tie within 1e-12.
std::vector<LspDescriptor> enumerate_lsps(const WeightedDigraph& g);

enum class VerifyMode { DistOnly, FullLsp };

struct DistMismatch {
    Vertex u, v;
    double got, want;
};

struct VerifyReport {
    bool pass = true;
    uint64_t dist_mismatch_count = 0;
    std::vector<DistMismatch> dist_mismatches;  // first 10
    uint64_t lsp_count_got = 0;
    uint64_t lsp_count_want = 0;
    std::vector<std::string> lsp_missing;  // first 10
    std::vector<std::string> lsp_extra;    // first 10

    nlohmann::json to_json() const;
};

// Distances within 1e-9 relative (infinities must match exactly); FullLsp
// additionally checks examined_lsp_count + |E| against the enumerated LSP
// count.
VerifyReport verify_apsp(const ApspResult& result, const WeightedDigraph& g, VerifyMode mode);

// Same distance check for the dynamic structure; FullLsp compares the stored
// path set with the enumerated one.
VerifyReport verify_path_system(const PathSystem& system, VerifyMode mode);

bool nearly_equal_dist(double got, double want, double rel_tol = 1e-9);

}  // namespace oracle
}  // namespace lsp

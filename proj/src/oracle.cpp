#include "lsp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "lsp/apsp.hpp"
#include "lsp/path_system.hpp"

namespace lsp::oracle {

bool nearly_equal_dist(double got, double want, double rel_tol) {
    if (got == want) return true;  // covers matching infinities and exact hits
    if (!std::isfinite(got) || !std::isfinite(want)) return false;
    return std::abs(got - want) <= rel_tol * std::max({1.0, std::abs(got), std::abs(want)});
}

SsspResult dijkstra_sssp(const WeightedDigraph& g, Vertex source) {
    uint32_t n = g.n();
    SsspResult out;
    out.dist.assign(n, WeightedDigraph::kAbsent);
    out.parent.assign(n, kNoVertex);
    std::vector<char> done(n, 0);

    using Item = std::pair<double, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    out.dist[source] = 0.0;
    heap.push({0.0, source});
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (done[u]) continue;
        done[u] = 1;
        for (Vertex v = 0; v < n; ++v) {
            if (v == u || !g.has_edge(u, v)) continue;
            double nd = d + g.weight(u, v);
            if (nd < out.dist[v]) {
                out.dist[v] = nd;
                out.parent[v] = u;
                heap.push({nd, v});
            }
        }
    }
    return out;
}

std::vector<double> dijkstra_all_pairs(const WeightedDigraph& g) {
    uint32_t n = g.n();
    std::vector<double> dist(size_t(n) * n);
    for (Vertex s = 0; s < n; ++s) {
        auto row = dijkstra_sssp(g, s);
        std::copy(row.dist.begin(), row.dist.end(), dist.begin() + size_t(s) * n);
    }
    return dist;
}

std::vector<double> floyd_warshall(const WeightedDigraph& g) {
    uint32_t n = g.n();
    std::vector<double> d(size_t(n) * n, WeightedDigraph::kAbsent);
    for (Vertex u = 0; u < n; ++u) {
        d[size_t(u) * n + u] = 0.0;
        for (Vertex v = 0; v < n; ++v)
            if (u != v && g.has_edge(u, v)) d[size_t(u) * n + v] = g.weight(u, v);
    }
    for (Vertex k = 0; k < n; ++k)
        for (Vertex i = 0; i < n; ++i) {
            double dik = d[size_t(i) * n + k];
            if (dik == WeightedDigraph::kAbsent) continue;
            for (Vertex j = 0; j < n; ++j) {
                double via = dik + d[size_t(k) * n + j];
                if (via < d[size_t(i) * n + j]) d[size_t(i) * n + j] = via;
            }
        }
    return d;
}

std::string LspDescriptor::to_string() const {
    std::ostringstream out;
    for (size_t i = 0; i < vertices.size(); ++i) {
        if (i) out << "->";
        out << vertices[i];
    }
    return out.str();
}

std::vector<LspDescriptor> enumerate_lsps(const WeightedDigraph& g) {
    constexpr double kTieTol = 1e-12;
    uint32_t n = g.n();
    if (n > 64) throw std::invalid_argument("enumerate_lsps: refused for n > 64");

    std::vector<SsspResult> sssp;
    sssp.reserve(n);
    for (Vertex s = 0; s < n; ++s) sssp.push_back(dijkstra_sssp(g, s));

    // Tie detection: a pair with two distinct minimizing predecessors has two
    // distinct shortest paths, which the constructive definition cannot
    // disambiguate.
    for (Vertex s = 0; s < n; ++s)
        for (Vertex t = 0; t < n; ++t) {
            if (s == t || sssp[s].dist[t] == WeightedDigraph::kAbsent) continue;
            int minimizers = 0;
            for (Vertex w = 0; w < n; ++w) {
                if (w == t || !g.has_edge(w, t)) continue;
                if (sssp[s].dist[w] == WeightedDigraph::kAbsent) continue;
                if (std::abs(sssp[s].dist[w] + g.weight(w, t) - sssp[s].dist[t]) <= kTieTol) ++minimizers;
            }
            if (minimizers > 1) throw std::runtime_error("enumerate_lsps: ambiguous instance");
        }

    auto shortest_path_vertices = [&](Vertex s, Vertex t) {
        std::vector<Vertex> seq;
        for (Vertex cur = t; cur != s; cur = sssp[s].parent[cur]) seq.push_back(cur);
        seq.push_back(s);
        std::reverse(seq.begin(), seq.end());
        return seq;
    };

    std::vector<LspDescriptor> out;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex p = 0; p < n; ++p) {
            if (p == u || !g.has_edge(u, p)) continue;
            double w_up = g.weight(u, p);
            for (Vertex v = 0; v < n; ++v) {
                if (v == p) {
                    out.push_back({{u, p}, w_up});  // a single edge is always an LSP
                    continue;
                }
                if (sssp[p].dist[v] == WeightedDigraph::kAbsent) continue;
                // Candidate u -> p ~> v qualifies when its prefix minus the
                // last edge is the shortest path from u to the penultimate
                // vertex.
                Vertex penult = sssp[p].parent[v];
                double prefix = w_up + (penult == p ? 0.0 : sssp[p].dist[penult]);
                if (sssp[u].dist[penult] == WeightedDigraph::kAbsent) continue;
                if (std::abs(prefix - sssp[u].dist[penult]) > kTieTol) continue;
                LspDescriptor d;
                d.vertices.push_back(u);
                auto tail = shortest_path_vertices(p, v);
                d.vertices.insert(d.vertices.end(), tail.begin(), tail.end());
                d.cost = w_up + sssp[p].dist[v];
                out.push_back(std::move(d));
            }
        }
    return out;
}

nlohmann::json VerifyReport::to_json() const {
    nlohmann::json dist = nlohmann::json::array();
    for (const auto& m : dist_mismatches)
        dist.push_back({{"u", m.u}, {"v", m.v}, {"got", m.got}, {"want", m.want}});
    return nlohmann::json{{"pass", pass},
                          {"dist_mismatch_count", dist_mismatch_count},
                          {"dist_mismatches", dist},
                          {"lsp_count_got", lsp_count_got},
                          {"lsp_count_want", lsp_count_want},
                          {"lsp_missing", lsp_missing},
                          {"lsp_extra", lsp_extra}};
}

namespace {

void compare_dist(VerifyReport& report, const std::vector<double>& got,
                  const std::vector<double>& want, uint32_t n) {
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            size_t i = size_t(u) * n + v;
            if (nearly_equal_dist(got[i], want[i])) continue;
            report.pass = false;
            ++report.dist_mismatch_count;
            if (report.dist_mismatches.size() < 10)
                report.dist_mismatches.push_back({u, v, got[i], want[i]});
        }
}

void compare_lsp_sets(VerifyReport& report, std::vector<LspDescriptor> got,
                      std::vector<LspDescriptor> want) {
    report.lsp_count_got = got.size();
    report.lsp_count_want = want.size();
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    size_t i = 0, j = 0;
    while (i < got.size() || j < want.size()) {
        if (j == want.size() || (i < got.size() && got[i] < want[j])) {
            report.pass = false;
            if (report.lsp_extra.size() < 10) report.lsp_extra.push_back(got[i].to_string());
            ++i;
        } else if (i == got.size() || want[j] < got[i]) {
            report.pass = false;
            if (report.lsp_missing.size() < 10) report.lsp_missing.push_back(want[j].to_string());
            ++j;
        } else {
            if (!nearly_equal_dist(got[i].cost, want[j].cost)) {
                report.pass = false;
                if (report.lsp_extra.size() < 10)
                    report.lsp_extra.push_back(got[i].to_string() + " (cost mismatch)");
            }
            ++i;
            ++j;
        }
    }
}

}  // namespace

VerifyReport verify_apsp(const ApspResult& result, const WeightedDigraph& g, VerifyMode mode) {
    VerifyReport report;
    compare_dist(report, result.dist, dijkstra_all_pairs(g), g.n());
    if (mode == VerifyMode::FullLsp) {
        auto want = enumerate_lsps(g);
        report.lsp_count_got = result.examined_lsp_count + g.edge_count();
        report.lsp_count_want = want.size();
        if (report.lsp_count_got != report.lsp_count_want) report.pass = false;
    }
    return report;
}

VerifyReport verify_path_system(const PathSystem& system, VerifyMode mode) {
    VerifyReport report;
    compare_dist(report, system.dist_matrix(), dijkstra_all_pairs(system.graph()), system.n());
    if (mode == VerifyMode::FullLsp)
        compare_lsp_sets(report, system.stored_descriptors(), enumerate_lsps(system.graph()));
    return report;
}

}  // namespace lsp::oracle

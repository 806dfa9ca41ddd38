#include "lsp/apsp.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace lsp {

ApspState::ApspState(const WeightedDigraph& g) : n(g.n()) {
    size_t pairs = size_t(n) * n;
    dist.assign(pairs, WeightedDigraph::kAbsent);
    p.assign(pairs, kNoVertex);
    q.assign(pairs, kNoVertex);
    l_head.assign(pairs, kNilEntry);
    r_head.assign(pairs, kNilEntry);
    pool.reserve(2 * pairs);
    for (Vertex u = 0; u < n; ++u) dist[pair_id(u, u)] = 0.0;
}

template <class Queue>
void ApspState::run(const WeightedDigraph& g, Queue& queue) {
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            if (u == v || !g.has_edge(u, v)) continue;
            size_t uv = pair_id(u, v);
            dist[uv] = g.weight(u, v);
            p[uv] = v;
            q[uv] = u;
            queue.insert_or_decrease(static_cast<uint32_t>(uv), dist[uv]);
        }

    while (auto top = queue.extract_min()) {
        uint32_t id = top->first;
        Vertex u = id / n;
        Vertex v = id % n;
        Vertex pu = p[id];
        Vertex qv = q[id];
        push_l(pair_id(pu, v), u);
        push_r(pair_id(u, qv), v);
        for (uint32_t e = l_head[pair_id(u, qv)]; e != kNilEntry; e = pool[e].next)
            examine_triple(queue, pool[e].w, u, v);
        for (uint32_t e = r_head[pair_id(pu, v)]; e != kNilEntry; e = pool[e].next)
            examine_triple(queue, u, v, pool[e].w);
    }
}

template void ApspState::run(const WeightedDigraph&, PairMinHeap&);
template void ApspState::run(const WeightedDigraph&, MonotoneBucketQueue&);

ApspResult solve_apsp(const WeightedDigraph& g, QueueKind queue) {
    if (g.n() > 65535) throw std::invalid_argument("solve_apsp: pair ids need n <= 65535");
    auto t0 = std::chrono::steady_clock::now();

    ApspState state(g);
    size_t pairs = size_t(g.n()) * g.n();
    bool fallback = false;

    if (queue == QueueKind::Bucket && g.edge_count() > 0) {
        double delta = g.min_weight();
        if (delta < std::pow(double(g.n()), -2.5)) {
            PairMinHeap heap(pairs);
            state.run(g, heap);
            fallback = true;
        } else {
            MonotoneBucketQueue buckets(delta, static_cast<uint32_t>(pairs), static_cast<uint32_t>(pairs));
            state.run(g, buckets);
            fallback = buckets.fallback_engaged();
        }
    } else {
        PairMinHeap heap(pairs);
        state.run(g, heap);
    }

    auto t1 = std::chrono::steady_clock::now();

    ApspResult result;
    result.n = g.n();
    result.dist = std::move(state.dist);
    result.p = std::move(state.p);
    result.q = std::move(state.q);
    result.examined_lsp_count = state.examined;
    result.queue_kind = queue;
    result.fallback_engaged = fallback;
    result.extension_entries = state.pool.size();
    result.solve_micros = std::chrono::duration<double, std::micro>(t1 - t0).count();
    return result;
}

std::vector<Vertex> ApspResult::trace_path(Vertex u, Vertex v) const {
    if (u == v) return {u};
    if (distance(u, v) == WeightedDigraph::kAbsent) return {};
    std::vector<Vertex> path;
    Vertex cur = u;
    while (cur != v) {
        path.push_back(cur);
        if (path.size() > size_t(n) + 1) throw std::logic_error("trace_path: cycle in p matrix");
        cur = p[size_t(cur) * n + v];
    }
    path.push_back(v);
    return path;
}

std::vector<uint32_t> ApspResult::hop_counts() const {
    std::vector<uint32_t> hops(size_t(n) * n, 0);
    std::vector<Vertex> order(n);
    for (Vertex v = 0; v < n; ++v) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
            return dist[size_t(a) * n + v] < dist[size_t(b) * n + v];
        });
        // Sources in increasing distance to v: the suffix head p[u,v] is
        // strictly closer, so its count is already final.
        for (Vertex u : order) {
            size_t uv = size_t(u) * n + v;
            if (u == v || dist[uv] == WeightedDigraph::kAbsent) continue;
            hops[uv] = 1 + hops[size_t(p[uv]) * n + v];
        }
    }
    return hops;
}

double ApspResult::mean_hops() const {
    auto hops = hop_counts();
    uint64_t total = 0, reachable = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            if (u == v || dist[size_t(u) * n + v] == WeightedDigraph::kAbsent) continue;
            total += hops[size_t(u) * n + v];
            ++reachable;
        }
    return reachable ? double(total) / double(reachable) : 0.0;
}

EssentialSubgraph essential_subgraph(const ApspResult& result, const WeightedDigraph& g) {
    EssentialSubgraph out;
    std::vector<uint32_t> out_degree(g.n(), 0);
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) {
            if (u == v || !g.has_edge(u, v)) continue;
            if (g.weight(u, v) <= result.distance(u, v) + 1e-12) {
                out.edges.emplace_back(u, v);
                ++out_degree[u];
            }
        }
    out.max_out_degree = out_degree.empty() ? 0 : *std::max_element(out_degree.begin(), out_degree.end());
    return out;
}

void write_dist_csv(const ApspResult& result, std::ostream& out) {
    char buf[64];
    for (Vertex u = 0; u < result.n; ++u) {
        for (Vertex v = 0; v < result.n; ++v) {
            if (v) out << ',';
            double d = result.distance(u, v);
            if (d == WeightedDigraph::kAbsent) {
                out << "inf";
            } else {
                std::snprintf(buf, sizeof buf, "%.17g", d);
                out << buf;
            }
        }
        out << '\n';
    }
}

}  // namespace lsp

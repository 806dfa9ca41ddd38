#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lsp/bucket_queue.hpp"
#include "lsp/graph.hpp"
#include "lsp/pair_heap.hpp"

namespace lsp {

enum class QueueKind { Bucket, Comparison };

// Working state of the static all-pairs solver: per-pair best distance, the
// second (p) and penultimate (q) vertices of the best known path, and the
// per-pair extension lists L[u,v] (vertices w with w->u~>v shortest) and
// R[u,v] (vertices w with u~>v->w shortest).
struct ApspState {
    explicit ApspState(const WeightedDigraph& g);

    uint32_t n;
    std::vector<double> dist;
    std::vector<Vertex> p, q;

    struct ListEntry {
        Vertex w;
        uint32_t next;
    };
    static constexpr uint32_t kNilEntry = UINT32_MAX;
    std::vector<uint32_t> l_head, r_head;  // per pair
    std::vector<ListEntry> pool;

    uint64_t examined = 0;

    size_t pair_id(Vertex u, Vertex v) const { return size_t(u) * n + v; }
    size_t extension_list_size() const { return pool.size(); }

    void push_l(size_t pair, Vertex w) {
        pool.push_back({w, l_head[pair]});
        l_head[pair] = static_cast<uint32_t>(pool.size() - 1);
    }
    void push_r(size_t pair, Vertex w) {
        pool.push_back({w, r_head[pair]});
        r_head[pair] = static_cast<uint32_t>(pool.size() - 1);
    }

    // Examines the locally shortest path a -> b ~> c (or a ~> b -> c): if
    // going through b improves the best path from a to c, records the new
    // distance and re-keys (a,c). Counts every call, improving or not.
    template <class Queue>
    void examine_triple(Queue& queue, Vertex a, Vertex b, Vertex c) {
        ++examined;
        size_t ac = pair_id(a, c);
        double candidate = dist[pair_id(a, b)] + dist[pair_id(b, c)];
        if (candidate < dist[ac]) {
            dist[ac] = candidate;
            queue.insert_or_decrease(static_cast<uint32_t>(ac), candidate);
            p[ac] = p[pair_id(a, b)];
            q[ac] = q[pair_id(b, c)];
        }
    }

    template <class Queue>
    void run(const WeightedDigraph& g, Queue& queue);
};

struct ApspResult {
    uint32_t n = 0;
    std::vector<double> dist;
    std::vector<Vertex> p, q;
    uint64_t examined_lsp_count = 0;
    QueueKind queue_kind = QueueKind::Bucket;
    bool fallback_engaged = false;  // comparison heap took over (tiny delta or leftover bucket)
    uint64_t extension_entries = 0;  // total size of all L/R lists, <= 2n^2
    double solve_micros = 0.0;

    double distance(Vertex u, Vertex v) const { return dist[size_t(u) * n + v]; }

    // Vertex sequence of the shortest path, via the p recursion. Empty when
    // v is unreachable from u.
    std::vector<Vertex> trace_path(Vertex u, Vertex v) const;

    // Edge counts of all shortest paths (0 on the diagonal and for
    // unreachable pairs) and their mean over reachable off-diagonal pairs.
    std::vector<uint32_t> hop_counts() const;
    double mean_hops() const;
};

// Runs the locally-shortest-path APSP algorithm. With QueueKind::Bucket the
// bucket width is the minimum edge weight and the queue uses n^2 buckets;
// if that minimum is below n^-2.5 the solve falls back to the comparison
// heap for the whole run.
ApspResult solve_apsp(const WeightedDigraph& g, QueueKind queue = QueueKind::Bucket);

struct EssentialSubgraph {
    std::vector<std::pair<Vertex, Vertex>> edges;  // edges that are shortest paths
    uint32_t max_out_degree = 0;
};

EssentialSubgraph essential_subgraph(const ApspResult& result, const WeightedDigraph& g);

// n rows of n comma-separated values, "inf" for unreachable.
void write_dist_csv(const ApspResult& result, std::ostream& out);

}  // namespace lsp

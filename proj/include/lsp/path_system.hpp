#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "lsp/graph.hpp"
#include "lsp/oracle.hpp"
#include "lsp/pair_heap.hpp"

namespace lsp {

using PathHandle = uint32_t;
inline constexpr PathHandle kNullPath = UINT32_MAX;

// One path in the path system. A node is trivial (a single vertex), an edge,
// or the join of two stored paths that overlap in all but their outer edges.
// l/r point to the subpaths missing the last/first edge. Every non-trivial
// node is linked into the local heap of its endpoint pair, into L[r] and
// R[l]; shortest paths are additionally linked into SL[r] and SR[l].
struct PathNode {
    PathHandle l = kNullPath, r = kNullPath;
    Vertex start = 0, end = 0;
    Vertex first_to = kNoVertex;   // first edge is (start, first_to)
    Vertex last_from = kNoVertex;  // last edge is (last_from, end)
    double cost = 0.0;
    uint32_t gen = 0;  // bumped on free; guards stale handles in snapshots
    bool sp = false;
    bool live = false;

    // membership links
    PathHandle p_prev = kNullPath, p_next = kNullPath;      // P[start,end]
    PathHandle lm_prev = kNullPath, lm_next = kNullPath;    // L[r]
    PathHandle rm_prev = kNullPath, rm_next = kNullPath;    // R[l]
    PathHandle slm_prev = kNullPath, slm_next = kNullPath;  // SL[r]
    PathHandle srm_prev = kNullPath, srm_next = kNullPath;  // SR[l]

    // owned extension lists
    PathHandle l_list = kNullPath, r_list = kNullPath;
    PathHandle sl_list = kNullPath, sr_list = kNullPath;

    bool trivial() const { return first_to == kNoVertex; }
};

struct ChurnCounters {
    uint64_t lsp_created = 0;  // edge/join nodes built
    uint64_t lsp_removed = 0;  // nodes destroyed
    uint64_t sp_removed = 0;   // shortest paths destroyed or demoted
    uint64_t sp_created = 0;   // global-queue extractions
    uint32_t lambda = 0;       // max size of any local heap touched
};

// Arena of path nodes plus the per-pair state (local heaps P[u,v], best path
// and distance) and the global pair queue. Exposes the primitive operations;
// PathSystem sequences them into whole updates.
class PathStore {
public:
    explicit PathStore(const WeightedDigraph* g);

    uint32_t n() const { return n_; }
    uint32_t pair_id(Vertex u, Vertex v) const { return u * n_ + v; }

    const PathNode& node(PathHandle h) const { return nodes_[h]; }
    PathHandle vertex_path(Vertex v) const { return trivial_[v]; }
    PathHandle edge_path(Vertex u, Vertex v) const { return edge_[pair_id(u, v)]; }

    PathHandle make_edge_path(Vertex u, Vertex v);
    // Joins a and b, which must satisfy node(a).r == node(b).l.
    PathHandle make_join(PathHandle a, PathHandle b);

    // Stores h in its local heap; if h beats the pair's current best path,
    // demotes that path (clearing its extensions) and re-keys the pair in
    // the global queue.
    void examine(PathHandle h);

    // Marks the freshly extracted best path as shortest and builds + examines
    // its one-edge LSP extensions against the current shortest paths.
    void new_shortest_path(PathHandle h);

    // Unlinks h everywhere and recursively removes every extension of h.
    // With record_replacement, pairs that lose their shortest path are queued
    // for replace_path.
    void remove_path(PathHandle h, bool record_replacement);
    void remove_extensions(PathHandle h, bool record_replacement);

    // Re-points the pair at the cheapest surviving local path, if any.
    void replace_path(Vertex u, Vertex v);

    // Drains the global queue, finalizing shortest paths in cost order.
    void build_paths();

    double dist(Vertex u, Vertex v) const { return dist_[pair_id(u, v)]; }
    const std::vector<double>& dist_matrix() const { return dist_; }
    PathHandle best(Vertex u, Vertex v) const { return best_[pair_id(u, v)]; }
    uint32_t local_heap_size(Vertex u, Vertex v) const { return p_size_[pair_id(u, v)]; }
    PathHandle local_heap_head(Vertex u, Vertex v) const { return p_head_[pair_id(u, v)]; }

    PairMinHeap& global_queue() { return queue_; }
    void clear_queue() { queue_.clear(); }

    // Pairs recorded by remove_path(rep=true), deduplicated and cleared.
    std::vector<uint32_t> take_replacements();

    void reset_window() { window_ = ChurnCounters{}; }
    const ChurnCounters& window() const { return window_; }

    uint64_t stored_path_count() const { return live_paths_; }
    std::vector<Vertex> vertex_sequence(PathHandle h) const;
    std::vector<oracle::LspDescriptor> stored_descriptors() const;

    // Full structural invariant check; throws std::logic_error with a
    // description on the first violation. Intended for quiescent states.
    void audit() const;

private:
    PathHandle alloc_node();
    void free_node(PathHandle h);
    void touch_heap_size(uint32_t size);

    const WeightedDigraph* graph_;
    uint32_t n_;

    std::vector<PathNode> nodes_;
    std::vector<PathHandle> free_;
    uint64_t live_paths_ = 0;  // non-trivial live nodes

    std::vector<PathHandle> trivial_;  // per vertex
    std::vector<PathHandle> edge_;     // per pair, current edge path
    std::vector<PathHandle> p_head_;   // per pair, local heap list
    std::vector<uint32_t> p_size_;
    std::vector<PathHandle> best_;     // per pair
    std::vector<double> dist_;

    PairMinHeap queue_;
    std::vector<uint32_t> replacements_;  // pair ids that lost their shortest path
    std::vector<std::pair<PathHandle, uint32_t>> scratch_;  // snapshot for extension loops

    ChurnCounters window_;
};

struct ChurnReport {
    uint64_t sp_minus = 0, sp_plus = 0;
    uint64_t lsp_minus = 0, lsp_plus = 0;
    uint32_t lambda = 0;
    double micros = 0.0;
};

// Fully dynamic all-pairs shortest paths: maintains every locally shortest
// path of the owned graph. After construction and after every update the
// stored path set and distance matrix match a fresh build on the same graph.
class PathSystem {
public:
    explicit PathSystem(WeightedDigraph g);

    PathSystem(const PathSystem&) = delete;
    PathSystem& operator=(const PathSystem&) = delete;

    const WeightedDigraph& graph() const { return graph_; }
    uint32_t n() const { return graph_.n(); }
    double distance(Vertex u, Vertex v) const { return store_.dist(u, v); }
    const std::vector<double>& dist_matrix() const { return store_.dist_matrix(); }

    // Re-weights existing edges. Every path through them is destroyed, the
    // affected pairs fall back to their cheapest surviving paths, and the
    // shortest paths are rebuilt in cost order.
    ChurnReport apply_update(const std::vector<EdgeUpdate>& changes);
    ChurnReport apply_update(const EdgeUpdate& change);

    // Deletes currently present edges and inserts currently absent ones
    // (an edge may appear in both lists to be deleted and re-inserted).
    ChurnReport structural_update(const std::vector<EdgeUpdate>& insertions,
                                  const std::vector<std::pair<Vertex, Vertex>>& deletions);

    uint64_t stored_path_count() const { return store_.stored_path_count(); }
    std::vector<oracle::LspDescriptor> stored_descriptors() const { return store_.stored_descriptors(); }
    uint32_t local_heap_size(Vertex u, Vertex v) const { return store_.local_heap_size(u, v); }
    void audit() const { store_.audit(); }

    PathStore& store() { return store_; }
    const PathStore& store() const { return store_; }

private:
    WeightedDigraph graph_;
    PathStore store_;
};

// ChurnReport CSV row format shared by the CLI and the experiment harness.
void write_churn_csv_header(std::ostream& out);
void write_churn_csv_row(std::ostream& out, uint64_t seed, uint32_t n, uint32_t update_index,
                         const ChurnReport& report, bool include_timing);

}  // namespace lsp

#include "lsp/path_system.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace lsp {

namespace {

// Intrusive doubly-linked list helpers parameterized on the member link pair.
template <PathHandle PathNode::*Prev, PathHandle PathNode::*Next>
void list_push_front(std::vector<PathNode>& nodes, PathHandle& head, PathHandle h) {
    nodes[h].*Prev = kNullPath;
    nodes[h].*Next = head;
    if (head != kNullPath) nodes[head].*Prev = h;
    head = h;
}

template <PathHandle PathNode::*Prev, PathHandle PathNode::*Next>
void list_remove(std::vector<PathNode>& nodes, PathHandle& head, PathHandle h) {
    PathNode& nd = nodes[h];
    if (nd.*Prev != kNullPath)
        nodes[nd.*Prev].*Next = nd.*Next;
    else
        head = nd.*Next;
    if (nd.*Next != kNullPath) nodes[nd.*Next].*Prev = nd.*Prev;
    nd.*Prev = kNullPath;
    nd.*Next = kNullPath;
}

}  // namespace

PathStore::PathStore(const WeightedDigraph* g)
    : graph_(g), n_(g->n()), queue_(size_t(g->n()) * g->n()) {
    if (n_ > 65535) throw std::invalid_argument("path system: pair ids need n <= 65535");
    size_t pairs = size_t(n_) * n_;
    trivial_.resize(n_);
    edge_.assign(pairs, kNullPath);
    p_head_.assign(pairs, kNullPath);
    p_size_.assign(pairs, 0);
    best_.assign(pairs, kNullPath);
    dist_.assign(pairs, WeightedDigraph::kAbsent);

    for (Vertex v = 0; v < n_; ++v) {
        PathHandle h = alloc_node();
        PathNode& nd = nodes_[h];
        nd.start = nd.end = v;
        nd.cost = 0.0;
        nd.sp = true;
        trivial_[v] = h;
        --live_paths_;  // trivial paths are not counted as stored LSPs
        best_[pair_id(v, v)] = h;
        dist_[pair_id(v, v)] = 0.0;
    }
}

PathHandle PathStore::alloc_node() {
    PathHandle h;
    if (!free_.empty()) {
        h = free_.back();
        free_.pop_back();
    } else {
        h = static_cast<PathHandle>(nodes_.size());
        nodes_.emplace_back();
    }
    uint32_t gen = nodes_[h].gen;
    nodes_[h] = PathNode{};
    nodes_[h].gen = gen;
    nodes_[h].live = true;
    ++live_paths_;
    return h;
}

void PathStore::free_node(PathHandle h) {
    nodes_[h].live = false;
    ++nodes_[h].gen;
    --live_paths_;
    free_.push_back(h);
}

void PathStore::touch_heap_size(uint32_t size) {
    if (size > window_.lambda) window_.lambda = size;
}

PathHandle PathStore::make_edge_path(Vertex u, Vertex v) {
    if (!graph_->has_edge(u, v)) throw std::invalid_argument("make_edge_path: edge not present");
    if (edge_[pair_id(u, v)] != kNullPath) throw std::logic_error("make_edge_path: edge path already stored");
    PathHandle h = alloc_node();
    PathNode& nd = nodes_[h];
    nd.l = trivial_[u];
    nd.r = trivial_[v];
    nd.start = u;
    nd.end = v;
    nd.first_to = v;
    nd.last_from = u;
    nd.cost = graph_->weight(u, v);
    list_push_front<&PathNode::lm_prev, &PathNode::lm_next>(nodes_, nodes_[nd.r].l_list, h);
    list_push_front<&PathNode::rm_prev, &PathNode::rm_next>(nodes_, nodes_[nd.l].r_list, h);
    edge_[pair_id(u, v)] = h;
    ++window_.lsp_created;
    return h;
}

PathHandle PathStore::make_join(PathHandle a, PathHandle b) {
    if (nodes_[a].trivial() || nodes_[b].trivial())
        throw std::logic_error("make_join: subpaths must have at least one edge");
    if (nodes_[a].r != nodes_[b].l) throw std::logic_error("make_join: subpaths do not chain");
    PathHandle h = alloc_node();
    PathNode& nd = nodes_[h];
    const PathNode& left = nodes_[a];
    const PathNode& right = nodes_[b];
    nd.l = a;
    nd.r = b;
    nd.start = left.start;
    nd.end = right.end;
    nd.first_to = left.first_to;
    nd.last_from = right.last_from;
    nd.cost = graph_->weight(left.start, left.first_to) + right.cost;
    list_push_front<&PathNode::lm_prev, &PathNode::lm_next>(nodes_, nodes_[b].l_list, h);
    list_push_front<&PathNode::rm_prev, &PathNode::rm_next>(nodes_, nodes_[a].r_list, h);
    ++window_.lsp_created;
    return h;
}

void PathStore::examine(PathHandle h) {
    PathNode& nd = nodes_[h];
    uint32_t id = pair_id(nd.start, nd.end);
    list_push_front<&PathNode::p_prev, &PathNode::p_next>(nodes_, p_head_[id], h);
    touch_heap_size(++p_size_[id]);

    if (nd.cost < dist_[id]) {
        PathHandle old = best_[id];
        if (old != kNullPath) {
            PathNode& prev = nodes_[old];
            if (prev.sp) {
                // The pair's shortest path is undercut: it stays stored as a
                // plain LSP but stops being a shortest path, so its shortest-
                // path extension listings and all extension paths go.
                ++window_.sp_removed;
                prev.sp = false;
                list_remove<&PathNode::slm_prev, &PathNode::slm_next>(nodes_, nodes_[prev.r].sl_list, old);
                list_remove<&PathNode::srm_prev, &PathNode::srm_next>(nodes_, nodes_[prev.l].sr_list, old);
            }
            remove_extensions(old, false);
        }
        best_[id] = h;
        dist_[id] = nd.cost;
        queue_.insert_or_decrease(id, nd.cost);
    }
}

void PathStore::new_shortest_path(PathHandle h) {
    // Work through handles only: make_join can grow the node arena and
    // invalidate references.
    PathHandle hl = nodes_[h].l;
    PathHandle hr = nodes_[h].r;
    nodes_[h].sp = true;
    list_push_front<&PathNode::slm_prev, &PathNode::slm_next>(nodes_, nodes_[hr].sl_list, h);
    list_push_front<&PathNode::srm_prev, &PathNode::srm_next>(nodes_, nodes_[hl].sr_list, h);

    // Examining an extension can demote other paths and cascade removals into
    // the very lists being walked, so walk a generation-stamped snapshot.
    scratch_.clear();
    for (PathHandle x = nodes_[hl].sl_list; x != kNullPath; x = nodes_[x].slm_next)
        scratch_.emplace_back(x, nodes_[x].gen);
    for (auto [x, gen] : scratch_) {
        if (!nodes_[x].live || nodes_[x].gen != gen || !nodes_[x].sp) continue;
        examine(make_join(x, h));
    }

    scratch_.clear();
    for (PathHandle x = nodes_[hr].sr_list; x != kNullPath; x = nodes_[x].srm_next)
        scratch_.emplace_back(x, nodes_[x].gen);
    for (auto [x, gen] : scratch_) {
        if (!nodes_[x].live || nodes_[x].gen != gen || !nodes_[x].sp) continue;
        examine(make_join(h, x));
    }
}

void PathStore::remove_path(PathHandle h, bool record_replacement) {
    if (h == kNullPath || h >= nodes_.size() || !nodes_[h].live)
        throw std::logic_error("remove_path: unknown handle");
    PathNode& nd = nodes_[h];
    if (nd.trivial()) throw std::logic_error("remove_path: cannot remove a vertex path");

    uint32_t id = pair_id(nd.start, nd.end);
    touch_heap_size(p_size_[id]);
    list_remove<&PathNode::p_prev, &PathNode::p_next>(nodes_, p_head_[id], h);
    --p_size_[id];

    list_remove<&PathNode::lm_prev, &PathNode::lm_next>(nodes_, nodes_[nd.r].l_list, h);
    list_remove<&PathNode::rm_prev, &PathNode::rm_next>(nodes_, nodes_[nd.l].r_list, h);

    ++window_.lsp_removed;
    if (nd.sp) {
        ++window_.sp_removed;
        nd.sp = false;
        list_remove<&PathNode::slm_prev, &PathNode::slm_next>(nodes_, nodes_[nd.r].sl_list, h);
        list_remove<&PathNode::srm_prev, &PathNode::srm_next>(nodes_, nodes_[nd.l].sr_list, h);
        if (record_replacement) replacements_.push_back(id);
    }
    if (best_[id] == h) best_[id] = kNullPath;
    if (edge_[id] == h) edge_[id] = kNullPath;

    remove_extensions(h, record_replacement);
    if (nd.l_list != kNullPath || nd.r_list != kNullPath || nd.sl_list != kNullPath ||
        nd.sr_list != kNullPath)
        throw std::logic_error("remove_path: extensions survived removal");
    free_node(h);
}

void PathStore::remove_extensions(PathHandle h, bool record_replacement) {
    while (nodes_[h].l_list != kNullPath) remove_path(nodes_[h].l_list, record_replacement);
    while (nodes_[h].r_list != kNullPath) remove_path(nodes_[h].r_list, record_replacement);
}

void PathStore::replace_path(Vertex u, Vertex v) {
    uint32_t id = pair_id(u, v);
    PathHandle head = p_head_[id];
    if (head == kNullPath) {
        best_[id] = kNullPath;
        dist_[id] = WeightedDigraph::kAbsent;
        return;
    }
    PathHandle min = head;
    for (PathHandle x = nodes_[head].p_next; x != kNullPath; x = nodes_[x].p_next)
        if (nodes_[x].cost < nodes_[min].cost) min = x;
    best_[id] = min;
    dist_[id] = nodes_[min].cost;
    queue_.insert_or_decrease(id, nodes_[min].cost);
}

void PathStore::build_paths() {
    while (auto top = queue_.extract_min()) {
        uint32_t id = top->first;
        ++window_.sp_created;
        PathHandle h = best_[id];
        if (h == kNullPath) throw std::logic_error("build_paths: extracted pair lost its path");
        if (top->second != dist_[id]) throw std::logic_error("build_paths: stale queue key");
        new_shortest_path(h);
    }
}

std::vector<uint32_t> PathStore::take_replacements() {
    std::sort(replacements_.begin(), replacements_.end());
    replacements_.erase(std::unique(replacements_.begin(), replacements_.end()), replacements_.end());
    return std::move(replacements_);
}

std::vector<Vertex> PathStore::vertex_sequence(PathHandle h) const {
    std::vector<Vertex> seq;
    PathHandle cur = h;
    while (!nodes_[cur].trivial()) {
        seq.push_back(nodes_[cur].start);
        cur = nodes_[cur].r;
    }
    seq.push_back(nodes_[cur].start);
    return seq;
}

std::vector<oracle::LspDescriptor> PathStore::stored_descriptors() const {
    std::vector<oracle::LspDescriptor> out;
    out.reserve(live_paths_);
    for (PathHandle h = 0; h < nodes_.size(); ++h) {
        if (!nodes_[h].live || nodes_[h].trivial()) continue;
        out.push_back({vertex_sequence(h), nodes_[h].cost});
    }
    return out;
}

void PathStore::audit() const {
    auto fail = [](const std::string& what) { throw std::logic_error("path system audit: " + what); };
    auto near = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::max(std::abs(a), std::abs(b))); };

    uint64_t live_seen = 0;
    for (PathHandle h = 0; h < nodes_.size(); ++h) {
        const PathNode& nd = nodes_[h];
        if (!nd.live) continue;
        if (nd.trivial()) {
            if (nd.start != nd.end || nd.cost != 0.0 || !nd.sp) fail("bad trivial path");
            if (nd.l != kNullPath || nd.r != kNullPath) fail("trivial path with subpaths");
            continue;
        }
        ++live_seen;
        const PathNode& left = nodes_[nd.l];
        const PathNode& right = nodes_[nd.r];
        if (!left.live || !right.live) fail("dangling subpath handle");
        if (left.start != nd.start || right.end != nd.end) fail("endpoint mismatch");
        if (!graph_->has_edge(nd.start, nd.first_to) || !graph_->has_edge(nd.last_from, nd.end))
            fail("outer edge missing from graph");
        if (left.trivial() != right.trivial()) fail("edge path with one trivial side");
        if (left.trivial()) {  // edge path
            if (nd.first_to != nd.end || nd.last_from != nd.start) fail("bad edge path wiring");
            if (nd.cost != graph_->weight(nd.start, nd.end)) fail("edge cost out of date");
            if (edge_[pair_id(nd.start, nd.end)] != h) fail("edge path not registered");
        } else {
            if (nd.first_to != left.first_to || nd.last_from != right.last_from) fail("outer edge mismatch");
            if (left.r != right.l) fail("join overlap mismatch");
            if (nd.cost != graph_->weight(nd.start, nd.first_to) + right.cost) fail("cost != c(first) + cost(r)");
            if (!near(nd.cost, left.cost + graph_->weight(nd.last_from, nd.end))) fail("cost != cost(l) + c(last)");
        }
        if (!nd.sp && (nd.sl_list != kNullPath || nd.sr_list != kNullPath))
            fail("non-shortest path owns shortest-path extensions");
        if (!nd.sp && (nd.l_list != kNullPath || nd.r_list != kNullPath))
            fail("non-shortest path owns extensions");
        if (nd.sp) {
            uint32_t id = pair_id(nd.start, nd.end);
            if (best_[id] != h) fail("shortest path is not the pair's best");
            if (dist_[id] != nd.cost) fail("dist does not match shortest-path cost");
            if (nd.start == nd.end) fail("cyclic path marked shortest");
        }
    }
    if (live_seen != live_paths_) fail("live path count drifted");

    // Walk every list and check membership and link integrity.
    uint64_t p_members = 0, l_members = 0, r_members = 0;
    for (Vertex u = 0; u < n_; ++u)
        for (Vertex v = 0; v < n_; ++v) {
            uint32_t id = pair_id(u, v);
            uint32_t count = 0;
            for (PathHandle x = p_head_[id]; x != kNullPath; x = nodes_[x].p_next) {
                const PathNode& m = nodes_[x];
                if (!m.live || m.trivial()) fail("dead or trivial node in local heap");
                if (m.start != u || m.end != v) fail("local heap member has wrong endpoints");
                if (m.p_next != kNullPath && nodes_[m.p_next].p_prev != x) fail("local heap links broken");
                ++count;
            }
            if (count != p_size_[id]) fail("local heap size counter drifted");
            p_members += count;

            PathHandle b = best_[id];
            if (b != kNullPath) {
                if (!nodes_[b].live) fail("best points at dead node");
                if (u != v && dist_[id] != nodes_[b].cost) fail("dist/best mismatch");
            } else if (u != v && dist_[id] != WeightedDigraph::kAbsent) {
                fail("pair with no best path but finite dist");
            }
            if (u != v && edge_[id] != kNullPath) {
                if (!graph_->has_edge(u, v)) fail("edge path registered for absent edge");
            }
            if (u != v && graph_->has_edge(u, v) && edge_[id] == kNullPath)
                fail("present edge has no stored edge path");
        }

    for (PathHandle owner = 0; owner < nodes_.size(); ++owner) {
        if (!nodes_[owner].live) continue;
        for (PathHandle x = nodes_[owner].l_list; x != kNullPath; x = nodes_[x].lm_next) {
            if (!nodes_[x].live || nodes_[x].r != owner) fail("L list member does not extend owner");
            ++l_members;
        }
        for (PathHandle x = nodes_[owner].r_list; x != kNullPath; x = nodes_[x].rm_next) {
            if (!nodes_[x].live || nodes_[x].l != owner) fail("R list member does not extend owner");
            ++r_members;
        }
        for (PathHandle x = nodes_[owner].sl_list; x != kNullPath; x = nodes_[x].slm_next)
            if (!nodes_[x].live || nodes_[x].r != owner || !nodes_[x].sp) fail("SL member not a shortest extension");
        for (PathHandle x = nodes_[owner].sr_list; x != kNullPath; x = nodes_[x].srm_next)
            if (!nodes_[x].live || nodes_[x].l != owner || !nodes_[x].sp) fail("SR member not a shortest extension");
    }
    if (p_members != live_paths_) fail("local heaps do not partition the stored paths");
    if (l_members != live_paths_ || r_members != live_paths_) fail("L/R lists do not cover the stored paths");
}

PathSystem::PathSystem(WeightedDigraph g) : graph_(std::move(g)), store_(&graph_) {
    for (Vertex u = 0; u < graph_.n(); ++u)
        for (Vertex v = 0; v < graph_.n(); ++v) {
            if (u == v || !graph_.has_edge(u, v)) continue;
            store_.examine(store_.make_edge_path(u, v));
        }
    store_.build_paths();
    store_.reset_window();
}

ChurnReport PathSystem::apply_update(const EdgeUpdate& change) {
    return apply_update(std::vector<EdgeUpdate>{change});
}

namespace {

ChurnReport report_from_window(const ChurnCounters& w, double micros) {
    ChurnReport r;
    r.sp_minus = w.sp_removed;
    r.sp_plus = w.sp_created;
    r.lsp_minus = w.lsp_removed;
    r.lsp_plus = w.lsp_created;
    r.lambda = w.lambda;
    r.micros = micros;
    return r;
}

}  // namespace

ChurnReport PathSystem::apply_update(const std::vector<EdgeUpdate>& changes) {
    for (size_t i = 0; i < changes.size(); ++i) {
        const auto& c = changes[i];
        if (c.from >= n() || c.to >= n() || c.from == c.to || !graph_.has_edge(c.from, c.to))
            throw std::invalid_argument("apply_update: edge not present (use structural_update)");
        if (!(c.weight > 0.0) || !std::isfinite(c.weight))
            throw std::invalid_argument("apply_update: weight must be positive and finite");
        for (size_t j = 0; j < i; ++j)
            if (changes[j].from == c.from && changes[j].to == c.to)
                throw std::invalid_argument("apply_update: duplicate edge in update set");
    }

    auto t0 = std::chrono::steady_clock::now();
    store_.reset_window();

    for (const auto& c : changes) store_.remove_path(store_.edge_path(c.from, c.to), true);

    store_.clear_queue();
    for (uint32_t id : store_.take_replacements()) store_.replace_path(id / n(), id % n());

    for (const auto& c : changes) {
        graph_.set_weight(c.from, c.to, c.weight);
        store_.examine(store_.make_edge_path(c.from, c.to));
    }

    store_.build_paths();

    auto t1 = std::chrono::steady_clock::now();
    return report_from_window(store_.window(),
                              std::chrono::duration<double, std::micro>(t1 - t0).count());
}

ChurnReport PathSystem::structural_update(const std::vector<EdgeUpdate>& insertions,
                                          const std::vector<std::pair<Vertex, Vertex>>& deletions) {
    for (size_t i = 0; i < deletions.size(); ++i) {
        auto [u, v] = deletions[i];
        if (u >= n() || v >= n() || u == v || !graph_.has_edge(u, v))
            throw std::invalid_argument("structural_update: deleted edge not present");
        for (size_t j = 0; j < i; ++j)
            if (deletions[j] == deletions[i]) throw std::invalid_argument("structural_update: duplicate deletion");
    }
    auto deleted = [&](Vertex u, Vertex v) {
        return std::find(deletions.begin(), deletions.end(), std::make_pair(u, v)) != deletions.end();
    };
    for (size_t i = 0; i < insertions.size(); ++i) {
        const auto& e = insertions[i];
        if (e.from >= n() || e.to >= n() || e.from == e.to)
            throw std::invalid_argument("structural_update: bad insertion endpoints");
        if (graph_.has_edge(e.from, e.to) && !deleted(e.from, e.to))
            throw std::invalid_argument("structural_update: inserted edge already present");
        if (!(e.weight > 0.0) || !std::isfinite(e.weight))
            throw std::invalid_argument("structural_update: weight must be positive and finite");
        for (size_t j = 0; j < i; ++j)
            if (insertions[j].from == e.from && insertions[j].to == e.to)
                throw std::invalid_argument("structural_update: duplicate insertion");
    }

    auto t0 = std::chrono::steady_clock::now();
    store_.reset_window();

    for (auto [u, v] : deletions) {
        store_.remove_path(store_.edge_path(u, v), true);
        graph_.remove_edge(u, v);
    }

    store_.clear_queue();
    for (uint32_t id : store_.take_replacements()) store_.replace_path(id / n(), id % n());

    for (const auto& e : insertions) {
        graph_.set_weight(e.from, e.to, e.weight);
        store_.examine(store_.make_edge_path(e.from, e.to));
    }

    store_.build_paths();

    auto t1 = std::chrono::steady_clock::now();
    return report_from_window(store_.window(),
                              std::chrono::duration<double, std::micro>(t1 - t0).count());
}

void write_churn_csv_header(std::ostream& out) {
    out << "#schema: seed,n,update_index,sp_minus,sp_plus,lsp_minus,lsp_plus,lambda,micros\n";
    out << "seed,n,update_index,sp_minus,sp_plus,lsp_minus,lsp_plus,lambda,micros\n";
}

void write_churn_csv_row(std::ostream& out, uint64_t seed, uint32_t n, uint32_t update_index,
                         const ChurnReport& report, bool include_timing) {
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "%" PRIu64 ",%" PRIu32 ",%" PRIu32 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64 ",%" PRIu64
                  ",%" PRIu32 ",%.1f\n",
                  seed, n, update_index, report.sp_minus, report.sp_plus, report.lsp_minus,
                  report.lsp_plus, report.lambda, include_timing ? report.micros : 0.0);
    out << buf;
}

}  // namespace lsp

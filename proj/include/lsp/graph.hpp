#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsp/rng.hpp"

namespace lsp {

using Vertex = uint32_t;
inline constexpr Vertex kNoVertex = UINT32_MAX;

// Edge-weight distribution of a random instance.
struct WeightModel {
    enum class Kind { Uniform01, Exponential1, IntegerUniform };

    Kind kind = Kind::Uniform01;
    uint64_t int_max = 1;  // IntegerUniform draws from {1,...,int_max}

    static WeightModel uniform01() { return {Kind::Uniform01, 1}; }
    static WeightModel exponential1() { return {Kind::Exponential1, 1}; }
    static WeightModel integer_uniform(uint64_t max);

    double draw(Rng& rng) const;
    std::string name() const;
    // Accepts "uniform", "exp", "int:<max>".
    static WeightModel parse(const std::string& text);
};

// Complete or G(n,p) directed graph with positive real edge weights stored in
// a dense n x n table. Absent edges (and the diagonal) hold +infinity.
class WeightedDigraph {
public:
    static constexpr double kAbsent = std::numeric_limits<double>::infinity();

    explicit WeightedDigraph(uint32_t n);

    uint32_t n() const { return n_; }
    uint64_t edge_count() const { return edge_count_; }

    bool has_edge(Vertex u, Vertex v) const { return weights_[idx(u, v)] != kAbsent; }
    double weight(Vertex u, Vertex v) const { return weights_[idx(u, v)]; }

    // w must be strictly positive and finite; u != v.
    void set_weight(Vertex u, Vertex v, double w);
    void remove_edge(Vertex u, Vertex v);

    bool is_complete() const { return edge_count_ == uint64_t(n_) * (n_ - 1); }
    // Minimum present weight; +infinity when the graph has no edges.
    double min_weight() const;

    bool operator==(const WeightedDigraph& other) const = default;

private:
    size_t idx(Vertex u, Vertex v) const { return size_t(u) * n_ + v; }
    void check_vertices(Vertex u, Vertex v) const;

    uint32_t n_;
    uint64_t edge_count_ = 0;
    std::vector<double> weights_;
};

// All n(n-1) off-diagonal weights drawn i.i.d. from the model. n >= 2.
WeightedDigraph gen_complete(uint32_t n, const WeightModel& model, Seed seed);

// Each off-diagonal edge present independently with probability p in (0,1].
// With p=1 the result is identical to gen_complete for the same seed.
WeightedDigraph gen_gnp(uint32_t n, double p, const WeightModel& model, Seed seed);

struct EdgeUpdate {
    Vertex from = 0;
    Vertex to = 0;
    double weight = 0.0;
};

// Uniformly random ordered pair plus a fresh weight draw, independent of the
// weights already in g. Requires a complete graph.
EdgeUpdate sample_edge_update(const WeightedDigraph& g, const WeightModel& model, Seed seed);

// Text edge-list I/O. Line 1 is "n m", then m lines "u v w"; '#' starts a
// comment line. Weights round-trip exactly.
struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
    int line_number;
};

void save_graph(const WeightedDigraph& g, std::ostream& out);
void save_graph_file(const WeightedDigraph& g, const std::string& path);
WeightedDigraph load_graph(std::istream& in);
WeightedDigraph load_graph_file(const std::string& path);

}  // namespace lsp

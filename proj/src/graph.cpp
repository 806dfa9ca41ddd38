#include "lsp/graph.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lsp {

WeightModel WeightModel::integer_uniform(uint64_t max) {
    if (max < 1) throw std::invalid_argument("integer_uniform: max must be >= 1");
    return {Kind::IntegerUniform, max};
}

double WeightModel::draw(Rng& rng) const {
    switch (kind) {
        case Kind::Uniform01: return rng.uniform01_positive();
        case Kind::Exponential1: return rng.exponential1();
        case Kind::IntegerUniform: return static_cast<double>(1 + rng.below(int_max));
    }
    throw std::logic_error("bad WeightModel kind");
}

std::string WeightModel::name() const {
    switch (kind) {
        case Kind::Uniform01: return "uniform";
        case Kind::Exponential1: return "exp";
        case Kind::IntegerUniform: return "int:" + std::to_string(int_max);
    }
    return "?";
}

WeightModel WeightModel::parse(const std::string& text) {
    if (text == "uniform") return uniform01();
    if (text == "exp") return exponential1();
    if (text.rfind("int:", 0) == 0) {
        uint64_t max = 0;
        auto [p, ec] = std::from_chars(text.data() + 4, text.data() + text.size(), max);
        if (ec != std::errc{} || p != text.data() + text.size())
            throw std::invalid_argument("bad integer weight model: " + text);
        return integer_uniform(max);
    }
    throw std::invalid_argument("unknown weight model: " + text + " (expected uniform|exp|int:<max>)");
}

WeightedDigraph::WeightedDigraph(uint32_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("graph needs at least 2 vertices");
    weights_.assign(size_t(n) * n, kAbsent);
}

void WeightedDigraph::check_vertices(Vertex u, Vertex v) const {
    if (u >= n_ || v >= n_) throw std::invalid_argument("vertex out of range");
    if (u == v) throw std::invalid_argument("self-loops are not allowed");
}

void WeightedDigraph::set_weight(Vertex u, Vertex v, double w) {
    check_vertices(u, v);
    if (!(w > 0.0) || !std::isfinite(w))
        throw std::invalid_argument("edge weight must be positive and finite");
    double& slot = weights_[idx(u, v)];
    if (slot == kAbsent) ++edge_count_;
    slot = w;
}

void WeightedDigraph::remove_edge(Vertex u, Vertex v) {
    check_vertices(u, v);
    double& slot = weights_[idx(u, v)];
    if (slot == kAbsent) throw std::invalid_argument("edge not present");
    slot = kAbsent;
    --edge_count_;
}

double WeightedDigraph::min_weight() const {
    double best = kAbsent;
    for (double w : weights_)
        if (w < best) best = w;
    return best;
}

namespace {
// Substream salts. Weight draws and presence decisions come from separate
// streams so that gen_gnp(p=1) matches gen_complete edge for edge.
constexpr uint64_t kWeightStream = 1;
constexpr uint64_t kSelectStream = 2;
}  // namespace

WeightedDigraph gen_complete(uint32_t n, const WeightModel& model, Seed seed) {
    WeightedDigraph g(n);
    Rng weights(derive_seed(seed, kWeightStream));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            if (u == v) continue;
            g.set_weight(u, v, model.draw(weights));
        }
    return g;
}

WeightedDigraph gen_gnp(uint32_t n, double p, const WeightModel& model, Seed seed) {
    if (!(p > 0.0) || p > 1.0) throw std::invalid_argument("gen_gnp: p must be in (0,1]");
    WeightedDigraph g(n);
    Rng weights(derive_seed(seed, kWeightStream));
    Rng select(derive_seed(seed, kSelectStream));
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = 0; v < n; ++v) {
            if (u == v) continue;
            double w = model.draw(weights);  // drawn unconditionally to keep streams aligned
            if (select.uniform01() < p) g.set_weight(u, v, w);
        }
    return g;
}

EdgeUpdate sample_edge_update(const WeightedDigraph& g, const WeightModel& model, Seed seed) {
    if (!g.is_complete())
        throw std::invalid_argument("sample_edge_update requires a complete graph");
    Rng select(derive_seed(seed, kSelectStream));
    Rng weights(derive_seed(seed, kWeightStream));
    uint64_t n = g.n();
    uint64_t index = select.below(n * (n - 1));
    Vertex u = static_cast<Vertex>(index / (n - 1));
    Vertex r = static_cast<Vertex>(index % (n - 1));
    Vertex v = r >= u ? r + 1 : r;
    return EdgeUpdate{u, v, model.draw(weights)};
}

void save_graph(const WeightedDigraph& g, std::ostream& out) {
    out << g.n() << ' ' << g.edge_count() << '\n';
    char buf[64];
    for (Vertex u = 0; u < g.n(); ++u)
        for (Vertex v = 0; v < g.n(); ++v) {
            if (u == v || !g.has_edge(u, v)) continue;
            std::snprintf(buf, sizeof buf, "%" PRIu32 " %" PRIu32 " %.17g\n", u, v, g.weight(u, v));
            out << buf;
        }
}

void save_graph_file(const WeightedDigraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save_graph(g, out);
}

WeightedDigraph load_graph(std::istream& in) {
    std::string line;
    int line_no = 0;
    auto next_data_line = [&](bool required) -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            size_t start = line.find_first_not_of(" \t\r");
            if (start == std::string::npos) continue;   // blank
            if (line[start] == '#') continue;            // comment
            return true;
        }
        if (required) throw ParseError(line_no + 1, "unexpected end of file");
        return false;
    };

    next_data_line(true);
    uint64_t n = 0, m = 0;
    {
        std::istringstream header(line);
        if (!(header >> n >> m)) throw ParseError(line_no, "expected header \"n m\"");
        std::string rest;
        if (header >> rest) throw ParseError(line_no, "trailing tokens after header");
    }
    if (n < 2) throw ParseError(line_no, "vertex count must be >= 2");
    if (n > std::numeric_limits<uint32_t>::max()) throw ParseError(line_no, "vertex count too large");

    WeightedDigraph g(static_cast<uint32_t>(n));
    for (uint64_t i = 0; i < m; ++i) {
        next_data_line(true);
        std::istringstream row(line);
        uint64_t u = 0, v = 0;
        double w = 0.0;
        if (!(row >> u >> v >> w)) throw ParseError(line_no, "expected \"u v w\"");
        std::string rest;
        if (row >> rest) throw ParseError(line_no, "trailing tokens after edge");
        if (u >= n || v >= n) throw ParseError(line_no, "vertex id out of range");
        if (u == v) throw ParseError(line_no, "self-loop");
        if (g.has_edge(static_cast<Vertex>(u), static_cast<Vertex>(v)))
            throw ParseError(line_no, "duplicate edge");
        if (!(w > 0.0) || !std::isfinite(w)) throw ParseError(line_no, "weight must be positive and finite");
        g.set_weight(static_cast<Vertex>(u), static_cast<Vertex>(v), w);
    }
    if (next_data_line(false)) throw ParseError(line_no, "extra data after last edge");
    return g;
}

WeightedDigraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    return load_graph(in);
}

}  // namespace lsp

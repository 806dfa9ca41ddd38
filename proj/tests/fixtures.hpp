#pragma once

#include "lsp/graph.hpp"

namespace lsp::test {

// 3-vertex fixture with hand-computed distances:
//   dist = [[0, 0.2, 0.5], [0.7, 0, 0.3], [0.4, 0.6, 0]]
// and exactly 12 locally shortest paths: the 6 edges, 0->1->2, 1->2->0,
// 2->0->1, and the three cyclic closures 0->1->2->0, 1->2->0->1, 2->0->1->2.
inline WeightedDigraph k3_fixture() {
    WeightedDigraph g(3);
    g.set_weight(0, 1, 0.2);
    g.set_weight(1, 2, 0.3);
    g.set_weight(0, 2, 0.6);
    g.set_weight(1, 0, 0.9);
    g.set_weight(2, 0, 0.4);
    g.set_weight(2, 1, 0.8);
    return g;
}

}  // namespace lsp::test

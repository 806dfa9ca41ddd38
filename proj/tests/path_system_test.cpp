#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "fixtures.hpp"
#include "lsp/apsp.hpp"
#include "lsp/oracle.hpp"
#include "lsp/path_system.hpp"

using namespace lsp;

namespace {

bool near(double a, double b) { return oracle::nearly_equal_dist(a, b); }

std::set<std::vector<Vertex>> stored_vertex_sets(const PathSystem& system) {
    std::set<std::vector<Vertex>> out;
    for (const auto& d : system.stored_descriptors()) out.insert(d.vertices);
    return out;
}

bool equivalent_to_fresh_build(const PathSystem& system, bool compare_paths) {
    PathSystem fresh(system.graph());
    const auto& got = system.dist_matrix();
    const auto& want = fresh.dist_matrix();
    for (size_t i = 0; i < want.size(); ++i)
        if (!near(got[i], want[i])) return false;
    if (compare_paths && stored_vertex_sets(system) != stored_vertex_sets(fresh)) return false;
    return true;
}

}  // namespace

TEST_CASE("vertex, edge and join constructors wire the fields") {
    WeightedDigraph g = test::k3_fixture();
    PathStore store(&g);

    PathHandle v0 = store.vertex_path(0);
    CHECK(store.node(v0).cost == 0.0);
    CHECK(store.node(v0).start == 0);
    CHECK(store.node(v0).end == 0);
    CHECK(store.node(v0).sp);

    PathHandle e01 = store.make_edge_path(0, 1);
    const PathNode& edge = store.node(e01);
    CHECK(edge.cost == 0.2);
    CHECK(edge.l == store.vertex_path(0));
    CHECK(edge.r == store.vertex_path(1));
    // appears in R of the start's trivial path and L of the end's
    CHECK(store.node(store.vertex_path(0)).r_list == e01);
    CHECK(store.node(store.vertex_path(1)).l_list == e01);

    PathHandle e12 = store.make_edge_path(1, 2);
    PathHandle join = store.make_join(e01, e12);
    const PathNode& j = store.node(join);
    CHECK(j.cost == doctest::Approx(0.5));
    CHECK(j.start == 0);
    CHECK(j.end == 2);
    CHECK(j.l == e01);
    CHECK(j.r == e12);
    CHECK(store.node(e12).l_list == join);
    CHECK(store.node(e01).r_list == join);

    CHECK_THROWS_AS(store.make_join(e01, e01), std::logic_error);  // mismatched chain
}

TEST_CASE("initial build on the k3 fixture stores all 12 LSPs") {
    PathSystem system(test::k3_fixture());
    CHECK(system.stored_path_count() == 12);
    double want[3][3] = {{0, 0.2, 0.5}, {0.7, 0, 0.3}, {0.4, 0.6, 0}};
    for (Vertex u = 0; u < 3; ++u)
        for (Vertex v = 0; v < 3; ++v) CHECK(near(system.distance(u, v), want[u][v]));
    auto got = stored_vertex_sets(system);
    CHECK(got.count({0, 1, 2}) == 1);
    CHECK(got.count({0, 1, 2, 0}) == 1);  // cyclic path stored, never shortest
    CHECK(system.store().best(0, 0) == system.store().vertex_path(0));
    system.audit();
}

TEST_CASE("initial build on n=2 stores both edges and both cyclic closures") {
    WeightedDigraph g(2);
    g.set_weight(0, 1, 0.4);
    g.set_weight(1, 0, 0.6);
    PathSystem system(g);
    CHECK(system.stored_path_count() == 4);
    CHECK(system.store().node(system.store().edge_path(0, 1)).sp);
    CHECK(system.store().node(system.store().edge_path(1, 0)).sp);
    CHECK(stored_vertex_sets(system).count({0, 1, 0}) == 1);
    system.audit();
}

TEST_CASE("initial build matches the oracles on a random instance") {
    WeightedDigraph g = gen_complete(50, WeightModel::uniform01(), Seed{21});
    PathSystem system(g);
    auto report = oracle::verify_path_system(system, oracle::VerifyMode::FullLsp);
    CHECK(report.pass);
    system.audit();

    // agrees with the static solver as well
    ApspResult solved = solve_apsp(g);
    for (size_t i = 0; i < solved.dist.size(); ++i)
        CHECK(near(system.dist_matrix()[i], solved.dist[i]));
}

TEST_CASE("a cheaper path demotes the previous best and prunes its extensions") {
    // 0->1 is beaten by 0->2->1 once the latter is built; the direct edge
    // must stay stored but lose sp, and extensions built on it must go.
    WeightedDigraph g(4);
    g.set_weight(0, 2, 0.1);
    g.set_weight(2, 1, 0.1);
    g.set_weight(0, 1, 0.9);
    g.set_weight(1, 3, 0.1);
    g.set_weight(3, 0, 5.0);
    g.set_weight(2, 3, 5.0);
    PathSystem system(g);
    const PathStore& store = system.store();
    PathHandle direct = store.edge_path(0, 1);
    REQUIRE(direct != kNullPath);
    CHECK(!store.node(direct).sp);
    CHECK(near(system.distance(0, 1), 0.2));
    CHECK(stored_vertex_sets(system).count({0, 2, 1}) == 1);
    auto report = oracle::verify_path_system(system, oracle::VerifyMode::FullLsp);
    CHECK(report.pass);
    system.audit();
}

TEST_CASE("removing an edge path removes its recursive closure") {
    PathSystem system(test::k3_fixture());
    PathStore& store = system.store();
    store.reset_window();
    store.remove_path(store.edge_path(0, 1), true);

    // Gone: 0->1 and every path through it.
    auto remaining = stored_vertex_sets(system);
    std::set<std::vector<Vertex>> want{{1, 2}, {0, 2}, {1, 0}, {2, 0}, {1, 2, 0}, {1, 2, 0, 1}};
    CHECK(remaining == want);
    CHECK(store.window().lsp_removed == 6);
    CHECK(store.window().sp_removed == 3);  // 0->1, 0->1->2, 2->0->1

    // Pairs that lost their shortest path, deduplicated.
    auto pairs = store.take_replacements();
    std::set<uint32_t> got(pairs.begin(), pairs.end());
    std::set<uint32_t> expect{store.pair_id(0, 1), store.pair_id(0, 2), store.pair_id(2, 1)};
    CHECK(got == expect);
}

TEST_CASE("removals without replacement recording leave the queue plan empty") {
    PathSystem system(test::k3_fixture());
    PathStore& store = system.store();
    store.remove_path(store.edge_path(0, 1), false);
    CHECK(store.take_replacements().empty());
}

TEST_CASE("removing an unknown handle is a structural error") {
    PathSystem system(test::k3_fixture());
    CHECK_THROWS_AS(system.store().remove_path(kNullPath, false), std::logic_error);
    CHECK_THROWS_AS(system.store().remove_path(999999, false), std::logic_error);
}

TEST_CASE("replace_path picks the cheapest survivor or infinity") {
    PathSystem system(test::k3_fixture());
    PathStore& store = system.store();

    // Knock out 0->1; pair (0,2) falls back to the direct edge 0->2.
    store.remove_path(store.edge_path(0, 1), true);
    auto pairs = store.take_replacements();
    store.clear_queue();
    for (uint32_t id : pairs) store.replace_path(id / 3, id % 3);
    CHECK(near(store.dist(0, 2), 0.6));
    CHECK(store.best(0, 2) == store.edge_path(0, 2));
    // (0,1) has no surviving path at all
    CHECK(store.best(0, 1) == kNullPath);
    CHECK(store.dist(0, 1) == WeightedDigraph::kAbsent);
}

TEST_CASE("reassigning the current weight is churn-neutral") {
    WeightedDigraph g = gen_complete(20, WeightModel::uniform01(), Seed{8});
    PathSystem system(g);
    auto before = stored_vertex_sets(system);
    ChurnReport report = system.apply_update({EdgeUpdate{4, 7, g.weight(4, 7)}});
    CHECK(stored_vertex_sets(system) == before);
    CHECK(report.sp_minus == report.sp_plus);
    CHECK(report.lsp_minus == report.lsp_plus);
    CHECK(equivalent_to_fresh_build(system, true));
    system.audit();
}

TEST_CASE("k3 weight update re-routes the affected pairs") {
    PathSystem system(test::k3_fixture());
    ChurnReport report = system.apply_update({EdgeUpdate{0, 1, 0.9}});
    CHECK(report.sp_minus == report.sp_plus);
    CHECK(near(system.distance(0, 1), 0.9));  // min(0.9, 0.6+0.8, ...)
    CHECK(near(system.distance(0, 2), 0.6));  // direct edge now wins
    CHECK(equivalent_to_fresh_build(system, true));
    system.audit();
}

TEST_CASE("updates are invalid for absent edges and bad weights") {
    WeightedDigraph g(3);
    g.set_weight(0, 1, 1.0);
    g.set_weight(1, 2, 1.0);
    g.set_weight(2, 0, 1.0);
    PathSystem system(g);
    CHECK_THROWS_AS(system.apply_update({EdgeUpdate{0, 2, 1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(system.apply_update({EdgeUpdate{0, 1, -1.0}}), std::invalid_argument);
    CHECK_THROWS_AS(system.apply_update({EdgeUpdate{0, 1, 0.5}, EdgeUpdate{0, 1, 0.6}}),
                    std::invalid_argument);
}

TEST_CASE("multi-edge updates land in one quiescent state") {
    WeightedDigraph g = gen_complete(15, WeightModel::uniform01(), Seed{77});
    PathSystem system(g);
    std::vector<EdgeUpdate> batch{{0, 1, 0.001}, {5, 9, 2.5}, {14, 3, 0.4}};
    ChurnReport report = system.apply_update(batch);
    CHECK(report.sp_minus == report.sp_plus);
    CHECK(equivalent_to_fresh_build(system, true));
    CHECK(oracle::verify_path_system(system, oracle::VerifyMode::FullLsp).pass);
    system.audit();
}

TEST_CASE("delete then reinsert restores the original state") {
    WeightedDigraph g = gen_complete(12, WeightModel::uniform01(), Seed{31});
    PathSystem system(g);
    auto before = stored_vertex_sets(system);
    double w = g.weight(2, 5);

    system.structural_update({}, {{2, 5}});
    CHECK(!system.graph().has_edge(2, 5));
    CHECK(equivalent_to_fresh_build(system, true));
    system.audit();

    system.structural_update({EdgeUpdate{2, 5, w}}, {});
    CHECK(stored_vertex_sets(system) == before);
    CHECK(equivalent_to_fresh_build(system, true));
    system.audit();

    // Both in one call: delete and re-insert the same edge.
    system.structural_update({EdgeUpdate{2, 5, w}}, {{2, 5}});
    CHECK(stored_vertex_sets(system) == before);
    system.audit();
}

TEST_CASE("deleting the only path disconnects the pair") {
    WeightedDigraph g(3);
    g.set_weight(0, 1, 1.0);
    g.set_weight(1, 2, 1.0);
    PathSystem system(g);
    CHECK(near(system.distance(0, 2), 2.0));
    system.structural_update({}, {{1, 2}});
    CHECK(system.distance(0, 2) == WeightedDigraph::kAbsent);
    CHECK(system.distance(1, 2) == WeightedDigraph::kAbsent);
    CHECK(near(system.distance(0, 1), 1.0));
    system.audit();
}

TEST_CASE("inserting a heavy edge changes no shortest path") {
    WeightedDigraph g = gen_complete(10, WeightModel::uniform01(), Seed{13});
    g.remove_edge(3, 8);
    PathSystem system(g);
    auto dist_before = system.dist_matrix();
    ChurnReport report = system.structural_update({EdgeUpdate{3, 8, 50.0}}, {});
    CHECK(report.sp_minus == 0);
    CHECK(report.sp_plus == 0);
    CHECK(report.lsp_plus == 1);  // just the recreated edge path
    for (size_t i = 0; i < dist_before.size(); ++i)
        CHECK(system.dist_matrix()[i] == dist_before[i]);
    CHECK(equivalent_to_fresh_build(system, true));
    system.audit();
}

TEST_CASE("structural preconditions are enforced") {
    WeightedDigraph g = gen_complete(6, WeightModel::uniform01(), Seed{3});
    PathSystem system(g);
    CHECK_THROWS_AS(system.structural_update({EdgeUpdate{0, 1, 1.0}}, {}), std::invalid_argument);
    CHECK_THROWS_AS(system.structural_update({}, {{7, 0}}), std::invalid_argument);
    system.structural_update({}, {{0, 1}});
    CHECK_THROWS_AS(system.structural_update({}, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("random update sequences stay equivalent to fresh builds") {
    WeightedDigraph g = gen_complete(25, WeightModel::uniform01(), Seed{99});
    PathSystem system(std::move(g));
    WeightModel model = WeightModel::uniform01();
    for (uint32_t step = 0; step < 25; ++step) {
        EdgeUpdate update = sample_edge_update(system.graph(), model, derive_seed(Seed{99}, step));
        ChurnReport report = system.apply_update(update);
        CHECK(report.sp_minus == report.sp_plus);
        system.audit();
        CHECK(equivalent_to_fresh_build(system, true));
    }
    CHECK(oracle::verify_path_system(system, oracle::VerifyMode::FullLsp).pass);
}

TEST_CASE("mixed structural and weight updates keep the system sound") {
    WeightedDigraph g = gen_gnp(18, 0.6, WeightModel::uniform01(), Seed{5});
    PathSystem system(std::move(g));
    Rng rng(Seed{12345});
    for (uint32_t step = 0; step < 20; ++step) {
        Vertex u = Vertex(rng.below(18));
        Vertex v = Vertex(rng.below(18));
        if (u == v) continue;
        if (system.graph().has_edge(u, v)) {
            if (rng.below(2) == 0)
                system.apply_update({EdgeUpdate{u, v, rng.uniform01_positive()}});
            else
                system.structural_update({}, {{u, v}});
        } else {
            system.structural_update({EdgeUpdate{u, v, rng.uniform01_positive()}}, {});
        }
        system.audit();
        CHECK(equivalent_to_fresh_build(system, true));
    }
    CHECK(oracle::verify_path_system(system, oracle::VerifyMode::FullLsp).pass);
}

TEST_CASE("an update can demote surviving shortest paths and re-route their dependents") {
    // Dropping w(1,3) to 0.1 creates 1->3->2 (0.2), which demotes the
    // surviving shortest edge 1->2 (0.5). That cascade removes 0->1->2, the
    // shortest path of the untouched pair (0,2), whose new shortest path
    // 0->1->3->2 (0.3) must then be discovered during the same rebuild.
    WeightedDigraph g(4);
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = 0; v < 4; ++v)
            if (u != v) g.set_weight(u, v, 9.0);
    g.set_weight(0, 1, 0.1);
    g.set_weight(1, 2, 0.5);
    g.set_weight(3, 2, 0.1);
    g.set_weight(0, 2, 0.9);
    PathSystem system(g);
    CHECK(near(system.distance(0, 2), 0.6));
    CHECK(system.store().node(system.store().edge_path(1, 2)).sp);

    ChurnReport report = system.apply_update({EdgeUpdate{1, 3, 0.1}});
    CHECK(near(system.distance(1, 2), 0.2));
    CHECK(near(system.distance(0, 2), 0.3));
    CHECK(near(system.distance(0, 3), 0.2));
    CHECK(!system.store().node(system.store().edge_path(1, 2)).sp);  // demoted, still stored
    CHECK(report.sp_minus == 4);  // edge 1->3, demotions of 0->3 and 1->2, removal of 0->1->2
    CHECK(report.sp_plus == 4);   // pairs (1,3), (0,3), (1,2), (0,2) re-finalized
    CHECK(equivalent_to_fresh_build(system, true));
    CHECK(oracle::verify_path_system(system, oracle::VerifyMode::FullLsp).pass);
    system.audit();
}

TEST_CASE("the LSP count respects the essential-degree bound") {
    // |LSP| <= Delta * n^2 for unique-shortest-path instances.
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
        WeightedDigraph g = gen_complete(40, WeightModel::uniform01(), Seed{seed});
        PathSystem system(g);
        auto essential = essential_subgraph(solve_apsp(g), g);
        CHECK(system.stored_path_count() <=
              uint64_t(essential.max_out_degree) * 40ull * 40ull);
    }
}

TEST_CASE("local heap sizes are reported and bounded by Lambda") {
    WeightedDigraph g = gen_complete(30, WeightModel::uniform01(), Seed{41});
    PathSystem system(g);
    uint32_t max_heap = 0;
    for (Vertex u = 0; u < 30; ++u)
        for (Vertex v = 0; v < 30; ++v) max_heap = std::max(max_heap, system.local_heap_size(u, v));
    CHECK(max_heap >= 1);

    EdgeUpdate update = sample_edge_update(system.graph(), WeightModel::uniform01(), Seed{42});
    ChurnReport report = system.apply_update(update);
    CHECK(report.lambda >= 1);
}

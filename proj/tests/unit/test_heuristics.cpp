#include "sipdec/heuristics.hpp"

#include "../support/reference.hpp"

#include <doctest.h>

#include <algorithm>

using namespace sipdec;
using sipdec::testing::make_graph;

namespace {

std::vector<NodeId> sorted(std::vector<NodeId> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

bool covers(const std::vector<NodeId> & nodes, const std::vector<std::pair<NodeId, NodeId>> & edges)
{
    return std::all_of(edges.begin(), edges.end(), [&](auto e) {
        return std::find(nodes.begin(), nodes.end(), e.first) != nodes.end()
            || std::find(nodes.begin(), nodes.end(), e.second) != nodes.end();
    });
}

} // namespace

TEST_CASE("cycle heuristic")
{
    auto p4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    auto r = cycle_heuristic(UndirectedView(p4));
    CHECK(r.body_vars.empty());
    CHECK(r.fraction == 0.0);

    auto c5 = sipdec::testing::directed_cycle(5);
    r = cycle_heuristic(UndirectedView(c5));
    CHECK(sorted(r.body_vars) == std::vector<NodeId>{0, 1, 2, 3, 4});
    CHECK(r.fraction == 1.0);

    auto pendant = make_graph(4, {{0, 1}, {1, 2}, {2, 0}, {2, 3}});
    r = cycle_heuristic(UndirectedView(pendant));
    CHECK(sorted(r.body_vars) == std::vector<NodeId>{0, 1, 2});
    CHECK(r.body_vars.front() == 2); // highest degree first
    CHECK(r.fraction == doctest::Approx(0.75));

    // An antiparallel pair is a single undirected edge, not a cycle.
    auto pair = make_graph(2, {{0, 1}, {1, 0}});
    CHECK(cycle_heuristic(UndirectedView(pair)).body_vars.empty());
}

TEST_CASE("cycle heuristic matches the naive 2-core")
{
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        auto g = sipdec::testing::random_connected_pattern(1 + rng.below(14), rng.below(6), rng);
        UndirectedView v(g);
        auto r = cycle_heuristic(v);
        CHECK(sorted(r.body_vars) == sipdec::testing::reference_two_core(g));
        std::vector<NodeId> rest;
        for (NodeId x = 0; x < g.node_count(); ++x)
            if (std::find(r.body_vars.begin(), r.body_vars.end(), x) == r.body_vars.end())
                rest.push_back(x);
        CHECK(is_singly_connected(v, rest));
    }
}

TEST_CASE("balance tolerance")
{
    CHECK(balance_tolerance(4) == 1);
    CHECK(balance_tolerance(6) == 1);
    CHECK(balance_tolerance(10) == 1);
    CHECK(balance_tolerance(11) == 2);
    CHECK(is_balanced(2, 4, 1));
    CHECK(is_balanced(1, 4, 1));
    CHECK_FALSE(is_balanced(0, 4, 1));
    CHECK_FALSE(is_balanced(4, 4, 1));
    CHECK(is_balanced(1, 2, 0));
}

TEST_CASE("bridge between two triangles")
{
    // Exhaustive minimum over balanced bipartitions: 1.
    auto g = make_graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {2, 3}});
    REQUIRE(sipdec::testing::exhaustive_min_edgecut(g, balance_tolerance(6)) == 1);
    UndirectedView v(g);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto b = bipartition(v, seed);
        CHECK(b.edgecut() == 1);
        CHECK(b.cut_edges == std::vector<std::pair<NodeId, NodeId>>{{2, 3}});
        auto h = partition_heuristic(v, seed);
        CHECK(h.body_vars.size() == 1);
    }
}

TEST_CASE("path of four nodes")
{
    auto g = make_graph(4, {{0, 1}, {1, 2}, {2, 3}});
    REQUIRE(sipdec::testing::exhaustive_min_edgecut(g, balance_tolerance(4)) == 1);
    UndirectedView v(g);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto b = bipartition(v, seed);
        CHECK(b.edgecut() == 1);
        CHECK(partition_heuristic(v, seed).body_vars.size() == 1);
    }
}

TEST_CASE("single edge")
{
    auto g = make_graph(2, {{0, 1}});
    UndirectedView v(g);
    auto b = bipartition(v, 5);
    CHECK(b.edgecut() == 1);
    auto h = partition_heuristic(v, 5);
    CHECK(h.body_vars == std::vector<NodeId>{0});
    CHECK(h.fraction == 0.5);
}

TEST_CASE("greedy nodecut")
{
    auto star = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {3, 4}});
    UndirectedView v(star);
    std::vector<std::pair<NodeId, NodeId>> cut{{0, 1}, {0, 2}, {3, 4}};
    auto nc = greedy_nodecut(v, cut);
    CHECK(nc == std::vector<NodeId>{0, 3});
    CHECK(greedy_nodecut(v, {}).empty());
}

TEST_CASE("partitions are balanced and nodecuts cover the cut")
{
    Rng rng(19);
    for (int i = 0; i < 100; ++i) {
        auto n = 2 + rng.below(20);
        auto g = sipdec::testing::random_connected_pattern(n, rng.below(2 * n), rng);
        UndirectedView v(g);
        auto seed = rng.next();
        auto b = bipartition(v, seed);
        auto side0 = static_cast<std::size_t>(std::count(b.side.begin(), b.side.end(), 0));
        CHECK(is_balanced(side0, n, balance_tolerance(n)));
        for (auto [a, c] : b.cut_edges)
            CHECK(b.side[a] != b.side[c]);
        auto h = partition_heuristic(v, seed);
        CHECK(covers(h.body_vars, b.cut_edges));
        CHECK(bipartition(v, seed).side == b.side);
    }
}

TEST_CASE("variable selection")
{
    // Node 1 touches three constraints; node 3 is isolated.
    SipInstance inst(make_graph(4, {{0, 1}, {1, 2}, {2, 1}}), DirectedGraph(5));
    SearchState s(inst);
    CHECK(select_variable(s, SelectionPolicy::maxcstr) == NodeId{1});

    Bitset small(5);
    small.set(0);
    small.set(1);
    s.intersect(3, small);
    s.clear_queues();
    CHECK(select_variable(s, SelectionPolicy::minsize) == NodeId{3});

    // Restricted to the candidates, 2 has the most constraints.
    std::vector<NodeId> ends{0, 2, 3};
    CHECK(select_variable(s, SelectionPolicy::maxcstr, ends) == NodeId{2});

    std::vector<NodeId> order{3, 0};
    CHECK(select_static(s, order) == NodeId{3});

    auto m = s.checkpoint();
    s.fix(3, 0);
    s.fix(0, 1);
    CHECK(select_static(s, order) == std::nullopt);
    s.fix(1, 2);
    s.fix(2, 3);
    CHECK(select_variable(s, SelectionPolicy::minsize) == std::nullopt);
    s.restore(m);
}

TEST_CASE("maxcstr counts only constraints to unassigned variables")
{
    // Once the hub 0 is assigned, 1 and 2 tie on one constraint each and on
    // domain size; the lower id wins.
    SipInstance inst(make_graph(4, {{0, 1}, {0, 2}, {3, 0}, {1, 2}}), DirectedGraph(6));
    SearchState s(inst);
    CHECK(select_variable(s, SelectionPolicy::maxcstr) == NodeId{0});
    auto m = s.checkpoint();
    s.fix(0, 5);
    s.clear_queues();
    CHECK(select_variable(s, SelectionPolicy::maxcstr) == NodeId{1});
    s.restore(m);
}

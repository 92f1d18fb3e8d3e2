#include <doctest.h>

#include <random>

#include "commevolve/evolution.hpp"

using namespace commevolve;

namespace {

ImportanceFn uniform_importance() {
    return [](const NodeId&) { return 1.0; };
}

CommunitySubgraph group(int t, int i, std::initializer_list<NodeId> members) {
    CommunitySubgraph c;
    c.group_id = {t, i};
    c.members = members;
    return c;
}

SnapshotNetwork clique_snapshot(int index, const std::vector<std::set<NodeId>>& cliques) {
    SnapshotNetwork snap;
    snap.index = index;
    for (const auto& clique : cliques) {
        for (auto it = clique.begin(); it != clique.end(); ++it) {
            for (auto jt = std::next(it); jt != clique.end(); ++jt) {
                snap.directed_edges[{*it, *jt}] = 1;
                snap.nodes.insert(*it);
                snap.nodes.insert(*jt);
            }
        }
    }
    snap.rebuild_adjacency();
    return snap;
}

}  // namespace

TEST_CASE("inclusion basics") {
    auto g1 = group(1, 1, {"a", "b", "c"});
    auto g2 = group(2, 1, {"a", "b", "c"});
    CHECK(inclusion(g1, g2, uniform_importance()) == doctest::Approx(1.0));

    auto disjoint = group(2, 2, {"x", "y", "z"});
    CHECK(inclusion(g1, disjoint, uniform_importance()) == doctest::Approx(0.0));

    auto big = group(1, 1, {"a", "b", "c", "d"});
    auto small = group(2, 1, {"a", "b"});
    CHECK(inclusion(big, small, uniform_importance()) == doctest::Approx(0.25));
}

TEST_CASE("inclusion of a group in itself is 1 for any importance") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> w(0.1, 5.0);
    auto g = group(1, 1, {"a", "b", "c", "d", "e"});
    std::map<NodeId, double> weights;
    for (const auto& m : g.members) weights[m] = w(rng);
    auto imp = [&](const NodeId& x) { return weights.at(x); };
    CHECK(inclusion(g, g, imp) == doctest::Approx(1.0));
}

TEST_CASE("inclusion is scale-invariant in the importance function") {
    auto g1 = group(1, 1, {"a", "b", "c", "d"});
    auto g2 = group(2, 1, {"b", "c"});
    std::map<NodeId, double> weights{{"a", 1.0}, {"b", 2.0}, {"c", 0.5}, {"d", 3.0}};
    auto base = [&](const NodeId& x) { return weights.at(x); };
    auto scaled = [&](const NodeId& x) { return 17.0 * weights.at(x); };
    CHECK(inclusion(g1, g2, base) == doctest::Approx(inclusion(g1, g2, scaled)).epsilon(1e-12));
}

TEST_CASE("inclusion rejects empty groups and non-positive importance") {
    CommunitySubgraph empty;
    empty.group_id = {1, 1};
    auto g2 = group(2, 1, {"a"});
    CHECK_THROWS_AS(inclusion(empty, g2, uniform_importance()), std::invalid_argument);

    auto g1 = group(1, 1, {"a"});
    CHECK_THROWS_AS(inclusion(g1, g2, [](const NodeId&) { return 0.0; }),
                    std::invalid_argument);
}

TEST_CASE("label_events: identical groups continue") {
    auto snap = clique_snapshot(1, {{"a", "b", "c"}});
    auto result = label_events({group(1, 1, {"a", "b", "c"})},
                               {group(2, 1, {"a", "b", "c"})}, {}, snap,
                               uniform_importance());
    REQUIRE(result.events.size() == 1);
    CHECK(result.events[0].kind == EventKind::continuing);
    CHECK(result.events[0].from_group == GroupId{1, 1});
    CHECK(result.events[0].to_group == GroupId{2, 1});
    CHECK(result.targets[0].y == std::array<int, 6>{1, 0, 0, 0, 0, 0});
}

TEST_CASE("label_events: unique sub-threshold match shrinks") {
    // I12 = (3/5)^2 = 0.36 < alpha, I21 = 1 >= beta, |G1| >= |G2|, unique.
    auto snap = clique_snapshot(1, {{"a", "b", "c", "d", "e"}});
    auto result = label_events({group(1, 1, {"a", "b", "c", "d", "e"})},
                               {group(2, 1, {"a", "b", "c"})}, {}, snap,
                               uniform_importance());
    REQUIRE(result.events.size() == 1);
    CHECK(result.events[0].kind == EventKind::shrinking);
    CHECK(result.targets[0].y == std::array<int, 6>{0, 0, 0, 0, 1, 0});
}

TEST_CASE("label_events: zero overlap dissolves") {
    auto snap = clique_snapshot(1, {{"a", "b", "c"}});
    auto result = label_events({group(1, 1, {"a", "b", "c"})},
                               {group(2, 1, {"x", "y", "z"})}, {}, snap,
                               uniform_importance());
    REQUIRE(result.events.size() == 1);
    CHECK(result.events[0].kind == EventKind::dissolving);
    CHECK_FALSE(result.events[0].to_group.has_value());
    CHECK(result.targets[0].y == std::array<int, 6>{0, 1, 0, 0, 0, 0});
}

TEST_CASE("label_events: splitting fires on two sub-threshold targets") {
    auto snap = clique_snapshot(1, {{"a", "b", "c", "d", "e", "f"}});
    auto result = label_events(
        {group(1, 1, {"a", "b", "c", "d", "e", "f"})},
        {group(2, 1, {"a", "b", "c"}), group(2, 2, {"d", "e", "f"})}, {}, snap,
        uniform_importance());
    REQUIRE(result.events.size() == 2);
    CHECK(result.events[0].kind == EventKind::splitting);
    CHECK(result.events[1].kind == EventKind::splitting);
    CHECK(result.targets[0].y == std::array<int, 6>{0, 0, 0, 0, 0, 1});
}

TEST_CASE("label_events: merging fires on two sub-threshold sources") {
    auto snap = clique_snapshot(1, {{"a", "b", "c"}, {"d", "e", "f"}});
    auto result = label_events(
        {group(1, 1, {"a", "b", "c"}), group(1, 2, {"d", "e", "f"})},
        {group(2, 1, {"a", "b", "c", "d", "e", "f"})}, {}, snap, uniform_importance());
    REQUIRE(result.events.size() == 2);
    CHECK(result.events[0].kind == EventKind::merging);
    CHECK(result.events[1].kind == EventKind::merging);
    CHECK(result.targets[0].y == std::array<int, 6>{0, 0, 0, 1, 0, 0});
    CHECK(result.targets[1].y == std::array<int, 6>{0, 0, 0, 1, 0, 0});
}

TEST_CASE("label_events: superset successor grows") {
    auto snap = clique_snapshot(1, {{"a", "b", "c"}});
    auto result = label_events({group(1, 1, {"a", "b", "c"})},
                               {group(2, 1, {"a", "b", "c", "d"})}, {}, snap,
                               uniform_importance());
    REQUIRE(result.events.size() == 1);
    CHECK(result.events[0].kind == EventKind::growing);
}

TEST_CASE("label_events rejects mismatched snapshot indices") {
    auto snap = clique_snapshot(1, {{"a", "b", "c"}});
    CHECK_THROWS_WITH_AS(
        label_events({group(2, 1, {"a", "b", "c"})}, {group(3, 1, {"a", "b", "c"})},
                     {}, snap, uniform_importance()),
        doctest::Contains("snapshot"), std::runtime_error);
}

TEST_CASE("dissolving groups emit nothing else; labeling is deterministic") {
    auto snap = clique_snapshot(4, {{"a", "b", "c"}, {"p", "q", "r"}});
    std::vector<CommunitySubgraph> now = {group(4, 1, {"a", "b", "c"}),
                                          group(4, 2, {"p", "q", "r"})};
    std::vector<CommunitySubgraph> next = {group(5, 1, {"a", "b", "c"})};
    auto r1 = label_events(now, next, {}, snap);
    auto r2 = label_events(now, next, {}, snap);
    CHECK(r1.events == r2.events);
    CHECK(r1.targets == r2.targets);
    for (const auto& target : r1.targets) {
        if (target.y[static_cast<int>(EventKind::dissolving)] == 1) {
            int total = 0;
            for (int bit : target.y) total += bit;
            CHECK(total == 1);
        }
    }
}

TEST_CASE("incoming_event_counts tallies arrivals by kind") {
    GroupId merged{3, 1};
    std::vector<EvolutionEvent> events = {
        {EventKind::merging, {2, 1}, merged},
        {EventKind::merging, {2, 2}, merged},
        {EventKind::growing, {2, 3}, GroupId{3, 2}},
    };
    auto counts = incoming_event_counts(merged, events);
    CHECK(counts == std::array<int, 6>{0, 0, 0, 2, 0, 0});

    CHECK(incoming_event_counts(GroupId{1, 1}, {}) == std::array<int, 6>{0, 0, 0, 0, 0, 0});

    // Mixed arrivals recounted by hand.
    GroupId busy{3, 2};
    std::vector<EvolutionEvent> mixed = {
        {EventKind::growing, {2, 3}, busy},
        {EventKind::continuing, {2, 4}, busy},
        {EventKind::merging, {2, 5}, busy},
        {EventKind::merging, {2, 6}, GroupId{3, 9}},
    };
    CHECK(incoming_event_counts(busy, mixed) == std::array<int, 6>{1, 0, 1, 1, 0, 0});
}

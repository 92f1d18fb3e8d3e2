#include <doctest.h>

#include <random>
#include <sstream>

#include "commevolve/temporal_graph.hpp"

using namespace commevolve;

namespace {

std::vector<TemporalInteraction> parse_str(const std::string& text) {
    std::istringstream in(text);
    return parse_interactions(in).interactions;
}

}  // namespace

TEST_CASE("parse_interactions maps fields in file order") {
    auto got = parse_str("a,b,100\nb,a,150");
    REQUIRE(got.size() == 2);
    CHECK(got[0] == TemporalInteraction{"a", "b", 100});
    CHECK(got[1] == TemporalInteraction{"b", "a", 150});
}

TEST_CASE("parse_interactions drops self-loops with a tally") {
    std::istringstream in("a,a,100");
    auto result = parse_interactions(in);
    CHECK(result.interactions.empty());
    CHECK(result.self_loops_dropped == 1);
}

TEST_CASE("parse_interactions rejects malformed timestamps with line numbers") {
    std::istringstream in("a,b,x");
    CHECK_THROWS_WITH_AS(parse_interactions(in), doctest::Contains("line 1"),
                         std::runtime_error);

    std::istringstream in2("a,b,1\nq,r\n");
    CHECK_THROWS_WITH_AS(parse_interactions(in2), doctest::Contains("line 2"),
                         std::runtime_error);
}

TEST_CASE("parse_interactions skips comment lines and empty input") {
    std::istringstream in("% konect header\n# another\na,b,5\n");
    auto result = parse_interactions(in);
    CHECK(result.comment_lines_skipped == 2);
    CHECK(result.interactions.size() == 1);

    std::istringstream empty("");
    CHECK(parse_interactions(empty).interactions.empty());
}

TEST_CASE("parse_interactions rejects negative timestamps") {
    std::istringstream in("a,b,-5");
    CHECK_THROWS_AS(parse_interactions(in), std::runtime_error);
}

TEST_CASE("build_snapshots joint pair threshold") {
    std::vector<TemporalInteraction> xs = {
        {"a", "b", 0}, {"b", "a", 10}, {"a", "b", 20}, {"b", "a", 30}};

    SUBCASE("pair count 4 meets min=4") {
        auto series = build_snapshots(xs, 100, 4);
        REQUIRE(series.T() == 1);
        const auto& snap = series.at(1);
        CHECK(snap.directed_edges.size() == 2);
        CHECK(snap.directed_edges.at({"a", "b"}) == 2);
        CHECK(snap.directed_edges.at({"b", "a"}) == 2);
        CHECK(snap.nodes == std::set<NodeId>{"a", "b"});
    }

    SUBCASE("min=5 leaves an empty snapshot") {
        auto series = build_snapshots(xs, 100, 5);
        REQUIRE(series.T() == 1);
        CHECK(series.at(1).directed_edges.empty());
        CHECK(series.at(1).nodes.empty());
    }
}

TEST_CASE("build_snapshots splits a 6-interaction fixture into 3 windows") {
    // Hand-enumerated: window 1 = [0,100), 2 = [100,200), 3 = [200,300).
    std::vector<TemporalInteraction> xs = {
        {"a", "b", 5},   {"a", "b", 6},
        {"c", "d", 105}, {"c", "d", 140},
        {"e", "f", 205}, {"e", "f", 299}};
    auto series = build_snapshots(xs, 100, 1);
    REQUIRE(series.T() == 3);
    CHECK(series.at(1).directed_edges.size() == 1);
    CHECK(series.at(1).directed_edges.at({"a", "b"}) == 2);
    CHECK(series.at(2).directed_edges.size() == 1);
    CHECK(series.at(3).directed_edges.size() == 1);
    CHECK(series.at(1).window_start == 0);
    CHECK(series.at(1).window_end == 100);
    CHECK(series.at(3).window_end == 300);
}

TEST_CASE("build_snapshots drops the trailing partial window") {
    std::vector<TemporalInteraction> xs = {
        {"a", "b", 0}, {"a", "b", 10}, {"c", "d", 120}};
    // span = 121, one full window of 100; the partial tail [100,200) goes.
    auto series = build_snapshots(xs, 100, 1);
    REQUIRE(series.T() == 1);
    CHECK(series.at(1).directed_edges.count({"a", "b"}) == 1);
    CHECK(series.at(1).directed_edges.count({"c", "d"}) == 0);
}

TEST_CASE("build_snapshots rejects empty input") {
    CHECK_THROWS_WITH_AS(build_snapshots({}, 100, 1), doctest::Contains("no data"),
                         std::runtime_error);
}

TEST_CASE("degrees counts distinct counterparties") {
    auto series = build_snapshots({{"a", "b", 0}, {"c", "b", 1}}, 100, 1);
    const auto& snap = series.at(1);
    CHECK(snap.degrees("b") == std::pair<int, int>{2, 0});
    CHECK(snap.degrees("a") == std::pair<int, int>{0, 1});
    CHECK(snap.degrees("z") == std::pair<int, int>{0, 0});
}

TEST_CASE("degrees matches a brute-force edge scan on a random fixture") {
    std::mt19937_64 rng(77);
    std::vector<NodeId> names;
    for (int i = 0; i < 10; ++i) names.push_back("n" + std::to_string(i));
    std::vector<TemporalInteraction> xs;
    std::uniform_int_distribution<int> node(0, 9);
    std::uniform_int_distribution<std::int64_t> ts(0, 99);
    for (int i = 0; i < 60; ++i) {
        int u = node(rng), v = node(rng);
        if (u == v) continue;
        xs.push_back({names[u], names[v], ts(rng)});
    }
    auto series = build_snapshots(xs, 100, 1);
    const auto& snap = series.at(1);
    for (const auto& n : names) {
        std::set<NodeId> in, out;
        for (const auto& [edge, count] : snap.directed_edges) {
            if (edge.second == n) in.insert(edge.first);
            if (edge.first == n) out.insert(edge.second);
        }
        CHECK(snap.degrees(n) ==
              std::pair<int, int>{static_cast<int>(in.size()), static_cast<int>(out.size())});
    }
}

TEST_CASE("undirected projection merges reciprocal edges and keeps nodes") {
    auto series = build_snapshots({{"a", "b", 0}, {"b", "a", 5}}, 100, 1);
    auto g = undirected_projection(series.at(1));
    CHECK(g.edge_count() == 1);
    CHECK(g.has_edge("a", "b"));
    CHECK(g.has_edge("b", "a"));
    CHECK(g.nodes() == std::set<NodeId>{"a", "b"});
}

TEST_CASE("undirected projection of an empty snapshot is empty") {
    auto series = build_snapshots({{"a", "b", 0}}, 100, 2);
    auto g = undirected_projection(series.at(1));
    CHECK(g.nodes().empty());
    CHECK(g.edge_count() == 0);
}

TEST_CASE("undirected projection edge count equals distinct unordered pairs") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> node(0, 11);
    std::vector<TemporalInteraction> xs;
    for (int i = 0; i < 20; ++i) {
        int u = node(rng), v = node(rng);
        if (u == v) continue;
        xs.push_back({"n" + std::to_string(u), "n" + std::to_string(v),
                      static_cast<std::int64_t>(i)});
    }
    auto series = build_snapshots(xs, 100, 1);
    auto g = undirected_projection(series.at(1));
    std::set<std::pair<NodeId, NodeId>> pairs;
    for (const auto& [edge, count] : series.at(1).directed_edges) {
        auto key = edge.first < edge.second ? edge : std::make_pair(edge.second, edge.first);
        pairs.insert(key);
    }
    CHECK(g.edge_count() == pairs.size());
}

TEST_CASE("window partition covers every kept interaction exactly once") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> ts(0, 999);
    std::vector<TemporalInteraction> xs;
    for (int i = 0; i < 200; ++i) {
        xs.push_back({"a" + std::to_string(i % 7), "b" + std::to_string(i % 5), ts(rng)});
    }
    auto series = build_snapshots(xs, 100, 1);
    std::int64_t t0 = series.at(1).window_start;
    for (const auto& x : xs) {
        if (x.timestamp >= t0 + series.T() * series.window_length) continue;
        int hits = 0;
        for (const auto& snap : series.snapshots) {
            if (x.timestamp >= snap.window_start && x.timestamp < snap.window_end) ++hits;
        }
        CHECK(hits == 1);
    }
}

TEST_CASE("raising min_pair_interactions never adds an edge") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<int> node(0, 8);
    std::uniform_int_distribution<std::int64_t> ts(0, 399);
    std::vector<TemporalInteraction> xs;
    for (int i = 0; i < 300; ++i) {
        int u = node(rng), v = node(rng);
        if (u == v) continue;
        xs.push_back({"n" + std::to_string(u), "n" + std::to_string(v), ts(rng)});
    }
    auto loose = build_snapshots(xs, 100, 2);
    auto strict = build_snapshots(xs, 100, 3);
    REQUIRE(loose.T() == strict.T());
    for (int t = 1; t <= loose.T(); ++t) {
        for (const auto& [edge, count] : strict.at(t).directed_edges) {
            CHECK(loose.at(t).directed_edges.count(edge) == 1);
        }
    }
}

TEST_CASE("projection is idempotent and snapshots are deterministic") {
    std::vector<TemporalInteraction> xs = {
        {"a", "b", 1}, {"b", "c", 2}, {"c", "a", 3}, {"a", "b", 50}};
    auto series1 = build_snapshots(xs, 100, 1);
    auto series2 = build_snapshots(xs, 100, 1);
    REQUIRE(series1.snapshots.size() == series2.snapshots.size());
    for (int t = 1; t <= series1.T(); ++t) CHECK(series1.at(t) == series2.at(t));

    auto g = undirected_projection(series1.at(1));
    CHECK(undirected_projection(g) == g);
}

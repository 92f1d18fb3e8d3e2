#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "commevolve/ids.hpp"

namespace commevolve {

/// One directed, timestamped interaction between two distinct nodes.
struct TemporalInteraction {
    NodeId source;
    NodeId target;
    std::int64_t timestamp = 0;

    friend bool operator==(const TemporalInteraction&, const TemporalInteraction&) = default;
};

struct ParseResult {
    std::vector<TemporalInteraction> interactions;
    std::size_t self_loops_dropped = 0;
    std::size_t comment_lines_skipped = 0;
};

/// Reads interaction CSV: one `source,target,timestamp` record per line,
/// UTF-8, no header. Lines starting with '%' or '#' are skipped. Self-loops
/// are dropped and tallied. Throws std::runtime_error naming the offending
/// line on malformed input.
ParseResult parse_interactions(std::istream& in);
ParseResult parse_interactions_file(const std::string& path);

/// Simple undirected graph over NodeId, no self-loops.
class UndirectedGraph {
public:
    void add_node(const NodeId& u);
    void add_edge(const NodeId& u, const NodeId& v);
    bool has_edge(const NodeId& u, const NodeId& v) const;
    const std::set<NodeId>& nodes() const { return nodes_; }
    const std::set<NodeId>& neighbors(const NodeId& u) const;
    std::size_t edge_count() const;

    friend bool operator==(const UndirectedGraph&, const UndirectedGraph&) = default;

private:
    std::set<NodeId> nodes_;
    std::map<NodeId, std::set<NodeId>> adjacency_;
};

/// Directed multigraph for one time window. Nodes are exactly the endpoints
/// of surviving edges; an edge (u,v) carries the u->v interaction count.
struct SnapshotNetwork {
    int index = 0;                   // t, 1-based
    std::int64_t window_start = 0;   // inclusive
    std::int64_t window_end = 0;     // exclusive
    std::set<NodeId> nodes;
    std::map<std::pair<NodeId, NodeId>, int> directed_edges;

    /// Distinct in/out neighbor counts; (0,0) for nodes not in the snapshot.
    std::pair<int, int> degrees(const NodeId& node) const;

    /// Union of in- and out-neighbors.
    const std::set<NodeId>& undirected_neighbors(const NodeId& node) const;

    /// Rebuilds adjacency indexes; call after filling directed_edges.
    void rebuild_adjacency();

    friend bool operator==(const SnapshotNetwork& a, const SnapshotNetwork& b) {
        return a.index == b.index && a.window_start == b.window_start &&
               a.window_end == b.window_end && a.nodes == b.nodes &&
               a.directed_edges == b.directed_edges;
    }

private:
    std::map<NodeId, std::set<NodeId>> in_adjacency_;
    std::map<NodeId, std::set<NodeId>> out_adjacency_;
    std::map<NodeId, std::set<NodeId>> und_adjacency_;
};

struct SnapshotSeries {
    std::vector<SnapshotNetwork> snapshots;  // snapshots[t-1] holds snapshot t
    std::int64_t window_length = 0;

    int T() const { return static_cast<int>(snapshots.size()); }
    const SnapshotNetwork& at(int t) const;   // 1-based, throws std::out_of_range
    const SnapshotNetwork* find(int t) const; // nullptr when out of range
};

/// Partitions interactions into contiguous equal-length windows anchored at
/// the earliest timestamp. A directed edge (u,v) survives in a window iff the
/// unordered pair {u,v} has >= min_pair_interactions interactions (both
/// directions combined) in that window and at least one of them is u->v.
/// The trailing partial window is dropped unless it would be the only one.
SnapshotSeries build_snapshots(const std::vector<TemporalInteraction>& interactions,
                               std::int64_t window_length,
                               int min_pair_interactions);

/// Undirected simple projection: {u,v} iff u->v or v->u. Node set preserved.
UndirectedGraph undirected_projection(const SnapshotNetwork& snapshot);
UndirectedGraph undirected_projection(const UndirectedGraph& graph);

}  // namespace commevolve

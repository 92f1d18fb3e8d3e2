#pragma once

#include <cstddef>
#include <set>
#include <vector>

#include "commevolve/ids.hpp"
#include "commevolve/temporal_graph.hpp"

namespace commevolve {

/// One overlapping community within a snapshot: its member nodes plus the
/// one-hop neighbor nodes adjacent (undirected) to at least one member.
struct CommunitySubgraph {
    GroupId group_id;
    std::set<NodeId> members;
    std::set<NodeId> neighbors;
    int snapshot_index() const { return group_id.t; }
    int node_count() const { return static_cast<int>(members.size() + neighbors.size()); }

    friend bool operator==(const CommunitySubgraph&, const CommunitySubgraph&) = default;
};

/// Which clique of an overlapping pair supplies the majority threshold.
enum class CliqueMergeBasis { smaller, larger, union_size };

struct DetectConfig {
    int k_min = 3;
    CliqueMergeBasis merge_basis = CliqueMergeBasis::smaller;
    std::size_t max_cliques = 200000;  // abort with an error beyond this
};

/// All maximal cliques of size >= k_min (Bron-Kerbosch with pivoting).
/// Returned in a canonical deterministic order. Throws std::runtime_error if
/// more than max_cliques qualifying cliques are found.
std::vector<std::set<NodeId>> maximal_cliques(const UndirectedGraph& graph, int k_min,
                                              std::size_t max_cliques = 200000);

/// Clique-graph percolation: cliques A,B are linked iff their overlap exceeds
/// half the basis size (strictly); each connected component unions into one
/// community member set. Duplicate member sets are deduplicated.
std::vector<std::set<NodeId>> merge_cliques(const std::vector<std::set<NodeId>>& cliques,
                                            CliqueMergeBasis basis = CliqueMergeBasis::smaller);

/// Full detection for one snapshot. Ordinals are assigned by descending
/// member count, ties broken by lexicographic member comparison.
std::vector<CommunitySubgraph> detect_communities(const SnapshotNetwork& snapshot,
                                                  const DetectConfig& cfg = {});

}  // namespace commevolve

#pragma once

#include <array>
#include <vector>

#include "commevolve/community.hpp"
#include "commevolve/evolution.hpp"
#include "commevolve/ids.hpp"
#include "commevolve/temporal_graph.hpp"

namespace commevolve {

struct FeatureConfig {
    int history = 2;     // P: snapshots of node history (current + P-1 previous)
    int node_attrs = 2;  // D_n: in-degree, out-degree
    bool standardize = false;

    int row_width() const { return node_attrs * history; }
    int group_attrs() const { return 3 + kEventKindCount; }  // D_g

    friend bool operator==(const FeatureConfig&, const FeatureConfig&) = default;
};

/// One training record for a group at snapshot t. Rows of X align with
/// node_order and the position vector m (1 = member, 0 = neighbor);
/// node_order is members first then neighbors, each block sorted by id.
struct GroupExample {
    GroupId group_id;
    std::vector<NodeId> node_order;
    std::vector<double> X;  // row-major, rows() x width
    int width = 0;
    std::vector<int> m;
    std::vector<double> g;
    std::array<int, kEventKindCount> y{};

    int rows() const { return static_cast<int>(node_order.size()); }
    const double* row(int r) const { return X.data() + static_cast<std::size_t>(r) * width; }

    friend bool operator==(const GroupExample&, const GroupExample&) = default;
};

/// [in_deg^t, out_deg^t, in_deg^{t-1}, out_deg^{t-1}, ...] over `history`
/// snapshots, newest first; indexes before snapshot 1 and absent nodes
/// contribute zeros.
std::vector<double> node_feature_vector(const NodeId& node, const SnapshotSeries& series,
                                        int t, int history);

/// Undirected member-internal edge count over n(n-1)/2.
double group_density(const CommunitySubgraph& group, const SnapshotNetwork& snapshot);

/// Member-member undirected edges over all undirected edges incident to any
/// member.
double group_affinity(const CommunitySubgraph& group, const SnapshotNetwork& snapshot);

/// [density, affinity, member count, incoming event counts x6].
std::vector<double> group_feature_vector(const CommunitySubgraph& group,
                                         const SnapshotNetwork& snapshot,
                                         const std::vector<EvolutionEvent>& events_prev);

/// Builds one GroupExample per group at snapshots 1..T-1.
/// communities[t-1] holds snapshot t's groups; events[t-1] / targets[t-1]
/// hold the t -> t+1 transition output.
std::vector<GroupExample> assemble_examples(
    const SnapshotSeries& series,
    const std::vector<std::vector<CommunitySubgraph>>& communities,
    const std::vector<std::vector<EvolutionEvent>>& events,
    const std::vector<std::vector<EventTargetVector>>& targets,
    const FeatureConfig& cfg);

/// [member-row mean of X || neighbor-row mean of X || g]; the neighbor block
/// is zero when the group has no neighbors.
std::vector<double> flatten_for_baseline(const GroupExample& example);

/// Per-feature z-scoring fitted on training data only. X statistics are over
/// all node rows, g statistics over examples; zero-variance columns pass
/// through unscaled.
struct Standardizer {
    std::vector<double> x_mean, x_scale;
    std::vector<double> g_mean, g_scale;

    static Standardizer fit(const std::vector<const GroupExample*>& train);
    GroupExample apply(const GroupExample& example) const;
};

}  // namespace commevolve

#include "commevolve/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace commevolve {

std::vector<double> node_feature_vector(const NodeId& node, const SnapshotSeries& series,
                                        int t, int history) {
    if (t < 1) throw std::invalid_argument("node_feature_vector: t must be >= 1");
    std::vector<double> features;
    features.reserve(static_cast<std::size_t>(2 * history));
    for (int p = 0; p < history; ++p) {
        const SnapshotNetwork* snap = series.find(t - p);
        if (snap == nullptr) {
            features.push_back(0.0);
            features.push_back(0.0);
            continue;
        }
        auto [in_deg, out_deg] = snap->degrees(node);
        features.push_back(static_cast<double>(in_deg));
        features.push_back(static_cast<double>(out_deg));
    }
    return features;
}

double group_density(const CommunitySubgraph& group, const SnapshotNetwork& snapshot) {
    const auto& members = group.members;
    const std::size_t n = members.size();
    if (n < 2) throw std::invalid_argument("group_density: needs at least 2 members");
    std::size_t internal = 0;
    for (auto it = members.begin(); it != members.end(); ++it) {
        const auto& nbrs = snapshot.undirected_neighbors(*it);
        for (auto jt = std::next(it); jt != members.end(); ++jt) {
            if (nbrs.count(*jt)) ++internal;
        }
    }
    return static_cast<double>(internal) / (static_cast<double>(n) * (n - 1) / 2.0);
}

double group_affinity(const CommunitySubgraph& group, const SnapshotNetwork& snapshot) {
    std::size_t incident = 0;
    std::size_t internal = 0;
    std::set<std::pair<NodeId, NodeId>> seen;
    for (const auto& u : group.members) {
        for (const auto& v : snapshot.undirected_neighbors(u)) {
            auto key = u < v ? std::make_pair(u, v) : std::make_pair(v, u);
            if (!seen.insert(key).second) continue;
            ++incident;
            if (group.members.count(v)) ++internal;
        }
    }
    if (incident == 0) {
        throw std::runtime_error("group_affinity: group has no incident edges");
    }
    return static_cast<double>(internal) / static_cast<double>(incident);
}

std::vector<double> group_feature_vector(const CommunitySubgraph& group,
                                         const SnapshotNetwork& snapshot,
                                         const std::vector<EvolutionEvent>& events_prev) {
    std::vector<double> g;
    g.reserve(3 + kEventKindCount);
    g.push_back(group_density(group, snapshot));
    g.push_back(group_affinity(group, snapshot));
    g.push_back(static_cast<double>(group.members.size()));
    auto counts = incoming_event_counts(group.group_id, events_prev);
    for (int c : counts) g.push_back(static_cast<double>(c));
    return g;
}

std::vector<GroupExample> assemble_examples(
    const SnapshotSeries& series,
    const std::vector<std::vector<CommunitySubgraph>>& communities,
    const std::vector<std::vector<EvolutionEvent>>& events,
    const std::vector<std::vector<EventTargetVector>>& targets,
    const FeatureConfig& cfg) {
    const int T = series.T();
    if (static_cast<int>(communities.size()) < T - 1) {
        throw std::invalid_argument("assemble_examples: missing community lists");
    }
    static const std::vector<EvolutionEvent> kNoEvents;

    std::vector<GroupExample> examples;
    for (int t = 1; t <= T - 1; ++t) {
        const auto& comms = communities[static_cast<std::size_t>(t - 1)];
        const auto& events_prev =
            t >= 2 ? events[static_cast<std::size_t>(t - 2)] : kNoEvents;

        std::map<GroupId, const EventTargetVector*> target_index;
        if (static_cast<std::size_t>(t - 1) < targets.size()) {
            for (const auto& tv : targets[static_cast<std::size_t>(t - 1)]) {
                target_index[tv.group_id] = &tv;
            }
        }

        const SnapshotNetwork& snap = series.at(t);
        for (const auto& group : comms) {
            auto target_it = target_index.find(group.group_id);
            if (target_it == target_index.end()) {
                throw std::runtime_error("assemble_examples: missing target for group (" +
                                         std::to_string(group.group_id.t) + "," +
                                         std::to_string(group.group_id.i) + ")");
            }
            GroupExample ex;
            ex.group_id = group.group_id;
            ex.width = cfg.row_width();
            ex.node_order.assign(group.members.begin(), group.members.end());
            ex.node_order.insert(ex.node_order.end(), group.neighbors.begin(),
                                 group.neighbors.end());
            ex.m.assign(ex.node_order.size(), 0);
            std::fill(ex.m.begin(), ex.m.begin() + static_cast<long>(group.members.size()), 1);
            ex.X.reserve(ex.node_order.size() * static_cast<std::size_t>(ex.width));
            for (const auto& node : ex.node_order) {
                auto row = node_feature_vector(node, series, t, cfg.history);
                ex.X.insert(ex.X.end(), row.begin(), row.end());
            }
            ex.g = group_feature_vector(group, snap, events_prev);
            ex.y = target_it->second->y;
            examples.push_back(std::move(ex));
        }
    }
    return examples;
}

std::vector<double> flatten_for_baseline(const GroupExample& example) {
    const int width = example.width;
    std::vector<double> member_mean(static_cast<std::size_t>(width), 0.0);
    std::vector<double> neighbor_mean(static_cast<std::size_t>(width), 0.0);
    int members = 0;
    int neighbors = 0;
    for (int r = 0; r < example.rows(); ++r) {
        const double* row = example.row(r);
        auto& acc = example.m[static_cast<std::size_t>(r)] ? member_mean : neighbor_mean;
        (example.m[static_cast<std::size_t>(r)] ? members : neighbors) += 1;
        for (int c = 0; c < width; ++c) acc[static_cast<std::size_t>(c)] += row[c];
    }
    if (members == 0) throw std::invalid_argument("flatten_for_baseline: no member rows");
    for (auto& v : member_mean) v /= members;
    if (neighbors > 0) {
        for (auto& v : neighbor_mean) v /= neighbors;
    }
    std::vector<double> flat;
    flat.reserve(member_mean.size() + neighbor_mean.size() + example.g.size());
    flat.insert(flat.end(), member_mean.begin(), member_mean.end());
    flat.insert(flat.end(), neighbor_mean.begin(), neighbor_mean.end());
    flat.insert(flat.end(), example.g.begin(), example.g.end());
    return flat;
}

Standardizer Standardizer::fit(const std::vector<const GroupExample*>& train) {
    if (train.empty()) throw std::invalid_argument("Standardizer: empty training set");
    const std::size_t width = static_cast<std::size_t>(train.front()->width);
    const std::size_t gdim = train.front()->g.size();

    Standardizer s;
    s.x_mean.assign(width, 0.0);
    s.x_scale.assign(width, 0.0);
    s.g_mean.assign(gdim, 0.0);
    s.g_scale.assign(gdim, 0.0);

    std::size_t n_rows = 0;
    for (const auto* ex : train) {
        for (int r = 0; r < ex->rows(); ++r) {
            const double* row = ex->row(r);
            for (std::size_t c = 0; c < width; ++c) s.x_mean[c] += row[c];
            ++n_rows;
        }
        for (std::size_t c = 0; c < gdim; ++c) s.g_mean[c] += ex->g[c];
    }
    for (auto& v : s.x_mean) v /= static_cast<double>(n_rows);
    for (auto& v : s.g_mean) v /= static_cast<double>(train.size());

    for (const auto* ex : train) {
        for (int r = 0; r < ex->rows(); ++r) {
            const double* row = ex->row(r);
            for (std::size_t c = 0; c < width; ++c) {
                double d = row[c] - s.x_mean[c];
                s.x_scale[c] += d * d;
            }
        }
        for (std::size_t c = 0; c < gdim; ++c) {
            double d = ex->g[c] - s.g_mean[c];
            s.g_scale[c] += d * d;
        }
    }
    auto finalize = [](std::vector<double>& scale, std::size_t n) {
        for (auto& v : scale) {
            v = std::sqrt(v / static_cast<double>(n));
            if (v < 1e-12) v = 1.0;  // constant feature: leave unscaled
        }
    };
    finalize(s.x_scale, n_rows);
    finalize(s.g_scale, train.size());
    return s;
}

GroupExample Standardizer::apply(const GroupExample& example) const {
    GroupExample out = example;
    const std::size_t width = static_cast<std::size_t>(example.width);
    for (int r = 0; r < example.rows(); ++r) {
        double* row = out.X.data() + static_cast<std::size_t>(r) * width;
        for (std::size_t c = 0; c < width; ++c) {
            row[c] = (row[c] - x_mean[c]) / x_scale[c];
        }
    }
    for (std::size_t c = 0; c < out.g.size(); ++c) {
        out.g[c] = (out.g[c] - g_mean[c]) / g_scale[c];
    }
    return out;
}

}  // namespace commevolve

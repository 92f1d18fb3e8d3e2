#include "commevolve/evolution.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace commevolve {

namespace {

std::string group_name(const GroupId& g) {
    return "(" + std::to_string(g.t) + "," + std::to_string(g.i) + ")";
}

bool event_less(const EvolutionEvent& a, const EvolutionEvent& b) {
    if (a.from_group != b.from_group) return a.from_group < b.from_group;
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.to_group < b.to_group;
}

}  // namespace

ImportanceFn degree_plus_one_importance(const SnapshotNetwork& snapshot) {
    return [&snapshot](const NodeId& node) {
        return static_cast<double>(snapshot.undirected_neighbors(node).size()) + 1.0;
    };
}

double inclusion(const CommunitySubgraph& g1, const CommunitySubgraph& g2,
                 const ImportanceFn& importance) {
    if (g1.members.empty()) throw std::invalid_argument("inclusion: empty member set");
    double shared_count = 0.0;
    double shared_importance = 0.0;
    double total_importance = 0.0;
    for (const auto& node : g1.members) {
        double w = importance(node);
        if (!(w > 0.0)) {
            throw std::invalid_argument("inclusion: non-positive importance for node " + node);
        }
        total_importance += w;
        if (g2.members.count(node)) {
            shared_count += 1.0;
            shared_importance += w;
        }
    }
    return (shared_count / static_cast<double>(g1.members.size())) *
           (shared_importance / total_importance);
}

LabelResult label_events(const std::vector<CommunitySubgraph>& comms_t,
                         const std::vector<CommunitySubgraph>& comms_t1,
                         const GedParams& params,
                         const SnapshotNetwork& snapshot_t,
                         const ImportanceFn& importance) {
    for (const auto& c : comms_t) {
        if (c.snapshot_index() != snapshot_t.index) {
            throw std::runtime_error("label_events: group " + group_name(c.group_id) +
                                     " does not belong to snapshot " +
                                     std::to_string(snapshot_t.index));
        }
    }
    for (const auto& c : comms_t1) {
        if (c.snapshot_index() != snapshot_t.index + 1) {
            throw std::runtime_error("label_events: group " + group_name(c.group_id) +
                                     " does not belong to snapshot " +
                                     std::to_string(snapshot_t.index + 1));
        }
    }

    ImportanceFn imp = importance ? importance : degree_plus_one_importance(snapshot_t);
    const std::size_t n1 = comms_t.size();
    const std::size_t n2 = comms_t1.size();

    std::vector<std::vector<double>> i12(n1, std::vector<double>(n2, 0.0));
    std::vector<std::vector<double>> i21(n1, std::vector<double>(n2, 0.0));
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            i12[i][j] = inclusion(comms_t[i], comms_t1[j], imp);
            i21[i][j] = inclusion(comms_t1[j], comms_t[i], imp);
        }
    }

    std::vector<bool> dissolved(n1, false);
    for (std::size_t i = 0; i < n1; ++i) {
        bool any_floor = false;
        for (std::size_t j = 0; j < n2 && !any_floor; ++j) {
            any_floor = i12[i][j] >= params.dissolve_floor || i21[i][j] >= params.dissolve_floor;
        }
        dissolved[i] = !any_floor;
    }

    const double a = params.alpha;
    const double b = params.beta;
    auto size1 = [&](std::size_t i) { return comms_t[i].members.size(); };
    auto size2 = [&](std::size_t j) { return comms_t1[j].members.size(); };

    std::vector<EvolutionEvent> events;
    for (std::size_t i = 0; i < n1; ++i) {
        if (dissolved[i]) {
            events.push_back({EventKind::dissolving, comms_t[i].group_id, std::nullopt});
            continue;
        }
        std::vector<std::size_t> split_candidates;
        for (std::size_t j = 0; j < n2; ++j) {
            if (i12[i][j] >= a && i21[i][j] >= b) {
                EventKind kind = EventKind::continuing;
                if (size1(i) > size2(j)) kind = EventKind::shrinking;
                else if (size1(i) < size2(j)) kind = EventKind::growing;
                events.push_back({kind, comms_t[i].group_id, comms_t1[j].group_id});
            } else if (i12[i][j] < a && i21[i][j] >= b && size1(i) >= size2(j)) {
                split_candidates.push_back(j);
            }
        }
        if (split_candidates.size() >= 2) {
            for (std::size_t j : split_candidates) {
                events.push_back({EventKind::splitting, comms_t[i].group_id,
                                  comms_t1[j].group_id});
            }
        } else if (split_candidates.size() == 1) {
            events.push_back({EventKind::shrinking, comms_t[i].group_id,
                              comms_t1[split_candidates[0]].group_id});
        }
    }

    // Merge side: per target group, collect sub-threshold sources.
    for (std::size_t j = 0; j < n2; ++j) {
        std::vector<std::size_t> merge_sources;
        for (std::size_t i = 0; i < n1; ++i) {
            if (dissolved[i]) continue;
            if (i12[i][j] >= a && i21[i][j] < b && size1(i) <= size2(j)) {
                merge_sources.push_back(i);
            }
        }
        if (merge_sources.size() >= 2) {
            for (std::size_t i : merge_sources) {
                events.push_back({EventKind::merging, comms_t[i].group_id,
                                  comms_t1[j].group_id});
            }
        } else if (merge_sources.size() == 1) {
            events.push_back({EventKind::growing, comms_t[merge_sources[0]].group_id,
                              comms_t1[j].group_id});
        }
    }

    std::sort(events.begin(), events.end(), event_less);

    LabelResult result;
    result.events = std::move(events);
    result.targets.reserve(n1);
    for (std::size_t i = 0; i < n1; ++i) {
        EventTargetVector target;
        target.group_id = comms_t[i].group_id;
        for (const auto& e : result.events) {
            if (e.from_group == target.group_id) {
                target.y[static_cast<std::size_t>(e.kind)] = 1;
            }
        }
        result.targets.push_back(target);
    }
    return result;
}

std::array<int, kEventKindCount> incoming_event_counts(
    const GroupId& group, const std::vector<EvolutionEvent>& events_prev) {
    std::array<int, kEventKindCount> counts{};
    for (const auto& e : events_prev) {
        if (e.to_group && *e.to_group == group) {
            ++counts[static_cast<std::size_t>(e.kind)];
        }
    }
    return counts;
}

}  // namespace commevolve

#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "commevolve/community.hpp"
#include "commevolve/ids.hpp"
#include "commevolve/temporal_graph.hpp"

namespace commevolve {

struct EvolutionEvent {
    EventKind kind = EventKind::continuing;
    GroupId from_group;               // at t
    std::optional<GroupId> to_group;  // at t+1; absent for dissolving

    friend bool operator==(const EvolutionEvent&, const EvolutionEvent&) = default;
};

/// Multi-label target for one group: y[e] = 1 iff the group participates in
/// at least one event of kind e. Order follows EventKind.
struct EventTargetVector {
    GroupId group_id;
    std::array<int, kEventKindCount> y{};

    friend bool operator==(const EventTargetVector&, const EventTargetVector&) = default;
};

struct GedParams {
    double alpha = 0.5;
    double beta = 0.5;
    double dissolve_floor = 0.1;
};

using ImportanceFn = std::function<double(const NodeId&)>;

/// Default node importance: undirected degree in the given snapshot plus one.
ImportanceFn degree_plus_one_importance(const SnapshotNetwork& snapshot);

/// Directional inclusion of G1 in G2:
///   (|M1 ∩ M2| / |M1|) * (Σ importance over M1 ∩ M2 / Σ importance over M1).
/// Importance must be strictly positive on G1's members.
double inclusion(const CommunitySubgraph& g1, const CommunitySubgraph& g2,
                 const ImportanceFn& importance);

struct LabelResult {
    std::vector<EvolutionEvent> events;
    std::vector<EventTargetVector> targets;  // one per group in comms_t, same order
};

/// Labels evolution events between consecutive snapshots.
///
/// With I12 = inclusion(G1,G2), I21 = inclusion(G2,G1) and sizes by member
/// count:
///   continuing: I12>=a and I21>=b and |G1|==|G2|
///   shrinking:  (I12>=a and I21>=b and |G1|>|G2|), or
///               (I12<a and I21>=b and |G1|>=|G2| with G2 the unique such match)
///   growing:    (I12>=a and I21>=b and |G1|<|G2|), or
///               (I12>=a and I21<b and |G1|<=|G2| with G1 the unique such source)
///   splitting:  I12<a and I21>=b and |G1|>=|G2| holding for >= 2 distinct G2
///   merging:    I12>=a and I21<b and |G1|<=|G2| holding for >= 2 distinct G1
///   dissolving: no G2 reaches dissolve_floor in either direction (exclusive:
///               a dissolving group emits nothing else)
///
/// Importance defaults to degree_plus_one_importance(snapshot_t).
LabelResult label_events(const std::vector<CommunitySubgraph>& comms_t,
                         const std::vector<CommunitySubgraph>& comms_t1,
                         const GedParams& params,
                         const SnapshotNetwork& snapshot_t,
                         const ImportanceFn& importance = {});

/// Counts events (between t-1 and t) arriving at the given group, per kind.
std::array<int, kEventKindCount> incoming_event_counts(
    const GroupId& group, const std::vector<EvolutionEvent>& events_prev);

}  // namespace commevolve

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace commevolve {

using NodeId = std::string;

/// (snapshot index, ordinal) pair identifying a community. Both 1-based.
struct GroupId {
    int t = 0;
    int i = 0;
    auto operator<=>(const GroupId&) const = default;
};

enum class EventKind : std::uint8_t {
    continuing = 0,
    dissolving,
    growing,
    merging,
    shrinking,
    splitting,
};

inline constexpr int kEventKindCount = 6;

inline constexpr std::array<std::string_view, kEventKindCount> kEventKindNames{
    "continuing", "dissolving", "growing", "merging", "shrinking", "splitting"};

std::string_view to_string(EventKind kind);
EventKind event_kind_from_string(std::string_view name);

}  // namespace commevolve

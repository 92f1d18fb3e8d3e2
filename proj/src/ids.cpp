#include "commevolve/ids.hpp"

#include <stdexcept>

namespace commevolve {

std::string_view to_string(EventKind kind) {
    return kEventKindNames.at(static_cast<std::size_t>(kind));
}

EventKind event_kind_from_string(std::string_view name) {
    for (int i = 0; i < kEventKindCount; ++i) {
        if (kEventKindNames[static_cast<std::size_t>(i)] == name) {
            return static_cast<EventKind>(i);
        }
    }
    throw std::invalid_argument("unknown event kind: " + std::string(name));
}

}  // namespace commevolve

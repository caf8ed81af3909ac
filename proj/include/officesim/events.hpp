#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace officesim {

inline constexpr std::size_t kNoTarget = static_cast<std::size_t>(-1);

enum class EventKind {
    EnterBuilding,
    EnterOwnOffice,
    SwitchComputerOn,
    ComputerToStandby,
    SwitchComputerOff,
    LeaveOfficeTemporary,
    LeaveOfficeLong,
    EnterOtherRoom,
    ExitOtherRoom,
    LeaveBuilding,
    ManualLightsOn,
    ManualLightsOff,
};

std::string_view to_string(EventKind kind);

enum class LeaveKind { Temporary, Long };

/// Something an occupant did. `target` is a room index for EnterOtherRoom,
/// ExitOtherRoom and the manual light events, a computer index for the
/// computer events, and kNoTarget otherwise. Events are ordered by
/// (minute, agent, emission order); the event log preserves that order.
struct OccupantEvent {
    std::int64_t minute = 0;
    int agent = 0;
    EventKind kind = EventKind::EnterBuilding;
    std::size_t target = kNoTarget;

    bool operator==(const OccupantEvent&) const = default;
};

constexpr bool is_computer_event(EventKind k)
{
    return k == EventKind::SwitchComputerOn || k == EventKind::ComputerToStandby ||
           k == EventKind::SwitchComputerOff;
}

constexpr bool is_light_event(EventKind k)
{
    return k == EventKind::ManualLightsOn || k == EventKind::ManualLightsOff;
}

}  // namespace officesim

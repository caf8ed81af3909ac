#pragma once

#include "officesim/building.hpp"
#include "officesim/events.hpp"
#include "officesim/rng.hpp"
#include "officesim/stereotypes.hpp"

#include <optional>
#include <span>
#include <string_view>

namespace officesim {

struct LightingPolicy {
    enum class Kind { Automated, StaffControlled };

    Kind kind = Kind::Automated;
    /// Sensor hold time after a room empties (automated only).
    int off_delay = 20;

    bool operator==(const LightingPolicy&) const = default;

    static LightingPolicy automated(int off_delay = 20) { return {Kind::Automated, off_delay}; }
    static LightingPolicy staff_controlled() { return {Kind::StaffControlled, 20}; }
    bool is_automated() const { return kind == Kind::Automated; }
};

std::string_view to_string(LightingPolicy::Kind kind);
std::optional<LightingPolicy::Kind> policy_kind_from_string(std::string_view s);

enum class LightState { Off, On };

struct Light {
    std::size_t room = 0;
    double watts_on = kDefaultLightWatts;
    LightState state = LightState::Off;
    /// Automated countdown; set only while On in a vacant room.
    std::optional<int> off_delay_remaining;

    bool operator==(const Light&) const = default;
    double watts() const { return state == LightState::On ? watts_on : 0.0; }
};

enum class ComputerState { Off, Standby, On };

std::string_view to_string(ComputerState s);

struct Computer {
    std::size_t room = 0;
    std::optional<int> owner;
    ComputerWatts rating;
    ComputerState state = ComputerState::Off;

    bool operator==(const Computer&) const = default;
    double watts() const
    {
        switch (state) {
        case ComputerState::Off:
            return rating.off;
        case ComputerState::Standby:
            return rating.standby;
        case ComputerState::On:
            return rating.on;
        }
        return 0.0;
    }
};

/// Fresh appliance instances (all Off) for a building.
std::vector<Light> make_lights(const BuildingModel& building);
std::vector<Computer> make_computers(const BuildingModel& building);

/// Per-minute sensor update. Automated: an occupied room holds the light On
/// and clears the countdown; the first vacant minute starts a countdown at
/// off_delay, each further vacant minute decrements it, and the light goes
/// Off when it reaches zero (so a light vacated at minute v is Off from
/// v + off_delay). Staff-controlled lights are left untouched.
Light light_step(Light light, bool room_occupied, const LightingPolicy& policy);

/// Applies ManualLightsOn/ManualLightsOff addressed to the light's room.
Light light_apply_event(Light light, const OccupantEvent& event);

/// Whether a staff member leaving a room switches its lights off: never on a
/// temporary leave or while others remain; otherwise with the band
/// probability of the leaver's awareness. Draws from `rng` only in that last
/// case.
bool manual_exit_decision(double leaving_awareness, LeaveKind kind, bool is_last_occupant, Rng& rng,
                          const StereotypeTable& table = kDefaultStereotypes);

/// Pure transition function for computers. Computer events addressed to this
/// computer by its owner move it to On / Standby / Off; anything else is
/// ignored.
Computer computer_apply_event(Computer computer, const OccupantEvent& event, std::size_t self_index);

struct ApplianceWatts {
    double lights = 0.0;
    double computers = 0.0;

    bool operator==(const ApplianceWatts&) const = default;
};

ApplianceWatts appliance_watts(std::span<const Light> lights, std::span<const Computer> computers);

}  // namespace officesim

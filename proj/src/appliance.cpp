#include "officesim/appliance.hpp"

namespace officesim {

std::string_view to_string(LightingPolicy::Kind kind)
{
    return kind == LightingPolicy::Kind::Automated ? "automated" : "staff_controlled";
}

std::optional<LightingPolicy::Kind> policy_kind_from_string(std::string_view s)
{
    if (s == "automated") {
        return LightingPolicy::Kind::Automated;
    }
    if (s == "staff_controlled") {
        return LightingPolicy::Kind::StaffControlled;
    }
    return std::nullopt;
}

std::string_view to_string(ComputerState s)
{
    switch (s) {
    case ComputerState::Off:
        return "off";
    case ComputerState::Standby:
        return "standby";
    case ComputerState::On:
        return "on";
    }
    return "?";
}

std::vector<Light> make_lights(const BuildingModel& building)
{
    std::vector<Light> out;
    out.reserve(building.lights.size());
    for (const auto& spec : building.lights) {
        Light l;
        l.room = spec.room;
        l.watts_on = spec.watts_on;
        out.push_back(l);
    }
    return out;
}

std::vector<Computer> make_computers(const BuildingModel& building)
{
    std::vector<Computer> out;
    out.reserve(building.computers.size());
    for (const auto& spec : building.computers) {
        Computer c;
        c.room = spec.room;
        c.rating = spec.watts;
        out.push_back(c);
    }
    return out;
}

Light light_step(Light light, bool room_occupied, const LightingPolicy& policy)
{
    if (!policy.is_automated()) {
        return light;
    }
    if (room_occupied) {
        light.state = LightState::On;
        light.off_delay_remaining.reset();
        return light;
    }
    if (light.state == LightState::Off) {
        light.off_delay_remaining.reset();
        return light;
    }
    if (!light.off_delay_remaining) {
        light.off_delay_remaining = policy.off_delay;
    } else {
        --*light.off_delay_remaining;
    }
    if (*light.off_delay_remaining <= 0) {
        light.state = LightState::Off;
        light.off_delay_remaining.reset();
    }
    return light;
}

Light light_apply_event(Light light, const OccupantEvent& event)
{
    if (event.target != light.room) {
        return light;
    }
    if (event.kind == EventKind::ManualLightsOn) {
        light.state = LightState::On;
    } else if (event.kind == EventKind::ManualLightsOff) {
        light.state = LightState::Off;
    }
    return light;
}

bool manual_exit_decision(double leaving_awareness, LeaveKind kind, bool is_last_occupant, Rng& rng,
                          const StereotypeTable& table)
{
    if (kind == LeaveKind::Temporary || !is_last_occupant) {
        return false;
    }
    return rng.bernoulli(awareness_to_switch_off_prob(leaving_awareness, table));
}

Computer computer_apply_event(Computer computer, const OccupantEvent& event, std::size_t self_index)
{
    if (event.target != self_index || !computer.owner || *computer.owner != event.agent) {
        return computer;
    }
    switch (event.kind) {
    case EventKind::SwitchComputerOn:
        computer.state = ComputerState::On;
        break;
    case EventKind::ComputerToStandby:
        computer.state = ComputerState::Standby;
        break;
    case EventKind::SwitchComputerOff:
        computer.state = ComputerState::Off;
        break;
    default:
        break;
    }
    return computer;
}

ApplianceWatts appliance_watts(std::span<const Light> lights, std::span<const Computer> computers)
{
    ApplianceWatts w;
    for (const auto& l : lights) {
        w.lights += l.watts();
    }
    for (const auto& c : computers) {
        w.computers += c.watts();
    }
    return w;
}

}  // namespace officesim

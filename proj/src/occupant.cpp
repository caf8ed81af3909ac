#include "officesim/occupant.hpp"

#include "officesim/errors.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace officesim {

namespace {

template <std::size_t N>
std::size_t draw_categorical(const std::array<double, N>& weights, Rng& rng)
{
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        acc += weights[i];
        if (u < acc) {
            return i;
        }
    }
    // Rounding left u above the cumulative sum: last non-zero category.
    for (std::size_t i = N; i-- > 0;) {
        if (weights[i] > 0.0) {
            return i;
        }
    }
    return N - 1;
}

template <std::size_t N>
void check_distribution(const std::array<double, N>& w, std::string_view name,
                        std::vector<std::string>& problems)
{
    double sum = 0.0;
    for (double p : w) {
        if (!(p >= 0.0 && p <= 1.0)) {
            problems.push_back(fmt::format("{} fraction {} outside [0, 1]", name, p));
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        problems.push_back(fmt::format("{} fractions sum to {}, expected 1", name, sum));
    }
}

/// Emits the staff-controlled light events for a move from `from` to `to`
/// (either may be absent). Leaving a room as its last occupant is a long
/// leave of that room unless `leave_kind` says otherwise.
void staff_light_moves(const OccupantAgent& agent, const StepContext& ctx, Rng& rng,
                       std::optional<std::size_t> from, LeaveKind leave_kind,
                       std::optional<std::size_t> to, std::vector<OccupantEvent>& out)
{
    if (ctx.policy.is_automated()) {
        return;
    }
    if (from) {
        const bool last = ctx.world->occupants(*from) == 1;
        if (manual_exit_decision(agent.awareness, leave_kind, last, rng, *ctx.stereotypes)) {
            out.push_back({ctx.minute, agent.id, EventKind::ManualLightsOff, *from});
        }
    }
    if (to && ctx.world->is_dark(*to)) {
        out.push_back({ctx.minute, agent.id, EventKind::ManualLightsOn, *to});
    }
}

void enter_corridor(OccupantAgent& agent, CorridorIntent intent, int due)
{
    agent.location = Location::InCorridor;
    agent.other_room.reset();
    agent.intent = intent;
    agent.due = due;
}

/// Switch-off decisions of a long leave (including the end-of-day departure):
/// the computer is switched off with the gated probability or otherwise left
/// on standby; lights follow the staff policy.
void long_leave_decisions(OccupantAgent& agent, const StepContext& ctx, Rng& rng,
                          std::vector<OccupantEvent>& out)
{
    if (agent.computer) {
        const auto state = ctx.world->computer_state(*agent.computer);
        if (state != ComputerState::Off) {
            const double p = computer_switch_off_prob(agent.awareness, *ctx.params, *ctx.stereotypes);
            if (rng.bernoulli(p)) {
                out.push_back({ctx.minute, agent.id, EventKind::SwitchComputerOff, *agent.computer});
            } else if (state == ComputerState::On) {
                out.push_back({ctx.minute, agent.id, EventKind::ComputerToStandby, *agent.computer});
            }
        }
    }
    agent.work_mode = WorkMode::WithoutComputer;
}

void leave_office_long(OccupantAgent& agent, const StepContext& ctx, Rng& rng, int duration,
                       std::vector<OccupantEvent>& out)
{
    const auto& p = *ctx.params;
    const int t = ctx.minute_of_day;
    long_leave_decisions(agent, ctx, rng, out);
    staff_light_moves(agent, ctx, rng, agent.office, LeaveKind::Long, ctx.corridor, out);
    out.push_back({ctx.minute, agent.id, EventKind::LeaveOfficeLong, agent.office});
    enter_corridor(agent, CorridorIntent::LeaveBuilding, t + p.corridor_walk_minutes);
    agent.pending_leave_kind = LeaveKind::Long;
    agent.return_at.reset();
    if (duration > 0 && agent.today && t + duration < agent.today->leave) {
        // Back in the corridor one walk before reaching the office.
        agent.return_at = t + duration - p.corridor_walk_minutes;
    }
}

void enter_building(OccupantAgent& agent, const StepContext& ctx, Rng& rng,
                    std::vector<OccupantEvent>& out)
{
    out.push_back({ctx.minute, agent.id, EventKind::EnterBuilding, kNoTarget});
    staff_light_moves(agent, ctx, rng, std::nullopt, LeaveKind::Long, ctx.corridor, out);
    enter_corridor(agent, CorridorIntent::ToOffice, ctx.minute_of_day + ctx.params->corridor_walk_minutes);
    agent.return_at.reset();
    agent.pending_leave_kind.reset();
}

void step_out_of_school(OccupantAgent& agent, const StepContext& ctx, Rng& rng,
                        std::vector<OccupantEvent>& out)
{
    if (!agent.today) {
        return;
    }
    const int t = ctx.minute_of_day;
    if (!agent.arrived_today && t == agent.today->arrival) {
        agent.arrived_today = true;
        enter_building(agent, ctx, rng, out);
    } else if (agent.return_at && t == *agent.return_at) {
        enter_building(agent, ctx, rng, out);
    }
}

void step_corridor(OccupantAgent& agent, const StepContext& ctx, Rng& rng,
                   std::vector<OccupantEvent>& out)
{
    const int t = ctx.minute_of_day;
    const auto& p = *ctx.params;
    if (agent.today && t >= agent.today->leave && agent.intent != CorridorIntent::LeaveBuilding) {
        // Leave time reached on the way in: turn around.
        agent.intent = CorridorIntent::LeaveBuilding;
        agent.due = t + p.corridor_walk_minutes;
        agent.return_at.reset();
        return;
    }
    if (t < agent.due) {
        return;
    }
    switch (agent.intent) {
    case CorridorIntent::ToOffice: {
        staff_light_moves(agent, ctx, rng, ctx.corridor, LeaveKind::Long, agent.office, out);
        out.push_back({ctx.minute, agent.id, EventKind::EnterOwnOffice, agent.office});
        agent.location = Location::InOwnOffice;
        agent.intent = CorridorIntent::None;
        agent.pending_leave_kind.reset();
        const bool computer_on =
            agent.computer && ctx.world->computer_state(*agent.computer) == ComputerState::On;
        if (agent.work_mode == WorkMode::WithComputer && computer_on) {
            break;  // back from a short absence, picks up where it left off
        }
        agent.work_mode = WorkMode::WithoutComputer;
        agent.computer_due = t + p.computer_start_minutes;
        break;
    }
    case CorridorIntent::ToOtherRoom: {
        const std::size_t room = *agent.intent_room;
        staff_light_moves(agent, ctx, rng, ctx.corridor, LeaveKind::Long, room, out);
        out.push_back({ctx.minute, agent.id, EventKind::EnterOtherRoom, room});
        agent.location = Location::InOtherRooms;
        agent.other_room = room;
        agent.intent = CorridorIntent::None;
        agent.intent_room.reset();
        agent.due = t + static_cast<int>(rng.uniform_int(p.other_room_dwell_min, p.other_room_dwell_max));
        break;
    }
    case CorridorIntent::LeaveBuilding:
        staff_light_moves(agent, ctx, rng, ctx.corridor, LeaveKind::Long, std::nullopt, out);
        out.push_back({ctx.minute, agent.id, EventKind::LeaveBuilding, kNoTarget});
        agent.location = Location::OutOfSchool;
        agent.intent = CorridorIntent::None;
        break;
    case CorridorIntent::None:
        break;
    }
}

void step_other_room(OccupantAgent& agent, const StepContext& ctx, Rng& rng,
                     std::vector<OccupantEvent>& out)
{
    const int t = ctx.minute_of_day;
    const bool leave_time = agent.today && t >= agent.today->leave;
    if (t < agent.due && !leave_time) {
        return;
    }
    const std::size_t room = *agent.other_room;
    staff_light_moves(agent, ctx, rng, room, LeaveKind::Long, ctx.corridor, out);
    out.push_back({ctx.minute, agent.id, EventKind::ExitOtherRoom, room});
    const auto intent = leave_time ? CorridorIntent::LeaveBuilding : CorridorIntent::ToOffice;
    enter_corridor(agent, intent, t + ctx.params->corridor_walk_minutes);
}

void step_office(OccupantAgent& agent, const StepContext& ctx, Rng& rng,
                 std::vector<OccupantEvent>& out)
{
    const int t = ctx.minute_of_day;
    const auto& p = *ctx.params;
    const int remaining = agent.today->leave - t;
    if (remaining <= 0) {
        leave_office_long(agent, ctx, rng, 0, out);
        return;
    }

    if (agent.computer) {
        if (agent.work_mode == WorkMode::WithoutComputer) {
            if (t >= agent.computer_due) {
                out.push_back({ctx.minute, agent.id, EventKind::SwitchComputerOn, *agent.computer});
                agent.work_mode = WorkMode::WithComputer;
            }
        } else if (rng.bernoulli(p.standby_probability)) {
            out.push_back({ctx.minute, agent.id, EventKind::ComputerToStandby, *agent.computer});
            agent.work_mode = WorkMode::WithoutComputer;
            agent.computer_due = t + p.computer_start_minutes;
        }
    }

    const auto decision = decide_leave(remaining, p, rng);
    switch (decision.kind) {
    case LeaveDecision::Kind::Temporary:
        staff_light_moves(agent, ctx, rng, agent.office, LeaveKind::Temporary, ctx.corridor, out);
        out.push_back({ctx.minute, agent.id, EventKind::LeaveOfficeTemporary, agent.office});
        enter_corridor(agent, CorridorIntent::ToOffice, t + decision.duration);
        agent.pending_leave_kind = LeaveKind::Temporary;
        return;
    case LeaveDecision::Kind::Long:
        leave_office_long(agent, ctx, rng, decision.duration, out);
        return;
    case LeaveDecision::Kind::Stay:
        break;
    }

    if (remaining >= p.end_of_day_margin && !ctx.facility_rooms.empty() &&
        rng.bernoulli(p.other_room_visit_hazard)) {
        const auto pick = rng.uniform_int(0, static_cast<std::int64_t>(ctx.facility_rooms.size()) - 1);
        staff_light_moves(agent, ctx, rng, agent.office, LeaveKind::Temporary, ctx.corridor, out);
        out.push_back({ctx.minute, agent.id, EventKind::LeaveOfficeTemporary, agent.office});
        enter_corridor(agent, CorridorIntent::ToOtherRoom, t + p.facility_walk_minutes);
        agent.intent_room = ctx.facility_rooms[static_cast<std::size_t>(pick)];
        agent.pending_leave_kind = LeaveKind::Temporary;
    }
}

}  // namespace

std::string_view to_string(Location l)
{
    switch (l) {
    case Location::OutOfSchool:
        return "OutOfSchool";
    case Location::InCorridor:
        return "InCorridor";
    case Location::InOwnOffice:
        return "InOwnOffice";
    case Location::InOtherRooms:
        return "InOtherRooms";
    }
    return "?";
}

std::string_view to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::EnterBuilding:
        return "EnterBuilding";
    case EventKind::EnterOwnOffice:
        return "EnterOwnOffice";
    case EventKind::SwitchComputerOn:
        return "SwitchComputerOn";
    case EventKind::ComputerToStandby:
        return "ComputerToStandby";
    case EventKind::SwitchComputerOff:
        return "SwitchComputerOff";
    case EventKind::LeaveOfficeTemporary:
        return "LeaveOfficeTemporary";
    case EventKind::LeaveOfficeLong:
        return "LeaveOfficeLong";
    case EventKind::EnterOtherRoom:
        return "EnterOtherRoom";
    case EventKind::ExitOtherRoom:
        return "ExitOtherRoom";
    case EventKind::LeaveBuilding:
        return "LeaveBuilding";
    case EventKind::ManualLightsOn:
        return "ManualLightsOn";
    case EventKind::ManualLightsOff:
        return "ManualLightsOff";
    }
    return "?";
}

void validate_mix(const PopulationMix& mix)
{
    std::vector<std::string> problems;
    check_distribution(mix.schedule, "schedule_mix", problems);
    check_distribution(mix.awareness, "awareness_mix", problems);
    if (!problems.empty()) {
        throw ValidationError(std::move(problems));
    }
}

std::vector<OccupantAgent> sample_population(int n, const PopulationMix& mix,
                                             const BuildingModel& building, Rng& rng,
                                             const StereotypeTable& table)
{
    if (n < 0) {
        throw ValidationError("population size must be >= 0");
    }
    validate_mix(mix);
    const int capacity = building.total_desk_capacity();
    if (n > capacity) {
        throw CapacityError(fmt::format("{} occupants requested but the building has {} desks", n, capacity));
    }

    // Round-robin desk assignment.
    std::vector<std::size_t> desks;
    desks.reserve(static_cast<std::size_t>(n));
    std::vector<int> filled(building.rooms.size(), 0);
    while (static_cast<int>(desks.size()) < n) {
        for (std::size_t r = 0; r < building.rooms.size() && static_cast<int>(desks.size()) < n; ++r) {
            if (filled[r] < building.rooms[r].desk_capacity) {
                ++filled[r];
                desks.push_back(r);
            }
        }
    }

    std::vector<OccupantAgent> agents;
    agents.reserve(static_cast<std::size_t>(n));
    std::vector<std::size_t> seated(building.rooms.size(), 0);
    for (int i = 0; i < n; ++i) {
        OccupantAgent a;
        a.id = i;
        a.schedule_class = kAllScheduleClasses[draw_categorical(mix.schedule, rng)];
        a.stereotype = kAllStereotypes[draw_categorical(mix.awareness, rng)];
        const auto& band = table[a.stereotype];
        a.awareness = rng.uniform(band.awareness_lo, band.awareness_hi);
        a.office = desks[static_cast<std::size_t>(i)];
        const auto& room = building.rooms[a.office];
        const std::size_t seat = seated[a.office]++;
        if (seat < room.computers.size()) {
            a.computer = room.computers[seat];
        }
        agents.push_back(a);
    }
    return agents;
}

std::optional<DailySchedule> sample_daily_schedule(const OccupantAgent& agent, Weekday day,
                                                   const BehaviorParams& params, Rng& rng)
{
    if (is_weekend(day) && !rng.bernoulli(params.weekend_presence_probability)) {
        return std::nullopt;
    }
    const auto w = schedule_window(agent.schedule_class);
    DailySchedule s;
    s.arrival = static_cast<int>(rng.uniform_int(w.arrival_start, w.arrival_end - 1));
    if (w.leave_after_arrival) {
        s.leave = static_cast<int>(rng.uniform_int(s.arrival + 1, w.leave_end));
    } else {
        s.leave = static_cast<int>(rng.uniform_int(w.leave_start, w.leave_end - 1));
    }
    return s;
}

double computer_switch_off_prob(double awareness, const BehaviorParams& params,
                                const StereotypeTable& table)
{
    if (awareness >= params.switch_off_threshold) {
        return awareness_to_switch_off_prob(awareness, table);
    }
    return params.below_threshold_switch_off_probability;
}

LeaveDecision decide_leave(int minutes_remaining_today, const BehaviorParams& params, Rng& rng)
{
    if (minutes_remaining_today <= 0) {
        return {LeaveDecision::Kind::Long, 0};
    }
    if (!rng.bernoulli(params.office_leave_hazard)) {
        return {LeaveDecision::Kind::Stay, 0};
    }
    const bool near_end = minutes_remaining_today < params.end_of_day_margin;
    if (!near_end && rng.bernoulli(params.temporary_leave_share)) {
        const auto d = rng.uniform_int(params.temporary_leave_min, params.temporary_leave_max);
        return {LeaveDecision::Kind::Temporary, static_cast<int>(d)};
    }
    const auto d = rng.uniform_int(params.long_leave_min, params.long_leave_max);
    return {LeaveDecision::Kind::Long, static_cast<int>(d)};
}

std::vector<OccupantEvent> step_occupant(OccupantAgent& agent, const StepContext& ctx, Rng& rng)
{
    if (agent.schedule_day != ctx.day_index) {
        throw std::logic_error(fmt::format("agent {} stepped without a schedule for day {}", agent.id,
                                           ctx.day_index));
    }
    std::vector<OccupantEvent> out;
    switch (agent.location) {
    case Location::OutOfSchool:
        step_out_of_school(agent, ctx, rng, out);
        break;
    case Location::InCorridor:
        step_corridor(agent, ctx, rng, out);
        break;
    case Location::InOwnOffice:
        step_office(agent, ctx, rng, out);
        break;
    case Location::InOtherRooms:
        step_other_room(agent, ctx, rng, out);
        break;
    }
    return out;
}

}  // namespace officesim

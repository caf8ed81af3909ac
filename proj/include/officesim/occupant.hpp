#pragma once

#include "officesim/appliance.hpp"
#include "officesim/building.hpp"
#include "officesim/calendar.hpp"
#include "officesim/events.hpp"
#include "officesim/rng.hpp"
#include "officesim/stereotypes.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace officesim {

/// Tunable behaviour rates, each with a documented default and overridable
/// from the scenario file.
struct BehaviorParams {
    double office_leave_hazard = 0.01;      ///< per office-minute
    double temporary_leave_share = 0.7;     ///< of office leaves
    int temporary_leave_min = 5;            ///< minutes
    int temporary_leave_max = 19;
    int long_leave_min = 20;
    int long_leave_max = 120;
    double other_room_visit_hazard = 0.005; ///< per office-minute, when not leaving
    int other_room_dwell_min = 1;
    int other_room_dwell_max = 10;
    int facility_walk_minutes = 1;          ///< office -> facility room via corridor
    int corridor_walk_minutes = 2;          ///< corridor -> own office
    int computer_start_minutes = 2;         ///< entering office -> computer on
    double standby_probability = 0.05;      ///< per minute while working with computer
    double switch_off_threshold = 50.0;     ///< awareness gate for computer switch-off
    double below_threshold_switch_off_probability = 0.05;
    double weekend_presence_probability = 0.02;
    int end_of_day_margin = 20;             ///< only long leaves offered this close to leave time

    bool operator==(const BehaviorParams&) const = default;
};

enum class Location { OutOfSchool, InCorridor, InOwnOffice, InOtherRooms };
enum class WorkMode { WithoutComputer, WithComputer };

std::string_view to_string(Location l);

struct DailySchedule {
    int arrival = 0;  ///< minute of day
    int leave = 0;    ///< minute of day, > arrival

    bool operator==(const DailySchedule&) const = default;
};

/// What an agent in the corridor is heading for when its timer fires.
enum class CorridorIntent { None, ToOffice, ToOtherRoom, LeaveBuilding };

struct OccupantAgent {
    int id = 0;
    ScheduleClass schedule_class = ScheduleClass::TimetableComplier;
    Stereotype stereotype = Stereotype::BigUser;
    double awareness = 0.0;  ///< energy-saving awareness, [0, 100]
    std::size_t office = 0;
    std::optional<std::size_t> computer;

    Location location = Location::OutOfSchool;
    WorkMode work_mode = WorkMode::WithoutComputer;
    std::optional<std::size_t> other_room;

    /// Day index the schedule below was drawn for (-1: never drawn).
    std::int64_t schedule_day = -1;
    std::optional<DailySchedule> today;  ///< empty when absent today
    bool arrived_today = false;

    CorridorIntent intent = CorridorIntent::None;
    std::optional<std::size_t> intent_room;
    int due = 0;                     ///< minute of day the pending timer fires
    int computer_due = 0;            ///< minute of day the computer gets switched on
    std::optional<int> return_at;    ///< re-entry minute after a long leave
    std::optional<LeaveKind> pending_leave_kind;

    bool operator==(const OccupantAgent&) const = default;
};

/// Samples `n` agents. Schedule class and stereotype are drawn independently
/// from `mix`; awareness is uniform on the stereotype's band. Offices are
/// filled round-robin over rooms with free desks (building order) and each
/// agent takes the next unowned computer in its office, if any.
/// Throws ValidationError for a malformed mix and CapacityError when n
/// exceeds the desk capacity.
std::vector<OccupantAgent> sample_population(int n, const PopulationMix& mix,
                                             const BuildingModel& building, Rng& rng,
                                             const StereotypeTable& table = kDefaultStereotypes);

void validate_mix(const PopulationMix& mix);

/// Draws the agent's working hours for one day, or nothing if it stays home.
/// Weekdays: always present. Weekends: present with
/// params.weekend_presence_probability, same windows.
std::optional<DailySchedule> sample_daily_schedule(const OccupantAgent& agent, Weekday day,
                                                   const BehaviorParams& params, Rng& rng);

/// Switch-off probability for the computer on a long leave: the band
/// probability when awareness reaches the threshold, the floor otherwise.
double computer_switch_off_prob(double awareness, const BehaviorParams& params,
                                const StereotypeTable& table = kDefaultStereotypes);

struct LeaveDecision {
    enum class Kind { Stay, Temporary, Long };
    Kind kind = Kind::Stay;
    int duration = 0;  ///< minutes away; for Long, 0 means gone for the day

    bool operator==(const LeaveDecision&) const = default;
};

/// Per-minute office-leave draw. At zero minutes remaining the agent always
/// leaves for good; within params.end_of_day_margin of leave time only long
/// leaves are offered.
LeaveDecision decide_leave(int minutes_remaining_today, const BehaviorParams& params, Rng& rng);

/// Read access to the live building state an occupant reacts to.
class WorldView {
public:
    virtual ~WorldView() = default;
    virtual int occupants(std::size_t room) const = 0;
    virtual bool is_dark(std::size_t room) const = 0;
    virtual ComputerState computer_state(std::size_t computer) const = 0;
};

struct StepContext {
    std::int64_t minute = 0;
    int minute_of_day = 0;
    std::int64_t day_index = 0;
    const BehaviorParams* params = nullptr;
    const StereotypeTable* stereotypes = nullptr;
    LightingPolicy policy;
    const WorldView* world = nullptr;
    std::optional<std::size_t> corridor;
    std::span<const std::size_t> facility_rooms;
};

/// Advances one agent by one minute through the occupant state chart and
/// returns the events it produced, in emission order. Throws std::logic_error
/// if the agent has no schedule drawn for the current day.
std::vector<OccupantEvent> step_occupant(OccupantAgent& agent, const StepContext& ctx, Rng& rng);

}  // namespace officesim

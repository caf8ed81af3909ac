#pragma once

#include "officesim/appliance.hpp"
#include "officesim/building.hpp"
#include "officesim/calendar.hpp"
#include "officesim/energy.hpp"
#include "officesim/events.hpp"
#include "officesim/occupant.hpp"
#include "officesim/rng.hpp"
#include "officesim/social_network.hpp"
#include "officesim/stereotypes.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace officesim {

/// The unit of experiment: a building plus everything needed to populate and
/// run it.
struct Scenario {
    BuildingModel building;
    /// Where the building was loaded from, as written in the scenario file.
    std::string building_path;
    int occupants = 0;
    PopulationMix mix;
    StereotypeTable stereotypes;
    BehaviorParams behavior;
    LightingPolicy policy;
    ContactParams contact;
    SmallWorldParams small_world;
    int horizon_days = 7;
    Weekday start_day = Weekday::Monday;
    std::uint64_t seed = 1;
    int replications = 20;

    bool operator==(const Scenario&) const = default;

    std::int64_t horizon_minutes() const { return static_cast<std::int64_t>(horizon_days) * kMinutesPerDay; }
};

/// Throws ValidationError listing every out-of-range field.
void validate_scenario(const Scenario& scenario);

/// Draws an agent's schedule for a day. Defaults to sample_daily_schedule;
/// tests substitute scripted timetables.
using ScheduleSource =
    std::function<std::optional<DailySchedule>(const OccupantAgent&, Weekday, const BehaviorParams&, Rng&)>;

struct RunOptions {
    bool keep_events = true;
    bool keep_contacts = false;
    ScheduleSource schedules;
};

struct ReplicationResult {
    std::uint64_t seed = 0;
    EnergyLedger ledger;
    ApplianceUsageLog usage;
    std::vector<OccupantEvent> events;
    std::vector<ContactEvent> contacts;
    std::size_t contact_count = 0;
    std::vector<OccupantAgent> final_agents;

    double mean_final_awareness() const;
};

/// One replication, stepped a minute at a time. Each minute runs, in order:
/// schedule draws at midnight, agents in id order (each agent's appliance
/// events are applied as soon as it has moved, so the next agent sees the
/// switch), sensor light updates, email contacts, and the power sample.
class Simulation final : private WorldView {
public:
    Simulation(const Scenario& scenario, std::uint64_t seed, RunOptions options = {});

    void step();
    bool done() const { return clock_.minute >= scenario_.horizon_minutes(); }
    void run_to_end();
    ReplicationResult finish() &&;

    const SimClock& clock() const { return clock_; }
    const Scenario& scenario() const { return scenario_; }
    std::span<const OccupantAgent> agents() const { return agents_; }
    std::span<const Light> lights() const { return lights_; }
    std::span<const Computer> computers() const { return computers_; }
    const SocialNetwork& network() const { return network_; }
    const EnergyLedger& ledger() const { return ledger_; }
    /// Events and contacts produced by the most recent step.
    std::span<const OccupantEvent> last_events() const { return step_events_; }
    std::span<const ContactEvent> last_contacts() const { return step_contacts_; }
    int room_occupants(std::size_t room) const { return occupancy_[room]; }
    /// Room an agent currently occupies, if inside.
    std::optional<std::size_t> room_of(const OccupantAgent& agent) const;

private:
    int occupants(std::size_t room) const override { return occupancy_[room]; }
    bool is_dark(std::size_t room) const override;
    ComputerState computer_state(std::size_t computer) const override { return computers_[computer].state; }

    void apply_event(const OccupantEvent& event);

    Scenario scenario_;
    RunOptions options_;
    std::uint64_t seed_;
    Rng rng_;
    SimClock clock_;
    std::vector<OccupantAgent> agents_;
    std::vector<Light> lights_;
    std::vector<Computer> computers_;
    SocialNetwork network_;
    std::vector<int> occupancy_;
    std::optional<std::size_t> corridor_;
    std::vector<std::size_t> facilities_;
    EnergyLedger ledger_;
    ApplianceUsageLog usage_;
    std::vector<OccupantEvent> events_;
    std::vector<ContactEvent> contacts_;
    std::size_t contact_count_ = 0;
    std::vector<OccupantEvent> step_events_;
    std::vector<ContactEvent> step_contacts_;
};

/// Pure function of (scenario, seed).
ReplicationResult run_replication(const Scenario& scenario, std::uint64_t seed, RunOptions options = {});

struct CategoryStats {
    CategoryEnergy mean;  ///< Wh
    CategoryEnergy sd;    ///< sample standard deviation across replications, Wh
};

struct ExperimentResult {
    std::uint64_t master_seed = 0;
    std::vector<ReplicationResult> replications;
    std::vector<PowerSample> mean_series;
    CategoryStats energy;

    double mean_total_kwh() const { return energy.mean.total_wh() / 1000.0; }
    /// Sample standard deviation of the per-replication total, kWh.
    double sd_total_kwh() const;
    double se_total_kwh() const;
    std::vector<double> replication_totals_kwh() const;
};

/// Replication i runs with seed split_seed(master_seed, i), so adding
/// replications never changes earlier ones. Replications run concurrently;
/// aggregation is in replication order.
ExperimentResult run_experiment(const Scenario& scenario, int replications, std::uint64_t master_seed,
                                RunOptions options = {});

/// Pointwise mean of equally long series.
std::vector<PowerSample> mean_series(std::span<const ReplicationResult> replications);

struct PolicyComparison {
    ExperimentResult automated;
    ExperimentResult staff_controlled;
    double automated_kwh = 0.0;
    double staff_kwh = 0.0;
    double difference_kwh = 0.0;  ///< staff - automated
    /// sqrt(se_a^2 + se_s^2) from the two sets of replication totals.
    double se_difference_kwh = 0.0;
    /// Standard error of the per-replication paired differences (same seeds,
    /// same populations).
    double se_paired_difference_kwh = 0.0;
    LightingPolicy::Kind lower = LightingPolicy::Kind::Automated;
};

/// Runs the scenario under both lighting policies with the same seed
/// derivation, so replication i has the same population in both.
PolicyComparison compare_policies(const Scenario& scenario, int replications, std::uint64_t master_seed,
                                  RunOptions options = {});

}  // namespace officesim

#include "officesim/simulation.hpp"

#include "officesim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace officesim {

namespace {

void check_probability(double p, std::string_view field, std::vector<std::string>& problems)
{
    if (!(p >= 0.0 && p <= 1.0)) {
        problems.push_back(fmt::format("{} must lie in [0, 1], got {}", field, p));
    }
}

void check_minutes(int lo, int hi, std::string_view field, int min_lo, std::vector<std::string>& problems)
{
    if (lo < min_lo || hi < lo) {
        problems.push_back(fmt::format("{} range [{}, {}] is invalid", field, lo, hi));
    }
}

double sample_sd(std::span<const double> xs)
{
    if (xs.size() < 2) {
        return 0.0;
    }
    double mean = 0.0;
    for (double x : xs) {
        mean += x;
    }
    mean /= static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - mean) * (x - mean);
    }
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace

void validate_scenario(const Scenario& s)
{
    std::vector<std::string> problems;
    if (s.horizon_days < 1) {
        problems.push_back(fmt::format("horizon_days must be >= 1, got {}", s.horizon_days));
    }
    if (s.replications < 1) {
        problems.push_back(fmt::format("replications must be >= 1, got {}", s.replications));
    }
    if (s.occupants < 0) {
        problems.push_back(fmt::format("occupants must be >= 0, got {}", s.occupants));
    }
    if (s.occupants > s.building.total_desk_capacity()) {
        problems.push_back(fmt::format("occupants ({}) exceed desk capacity ({})", s.occupants,
                                       s.building.total_desk_capacity()));
    }
    try {
        validate_mix(s.mix);
    } catch (const ValidationError& e) {
        problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
    for (auto st : kAllStereotypes) {
        const auto& p = s.stereotypes[st];
        const auto name = to_string(st);
        check_probability(p.p_switch_off, fmt::format("stereotypes.{}.p_switch_off", name), problems);
        check_probability(p.p_email, fmt::format("stereotypes.{}.p_email", name), problems);
        if (!(p.awareness_lo >= 0.0 && p.awareness_lo <= p.awareness_hi && p.awareness_hi <= 100.0)) {
            problems.push_back(fmt::format("stereotypes.{}.awareness band [{}, {}] must lie within [0, 100]",
                                           name, p.awareness_lo, p.awareness_hi));
        }
    }
    const auto& b = s.behavior;
    check_probability(b.office_leave_hazard, "behavior.office_leave_hazard", problems);
    check_probability(b.temporary_leave_share, "behavior.temporary_leave_share", problems);
    check_probability(b.other_room_visit_hazard, "behavior.other_room_visit_hazard", problems);
    check_probability(b.standby_probability, "behavior.standby_probability", problems);
    check_probability(b.below_threshold_switch_off_probability,
                      "behavior.below_threshold_switch_off_probability", problems);
    check_probability(b.weekend_presence_probability, "behavior.weekend_presence_probability", problems);
    check_minutes(b.temporary_leave_min, b.temporary_leave_max, "behavior.temporary_leave", 1, problems);
    check_minutes(b.long_leave_min, b.long_leave_max, "behavior.long_leave", 1, problems);
    check_minutes(b.other_room_dwell_min, b.other_room_dwell_max, "behavior.other_room_dwell", 1, problems);
    if (b.long_leave_min <= b.corridor_walk_minutes) {
        problems.push_back("behavior.long_leave_min must exceed behavior.corridor_walk_minutes");
    }
    if (b.corridor_walk_minutes < 1 || b.facility_walk_minutes < 1 || b.computer_start_minutes < 0) {
        problems.push_back("walk times must be >= 1 minute and computer_start_minutes >= 0");
    }
    if (!(b.switch_off_threshold >= 0.0 && b.switch_off_threshold <= 100.0)) {
        problems.push_back(fmt::format("behavior.switch_off_threshold must lie in [0, 100], got {}",
                                       b.switch_off_threshold));
    }
    if (s.policy.off_delay < 1) {
        problems.push_back(fmt::format("light_off_delay_minutes must be >= 1, got {}", s.policy.off_delay));
    }
    if (!(s.contact.contact_rate >= 0.0)) {
        problems.push_back(fmt::format("social.contact_rate must be >= 0, got {}", s.contact.contact_rate));
    }
    if (!(s.contact.awareness_delta >= 0.0)) {
        problems.push_back("social.awareness_delta must be >= 0");
    }
    if (!(s.contact.base_minutes > 0.0)) {
        problems.push_back("social.email_base_minutes must be > 0");
    }
    if (s.small_world.k < 2 || s.small_world.k % 2 != 0) {
        problems.push_back(fmt::format("social.small_world_k must be even and >= 2, got {}", s.small_world.k));
    }
    check_probability(s.small_world.beta, "social.small_world_beta", problems);
    if (!problems.empty()) {
        throw ValidationError(std::move(problems));
    }
}

double ReplicationResult::mean_final_awareness() const
{
    if (final_agents.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const auto& a : final_agents) {
        sum += a.awareness;
    }
    return sum / static_cast<double>(final_agents.size());
}

// Simulation

Simulation::Simulation(const Scenario& scenario, std::uint64_t seed, RunOptions options)
    : scenario_(scenario)
    , options_(std::move(options))
    , seed_(seed)
    , rng_(seed)
    , clock_{scenario.start_day, 0}
{
    validate_scenario(scenario_);
    if (!options_.schedules) {
        options_.schedules = [](const OccupantAgent& a, Weekday d, const BehaviorParams& p, Rng& r) {
            return sample_daily_schedule(a, d, p, r);
        };
    }
    const auto& b = scenario_.building;
    agents_ = sample_population(scenario_.occupants, scenario_.mix, b, rng_, scenario_.stereotypes);
    std::sort(agents_.begin(), agents_.end(), [](const auto& x, const auto& y) { return x.id < y.id; });
    if (static_cast<int>(agents_.size()) > scenario_.small_world.k) {
        network_ = build_small_world(static_cast<int>(agents_.size()), scenario_.small_world, rng_);
    } else {
        // Too few people for a ring lattice of degree k: nobody to email.
        network_ = SocialNetwork(static_cast<int>(agents_.size()));
    }
    lights_ = make_lights(b);
    computers_ = make_computers(b);
    for (const auto& a : agents_) {
        if (a.computer) {
            computers_[*a.computer].owner = a.id;
        }
    }
    occupancy_.assign(b.rooms.size(), 0);
    corridor_ = b.corridor();
    facilities_ = b.facility_rooms();
    ledger_.reserve(static_cast<std::size_t>(scenario_.horizon_minutes()));
    usage_ = ApplianceUsageLog(lights_.size(), computers_.size());
}

std::optional<std::size_t> Simulation::room_of(const OccupantAgent& agent) const
{
    switch (agent.location) {
    case Location::OutOfSchool:
        return std::nullopt;
    case Location::InCorridor:
        return corridor_;
    case Location::InOwnOffice:
        return agent.office;
    case Location::InOtherRooms:
        return agent.other_room;
    }
    return std::nullopt;
}

bool Simulation::is_dark(std::size_t room) const
{
    const auto& ids = scenario_.building.rooms[room].lights;
    if (ids.empty()) {
        return false;
    }
    return std::all_of(ids.begin(), ids.end(), [&](std::size_t i) { return lights_[i].state == LightState::Off; });
}

void Simulation::apply_event(const OccupantEvent& e)
{
    if (is_computer_event(e.kind)) {
        computers_[e.target] = computer_apply_event(computers_[e.target], e, e.target);
    } else if (is_light_event(e.kind)) {
        for (auto i : scenario_.building.rooms[e.target].lights) {
            lights_[i] = light_apply_event(lights_[i], e);
        }
    }
}

void Simulation::step()
{
    if (done()) {
        throw std::logic_error("simulation already reached its horizon");
    }
    step_events_.clear();
    step_contacts_.clear();
    const auto minute = clock_.minute;
    const auto day = clock_.day_index();

    if (clock_.minute_of_day() == 0) {
        const auto weekday = clock_.weekday();
        for (auto& a : agents_) {
            a.today = options_.schedules(a, weekday, scenario_.behavior, rng_);
            a.schedule_day = day;
            a.arrived_today = false;
            a.return_at.reset();
        }
    }

    StepContext ctx;
    ctx.minute = minute;
    ctx.minute_of_day = clock_.minute_of_day();
    ctx.day_index = day;
    ctx.params = &scenario_.behavior;
    ctx.stereotypes = &scenario_.stereotypes;
    ctx.policy = scenario_.policy;
    ctx.world = this;
    ctx.corridor = corridor_;
    ctx.facility_rooms = facilities_;

    for (auto& agent : agents_) {
        const auto before = room_of(agent);
        auto events = step_occupant(agent, ctx, rng_);
        for (const auto& e : events) {
            apply_event(e);
        }
        const auto after = room_of(agent);
        if (before != after) {
            if (before) {
                --occupancy_[*before];
            }
            if (after) {
                ++occupancy_[*after];
            }
        }
        step_events_.insert(step_events_.end(), events.begin(), events.end());
    }

    for (auto& light : lights_) {
        light = light_step(light, occupancy_[light.room] > 0, scenario_.policy);
    }

    step_contacts_ = contact_step(network_, agents_, scenario_.contact, minute, rng_, scenario_.stereotypes);
    contact_count_ += step_contacts_.size();

    ledger_.append(sample_power(appliance_watts(lights_, computers_), scenario_.building.base_load_watts, minute));
    usage_.record(minute, lights_, computers_);

    if (options_.keep_events) {
        events_.insert(events_.end(), step_events_.begin(), step_events_.end());
    }
    if (options_.keep_contacts) {
        contacts_.insert(contacts_.end(), step_contacts_.begin(), step_contacts_.end());
    }
    clock_.advance();
}

void Simulation::run_to_end()
{
    while (!done()) {
        step();
    }
}

ReplicationResult Simulation::finish() &&
{
    run_to_end();
    ReplicationResult r;
    r.seed = seed_;
    r.ledger = std::move(ledger_);
    r.usage = std::move(usage_);
    r.events = std::move(events_);
    r.contacts = std::move(contacts_);
    r.contact_count = contact_count_;
    r.final_agents = std::move(agents_);
    return r;
}

ReplicationResult run_replication(const Scenario& scenario, std::uint64_t seed, RunOptions options)
{
    return Simulation(scenario, seed, std::move(options)).finish();
}

// Experiments

std::vector<PowerSample> mean_series(std::span<const ReplicationResult> replications)
{
    std::vector<PowerSample> out;
    if (replications.empty()) {
        return out;
    }
    const auto n = replications.front().ledger.size();
    for (const auto& r : replications) {
        if (r.ledger.size() != n) {
            throw std::logic_error("replications have different series lengths");
        }
    }
    const double k = static_cast<double>(replications.size());
    out.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        PowerSample m;
        m.minute = replications.front().ledger.samples()[i].minute;
        for (const auto& r : replications) {
            const auto& s = r.ledger.samples()[i];
            m.base_watts += s.base_watts;
            m.lights_watts += s.lights_watts;
            m.computers_watts += s.computers_watts;
        }
        m.base_watts /= k;
        m.lights_watts /= k;
        m.computers_watts /= k;
        m.total_watts = m.base_watts + m.lights_watts + m.computers_watts;
        out[i] = m;
    }
    return out;
}

std::vector<double> ExperimentResult::replication_totals_kwh() const
{
    std::vector<double> out;
    out.reserve(replications.size());
    for (const auto& r : replications) {
        out.push_back(officesim::energy(r.ledger.samples()).total_wh() / 1000.0);
    }
    return out;
}

double ExperimentResult::sd_total_kwh() const
{
    const auto totals = replication_totals_kwh();
    return sample_sd(totals);
}

double ExperimentResult::se_total_kwh() const
{
    if (replications.empty()) {
        return 0.0;
    }
    return sd_total_kwh() / std::sqrt(static_cast<double>(replications.size()));
}

ExperimentResult run_experiment(const Scenario& scenario, int replications, std::uint64_t master_seed,
                                RunOptions options)
{
    if (replications < 1) {
        throw ValidationError(fmt::format("replications must be >= 1, got {}", replications));
    }
    validate_scenario(scenario);

    ExperimentResult result;
    result.master_seed = master_seed;
    result.replications.resize(static_cast<std::size_t>(replications));

    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < replications; i = next++) {
            try {
                result.replications[static_cast<std::size_t>(i)] =
                    run_replication(scenario, split_seed(master_seed, static_cast<std::uint64_t>(i)), options);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto threads = std::min<unsigned>(hw, static_cast<unsigned>(replications));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    result.mean_series = mean_series(result.replications);

    std::vector<double> base;
    std::vector<double> lights;
    std::vector<double> computers;
    for (const auto& r : result.replications) {
        const auto e = officesim::energy(r.ledger.samples());
        base.push_back(e.base_wh);
        lights.push_back(e.lights_wh);
        computers.push_back(e.computers_wh);
    }
    auto mean = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) {
            s += x;
        }
        return s / static_cast<double>(xs.size());
    };
    result.energy.mean = {mean(base), mean(lights), mean(computers)};
    result.energy.sd = {sample_sd(base), sample_sd(lights), sample_sd(computers)};
    return result;
}

PolicyComparison compare_policies(const Scenario& scenario, int replications, std::uint64_t master_seed,
                                  RunOptions options)
{
    Scenario automated = scenario;
    automated.policy.kind = LightingPolicy::Kind::Automated;
    Scenario staff = scenario;
    staff.policy.kind = LightingPolicy::Kind::StaffControlled;

    PolicyComparison c;
    c.automated = run_experiment(automated, replications, master_seed, options);
    c.staff_controlled = run_experiment(staff, replications, master_seed, options);
    c.automated_kwh = c.automated.mean_total_kwh();
    c.staff_kwh = c.staff_controlled.mean_total_kwh();
    c.difference_kwh = c.staff_kwh - c.automated_kwh;
    const double se_a = c.automated.se_total_kwh();
    const double se_s = c.staff_controlled.se_total_kwh();
    c.se_difference_kwh = std::sqrt(se_a * se_a + se_s * se_s);

    const auto ta = c.automated.replication_totals_kwh();
    const auto ts = c.staff_controlled.replication_totals_kwh();
    std::vector<double> diffs(ta.size());
    for (std::size_t i = 0; i < ta.size(); ++i) {
        diffs[i] = ts[i] - ta[i];
    }
    c.se_paired_difference_kwh = sample_sd(diffs) / std::sqrt(static_cast<double>(diffs.size()));
    c.lower = c.staff_kwh < c.automated_kwh ? LightingPolicy::Kind::StaffControlled : LightingPolicy::Kind::Automated;
    return c;
}

}  // namespace officesim

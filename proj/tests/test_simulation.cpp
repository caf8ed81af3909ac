#include "support.hpp"

#include "officesim/errors.hpp"
#include "officesim/simulation.hpp"

#include <doctest.h>

#include <set>

using namespace officesim;

namespace {

bool same_series(std::span<const PowerSample> a, std::span<const PowerSample> b)
{
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

TEST_CASE("an empty floor draws only its base load")
{
    auto s = testing::small_scenario(1, 1, 1, 0);
    s.building.base_load_watts = 5000;
    const auto r = run_replication(s, 1);
    REQUIRE(r.ledger.size() == 1440);
    for (const auto& p : r.ledger.samples()) {
        CHECK(p.total_watts == 5000.0);
        CHECK(p.flexible_watts() == 0.0);
    }
    CHECK(r.events.empty());
}

TEST_CASE("a replication is a pure function of scenario and seed")
{
    const auto s = testing::small_scenario(3, 4, 2);
    RunOptions o;
    o.keep_contacts = true;
    const auto a = run_replication(s, 42, o);
    const auto b = run_replication(s, 42, o);
    CHECK(same_series(a.ledger.samples(), b.ledger.samples()));
    CHECK(a.events == b.events);
    CHECK(a.contacts == b.contacts);
    CHECK(a.final_agents == b.final_agents);

    const auto c = run_replication(s, 43, o);
    CHECK(c.ledger.size() == a.ledger.size());
    CHECK_FALSE(same_series(a.ledger.samples(), c.ledger.samples()));
}

TEST_CASE("series length is horizon days times 1440")
{
    for (int days : {1, 3}) {
        const auto s = testing::small_scenario(1, 2, days);
        const auto r = run_replication(s, 1);
        CHECK(r.ledger.size() == static_cast<std::size_t>(days) * 1440);
        CHECK(r.ledger.samples().front().minute == 0);
    }
}

TEST_CASE("experiments")
{
    const auto s = testing::small_scenario(2, 3, 1);

    SUBCASE("one replication gives its own series as the mean")
    {
        const auto e = run_experiment(s, 1, 9);
        REQUIRE(e.replications.size() == 1);
        CHECK(same_series(e.mean_series, e.replications[0].ledger.samples()));
        CHECK(e.replications[0].seed == split_seed(9, 0));
    }
    SUBCASE("adding replications leaves earlier ones untouched")
    {
        const auto three = run_experiment(s, 3, 9);
        const auto four = run_experiment(s, 4, 9);
        for (std::size_t i = 0; i < 3; ++i) {
            CHECK(same_series(three.replications[i].ledger.samples(), four.replications[i].ledger.samples()));
            CHECK(three.replications[i].events == four.replications[i].events);
        }
    }
    SUBCASE("different master seeds give different means of equal length")
    {
        const auto a = run_experiment(s, 2, 1);
        const auto b = run_experiment(s, 2, 2);
        CHECK(a.mean_series.size() == b.mean_series.size());
        CHECK_FALSE(same_series(a.mean_series, b.mean_series));
    }
    SUBCASE("mean series is the pointwise mean")
    {
        const auto e = run_experiment(s, 3, 5);
        for (std::size_t m = 0; m < e.mean_series.size(); m += 97) {
            double lights = 0;
            for (const auto& r : e.replications) {
                lights += r.ledger.samples()[m].lights_watts;
            }
            CHECK(e.mean_series[m].lights_watts == doctest::Approx(lights / 3));
        }
        CHECK(e.replication_totals_kwh().size() == 3);
    }
    SUBCASE("zero replications is rejected")
    {
        CHECK_THROWS_AS(run_experiment(s, 0, 1), ValidationError);
    }
}

TEST_CASE("an empty floor costs the same under both policies")
{
    const auto s = testing::small_scenario(2, 2, 1, 0);
    const auto c = compare_policies(s, 2, 3);
    CHECK(c.automated_kwh == c.staff_kwh);
    CHECK(c.difference_kwh == 0.0);
}

TEST_CASE("comparison reports the signed difference and the lower policy")
{
    const auto s = testing::small_scenario(2, 3, 1);
    const auto c = compare_policies(s, 2, 3);
    CHECK(c.difference_kwh == doctest::Approx(c.staff_kwh - c.automated_kwh));
    CHECK(c.lower == (c.staff_kwh < c.automated_kwh ? LightingPolicy::Kind::StaffControlled
                                                     : LightingPolicy::Kind::Automated));
    // Same seeds, same populations.
    for (std::size_t i = 0; i < 2; ++i) {
        const auto& a = c.automated.replications[i].final_agents;
        const auto& b = c.staff_controlled.replications[i].final_agents;
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) {
            CHECK(a[k].stereotype == b[k].stereotype);
            CHECK(a[k].office == b[k].office);
        }
    }
}

TEST_CASE("one early bird's office light stays within the sensor bounds")
{
    Scenario s;
    s.building = load_building(testing::small_building_yaml(1, 1, 0, 1, 1));
    s.occupants = 1;
    s.horizon_days = 1;
    s.mix.schedule = {1, 0, 0};
    const auto office = *s.building.find_room("office-0");
    const auto light = s.building.rooms[office].lights.at(0);

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Simulation sim(s, seed);
        int presence = 0;
        int excursions = 0;
        while (!sim.done()) {
            sim.step();
            presence += sim.room_occupants(office) > 0 ? 1 : 0;
            for (const auto& e : sim.last_events()) {
                excursions += e.kind == EventKind::LeaveOfficeTemporary || e.kind == EventKind::LeaveOfficeLong;
            }
        }
        const auto r = std::move(sim).finish();
        const double wh = r.usage.energy_wh(light, 0, 1440);
        CHECK(presence > 0);
        CHECK(wh >= 60.0 * presence / 60.0);
        CHECK(wh <= 60.0 * (presence + 20 * excursions + 20) / 60.0);
    }
}

TEST_CASE("invalid scenarios are rejected before stepping")
{
    auto s = testing::small_scenario(1, 2);
    s.horizon_days = 0;
    CHECK_THROWS_AS(run_replication(s, 1), ValidationError);
    s = testing::small_scenario(1, 2);
    s.stereotypes[Stereotype::BigUser].p_email = 1.5;
    try {
        validate_scenario(s);
        FAIL("expected a validation error");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("big_user.p_email") != std::string::npos);
    }
    s = testing::small_scenario(1, 2);
    s.occupants = 3;
    CHECK_THROWS_AS(validate_scenario(s), ValidationError);
}

TEST_CASE("scripted schedules override the sampler")
{
    auto s = testing::small_scenario(1, 1, 2);
    RunOptions o;
    o.schedules = [](const OccupantAgent&, Weekday d, const BehaviorParams&, Rng&) -> std::optional<DailySchedule> {
        if (d == Weekday::Tuesday) {
            return std::nullopt;
        }
        return DailySchedule{600, 700};
    };
    const auto r = run_replication(s, 1, o);
    for (const auto& e : r.events) {
        const auto mod = e.minute % 1440;
        CHECK(e.minute < 1440);
        CHECK(mod >= 600);
        CHECK(mod <= 700 + 4);
    }
}

TEST_CASE("agents are stepped in id order")
{
    const auto s = testing::small_scenario(2, 3, 1);
    Simulation sim(s, 3);
    const auto agents = sim.agents();
    for (std::size_t i = 0; i < agents.size(); ++i) {
        CHECK(agents[i].id == static_cast<int>(i));
    }
    std::int64_t last_minute = -1;
    int last_agent = -1;
    while (!sim.done()) {
        sim.step();
        for (const auto& e : sim.last_events()) {
            if (e.minute == last_minute) {
                CHECK(e.agent >= last_agent);
            }
            last_minute = e.minute;
            last_agent = e.agent;
        }
    }
}

TEST_CASE("derived seeds do not collide across master seeds")
{
    std::set<std::uint64_t> seen;
    for (std::uint64_t master = 0; master < 64; ++master) {
        for (std::uint64_t i = 0; i < 64; ++i) {
            CHECK(seen.insert(split_seed(master, i)).second);
        }
    }
}

#include "support.hpp"

#include "officesim/energy.hpp"
#include "officesim/errors.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace officesim;

namespace {

std::vector<PowerSample> constant(std::int64_t n, double base, double lights, double computers)
{
    std::vector<PowerSample> out;
    for (std::int64_t m = 0; m < n; ++m) {
        out.push_back(sample_power({lights, computers}, base, m));
    }
    return out;
}

}  // namespace

TEST_CASE("power samples decompose exactly")
{
    const auto s = sample_power({0, 0}, 5000, 0);
    CHECK(s.total_watts == 5000);
    CHECK(s.flexible_watts() == 0);
    CHECK(sample_power({60, 0}, 0, 3).total_watts == 60);
    const auto& b = testing::reference_building();
    CHECK(sample_power({b.max_lights_watts(), b.max_computers_watts()}, 5000, 0).total_watts ==
          5000 + 14340 + 72000);
}

TEST_CASE("ledger enforces contiguous minutes")
{
    EnergyLedger ledger;
    ledger.append(sample_power({}, 1, 5));
    ledger.append(sample_power({}, 1, 6));
    CHECK_THROWS_AS(ledger.append(sample_power({}, 1, 8)), std::logic_error);
    CHECK_THROWS_AS(ledger.append(sample_power({}, 1, 6)), std::logic_error);
    CHECK(ledger.size() == 2);
}

TEST_CASE("energy integrates at one sixtieth of an hour per sample")
{
    const auto s = constant(90, 600, 120, 60);
    const auto e = energy(s);
    CHECK(e.base_wh == doctest::Approx(900));
    CHECK(e.lights_wh == doctest::Approx(180));
    CHECK(e.computers_wh == doctest::Approx(90));
}

TEST_CASE("half-hour bins")
{
    SUBCASE("constant six kilowatts")
    {
        const auto bins = half_hour_bins(constant(30, 6000, 0, 0));
        REQUIRE(bins.size() == 1);
        CHECK(bins[0].total_kwh() == doctest::Approx(3.0));
    }
    SUBCASE("all zero")
    {
        for (const auto& b : half_hour_bins(constant(120, 0, 0, 0))) {
            CHECK(b.total_kwh() == 0.0);
        }
    }
    SUBCASE("an hour at sixty watts then an hour off")
    {
        auto s = constant(60, 0, 60, 0);
        const auto rest = constant(120, 0, 0, 0);
        for (std::int64_t m = 60; m < 120; ++m) {
            s.push_back(rest[static_cast<std::size_t>(m)]);
        }
        const auto bins = half_hour_bins(s);
        REQUIRE(bins.size() == 4);
        CHECK(bins[0].lights_kwh == doctest::Approx(0.03));
        CHECK(bins[1].lights_kwh == doctest::Approx(0.03));
        CHECK(bins[2].lights_kwh == 0.0);
        CHECK(bins[3].lights_kwh == 0.0);
        CHECK(bins[2].bin_start == 60);
    }
    SUBCASE("partial trailing bin is dropped")
    {
        CHECK(half_hour_bins(constant(59, 1, 0, 0)).size() == 1);
    }
}

TEST_CASE("realized duty coefficient")
{
    CHECK(realized_beta(60 * 24, 60, 24) == 1.0);
    CHECK(realized_beta(0, 60, 24) == 0.0);
    CHECK(realized_beta(720, 60, 24) == 0.5);
    CHECK_THROWS_AS(realized_beta(1, 0, 24), DomainError);
    CHECK_THROWS_AS(realized_beta(1, 60, 0), DomainError);
    CHECK_THROWS_AS(realized_beta(2000, 60, 24), std::logic_error);
}

TEST_CASE("category proportions")
{
    const auto base_only = constant(100, 5000, 0, 0);
    const auto all = MinuteWindow::range(0, 100);
    const auto p = category_proportions(base_only, all);
    CHECK(p.base == 1.0);
    CHECK(p.lights == 0.0);
    CHECK(p.computers == 0.0);

    const auto thirds = category_proportions(constant(100, 7, 7, 7), all);
    CHECK(thirds.base == doctest::Approx(1.0 / 3));
    CHECK(thirds.lights == doctest::Approx(1.0 / 3));
    CHECK(thirds.computers == doctest::Approx(1.0 / 3));
    CHECK(std::abs(thirds.base + thirds.lights + thirds.computers - 1.0) <= 1e-12);

    CHECK_THROWS_AS(category_proportions(base_only, MinuteWindow{}), DomainError);
    CHECK_THROWS_AS(category_proportions(base_only, MinuteWindow::range(50, 150)), DomainError);
    CHECK_THROWS_AS(category_proportions(constant(10, 0, 0, 0), MinuteWindow::range(0, 10)), DomainError);
}

TEST_CASE("minute windows")
{
    const auto w = MinuteWindow::range(10, 20).unite(MinuteWindow::range(15, 30)).unite(MinuteWindow::range(40, 50));
    CHECK(w.minutes() == 30);
    CHECK(w.ranges().size() == 2);
    CHECK(w.contains(10));
    CHECK(w.contains(29));
    CHECK_FALSE(w.contains(30));
    CHECK_FALSE(w.contains(9));
    CHECK(w.clip(12, 45).minutes() == 23);

    const std::int64_t week = 7 * kMinutesPerDay;
    const auto day = make_window(WindowPreset::WeekdayDay, Weekday::Monday, week);
    CHECK(day.minutes() == 5 * 8 * 60);
    CHECK(day.contains(9 * 60));
    CHECK_FALSE(day.contains(5 * kMinutesPerDay + 10 * 60));  // Saturday
    const auto night = make_window(WindowPreset::Night, Weekday::Monday, week);
    CHECK(night.minutes() == 7 * 12 * 60);
    CHECK(night.contains(0));
    CHECK(night.contains(19 * 60));
    CHECK_FALSE(night.contains(7 * 60));
    const auto weekend = make_window(WindowPreset::Weekend, Weekday::Monday, week);
    CHECK(weekend.minutes() == 2 * kMinutesPerDay);
    const auto off = make_window(WindowPreset::OffHours, Weekday::Monday, week);
    // Weekday nights plus the whole weekend, with Friday night overlapping Saturday.
    CHECK(off.minutes() == night.unite(weekend).minutes());
    CHECK(make_window(WindowPreset::All, Weekday::Monday, week).minutes() == week);

    // Starting on a Saturday moves the weekend to days 0 and 1.
    const auto sat = make_window(WindowPreset::Weekend, Weekday::Saturday, week);
    CHECK(sat.contains(0));
    CHECK_FALSE(sat.contains(2 * kMinutesPerDay));

    CHECK(parse_window("100-200", Weekday::Monday, week).minutes() == 100);
    CHECK_THROWS_AS(parse_window("dusk", Weekday::Monday, week), DomainError);
    CHECK_THROWS_AS(parse_window("200-100", Weekday::Monday, week), DomainError);
}

TEST_CASE("usage log recovers per-appliance energy")
{
    BuildingModel b = load_building(testing::small_building_yaml(1, 1));
    auto lights = make_lights(b);
    auto computers = make_computers(b);
    ApplianceUsageLog log(lights.size(), computers.size());
    for (std::int64_t m = 0; m < 120; ++m) {
        lights[0].state = m < 60 ? LightState::On : LightState::Off;
        computers[0].state = m % 2 == 0 ? ComputerState::On : ComputerState::Standby;
        log.record(m, lights, computers);
    }
    CHECK(log.energy_wh(0, 0, 120) == doctest::Approx(60));
    CHECK(log.energy_wh(0, 30, 90) == doctest::Approx(30));
    CHECK(log.energy_wh(1, 0, 120) == 0.0);
    const auto ci = lights.size();
    CHECK(log.energy_wh(ci, 0, 120) == doctest::Approx((60 * 400 + 60 * 25) / 60.0));

    const auto report = beta_report(log, b, 0, 120);
    CHECK(report.entries[0].beta == doctest::Approx(0.5));
    CHECK(report.entries[1].beta == 0.0);
    for (const auto& e : report.entries) {
        CHECK(e.beta >= 0.0);
        CHECK(e.beta <= 1.0);
    }
}

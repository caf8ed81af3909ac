#include "support.hpp"

#include "officesim/errors.hpp"
#include "officesim/scenario_io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace officesim;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(std::string_view name)
{
    auto dir = fs::temp_directory_path() / fmt::format("officesim-test-{}", name);
    fs::remove_all(dir);
    return dir;
}

std::string with_building(std::string_view rest)
{
    return "building:\n" + [] {
        std::string indented;
        std::istringstream in(testing::small_building_yaml(1, 2));
        for (std::string line; std::getline(in, line);) {
            indented += "  " + line + "\n";
        }
        return indented;
    }() + std::string(rest);
}

std::size_t count_lines(const std::string& s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("bundled reference scenario")
{
    const auto s = parse_scenario(testing::data_dir() / "reference_scenario.yaml");
    CHECK(s.building.rooms.size() == 47);
    CHECK(s.building.max_occupants == 213);
    CHECK(s.occupants == 213);
    CHECK(s.policy.kind == LightingPolicy::Kind::Automated);
    CHECK(s.policy.off_delay == 20);
    CHECK(s.contact.contact_rate == 1.0);
    CHECK(s.replications == 20);
    CHECK(s.behavior.switch_off_threshold == 50.0);
    CHECK(s.horizon_days == 7);
    CHECK(s.start_day == Weekday::Monday);
}

TEST_CASE("omitted optional fields take their defaults")
{
    const auto s = parse_scenario_text(with_building("horizon_days: 2\n"));
    CHECK(s.contact.contact_rate == 1.0);
    CHECK(s.replications == 20);
    CHECK(s.policy.kind == LightingPolicy::Kind::Automated);
    CHECK(s.behavior == BehaviorParams{});
    CHECK(s.stereotypes == kDefaultStereotypes);
    CHECK(s.mix == PopulationMix{});
    CHECK(s.occupants == 2);
}

TEST_CASE("scenario errors name the offending field")
{
    SUBCASE("probability out of range")
    {
        try {
            parse_scenario_text(with_building("horizon_days: 1\nstereotypes:\n  big_user: {p_email: 1.5}\n"));
            FAIL("expected a validation error");
        } catch (const ValidationError& e) {
            CHECK(std::string(e.what()).find("p_email") != std::string::npos);
        }
    }
    SUBCASE("missing horizon")
    {
        try {
            parse_scenario_text(with_building("seed: 3\n"));
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("horizon_days") != std::string::npos);
        }
    }
    SUBCASE("missing building")
    {
        try {
            parse_scenario_text("horizon_days: 1\n");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(std::string(e.what()).find("building") != std::string::npos);
        }
    }
    SUBCASE("misspelled field")
    {
        CHECK_THROWS_AS(parse_scenario_text(with_building("horizon_days: 1\nsocial: {contact_rte: 3}\n")),
                        ParseError);
    }
    SUBCASE("unknown policy")
    {
        CHECK_THROWS_AS(parse_scenario_text(with_building("horizon_days: 1\nlighting_policy: dimmer\n")),
                        ParseError);
    }
    SUBCASE("mix that does not sum to one")
    {
        CHECK_THROWS_AS(parse_scenario_text(with_building(
                            "horizon_days: 1\npopulation:\n  schedule_mix: {early_bird: 0.5}\n")),
                        ValidationError);
    }
}

TEST_CASE("scenario overrides are applied")
{
    const auto s = parse_scenario_text(with_building(R"(horizon_days: 3
start_day: Sat
seed: 77
replications: 4
occupants: 1
lighting_policy: staff_controlled
population:
  schedule_mix: {early_bird: 0.2, timetable_complier: 0.3, flexible_worker: 0.5}
stereotypes:
  energy_saver: {awareness: [60, 80], p_switch_off: 0.6}
behavior: {office_leave_hazard: 0.02, long_leave_max: 90}
social: {contact_rate: 25, small_world_k: 2}
)"));
    CHECK(s.horizon_days == 3);
    CHECK(s.start_day == Weekday::Saturday);
    CHECK(s.seed == 77);
    CHECK(s.replications == 4);
    CHECK(s.occupants == 1);
    CHECK(s.policy.kind == LightingPolicy::Kind::StaffControlled);
    CHECK(s.mix.schedule[2] == 0.5);
    CHECK(s.stereotypes[Stereotype::EnergySaver] == StereotypeParams{60, 80, 0.6, 0.6});
    CHECK(s.behavior.office_leave_hazard == 0.02);
    CHECK(s.behavior.long_leave_max == 90);
    CHECK(s.contact.contact_rate == 25);
    CHECK(s.small_world.k == 2);
}

TEST_CASE("serialization round-trips")
{
    auto s = testing::reference_scenario();
    CHECK(parse_scenario_text(serialize_scenario(s, true)) == Scenario{[&] {
              auto copy = s;
              copy.building_path.clear();
              return copy;
          }()});
    CHECK(parse_scenario_text(serialize_scenario(s), testing::data_dir()) == s);

    Rng rng(5);
    for (int i = 0; i < 25; ++i) {
        Scenario r = testing::small_scenario(2, 3);
        r.horizon_days = static_cast<int>(rng.uniform_int(1, 30));
        r.seed = rng.next();
        r.replications = static_cast<int>(rng.uniform_int(1, 50));
        r.occupants = static_cast<int>(rng.uniform_int(0, 6));
        r.start_day = static_cast<Weekday>(rng.uniform_int(0, 6));
        r.policy.kind = rng.bernoulli(0.5) ? LightingPolicy::Kind::Automated : LightingPolicy::Kind::StaffControlled;
        r.policy.off_delay = static_cast<int>(rng.uniform_int(1, 60));
        const double a = rng.uniform01();
        r.mix.schedule = {a, 1 - a, 0};
        r.stereotypes[Stereotype::RegularUser].p_email = rng.uniform01();
        r.stereotypes[Stereotype::RegularUser].awareness_lo = rng.uniform(0, 50);
        r.behavior.office_leave_hazard = rng.uniform01() / 10;
        r.behavior.switch_off_threshold = rng.uniform(0, 100);
        r.contact.contact_rate = rng.uniform(0, 100);
        r.small_world.beta = rng.uniform01();
        CHECK(parse_scenario_text(serialize_scenario(r)) == r);
    }
}

TEST_CASE("csv writers emit the documented headers and one row per sample")
{
    const auto s = testing::small_scenario(1, 2, 1);
    const auto e = run_experiment(s, 1, 3);
    std::ostringstream minute;
    write_minute_csv(minute, e.mean_series);
    CHECK(minute.str().rfind("minute,base_w,lights_w,computers_w,total_w\n", 0) == 0);
    CHECK(count_lines(minute.str()) == 1441);

    std::ostringstream half;
    write_half_hour_csv(half, e.mean_series);
    CHECK(half.str().rfind("bin_start,base_kwh,lights_kwh,computers_kwh,total_kwh\n", 0) == 0);
    CHECK(count_lines(half.str()) == 49);

    std::ostringstream reps;
    write_replication_csv(reps, e);
    CHECK(count_lines(reps.str()) == 2);
}

TEST_CASE("emitted outputs are byte-identical for the same result")
{
    const auto s = testing::small_scenario(2, 2, 1);
    const auto e = run_experiment(s, 2, 11);
    const auto a = scratch("emit-a");
    const auto b = scratch("emit-b");
    const auto files = emit_experiment(e, s, a);
    CHECK(emit_experiment(e, s, b) == files);
    CHECK(files.size() == 4);
    for (const auto& f : files) {
        CHECK(slurp(a / f) == slurp(b / f));
        CHECK_FALSE(fs::exists(a / (f + ".tmp")));
    }

    RunManifest m;
    m.command = "simulate";
    m.scenario_hash = scenario_hash(s);
    m.master_seed = 11;
    m.replications = 2;
    m.horizon_days = 1;
    m.files = files;
    emit_manifest(m, a);
    const auto json = slurp(a / "manifest.json");
    CHECK(json.find(fmt::format("{:016x}", scenario_hash(s))) != std::string::npos);
    CHECK(json.find("minute_series.csv") != std::string::npos);
    CHECK(json.find(std::string(kVersion)) != std::string::npos);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("comparison report names the lower policy and the difference")
{
    const auto s = testing::small_scenario(2, 2, 1);
    const auto c = compare_policies(s, 2, 1);
    const auto text = format_comparison(c);
    CHECK(text.find(fmt::format("lower_consumption_policy: {}", to_string(c.lower))) != std::string::npos);
    CHECK(text.find(fmt::format("difference_kwh (staff_controlled - automated): {}", c.difference_kwh)) !=
          std::string::npos);

    const auto dir = scratch("compare");
    const auto files = emit_comparison(c, s, dir);
    CHECK(std::find(files.begin(), files.end(), "comparison.txt") != files.end());
    CHECK(fs::exists(dir / "staff_controlled" / "minute_series.csv"));
    fs::remove_all(dir);
}

TEST_CASE("proportions report lists ISO day labels")
{
    const auto s = testing::small_scenario(1, 2, 7);
    const auto e = run_experiment(s, 1, 2);
    const auto windows = preset_windows(s.start_day, s.horizon_minutes());
    const auto text = format_proportions(e.mean_series, windows, s.start_day);
    CHECK(text.find("weekday-day,Mon Tue Wed Thu Fri,2400,") != std::string::npos);
    CHECK(text.find("weekend,Sat Sun,2880,") != std::string::npos);
}

TEST_CASE("scenario hash tracks content")
{
    auto s = testing::small_scenario(1, 2);
    const auto h = scenario_hash(s);
    CHECK(scenario_hash(s) == h);
    s.contact.contact_rate = 2;
    CHECK(scenario_hash(s) != h);
}

TEST_CASE("write failures name the path")
{
    const auto dir = scratch("blocked");
    fs::create_directories(dir);
    std::ofstream(dir / "file") << "x";
    try {
        write_file_atomic(dir / "file" / "child.csv", "data");
        FAIL("expected an I/O error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("file") != std::string::npos);
    }
    fs::remove_all(dir);
}

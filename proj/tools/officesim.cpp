// Command-line front end: simulate, compare, proportions, validate, summary.
// Exit codes: 0 success, 1 invalid input, 2 runtime failure.

#include "officesim/errors.hpp"
#include "officesim/scenario_io.hpp"
#include "officesim/simulation.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

using namespace officesim;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitRuntime = 2;

struct CommonArgs {
    std::string scenario;
    std::optional<int> days;
    std::optional<int> reps;
    std::optional<std::uint64_t> seed;
    std::string out = "officesim-out";
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_out)
{
    cmd->add_option("--scenario", args.scenario, "Scenario file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--days", args.days, "Override horizon in days")->check(CLI::PositiveNumber);
    cmd->add_option("--reps", args.reps, "Override replication count")->check(CLI::PositiveNumber);
    cmd->add_option("--seed", args.seed, "Override master seed");
    if (with_out) {
        cmd->add_option("--out", args.out, "Output directory")->capture_default_str();
    }
}

Scenario load(const CommonArgs& args)
{
    auto s = parse_scenario(args.scenario);
    if (args.days) {
        s.horizon_days = *args.days;
    }
    if (args.reps) {
        s.replications = *args.reps;
    }
    if (args.seed) {
        s.seed = *args.seed;
    }
    validate_scenario(s);
    return s;
}

RunManifest manifest_for(std::string command, const std::vector<std::string>& argv, const Scenario& s)
{
    RunManifest m;
    m.command = std::move(command);
    m.arguments = argv;
    m.scenario_hash = scenario_hash(s);
    m.master_seed = s.seed;
    m.replications = s.replications;
    m.horizon_days = s.horizon_days;
    return m;
}

RunOptions quiet_options()
{
    RunOptions o;
    o.keep_events = false;
    return o;
}

int run_simulate(const CommonArgs& args, const std::vector<std::string>& argv)
{
    const auto s = load(args);
    const auto result = run_experiment(s, s.replications, s.seed, quiet_options());
    auto manifest = manifest_for("simulate", argv, s);
    manifest.files = emit_experiment(result, s, args.out);
    emit_manifest(manifest, args.out);
    const auto& m = result.energy.mean;
    fmt::print("{} replications x {} days: mean total {:.3f} kWh (base {:.3f}, lights {:.3f}, computers {:.3f})\n",
               s.replications, s.horizon_days, result.mean_total_kwh(), m.base_wh / 1000.0, m.lights_wh / 1000.0,
               m.computers_wh / 1000.0);
    fmt::print("outputs written to {}\n", args.out);
    return kExitOk;
}

int run_compare(const CommonArgs& args, std::optional<double> contact_rate, const std::vector<std::string>& argv)
{
    auto s = load(args);
    if (contact_rate) {
        s.contact.contact_rate = *contact_rate;
        validate_scenario(s);
    }
    const auto c = compare_policies(s, s.replications, s.seed, quiet_options());
    auto manifest = manifest_for("compare", argv, s);
    manifest.files = emit_comparison(c, s, args.out);
    emit_manifest(manifest, args.out);
    std::cout << format_comparison(c);
    return kExitOk;
}

int run_proportions(const CommonArgs& args, const std::vector<std::string>& windows,
                    const std::vector<std::string>& argv)
{
    const auto s = load(args);
    std::vector<NamedWindow> named;
    for (const auto& w : windows) {
        try {
            named.push_back({w, parse_window(w, s.start_day, s.horizon_minutes())});
        } catch (const DomainError& e) {
            throw ValidationError(e.what());
        }
    }
    const auto result = run_experiment(s, s.replications, s.seed, quiet_options());
    auto manifest = manifest_for("proportions", argv, s);
    manifest.files = emit_experiment(result, s, args.out, {}, named);
    emit_manifest(manifest, args.out);
    std::cout << format_proportions(result.mean_series, named, s.start_day);
    return kExitOk;
}

int run_validate(const CommonArgs& args)
{
    const auto s = load(args);
    fmt::print("{}: ok ({} rooms, {} occupants, {} policy, {} days, {} replications)\n", args.scenario,
               s.building.rooms.size(), s.occupants, to_string(s.policy.kind), s.horizon_days, s.replications);
    return kExitOk;
}

int run_summary(const std::string& scenario, const std::string& building)
{
    const auto model = building.empty() ? parse_scenario(scenario).building : load_building_file(building);
    std::cout << format_summary(building_summary(model));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Office building occupant-behaviour energy simulator"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kVersion));

    CommonArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "Run replications and write series, bins and proportions");
    add_common(simulate, sim_args, true);

    CommonArgs cmp_args;
    std::optional<double> contact_rate;
    auto* compare = app.add_subcommand("compare", "Run both lighting policies and compare total consumption");
    add_common(compare, cmp_args, true);
    compare->add_option("--contact-rate", contact_rate, "Override the email contact rate")
        ->check(CLI::NonNegativeNumber);

    CommonArgs prop_args;
    std::vector<std::string> windows{"weekday-day", "night", "weekend", "off-hours"};
    auto* proportions = app.add_subcommand("proportions", "Category energy shares over report windows");
    add_common(proportions, prop_args, true);
    proportions->add_option("--window", windows,
                            "weekday-day, night, weekend, off-hours, all or <begin>-<end> minutes (repeatable)")
        ->capture_default_str();

    CommonArgs val_args;
    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
    add_common(validate, val_args, false);

    std::string sum_scenario;
    std::string sum_building;
    auto* summary = app.add_subcommand("summary", "Print building room and appliance counts");
    auto* sum_s = summary->add_option("--scenario", sum_scenario, "Scenario file")->check(CLI::ExistingFile);
    auto* sum_b = summary->add_option("--building", sum_building, "Building file")->check(CLI::ExistingFile);
    sum_s->excludes(sum_b);
    summary->require_option(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalid;
    }

    const std::vector<std::string> args(argv + 1, argv + argc);
    try {
        if (*simulate) {
            return run_simulate(sim_args, args);
        }
        if (*compare) {
            return run_compare(cmp_args, contact_rate, args);
        }
        if (*proportions) {
            return run_proportions(prop_args, windows, args);
        }
        if (*validate) {
            return run_validate(val_args);
        }
        return run_summary(sum_scenario, sum_building);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}

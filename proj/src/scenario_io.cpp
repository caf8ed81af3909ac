#include "officesim/scenario_io.hpp"

#include "officesim/errors.hpp"
#include "yaml_util.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <system_error>

namespace officesim {

namespace fs = std::filesystem;

namespace {

struct DoubleField {
    std::string_view name;
    double BehaviorParams::*member;
};

struct IntField {
    std::string_view name;
    int BehaviorParams::*member;
};

constexpr DoubleField kBehaviorDoubles[] = {
    {"office_leave_hazard", &BehaviorParams::office_leave_hazard},
    {"temporary_leave_share", &BehaviorParams::temporary_leave_share},
    {"other_room_visit_hazard", &BehaviorParams::other_room_visit_hazard},
    {"standby_probability", &BehaviorParams::standby_probability},
    {"switch_off_threshold", &BehaviorParams::switch_off_threshold},
    {"below_threshold_switch_off_probability", &BehaviorParams::below_threshold_switch_off_probability},
    {"weekend_presence_probability", &BehaviorParams::weekend_presence_probability},
};

constexpr IntField kBehaviorInts[] = {
    {"temporary_leave_min", &BehaviorParams::temporary_leave_min},
    {"temporary_leave_max", &BehaviorParams::temporary_leave_max},
    {"long_leave_min", &BehaviorParams::long_leave_min},
    {"long_leave_max", &BehaviorParams::long_leave_max},
    {"other_room_dwell_min", &BehaviorParams::other_room_dwell_min},
    {"other_room_dwell_max", &BehaviorParams::other_room_dwell_max},
    {"facility_walk_minutes", &BehaviorParams::facility_walk_minutes},
    {"corridor_walk_minutes", &BehaviorParams::corridor_walk_minutes},
    {"computer_start_minutes", &BehaviorParams::computer_start_minutes},
    {"end_of_day_margin", &BehaviorParams::end_of_day_margin},
};

void parse_behavior(const YAML::Node& node, BehaviorParams& b)
{
    detail::expect_map(node, "behavior");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        bool known = false;
        for (const auto& f : kBehaviorDoubles) {
            if (f.name == key) {
                b.*f.member = detail::as<double>(kv.second, "behavior." + key);
                known = true;
            }
        }
        for (const auto& f : kBehaviorInts) {
            if (f.name == key) {
                b.*f.member = detail::as<int>(kv.second, "behavior." + key);
                known = true;
            }
        }
        if (!known) {
            throw ParseError("unknown field '" + key + "' in behavior", detail::line_of(kv.first));
        }
    }
}

template <typename Enum, std::size_t N, typename FromString>
void parse_fractions(const YAML::Node& node, std::string_view where, std::array<double, N>& out,
                     FromString from_string)
{
    detail::expect_map(node, where);
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        const std::optional<Enum> e = from_string(key);
        if (!e) {
            throw ParseError(fmt::format("unknown category '{}' in {}", key, where), detail::line_of(kv.first));
        }
        out[static_cast<std::size_t>(*e)] = detail::as<double>(kv.second, fmt::format("{}.{}", where, key));
    }
}

void parse_stereotypes(const YAML::Node& node, StereotypeTable& table)
{
    detail::expect_map(node, "stereotypes");
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        const auto st = stereotype_from_string(key);
        if (!st) {
            throw ParseError("unknown stereotype '" + key + "'", detail::line_of(kv.first));
        }
        const auto& entry = kv.second;
        const auto where = "stereotypes." + key;
        detail::expect_map(entry, where);
        detail::check_keys(entry, {"awareness", "p_switch_off", "p_email"}, where);
        auto& p = table[*st];
        p.p_switch_off = detail::optional<double>(entry, "p_switch_off", p.p_switch_off);
        p.p_email = detail::optional<double>(entry, "p_email", p.p_email);
        if (const auto band = entry["awareness"]) {
            if (!band.IsSequence() || band.size() != 2) {
                throw ParseError("field '" + where + ".awareness' must be [low, high]", detail::line_of(band));
            }
            p.awareness_lo = detail::as<double>(band[0], where + ".awareness");
            p.awareness_hi = detail::as<double>(band[1], where + ".awareness");
        }
    }
}

void parse_social(const YAML::Node& node, Scenario& s)
{
    detail::expect_map(node, "social");
    detail::check_keys(node,
                       {"contact_rate", "awareness_delta", "email_base_minutes", "small_world_k", "small_world_beta"},
                       "social");
    s.contact.contact_rate = detail::optional<double>(node, "contact_rate", s.contact.contact_rate);
    s.contact.awareness_delta = detail::optional<double>(node, "awareness_delta", s.contact.awareness_delta);
    s.contact.base_minutes = detail::optional<double>(node, "email_base_minutes", s.contact.base_minutes);
    s.small_world.k = detail::optional<int>(node, "small_world_k", s.small_world.k);
    s.small_world.beta = detail::optional<double>(node, "small_world_beta", s.small_world.beta);
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot open '{}': {}", path.string(), std::strerror(errno)));
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string num(double x)
{
    return fmt::format("{}", x);
}

}  // namespace

Scenario parse_scenario_text(std::string_view text, const fs::path& base_dir)
{
    const auto root = detail::parse_document(text);
    detail::expect_map(root, "scenario");
    detail::check_keys(root,
                       {"building", "horizon_days", "start_day", "seed", "replications", "occupants",
                        "lighting_policy", "light_off_delay_minutes", "population", "stereotypes", "behavior",
                        "social"},
                       "scenario");

    Scenario s;
    const auto building = root["building"];
    if (!building) {
        throw ParseError("missing required field 'building'", detail::line_of(root));
    }
    if (building.IsMap()) {
        s.building = load_building(YAML::Dump(building));
    } else {
        s.building_path = detail::as<std::string>(building, "building");
        s.building = load_building_file(base_dir / s.building_path);
    }
    s.horizon_days = detail::required<int>(root, "horizon_days");

    if (const auto day = root["start_day"]) {
        const auto name = detail::as<std::string>(day, "start_day");
        const auto wd = weekday_from_string(name);
        if (!wd) {
            throw ParseError("field 'start_day' has unknown weekday '" + name + "'", detail::line_of(day));
        }
        s.start_day = *wd;
    }
    s.seed = detail::optional<std::uint64_t>(root, "seed", s.seed);
    s.replications = detail::optional<int>(root, "replications", s.replications);
    s.occupants = detail::optional<int>(root, "occupants", s.building.max_occupants);

    if (const auto policy = root["lighting_policy"]) {
        const auto name = detail::as<std::string>(policy, "lighting_policy");
        const auto kind = policy_kind_from_string(name);
        if (!kind) {
            throw ParseError("field 'lighting_policy' must be automated or staff_controlled, got '" + name + "'",
                             detail::line_of(policy));
        }
        s.policy.kind = *kind;
    }
    s.policy.off_delay = detail::optional<int>(root, "light_off_delay_minutes", s.policy.off_delay);

    if (const auto pop = root["population"]) {
        detail::expect_map(pop, "population");
        detail::check_keys(pop, {"schedule_mix", "awareness_mix"}, "population");
        if (const auto m = pop["schedule_mix"]) {
            parse_fractions<ScheduleClass>(m, "population.schedule_mix", s.mix.schedule,
                                           schedule_class_from_string);
        }
        if (const auto m = pop["awareness_mix"]) {
            parse_fractions<Stereotype>(m, "population.awareness_mix", s.mix.awareness, stereotype_from_string);
        }
    }
    if (const auto st = root["stereotypes"]) {
        parse_stereotypes(st, s.stereotypes);
    }
    if (const auto b = root["behavior"]) {
        parse_behavior(b, s.behavior);
    }
    if (const auto soc = root["social"]) {
        parse_social(soc, s);
    }

    validate_scenario(s);
    return s;
}

Scenario parse_scenario(const fs::path& path)
{
    return parse_scenario_text(read_file(path), path.parent_path());
}

std::string serialize_scenario(const Scenario& s, bool inline_building)
{
    YAML::Emitter out;
    out.SetDoublePrecision(17);
    out << YAML::BeginMap;
    out << YAML::Key << "building" << YAML::Value;
    if (inline_building || s.building_path.empty()) {
        out << YAML::Load(serialize_building(s.building));
    } else {
        out << s.building_path;
    }
    out << YAML::Key << "horizon_days" << YAML::Value << s.horizon_days;
    out << YAML::Key << "start_day" << YAML::Value << std::string(to_string(s.start_day));
    out << YAML::Key << "seed" << YAML::Value << s.seed;
    out << YAML::Key << "replications" << YAML::Value << s.replications;
    out << YAML::Key << "occupants" << YAML::Value << s.occupants;
    out << YAML::Key << "lighting_policy" << YAML::Value << std::string(to_string(s.policy.kind));
    out << YAML::Key << "light_off_delay_minutes" << YAML::Value << s.policy.off_delay;

    out << YAML::Key << "population" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "schedule_mix" << YAML::Value << YAML::BeginMap;
    for (auto c : kAllScheduleClasses) {
        out << YAML::Key << std::string(to_string(c)) << YAML::Value << s.mix.schedule[static_cast<std::size_t>(c)];
    }
    out << YAML::EndMap;
    out << YAML::Key << "awareness_mix" << YAML::Value << YAML::BeginMap;
    for (auto st : kAllStereotypes) {
        out << YAML::Key << std::string(to_string(st)) << YAML::Value
            << s.mix.awareness[static_cast<std::size_t>(st)];
    }
    out << YAML::EndMap << YAML::EndMap;

    out << YAML::Key << "stereotypes" << YAML::Value << YAML::BeginMap;
    for (auto st : kAllStereotypes) {
        const auto& p = s.stereotypes[st];
        out << YAML::Key << std::string(to_string(st)) << YAML::Value << YAML::BeginMap;
        out << YAML::Key << "awareness" << YAML::Value << YAML::Flow << YAML::BeginSeq << p.awareness_lo
            << p.awareness_hi << YAML::EndSeq;
        out << YAML::Key << "p_switch_off" << YAML::Value << p.p_switch_off;
        out << YAML::Key << "p_email" << YAML::Value << p.p_email;
        out << YAML::EndMap;
    }
    out << YAML::EndMap;

    out << YAML::Key << "behavior" << YAML::Value << YAML::BeginMap;
    for (const auto& f : kBehaviorDoubles) {
        out << YAML::Key << std::string(f.name) << YAML::Value << s.behavior.*f.member;
    }
    for (const auto& f : kBehaviorInts) {
        out << YAML::Key << std::string(f.name) << YAML::Value << s.behavior.*f.member;
    }
    out << YAML::EndMap;

    out << YAML::Key << "social" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "contact_rate" << YAML::Value << s.contact.contact_rate;
    out << YAML::Key << "awareness_delta" << YAML::Value << s.contact.awareness_delta;
    out << YAML::Key << "email_base_minutes" << YAML::Value << s.contact.base_minutes;
    out << YAML::Key << "small_world_k" << YAML::Value << s.small_world.k;
    out << YAML::Key << "small_world_beta" << YAML::Value << s.small_world.beta;
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

std::uint64_t scenario_hash(const Scenario& scenario)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize_scenario(scenario, true)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Writers

void write_minute_csv(std::ostream& out, std::span<const PowerSample> samples)
{
    out << kMinuteCsvHeader << '\n';
    for (const auto& s : samples) {
        out << fmt::format("{},{},{},{},{}\n", s.minute, num(s.base_watts), num(s.lights_watts),
                           num(s.computers_watts), num(s.total_watts));
    }
}

void write_half_hour_csv(std::ostream& out, std::span<const PowerSample> samples)
{
    out << kHalfHourCsvHeader << '\n';
    for (const auto& b : half_hour_bins(samples)) {
        out << fmt::format("{},{},{},{},{}\n", b.bin_start, num(b.base_kwh), num(b.lights_kwh),
                           num(b.computers_kwh), num(b.total_kwh()));
    }
}

void write_replication_csv(std::ostream& out, const ExperimentResult& result)
{
    out << kReplicationCsvHeader << '\n';
    for (std::size_t i = 0; i < result.replications.size(); ++i) {
        const auto& r = result.replications[i];
        const auto e = energy(r.ledger.samples());
        out << fmt::format("{},{},{},{},{},{},{}\n", i, r.seed, num(e.base_wh / 1000.0), num(e.lights_wh / 1000.0),
                           num(e.computers_wh / 1000.0), num(e.total_wh() / 1000.0),
                           num(r.mean_final_awareness()));
    }
}

std::vector<NamedWindow> preset_windows(Weekday start_day, std::int64_t horizon_minutes)
{
    std::vector<NamedWindow> out;
    for (auto p : {WindowPreset::WeekdayDay, WindowPreset::Night, WindowPreset::Weekend, WindowPreset::OffHours,
                   WindowPreset::All}) {
        out.push_back({std::string(to_string(p)), make_window(p, start_day, horizon_minutes)});
    }
    return out;
}

std::string window_days(const MinuteWindow& window, Weekday start_day)
{
    std::array<bool, 7> seen{};
    for (const auto& [a, b] : window.ranges()) {
        for (auto day = a / kMinutesPerDay; day * kMinutesPerDay < b; ++day) {
            seen[static_cast<std::size_t>(SimClock::weekday_at(start_day, day * kMinutesPerDay))] = true;
        }
    }
    std::string out;
    for (std::size_t i = 0; i < seen.size(); ++i) {
        if (seen[i]) {
            out += out.empty() ? "" : " ";
            out += iso_label(static_cast<Weekday>(i));
        }
    }
    return out;
}

std::string format_proportions(std::span<const PowerSample> samples, std::span<const NamedWindow> windows,
                               Weekday start_day)
{
    std::string out = "window,days,minutes,base_kwh,lights_kwh,computers_kwh,base_share,lights_share,computers_share\n";
    for (const auto& w : windows) {
        if (w.window.empty()) {
            out += fmt::format("{},,0,,,,,,\n", w.name);
            continue;
        }
        const auto e = energy(samples, w.window);
        const auto shares = category_proportions(samples, w.window);
        out += fmt::format("{},{},{},{},{},{},{},{},{}\n", w.name, window_days(w.window, start_day),
                           w.window.minutes(), num(e.base_wh / 1000.0),
                           num(e.lights_wh / 1000.0), num(e.computers_wh / 1000.0), num(shares.base),
                           num(shares.lights), num(shares.computers));
    }
    return out;
}

std::string format_comparison(const PolicyComparison& c)
{
    std::string out = "policy,total_kwh,base_kwh,lights_kwh,computers_kwh,sd_total_kwh,se_total_kwh\n";
    auto row = [&](std::string_view name, const ExperimentResult& r) {
        const auto& m = r.energy.mean;
        out += fmt::format("{},{},{},{},{},{},{}\n", name, num(r.mean_total_kwh()), num(m.base_wh / 1000.0),
                           num(m.lights_wh / 1000.0), num(m.computers_wh / 1000.0), num(r.sd_total_kwh()),
                           num(r.se_total_kwh()));
    };
    row(to_string(LightingPolicy::Kind::Automated), c.automated);
    row(to_string(LightingPolicy::Kind::StaffControlled), c.staff_controlled);
    out += "\n";
    out += fmt::format("difference_kwh (staff_controlled - automated): {}\n", num(c.difference_kwh));
    out += fmt::format("se_difference_kwh: {}\n", num(c.se_difference_kwh));
    out += fmt::format("se_paired_difference_kwh: {}\n", num(c.se_paired_difference_kwh));
    out += fmt::format("lower_consumption_policy: {}\n", to_string(c.lower));
    return out;
}

std::string manifest_json(const RunManifest& m)
{
    nlohmann::ordered_json j;
    j["version"] = m.version;
    j["command"] = m.command;
    j["arguments"] = m.arguments;
    j["scenario_hash"] = fmt::format("{:016x}", m.scenario_hash);
    j["master_seed"] = m.master_seed;
    j["replications"] = m.replications;
    j["horizon_days"] = m.horizon_days;
    j["files"] = m.files;
    return j.dump(2) + "\n";
}

void write_file_atomic(const fs::path& path, std::string_view content)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path(), ec);
        if (ec) {
            throw std::runtime_error(
                fmt::format("cannot create directory '{}': {}", path.parent_path().string(), ec.message()));
        }
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error(fmt::format("cannot write '{}': {}", tmp.string(), std::strerror(errno)));
        }
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            throw std::runtime_error(fmt::format("write to '{}' failed: {}", tmp.string(), std::strerror(errno)));
        }
    }
    fs::rename(tmp, path, ec);
    if (ec) {
        throw std::runtime_error(fmt::format("cannot rename '{}' to '{}': {}", tmp.string(), path.string(),
                                             ec.message()));
    }
}

std::vector<std::string> emit_experiment(const ExperimentResult& result, const Scenario& scenario,
                                         const fs::path& out_dir, std::string_view prefix,
                                         std::span<const NamedWindow> windows)
{
    std::vector<std::string> files;
    auto emit = [&](std::string_view name, const std::string& content) {
        const auto rel = prefix.empty() ? fs::path(name) : fs::path(prefix) / name;
        write_file_atomic(out_dir / rel, content);
        files.push_back(rel.generic_string());
    };

    std::ostringstream minute;
    write_minute_csv(minute, result.mean_series);
    emit("minute_series.csv", minute.str());

    std::ostringstream half;
    write_half_hour_csv(half, result.mean_series);
    emit("half_hourly.csv", half.str());

    std::ostringstream reps;
    write_replication_csv(reps, result);
    emit("replications.csv", reps.str());

    std::vector<NamedWindow> presets;
    if (windows.empty()) {
        presets = preset_windows(scenario.start_day, scenario.horizon_minutes());
        windows = presets;
    }
    emit("proportions.csv", format_proportions(result.mean_series, windows, scenario.start_day));
    return files;
}

std::vector<std::string> emit_comparison(const PolicyComparison& comparison, const Scenario& scenario,
                                         const fs::path& out_dir)
{
    auto files = emit_experiment(comparison.automated, scenario, out_dir, "automated");
    const auto staff = emit_experiment(comparison.staff_controlled, scenario, out_dir, "staff_controlled");
    files.insert(files.end(), staff.begin(), staff.end());
    write_file_atomic(out_dir / "comparison.txt", format_comparison(comparison));
    files.emplace_back("comparison.txt");
    return files;
}

void emit_manifest(RunManifest manifest, const fs::path& out_dir)
{
    write_file_atomic(out_dir / "manifest.json", manifest_json(manifest));
}

}  // namespace officesim

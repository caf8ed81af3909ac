#pragma once

#include "officesim/energy.hpp"
#include "officesim/simulation.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace officesim {

inline constexpr std::string_view kVersion = "1.0.0";

/// Parses a scenario document. `building` is either a path, resolved against
/// `base_dir`, or an inline building mapping. Omitted optional fields take
/// their defaults (automated lighting, contact rate 1, 20 replications,
/// awareness threshold 50, occupants = the building's max_occupants).
/// Throws ParseError for malformed or mistyped input and ValidationError for
/// out-of-range values.
Scenario parse_scenario_text(std::string_view text, const std::filesystem::path& base_dir = {});
Scenario parse_scenario(const std::filesystem::path& path);

/// Writes every field explicitly. With `inline_building` (or an empty
/// building_path) the building is embedded, so the text stands alone.
std::string serialize_scenario(const Scenario& scenario, bool inline_building = false);

/// FNV-1a over the self-contained serialization.
std::uint64_t scenario_hash(const Scenario& scenario);

// CSV and report writers. All numbers use the shortest round-trip
// representation, so equal inputs give equal bytes.

inline constexpr std::string_view kMinuteCsvHeader = "minute,base_w,lights_w,computers_w,total_w";
inline constexpr std::string_view kHalfHourCsvHeader =
    "bin_start,base_kwh,lights_kwh,computers_kwh,total_kwh";
inline constexpr std::string_view kReplicationCsvHeader =
    "replication,seed,base_kwh,lights_kwh,computers_kwh,total_kwh,mean_final_awareness";

void write_minute_csv(std::ostream& out, std::span<const PowerSample> samples);
void write_half_hour_csv(std::ostream& out, std::span<const PowerSample> samples);
void write_replication_csv(std::ostream& out, const ExperimentResult& result);

struct NamedWindow {
    std::string name;
    MinuteWindow window;
};

/// Default report windows: weekday-day, night, weekend, off-hours, all.
std::vector<NamedWindow> preset_windows(Weekday start_day, std::int64_t horizon_minutes);

/// One CSV row per window; `days` lists the ISO weekday labels the window
/// touches.
std::string format_proportions(std::span<const PowerSample> samples, std::span<const NamedWindow> windows,
                               Weekday start_day);
std::string format_comparison(const PolicyComparison& comparison);

struct RunManifest {
    std::string command;
    /// Command-line arguments after the program name; replaying them with
    /// the same scenario file reproduces the outputs.
    std::vector<std::string> arguments;
    std::uint64_t scenario_hash = 0;
    std::uint64_t master_seed = 0;
    int replications = 0;
    int horizon_days = 0;
    std::string version{kVersion};
    std::vector<std::string> files;  ///< relative to the output directory
};

std::string manifest_json(const RunManifest& manifest);

/// Writes `content` to a temporary sibling and renames it into place.
/// Throws std::runtime_error naming the path and the cause.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

/// Series, half-hourly bins, replication totals and proportions for one
/// experiment under `out_dir / prefix`. Returns the written files relative
/// to `out_dir`.
std::vector<std::string> emit_experiment(const ExperimentResult& result, const Scenario& scenario,
                                         const std::filesystem::path& out_dir, std::string_view prefix = {},
                                         std::span<const NamedWindow> windows = {});

/// Both policies' outputs in subdirectories plus comparison.txt.
std::vector<std::string> emit_comparison(const PolicyComparison& comparison, const Scenario& scenario,
                                         const std::filesystem::path& out_dir);

/// Writes manifest.json last, after every listed file exists.
void emit_manifest(RunManifest manifest, const std::filesystem::path& out_dir);

}  // namespace officesim

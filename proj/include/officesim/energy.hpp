#pragma once

#include "officesim/appliance.hpp"
#include "officesim/building.hpp"
#include "officesim/calendar.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace officesim {

/// Power drawn during one simulated minute, split by category. The state at
/// the start of the minute holds for the whole minute.
struct PowerSample {
    std::int64_t minute = 0;
    double base_watts = 0.0;
    double lights_watts = 0.0;
    double computers_watts = 0.0;
    double total_watts = 0.0;  ///< base + lights + computers

    bool operator==(const PowerSample&) const = default;
    double flexible_watts() const { return lights_watts + computers_watts; }
};

PowerSample sample_power(const ApplianceWatts& appliances, double base_load_watts, std::int64_t minute);

/// Energy in watt-hours per category.
struct CategoryEnergy {
    double base_wh = 0.0;
    double lights_wh = 0.0;
    double computers_wh = 0.0;

    double flexible_wh() const { return lights_wh + computers_wh; }
    double total_wh() const { return base_wh + lights_wh + computers_wh; }
};

/// Minute-resolution power record of one run. Minutes are contiguous and
/// strictly increasing.
class EnergyLedger {
public:
    EnergyLedger() = default;
    explicit EnergyLedger(std::vector<PowerSample> samples);

    /// Throws std::logic_error if `s.minute` does not follow the last sample.
    void append(const PowerSample& s);
    void reserve(std::size_t n) { samples_.reserve(n); }

    std::span<const PowerSample> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    bool empty() const { return samples_.empty(); }

private:
    std::vector<PowerSample> samples_;
};

/// Sum of samples * (1/60) h over the whole series.
CategoryEnergy energy(std::span<const PowerSample> samples);

struct HalfHourBin {
    std::int64_t bin_start = 0;
    double base_kwh = 0.0;
    double lights_kwh = 0.0;
    double computers_kwh = 0.0;

    double total_kwh() const { return base_kwh + lights_kwh + computers_kwh; }
};

/// Consecutive 30-minute bins from the first sample. A trailing partial bin
/// is dropped.
std::vector<HalfHourBin> half_hour_bins(std::span<const PowerSample> samples);

/// Duty coefficient energy / (max_power * window). Throws DomainError for a
/// non-positive max power or window, and std::logic_error if the result
/// falls outside [0, 1] (an accounting bug, never clamped).
double realized_beta(double energy_wh, double max_power_watts, double window_hours);

/// A set of simulation minutes as sorted, disjoint half-open ranges.
class MinuteWindow {
public:
    MinuteWindow() = default;
    static MinuteWindow range(std::int64_t begin, std::int64_t end);
    /// Union of [day*1440 + from, day*1440 + to) over every day in
    /// [0, days) whose weekday passes `keep`. `from` > `to` wraps past
    /// midnight into the next day.
    template <typename Pred>
    static MinuteWindow daily(Weekday start, std::int64_t days, int from, int to, Pred keep);

    MinuteWindow unite(const MinuteWindow& other) const;
    MinuteWindow clip(std::int64_t begin, std::int64_t end) const;

    bool contains(std::int64_t minute) const;
    std::int64_t minutes() const;
    bool empty() const { return minutes() == 0; }
    const std::vector<std::pair<std::int64_t, std::int64_t>>& ranges() const { return ranges_; }

private:
    void add(std::int64_t begin, std::int64_t end);
    void normalize();
    std::vector<std::pair<std::int64_t, std::int64_t>> ranges_;
};

/// Named report windows over a horizon: Mon-Fri 09:00-17:00; every night
/// 19:00-07:00; all of Saturday and Sunday; night plus weekend; everything.
enum class WindowPreset { WeekdayDay, Night, Weekend, OffHours, All };

std::string_view to_string(WindowPreset p);
std::optional<WindowPreset> window_preset_from_string(std::string_view s);
MinuteWindow make_window(WindowPreset preset, Weekday start_day, std::int64_t horizon_minutes);
/// Preset name or an explicit "<begin>-<end>" minute range.
MinuteWindow parse_window(std::string_view spec, Weekday start_day, std::int64_t horizon_minutes);

/// Energy restricted to the minutes in `window`.
CategoryEnergy energy(std::span<const PowerSample> samples, const MinuteWindow& window);
double mean_total_watts(std::span<const PowerSample> samples, const MinuteWindow& window);

struct CategoryShares {
    double base = 0.0;
    double lights = 0.0;
    double computers = 0.0;
};

/// Energy fractions over `window`; they sum to 1. Throws DomainError for an
/// empty window, one reaching outside the series, or zero energy.
CategoryShares category_proportions(std::span<const PowerSample> samples, const MinuteWindow& window);

/// Per-appliance draw history, stored as change points so any window's
/// energy can be recovered without per-minute storage. Lights come first,
/// then computers, in building order.
class ApplianceUsageLog {
public:
    ApplianceUsageLog() = default;
    ApplianceUsageLog(std::size_t lights, std::size_t computers);

    void record(std::int64_t minute, std::span<const Light> lights, std::span<const Computer> computers);

    std::size_t light_count() const { return lights_; }
    std::size_t appliance_count() const { return changes_.size(); }
    std::int64_t end_minute() const { return end_; }
    /// Energy of appliance `i` over [begin, end), watt-hours.
    double energy_wh(std::size_t i, std::int64_t begin, std::int64_t end) const;

private:
    struct Change {
        std::int64_t minute;
        double watts;
    };
    std::size_t lights_ = 0;
    std::int64_t end_ = 0;
    std::vector<std::vector<Change>> changes_;
    void push(std::size_t i, std::int64_t minute, double watts);
};

struct BetaEntry {
    std::string appliance_id;
    bool is_light = true;
    double energy_wh = 0.0;
    double max_power_watts = 0.0;
    double beta = 0.0;
};

struct BetaReport {
    std::int64_t begin = 0;
    std::int64_t end = 0;
    double window_hours = 0.0;
    std::vector<BetaEntry> entries;

    /// Sum of beta_i * max_power_i * window: the flexible energy rebuilt from
    /// the per-appliance coefficients.
    double reconstructed_flexible_wh() const;
};

BetaReport beta_report(const ApplianceUsageLog& log, const BuildingModel& building, std::int64_t begin,
                       std::int64_t end);

// Inline template definition.

template <typename Pred>
MinuteWindow MinuteWindow::daily(Weekday start, std::int64_t days, int from, int to, Pred keep)
{
    MinuteWindow w;
    for (std::int64_t d = 0; d < days; ++d) {
        const auto day = SimClock::weekday_at(start, d * kMinutesPerDay);
        if (!keep(day)) {
            continue;
        }
        const std::int64_t base = d * kMinutesPerDay;
        if (from <= to) {
            w.add(base + from, base + to);
        } else {
            w.add(base + from, base + kMinutesPerDay + to);
        }
    }
    w.normalize();
    return w;
}

}  // namespace officesim

#include "officesim/energy.hpp"

#include "officesim/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace officesim {

namespace {
constexpr double kHoursPerMinute = 1.0 / 60.0;
}

PowerSample sample_power(const ApplianceWatts& appliances, double base_load_watts, std::int64_t minute)
{
    PowerSample s;
    s.minute = minute;
    s.base_watts = base_load_watts;
    s.lights_watts = appliances.lights;
    s.computers_watts = appliances.computers;
    s.total_watts = s.base_watts + s.lights_watts + s.computers_watts;
    return s;
}

EnergyLedger::EnergyLedger(std::vector<PowerSample> samples)
{
    samples_.reserve(samples.size());
    for (const auto& s : samples) {
        append(s);
    }
}

void EnergyLedger::append(const PowerSample& s)
{
    if (!samples_.empty() && s.minute != samples_.back().minute + 1) {
        throw std::logic_error(fmt::format("ledger sample at minute {} does not follow minute {}", s.minute,
                                           samples_.back().minute));
    }
    samples_.push_back(s);
}

CategoryEnergy energy(std::span<const PowerSample> samples)
{
    // Watt-minutes first: sums of whole-watt draws stay exact.
    CategoryEnergy e;
    for (const auto& s : samples) {
        e.base_wh += s.base_watts;
        e.lights_wh += s.lights_watts;
        e.computers_wh += s.computers_watts;
    }
    e.base_wh /= 60.0;
    e.lights_wh /= 60.0;
    e.computers_wh /= 60.0;
    return e;
}

std::vector<HalfHourBin> half_hour_bins(std::span<const PowerSample> samples)
{
    constexpr std::size_t kBin = 30;
    std::vector<HalfHourBin> bins;
    bins.reserve(samples.size() / kBin);
    for (std::size_t start = 0; start + kBin <= samples.size(); start += kBin) {
        const auto e = energy(samples.subspan(start, kBin));
        HalfHourBin b;
        b.bin_start = samples[start].minute;
        b.base_kwh = e.base_wh / 1000.0;
        b.lights_kwh = e.lights_wh / 1000.0;
        b.computers_kwh = e.computers_wh / 1000.0;
        bins.push_back(b);
    }
    return bins;
}

double realized_beta(double energy_wh, double max_power_watts, double window_hours)
{
    if (!(max_power_watts > 0.0)) {
        throw DomainError("realized_beta: max power must be positive");
    }
    if (!(window_hours > 0.0)) {
        throw DomainError("realized_beta: window must be positive");
    }
    const double beta = energy_wh / (max_power_watts * window_hours);
    // One ulp of slack for energies summed minute by minute.
    constexpr double kSlack = 1e-12;
    if (beta < -kSlack || beta > 1.0 + kSlack) {
        throw std::logic_error(fmt::format("duty coefficient {} outside [0, 1]", beta));
    }
    return beta;
}

// MinuteWindow

MinuteWindow MinuteWindow::range(std::int64_t begin, std::int64_t end)
{
    MinuteWindow w;
    w.add(begin, end);
    w.normalize();
    return w;
}

void MinuteWindow::add(std::int64_t begin, std::int64_t end)
{
    if (begin < end) {
        ranges_.emplace_back(begin, end);
    }
}

void MinuteWindow::normalize()
{
    std::sort(ranges_.begin(), ranges_.end());
    std::vector<std::pair<std::int64_t, std::int64_t>> merged;
    for (const auto& r : ranges_) {
        if (!merged.empty() && r.first <= merged.back().second) {
            merged.back().second = std::max(merged.back().second, r.second);
        } else {
            merged.push_back(r);
        }
    }
    ranges_ = std::move(merged);
}

MinuteWindow MinuteWindow::unite(const MinuteWindow& other) const
{
    MinuteWindow w = *this;
    w.ranges_.insert(w.ranges_.end(), other.ranges_.begin(), other.ranges_.end());
    w.normalize();
    return w;
}

MinuteWindow MinuteWindow::clip(std::int64_t begin, std::int64_t end) const
{
    MinuteWindow w;
    for (const auto& [a, b] : ranges_) {
        w.add(std::max(a, begin), std::min(b, end));
    }
    w.normalize();
    return w;
}

bool MinuteWindow::contains(std::int64_t minute) const
{
    auto it = std::upper_bound(ranges_.begin(), ranges_.end(), minute,
                               [](std::int64_t m, const auto& r) { return m < r.first; });
    if (it == ranges_.begin()) {
        return false;
    }
    --it;
    return minute < it->second;
}

std::int64_t MinuteWindow::minutes() const
{
    std::int64_t n = 0;
    for (const auto& [a, b] : ranges_) {
        n += b - a;
    }
    return n;
}

std::string_view to_string(WindowPreset p)
{
    switch (p) {
    case WindowPreset::WeekdayDay:
        return "weekday-day";
    case WindowPreset::Night:
        return "night";
    case WindowPreset::Weekend:
        return "weekend";
    case WindowPreset::OffHours:
        return "off-hours";
    case WindowPreset::All:
        return "all";
    }
    return "?";
}

std::optional<WindowPreset> window_preset_from_string(std::string_view s)
{
    for (auto p : {WindowPreset::WeekdayDay, WindowPreset::Night, WindowPreset::Weekend,
                   WindowPreset::OffHours, WindowPreset::All}) {
        if (to_string(p) == s) {
            return p;
        }
    }
    return std::nullopt;
}

MinuteWindow make_window(WindowPreset preset, Weekday start_day, std::int64_t horizon_minutes)
{
    const std::int64_t days = (horizon_minutes + kMinutesPerDay - 1) / kMinutesPerDay;
    auto any = [](Weekday) { return true; };
    switch (preset) {
    case WindowPreset::WeekdayDay:
        return MinuteWindow::daily(start_day, days, 9 * 60, 17 * 60, [](Weekday d) { return !is_weekend(d); })
            .clip(0, horizon_minutes);
    case WindowPreset::Night: {
        // Starts the evening before day 0 so the first morning is covered.
        auto w = MinuteWindow::daily(start_day, days, 19 * 60, 7 * 60, any)
                     .unite(MinuteWindow::range(0, 7 * 60));
        return w.clip(0, horizon_minutes);
    }
    case WindowPreset::Weekend:
        return MinuteWindow::daily(start_day, days, 0, kMinutesPerDay, [](Weekday d) { return is_weekend(d); })
            .clip(0, horizon_minutes);
    case WindowPreset::OffHours:
        return make_window(WindowPreset::Night, start_day, horizon_minutes)
            .unite(make_window(WindowPreset::Weekend, start_day, horizon_minutes));
    case WindowPreset::All:
        return MinuteWindow::range(0, horizon_minutes);
    }
    return {};
}

MinuteWindow parse_window(std::string_view spec, Weekday start_day, std::int64_t horizon_minutes)
{
    if (auto preset = window_preset_from_string(spec)) {
        return make_window(*preset, start_day, horizon_minutes);
    }
    const auto dash = spec.find('-');
    if (dash != std::string_view::npos) {
        std::int64_t a = 0;
        std::int64_t b = 0;
        const auto lhs = spec.substr(0, dash);
        const auto rhs = spec.substr(dash + 1);
        const auto r1 = std::from_chars(lhs.data(), lhs.data() + lhs.size(), a);
        const auto r2 = std::from_chars(rhs.data(), rhs.data() + rhs.size(), b);
        if (r1.ec == std::errc{} && r1.ptr == lhs.data() + lhs.size() && r2.ec == std::errc{} &&
            r2.ptr == rhs.data() + rhs.size() && a < b) {
            return MinuteWindow::range(a, b);
        }
    }
    throw DomainError(fmt::format(
        "unknown window '{}': expected weekday-day, night, weekend, off-hours, all or <begin>-<end>", spec));
}

CategoryEnergy energy(std::span<const PowerSample> samples, const MinuteWindow& window)
{
    CategoryEnergy e;
    if (samples.empty()) {
        return e;
    }
    const auto first = samples.front().minute;
    for (const auto& [a, b] : window.ranges()) {
        const auto lo = std::max<std::int64_t>(a - first, 0);
        const auto hi = std::min<std::int64_t>(b - first, static_cast<std::int64_t>(samples.size()));
        if (lo >= hi) {
            continue;
        }
        const auto part = energy(samples.subspan(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - lo)));
        e.base_wh += part.base_wh;
        e.lights_wh += part.lights_wh;
        e.computers_wh += part.computers_wh;
    }
    return e;
}

double mean_total_watts(std::span<const PowerSample> samples, const MinuteWindow& window)
{
    const auto n = window.minutes();
    if (n == 0) {
        throw DomainError("mean over an empty window");
    }
    return energy(samples, window).total_wh() * 60.0 / static_cast<double>(n);
}

CategoryShares category_proportions(std::span<const PowerSample> samples, const MinuteWindow& window)
{
    if (window.empty()) {
        throw DomainError("category_proportions: empty window");
    }
    if (samples.empty() || window.ranges().front().first < samples.front().minute ||
        window.ranges().back().second > samples.back().minute + 1) {
        throw DomainError("category_proportions: window reaches outside the series");
    }
    const auto e = energy(samples, window);
    const double total = e.total_wh();
    if (!(total > 0.0)) {
        throw DomainError("category_proportions: no energy in window");
    }
    CategoryShares s;
    s.base = e.base_wh / total;
    s.lights = e.lights_wh / total;
    s.computers = e.computers_wh / total;
    return s;
}

// ApplianceUsageLog

ApplianceUsageLog::ApplianceUsageLog(std::size_t lights, std::size_t computers)
    : lights_(lights), changes_(lights + computers)
{
}

void ApplianceUsageLog::push(std::size_t i, std::int64_t minute, double watts)
{
    auto& c = changes_[i];
    if (c.empty() || c.back().watts != watts) {
        c.push_back({minute, watts});
    }
}

void ApplianceUsageLog::record(std::int64_t minute, std::span<const Light> lights,
                               std::span<const Computer> computers)
{
    for (std::size_t i = 0; i < lights.size(); ++i) {
        push(i, minute, lights[i].watts());
    }
    for (std::size_t i = 0; i < computers.size(); ++i) {
        push(lights_ + i, minute, computers[i].watts());
    }
    end_ = minute + 1;
}

double ApplianceUsageLog::energy_wh(std::size_t i, std::int64_t begin, std::int64_t end) const
{
    const auto& c = changes_[i];
    end = std::min(end, end_);
    double wh = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
        const std::int64_t seg_begin = std::max(c[k].minute, begin);
        const std::int64_t seg_end = std::min(k + 1 < c.size() ? c[k + 1].minute : end_, end);
        if (seg_begin < seg_end) {
            wh += c[k].watts * static_cast<double>(seg_end - seg_begin) / 60.0;
        }
    }
    return wh;
}

double BetaReport::reconstructed_flexible_wh() const
{
    double wh = 0.0;
    for (const auto& e : entries) {
        wh += e.beta * e.max_power_watts * window_hours;
    }
    return wh;
}

BetaReport beta_report(const ApplianceUsageLog& log, const BuildingModel& building, std::int64_t begin,
                       std::int64_t end)
{
    BetaReport r;
    r.begin = begin;
    r.end = end;
    r.window_hours = static_cast<double>(end - begin) * kHoursPerMinute;
    r.entries.reserve(log.appliance_count());
    for (std::size_t i = 0; i < log.appliance_count(); ++i) {
        BetaEntry e;
        e.is_light = i < log.light_count();
        if (e.is_light) {
            e.appliance_id = building.lights[i].id;
            e.max_power_watts = building.lights[i].watts_on;
        } else {
            const auto& c = building.computers[i - log.light_count()];
            e.appliance_id = c.id;
            e.max_power_watts = c.watts.on;
        }
        e.energy_wh = log.energy_wh(i, begin, end);
        e.beta = e.max_power_watts > 0.0 ? realized_beta(e.energy_wh, e.max_power_watts, r.window_hours) : 0.0;
        r.entries.push_back(std::move(e));
    }
    return r;
}

}  // namespace officesim

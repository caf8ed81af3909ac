#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

namespace officesim {

inline constexpr int kMinutesPerDay = 1440;

enum class Weekday { Monday, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

inline constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"};

constexpr std::string_view to_string(Weekday d) { return kWeekdayNames[static_cast<int>(d)]; }

/// ISO 8601 short labels (Mon..Sun) used in reports.
constexpr std::string_view iso_label(Weekday d)
{
    constexpr std::array<std::string_view, 7> labels = {"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
    return labels[static_cast<int>(d)];
}

constexpr bool is_weekend(Weekday d) { return d == Weekday::Saturday || d == Weekday::Sunday; }

inline std::optional<Weekday> weekday_from_string(std::string_view s)
{
    for (int i = 0; i < 7; ++i) {
        if (kWeekdayNames[i] == s || iso_label(static_cast<Weekday>(i)) == s) {
            return static_cast<Weekday>(i);
        }
    }
    return std::nullopt;
}

/// Simulation time. Minute 0 is midnight at the start of `start_day`; each
/// step advances by exactly one minute. A sample at minute k stands for the
/// interval [k, k+1).
struct SimClock {
    Weekday start_day = Weekday::Monday;
    std::int64_t minute = 0;

    std::int64_t day_index() const { return minute / kMinutesPerDay; }
    int minute_of_day() const { return static_cast<int>(minute % kMinutesPerDay); }
    Weekday weekday() const { return weekday_at(start_day, minute); }
    void advance() { ++minute; }

    static constexpr Weekday weekday_at(Weekday start, std::int64_t minute)
    {
        return static_cast<Weekday>((static_cast<std::int64_t>(start) + minute / kMinutesPerDay) % 7);
    }
};

}  // namespace officesim

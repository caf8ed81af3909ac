#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace officesim {

// Arrival/departure archetypes.

enum class ScheduleClass { EarlyBird, TimetableComplier, FlexibleWorker };

inline constexpr std::array<ScheduleClass, 3> kAllScheduleClasses = {
    ScheduleClass::EarlyBird, ScheduleClass::TimetableComplier, ScheduleClass::FlexibleWorker};

std::string_view to_string(ScheduleClass c);
std::optional<ScheduleClass> schedule_class_from_string(std::string_view s);

/// Half-open minute-of-day windows [start, end). When `leave_after_arrival`
/// is set the departure is drawn from (arrival, leave_end] instead.
struct ScheduleWindow {
    int arrival_start = 0;
    int arrival_end = 0;
    int leave_start = 0;
    int leave_end = 0;
    bool leave_after_arrival = false;
};

/// Early birds 05:00-09:00 / 17:00-18:00, timetable compliers 09:00-10:00 /
/// 17:00-18:00, flexible workers 10:00-13:00 / any time after arrival up to
/// 23:00.
constexpr ScheduleWindow schedule_window(ScheduleClass c)
{
    switch (c) {
    case ScheduleClass::EarlyBird:
        return {5 * 60, 9 * 60, 17 * 60, 18 * 60, false};
    case ScheduleClass::TimetableComplier:
        return {9 * 60, 10 * 60, 17 * 60, 18 * 60, false};
    case ScheduleClass::FlexibleWorker:
        return {10 * 60, 13 * 60, 0, 23 * 60, true};
    }
    return {};
}

// Awareness archetypes.

enum class Stereotype { EnvironmentChampion, EnergySaver, RegularUser, BigUser };

inline constexpr std::array<Stereotype, 4> kAllStereotypes = {
    Stereotype::EnvironmentChampion, Stereotype::EnergySaver, Stereotype::RegularUser,
    Stereotype::BigUser};

std::string_view to_string(Stereotype s);
std::optional<Stereotype> stereotype_from_string(std::string_view s);

struct StereotypeParams {
    double awareness_lo = 0.0;
    double awareness_hi = 0.0;
    double p_switch_off = 0.0;
    double p_email = 0.0;

    bool operator==(const StereotypeParams&) const = default;
};

/// Per-stereotype awareness band and action probabilities. The default table
/// holds the default values; scenarios may override entries.
struct StereotypeTable {
    std::array<StereotypeParams, 4> entries = {{
        {95.0, 100.0, 0.95, 0.9},
        {70.0, 94.0, 0.7, 0.6},
        {30.0, 69.0, 0.4, 0.2},
        {0.0, 29.0, 0.2, 0.05},
    }};

    bool operator==(const StereotypeTable&) const = default;

    const StereotypeParams& operator[](Stereotype s) const { return entries[static_cast<int>(s)]; }
    StereotypeParams& operator[](Stereotype s) { return entries[static_cast<int>(s)]; }

    /// The band an awareness value falls in. Bands are keyed by their lower
    /// bound, so gaps between integer-valued ranges (e.g. 94..95) belong to
    /// the band below.
    Stereotype band_of(double awareness) const;
};

inline const StereotypeTable kDefaultStereotypes{};

/// Switch-off probability for an awareness in [0, 100]: 0.95 on [95,100],
/// 0.7 on [70,95), 0.4 on [30,70), 0.2 on [0,30) with the default table.
/// Throws std::invalid_argument outside [0, 100].
double awareness_to_switch_off_prob(double awareness,
                                    const StereotypeTable& table = kDefaultStereotypes);

/// Fractions over schedule classes and stereotypes, sampled independently.
struct PopulationMix {
    std::array<double, 3> schedule = {0.08, 0.53, 0.39};
    std::array<double, 4> awareness = {0.01, 0.08, 0.31, 0.60};

    bool operator==(const PopulationMix&) const = default;
};

}  // namespace officesim

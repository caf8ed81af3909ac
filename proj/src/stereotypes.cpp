#include "officesim/stereotypes.hpp"

#include <stdexcept>
#include <string>

namespace officesim {

namespace {
constexpr std::array<std::string_view, 3> kScheduleNames = {"early_bird", "timetable_complier",
                                                            "flexible_worker"};
constexpr std::array<std::string_view, 4> kStereotypeNames = {"environment_champion", "energy_saver",
                                                              "regular_user", "big_user"};
}  // namespace

std::string_view to_string(ScheduleClass c) { return kScheduleNames[static_cast<int>(c)]; }

std::optional<ScheduleClass> schedule_class_from_string(std::string_view s)
{
    for (int i = 0; i < 3; ++i) {
        if (kScheduleNames[i] == s) {
            return static_cast<ScheduleClass>(i);
        }
    }
    return std::nullopt;
}

std::string_view to_string(Stereotype s) { return kStereotypeNames[static_cast<int>(s)]; }

std::optional<Stereotype> stereotype_from_string(std::string_view s)
{
    for (int i = 0; i < 4; ++i) {
        if (kStereotypeNames[i] == s) {
            return static_cast<Stereotype>(i);
        }
    }
    return std::nullopt;
}

Stereotype StereotypeTable::band_of(double awareness) const
{
    // Highest lower bound not exceeding the awareness wins.
    Stereotype best = Stereotype::BigUser;
    double best_lo = -1.0;
    bool found = false;
    for (auto s : kAllStereotypes) {
        const double lo = (*this)[s].awareness_lo;
        if (awareness >= lo && (!found || lo > best_lo)) {
            best = s;
            best_lo = lo;
            found = true;
        }
    }
    if (!found) {
        // Below every band: the lowest band applies.
        double lowest = (*this)[Stereotype::BigUser].awareness_lo;
        for (auto s : kAllStereotypes) {
            if ((*this)[s].awareness_lo <= lowest) {
                lowest = (*this)[s].awareness_lo;
                best = s;
            }
        }
    }
    return best;
}

double awareness_to_switch_off_prob(double awareness, const StereotypeTable& table)
{
    if (!(awareness >= 0.0 && awareness <= 100.0)) {
        throw std::invalid_argument("awareness must lie in [0, 100], got " + std::to_string(awareness));
    }
    return table[table.band_of(awareness)].p_switch_off;
}

}  // namespace officesim

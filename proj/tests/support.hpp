#pragma once

#include "officesim/building.hpp"
#include "officesim/simulation.hpp"

#include <fmt/format.h>

#include <filesystem>
#include <string>

namespace officesim::testing {

inline std::filesystem::path data_dir()
{
    return OFFICESIM_DATA_DIR;
}

inline const BuildingModel& reference_building()
{
    static const BuildingModel b = load_building_file(data_dir() / "reference_building.yaml");
    return b;
}

/// A corridor with `corridor_lights` lights, one kitchen with one light, and
/// `offices` shared offices of `desks` desks, each with `lights_per_office`
/// lights and one computer per desk.
inline std::string small_building_yaml(int offices, int desks, double base_watts = 1000.0,
                                       int lights_per_office = 2, int corridor_lights = 2)
{
    std::string lights;
    std::string computers;
    std::string rooms;
    int l = 0;
    int c = 0;
    auto take_lights = [&](int n) {
        std::string ids;
        for (int i = 0; i < n; ++i) {
            const auto id = fmt::format("L{}", ++l);
            lights += (lights.empty() ? "" : ", ") + id;
            ids += (ids.empty() ? "" : ", ") + id;
        }
        return ids;
    };
    rooms += fmt::format("  - {{id: hall, kind: corridor, desk_capacity: 0, lights: [{}]}}\n",
                         take_lights(corridor_lights));
    rooms += fmt::format("  - {{id: kitchen, kind: kitchen, desk_capacity: 0, lights: [{}]}}\n", take_lights(1));
    for (int o = 0; o < offices; ++o) {
        std::string cs;
        for (int d = 0; d < desks; ++d) {
            const auto id = fmt::format("C{}", ++c);
            computers += (computers.empty() ? "" : ", ") + id;
            cs += (cs.empty() ? "" : ", ") + id;
        }
        rooms += fmt::format("  - {{id: office-{}, kind: shared_office, desk_capacity: {}, lights: [{}], "
                             "computers: [{}]}}\n",
                             o, desks, take_lights(lights_per_office), cs);
    }
    return fmt::format("base_load_watts: {}\nmax_occupants: {}\nlights: [{}]\ncomputers: [{}]\nrooms:\n{}",
                       base_watts, offices * desks, lights, computers, rooms);
}

inline Scenario small_scenario(int offices, int desks, int days = 1, int occupants = -1)
{
    Scenario s;
    s.building = load_building(small_building_yaml(offices, desks));
    s.occupants = occupants < 0 ? offices * desks : occupants;
    s.horizon_days = days;
    s.replications = 1;
    return s;
}

inline Scenario reference_scenario()
{
    Scenario s;
    s.building = reference_building();
    s.building_path = "reference_building.yaml";
    s.occupants = s.building.max_occupants;
    return s;
}

}  // namespace officesim::testing

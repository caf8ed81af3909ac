#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace officesim {

enum class RoomKind { PrivateOffice, SharedOffice, Corridor, Kitchen, Toilet, Lab, OtherFacility };

inline constexpr std::array<RoomKind, 7> kAllRoomKinds = {
    RoomKind::PrivateOffice, RoomKind::SharedOffice, RoomKind::Corridor, RoomKind::Kitchen,
    RoomKind::Toilet,        RoomKind::Lab,          RoomKind::OtherFacility};

std::string_view to_string(RoomKind kind);
std::optional<RoomKind> room_kind_from_string(std::string_view text);

/// Rooms an occupant may visit from the corridor (toilet, kitchen, lab, ...).
constexpr bool is_facility(RoomKind kind)
{
    return kind == RoomKind::Kitchen || kind == RoomKind::Toilet || kind == RoomKind::Lab ||
           kind == RoomKind::OtherFacility;
}

/// Kinds that can never hold desks.
constexpr bool is_deskless(RoomKind kind)
{
    return kind == RoomKind::Corridor || kind == RoomKind::Kitchen || kind == RoomKind::Toilet;
}

inline constexpr double kDefaultLightWatts = 60.0;

struct ComputerWatts {
    double off = 0.0;
    double standby = 25.0;
    double on = 400.0;

    bool operator==(const ComputerWatts&) const = default;
};

struct LightSpec {
    std::string id;
    double watts_on = kDefaultLightWatts;
    std::size_t room = 0;

    bool operator==(const LightSpec&) const = default;
};

struct ComputerSpec {
    std::string id;
    ComputerWatts watts;
    std::size_t room = 0;

    bool operator==(const ComputerSpec&) const = default;
};

/// A room. Appliances are referenced by index into the owning BuildingModel.
struct Room {
    std::string id;
    RoomKind kind = RoomKind::PrivateOffice;
    int desk_capacity = 0;
    std::vector<std::size_t> lights;
    std::vector<std::size_t> computers;

    bool operator==(const Room&) const = default;
};

/// The physical office floor. Immutable once loaded; replications share it
/// read-only.
struct BuildingModel {
    std::vector<Room> rooms;
    std::vector<LightSpec> lights;
    std::vector<ComputerSpec> computers;
    double base_load_watts = 0.0;
    int max_occupants = 0;

    bool operator==(const BuildingModel&) const = default;

    int total_desk_capacity() const;
    /// The corridor hub, if the building has one.
    std::optional<std::size_t> corridor() const;
    std::vector<std::size_t> facility_rooms() const;
    std::optional<std::size_t> find_room(std::string_view id) const;
    double max_lights_watts() const;
    double max_computers_watts() const;
};

struct BuildingSummary {
    std::size_t rooms = 0;
    std::size_t lights = 0;
    std::size_t computers = 0;
    int desk_capacity = 0;
    int max_occupants = 0;
    double base_load_watts = 0.0;
    std::map<RoomKind, std::size_t> rooms_by_kind;
    std::map<RoomKind, std::size_t> lights_by_kind;
    std::map<RoomKind, std::size_t> computers_by_kind;

    bool operator==(const BuildingSummary&) const = default;
};

/// Parses and validates a building document (YAML). Throws ParseError for
/// malformed text and ValidationError listing every dangling or duplicate id.
BuildingModel load_building(std::string_view text);
BuildingModel load_building_file(const std::filesystem::path& path);

/// Inverse of load_building: load_building(serialize_building(m)) == m.
std::string serialize_building(const BuildingModel& model);

BuildingSummary building_summary(const BuildingModel& model);
std::string format_summary(const BuildingSummary& summary);

}  // namespace officesim

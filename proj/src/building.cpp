#include "officesim/building.hpp"

#include "officesim/errors.hpp"
#include "yaml_util.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace officesim {

namespace {

constexpr std::array<std::string_view, 7> kRoomKindNames = {
    "private_office", "shared_office", "corridor", "kitchen", "toilet", "lab", "other_facility"};

ComputerWatts parse_computer_watts(const YAML::Node& node, std::string_view field)
{
    if (!node.IsSequence() || node.size() != 3) {
        throw ParseError("field '" + std::string(field) + "' must be [off, standby, on] watts",
                         detail::line_of(node));
    }
    ComputerWatts w;
    w.off = detail::as<double>(node[0], field);
    w.standby = detail::as<double>(node[1], field);
    w.on = detail::as<double>(node[2], field);
    return w;
}

struct ApplianceEntry {
    std::string id;
    int line = 0;
};

}  // namespace

std::string_view to_string(RoomKind kind)
{
    return kRoomKindNames[static_cast<std::size_t>(kind)];
}

std::optional<RoomKind> room_kind_from_string(std::string_view text)
{
    for (std::size_t i = 0; i < kRoomKindNames.size(); ++i) {
        if (kRoomKindNames[i] == text) {
            return static_cast<RoomKind>(i);
        }
    }
    return std::nullopt;
}

int BuildingModel::total_desk_capacity() const
{
    int total = 0;
    for (const auto& r : rooms) {
        total += r.desk_capacity;
    }
    return total;
}

std::optional<std::size_t> BuildingModel::corridor() const
{
    for (std::size_t i = 0; i < rooms.size(); ++i) {
        if (rooms[i].kind == RoomKind::Corridor) {
            return i;
        }
    }
    return std::nullopt;
}

std::vector<std::size_t> BuildingModel::facility_rooms() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < rooms.size(); ++i) {
        if (is_facility(rooms[i].kind)) {
            out.push_back(i);
        }
    }
    return out;
}

std::optional<std::size_t> BuildingModel::find_room(std::string_view id) const
{
    for (std::size_t i = 0; i < rooms.size(); ++i) {
        if (rooms[i].id == id) {
            return i;
        }
    }
    return std::nullopt;
}

double BuildingModel::max_lights_watts() const
{
    double w = 0.0;
    for (const auto& l : lights) {
        w += l.watts_on;
    }
    return w;
}

double BuildingModel::max_computers_watts() const
{
    double w = 0.0;
    for (const auto& c : computers) {
        w += c.watts.on;
    }
    return w;
}

BuildingModel load_building(std::string_view text)
{
    const YAML::Node doc = detail::parse_document(text);
    if (!doc || doc.IsNull()) {
        throw ParseError("empty building document");
    }
    detail::expect_map(doc, "building document");
    detail::check_keys(doc,
                       {"base_load_watts", "max_occupants", "light_watts", "computer_watts", "lights",
                        "computers", "rooms"},
                       "building");

    BuildingModel model;
    model.base_load_watts = detail::required<double>(doc, "base_load_watts");
    model.max_occupants = detail::required<int>(doc, "max_occupants");
    const double default_light_watts = detail::optional<double>(doc, "light_watts", kDefaultLightWatts);
    ComputerWatts default_computer_watts;
    if (const auto n = doc["computer_watts"]; n && !n.IsNull()) {
        default_computer_watts = parse_computer_watts(n, "computer_watts");
    }

    std::vector<std::string> problems;
    if (model.base_load_watts < 0.0) {
        problems.push_back("base_load_watts must be >= 0");
    }
    if (model.max_occupants < 0) {
        problems.push_back("max_occupants must be >= 0");
    }

    std::unordered_map<std::string, std::size_t> light_index;
    std::unordered_map<std::string, std::size_t> computer_index;

    if (const auto lights = doc["lights"]; lights && !lights.IsNull()) {
        detail::expect_sequence(lights, "lights");
        for (const auto& item : lights) {
            LightSpec spec;
            spec.watts_on = default_light_watts;
            if (item.IsScalar()) {
                spec.id = detail::as<std::string>(item, "lights[]");
            } else {
                detail::expect_map(item, "light entry");
                detail::check_keys(item, {"id", "watts"}, "light entry");
                spec.id = detail::required<std::string>(item, "id");
                spec.watts_on = detail::optional<double>(item, "watts", default_light_watts);
            }
            if (spec.watts_on < 0.0) {
                problems.push_back(fmt::format("light '{}' has negative watts", spec.id));
            }
            if (!light_index.emplace(spec.id, model.lights.size()).second) {
                problems.push_back(fmt::format("duplicate light id '{}' (line {})", spec.id,
                                               detail::line_of(item)));
                continue;
            }
            model.lights.push_back(std::move(spec));
        }
    }

    if (const auto computers = doc["computers"]; computers && !computers.IsNull()) {
        detail::expect_sequence(computers, "computers");
        for (const auto& item : computers) {
            ComputerSpec spec;
            spec.watts = default_computer_watts;
            if (item.IsScalar()) {
                spec.id = detail::as<std::string>(item, "computers[]");
            } else {
                detail::expect_map(item, "computer entry");
                detail::check_keys(item, {"id", "watts"}, "computer entry");
                spec.id = detail::required<std::string>(item, "id");
                if (const auto w = item["watts"]; w && !w.IsNull()) {
                    spec.watts = parse_computer_watts(w, "watts");
                }
            }
            if (spec.watts.off < 0.0 || spec.watts.standby < 0.0 || spec.watts.on < 0.0) {
                problems.push_back(fmt::format("computer '{}' has negative watts", spec.id));
            }
            if (!computer_index.emplace(spec.id, model.computers.size()).second) {
                problems.push_back(fmt::format("duplicate computer id '{}' (line {})", spec.id,
                                               detail::line_of(item)));
                continue;
            }
            model.computers.push_back(std::move(spec));
        }
    }

    std::vector<int> light_refs(model.lights.size(), 0);
    std::vector<int> computer_refs(model.computers.size(), 0);
    std::unordered_map<std::string, int> room_ids;
    int corridors = 0;

    if (const auto rooms = doc["rooms"]; rooms && !rooms.IsNull()) {
        detail::expect_sequence(rooms, "rooms");
        for (const auto& item : rooms) {
            detail::expect_map(item, "room entry");
            detail::check_keys(item, {"id", "kind", "desk_capacity", "lights", "computers"},
                               "room entry");
            Room room;
            room.id = detail::required<std::string>(item, "id");
            const auto kind_text = detail::required<std::string>(item, "kind");
            const auto kind = room_kind_from_string(kind_text);
            if (!kind) {
                throw ParseError("room '" + room.id + "': unknown kind '" + kind_text + "'",
                                 detail::line_of(item["kind"]));
            }
            room.kind = *kind;
            room.desk_capacity = detail::optional<int>(item, "desk_capacity", 0);

            if (!room_ids.emplace(room.id, detail::line_of(item)).second) {
                problems.push_back(fmt::format("duplicate room id '{}' (line {})", room.id,
                                               detail::line_of(item)));
            }
            if (room.desk_capacity < 0) {
                problems.push_back(fmt::format("room '{}': desk_capacity must be >= 0", room.id));
            }
            if (is_deskless(room.kind) && room.desk_capacity != 0) {
                problems.push_back(fmt::format("room '{}': a {} cannot hold desks", room.id,
                                               to_string(room.kind)));
            }
            if (room.kind == RoomKind::Corridor) {
                ++corridors;
            }

            const std::size_t room_index = model.rooms.size();
            if (const auto refs = item["lights"]; refs && !refs.IsNull()) {
                detail::expect_sequence(refs, "room lights");
                for (const auto& ref : refs) {
                    const auto id = detail::as<std::string>(ref, "lights[]");
                    const auto it = light_index.find(id);
                    if (it == light_index.end()) {
                        problems.push_back(fmt::format("room '{}' references undeclared light '{}'",
                                                       room.id, id));
                        continue;
                    }
                    if (light_refs[it->second]++ == 0) {
                        model.lights[it->second].room = room_index;
                        room.lights.push_back(it->second);
                    }
                }
            }
            if (const auto refs = item["computers"]; refs && !refs.IsNull()) {
                detail::expect_sequence(refs, "room computers");
                for (const auto& ref : refs) {
                    const auto id = detail::as<std::string>(ref, "computers[]");
                    const auto it = computer_index.find(id);
                    if (it == computer_index.end()) {
                        problems.push_back(fmt::format(
                            "room '{}' references undeclared computer '{}'", room.id, id));
                        continue;
                    }
                    if (computer_refs[it->second]++ == 0) {
                        model.computers[it->second].room = room_index;
                        room.computers.push_back(it->second);
                    }
                }
            }
            model.rooms.push_back(std::move(room));
        }
    }

    if (corridors > 1) {
        problems.push_back(fmt::format("building has {} corridors; exactly one hub is allowed",
                                       corridors));
    }
    for (std::size_t i = 0; i < model.lights.size(); ++i) {
        if (light_refs[i] == 0) {
            problems.push_back(fmt::format("light '{}' is not placed in any room", model.lights[i].id));
        } else if (light_refs[i] > 1) {
            problems.push_back(fmt::format("light '{}' is referenced by {} rooms", model.lights[i].id,
                                           light_refs[i]));
        }
    }
    for (std::size_t i = 0; i < model.computers.size(); ++i) {
        if (computer_refs[i] == 0) {
            problems.push_back(
                fmt::format("computer '{}' is not placed in any room", model.computers[i].id));
        } else if (computer_refs[i] > 1) {
            problems.push_back(fmt::format("computer '{}' is referenced by {} rooms",
                                           model.computers[i].id, computer_refs[i]));
        }
    }

    if (!problems.empty()) {
        throw ValidationError(std::move(problems));
    }
    return model;
}

BuildingModel load_building_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open building file '" + path.string() + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return load_building(buf.str());
    } catch (const ParseError& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

std::string serialize_building(const BuildingModel& model)
{
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "base_load_watts" << YAML::Value << model.base_load_watts;
    out << YAML::Key << "max_occupants" << YAML::Value << model.max_occupants;
    const ComputerWatts defaults;
    out << YAML::Key << "light_watts" << YAML::Value << kDefaultLightWatts;
    out << YAML::Key << "computer_watts" << YAML::Value << YAML::Flow << YAML::BeginSeq
        << defaults.off << defaults.standby << defaults.on << YAML::EndSeq;

    out << YAML::Key << "lights" << YAML::Value << YAML::BeginSeq;
    for (const auto& l : model.lights) {
        if (l.watts_on == kDefaultLightWatts) {
            out << l.id;
        } else {
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << l.id
                << YAML::Key << "watts" << YAML::Value << l.watts_on << YAML::EndMap;
        }
    }
    out << YAML::EndSeq;

    out << YAML::Key << "computers" << YAML::Value << YAML::BeginSeq;
    for (const auto& c : model.computers) {
        if (c.watts == defaults) {
            out << c.id;
        } else {
            out << YAML::Flow << YAML::BeginMap << YAML::Key << "id" << YAML::Value << c.id
                << YAML::Key << "watts" << YAML::Value << YAML::Flow << YAML::BeginSeq
                << c.watts.off << c.watts.standby << c.watts.on << YAML::EndSeq << YAML::EndMap;
        }
    }
    out << YAML::EndSeq;

    out << YAML::Key << "rooms" << YAML::Value << YAML::BeginSeq;
    for (const auto& r : model.rooms) {
        out << YAML::BeginMap;
        out << YAML::Key << "id" << YAML::Value << r.id;
        out << YAML::Key << "kind" << YAML::Value << std::string(to_string(r.kind));
        out << YAML::Key << "desk_capacity" << YAML::Value << r.desk_capacity;
        out << YAML::Key << "lights" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (auto i : r.lights) {
            out << model.lights[i].id;
        }
        out << YAML::EndSeq;
        out << YAML::Key << "computers" << YAML::Value << YAML::Flow << YAML::BeginSeq;
        for (auto i : r.computers) {
            out << model.computers[i].id;
        }
        out << YAML::EndSeq;
        out << YAML::EndMap;
    }
    out << YAML::EndSeq;
    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

BuildingSummary building_summary(const BuildingModel& model)
{
    BuildingSummary s;
    s.rooms = model.rooms.size();
    s.lights = model.lights.size();
    s.computers = model.computers.size();
    s.desk_capacity = model.total_desk_capacity();
    s.max_occupants = model.max_occupants;
    s.base_load_watts = model.base_load_watts;
    for (auto kind : kAllRoomKinds) {
        s.rooms_by_kind[kind] = 0;
        s.lights_by_kind[kind] = 0;
        s.computers_by_kind[kind] = 0;
    }
    for (const auto& r : model.rooms) {
        s.rooms_by_kind[r.kind] += 1;
        s.lights_by_kind[r.kind] += r.lights.size();
        s.computers_by_kind[r.kind] += r.computers.size();
    }
    return s;
}

std::string format_summary(const BuildingSummary& s)
{
    std::string out;
    out += fmt::format("rooms: {}\n", s.rooms);
    out += fmt::format("lights: {}\n", s.lights);
    out += fmt::format("computers: {}\n", s.computers);
    out += fmt::format("desk_capacity: {}\n", s.desk_capacity);
    out += fmt::format("max_occupants: {}\n", s.max_occupants);
    out += fmt::format("base_load_watts: {}\n", s.base_load_watts);
    for (auto kind : kAllRoomKinds) {
        out += fmt::format("{}: rooms={} lights={} computers={}\n", to_string(kind),
                           s.rooms_by_kind.at(kind), s.lights_by_kind.at(kind),
                           s.computers_by_kind.at(kind));
    }
    return out;
}

}  // namespace officesim

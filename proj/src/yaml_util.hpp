#pragma once

// Small helpers over yaml-cpp that turn conversion failures into ParseError
// with the line and field name attached.

#include "officesim/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <initializer_list>
#include <string>
#include <string_view>

namespace officesim::detail {

inline int line_of(const YAML::Node& node)
{
    const auto mark = node.Mark();
    return mark.line >= 0 ? mark.line + 1 : 0;
}

inline YAML::Node parse_document(std::string_view text)
{
    try {
        return YAML::Load(std::string(text));
    } catch (const YAML::ParserException& e) {
        throw ParseError(e.msg, e.mark.line + 1);
    }
}

template <typename T>
T as(const YAML::Node& node, std::string_view field)
{
    try {
        return node.as<T>();
    } catch (const YAML::Exception&) {
        throw ParseError("field '" + std::string(field) + "' has the wrong type", line_of(node));
    }
}

template <typename T>
T required(const YAML::Node& map, std::string_view field)
{
    const auto node = map[std::string(field)];
    if (!node) {
        throw ParseError("missing required field '" + std::string(field) + "'", line_of(map));
    }
    return as<T>(node, field);
}

template <typename T>
T optional(const YAML::Node& map, std::string_view field, T fallback)
{
    const auto node = map[std::string(field)];
    if (!node || node.IsNull()) {
        return fallback;
    }
    return as<T>(node, field);
}

inline void expect_map(const YAML::Node& node, std::string_view what)
{
    if (!node.IsMap()) {
        throw ParseError(std::string(what) + " must be a mapping", line_of(node));
    }
}

inline void expect_sequence(const YAML::Node& node, std::string_view what)
{
    if (!node.IsSequence()) {
        throw ParseError(std::string(what) + " must be a list", line_of(node));
    }
}

/// Rejects keys outside `allowed`; catches misspelled optional fields that
/// would otherwise silently fall back to defaults.
inline void check_keys(const YAML::Node& map, std::initializer_list<std::string_view> allowed,
                       std::string_view where)
{
    for (const auto& kv : map) {
        const auto key = kv.first.as<std::string>();
        bool known = false;
        for (auto a : allowed) {
            known = known || key == a;
        }
        if (!known) {
            throw ParseError("unknown field '" + key + "' in " + std::string(where),
                             line_of(kv.first));
        }
    }
}

}  // namespace officesim::detail

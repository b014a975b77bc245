#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "pathrun/action.hpp"
#include "pathrun/errors.hpp"
#include "pathrun/io.hpp"
#include "pathrun/sim.hpp"

namespace pathrun {

// Flat key=value configuration: physics constants, action functional
// selection, and the category name (resolved against a level later, since
// 100% needs the level's item set). '#' starts a comment.
struct FileConfig {
    PhysicsConfig phys;
    ActionFunctional func;
    std::string category = "any%";
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

inline int parse_int(std::string_view key, std::string_view value) {
    int out = 0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw BadValue(std::string(key) + " expects an integer, got '" + std::string(value) + "'");
    return out;
}

inline double parse_real(std::string_view key, std::string_view value) {
    double out = 0.0;
    auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw BadValue(std::string(key) + " expects a number, got '" + std::string(value) + "'");
    return out;
}

}  // namespace detail

inline FileConfig parse_config(const std::string& text) {
    FileConfig cfg;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line(text.data() + pos,
                              (eol == std::string::npos ? text.size() : eol) - pos);
        pos = eol == std::string::npos ? text.size() + 1 : eol + 1;
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos)
            throw BadValue("line " + std::to_string(line_no) + " is not key=value");
        const std::string_view key = detail::trim(line.substr(0, eq));
        const std::string_view value = detail::trim(line.substr(eq + 1));

        if (key == "gravity") cfg.phys.gravity = detail::parse_int(key, value);
        else if (key == "accel") cfg.phys.accel = detail::parse_int(key, value);
        else if (key == "vmax_x") cfg.phys.vmax_x = detail::parse_int(key, value);
        else if (key == "vmax_y") cfg.phys.vmax_y = detail::parse_int(key, value);
        else if (key == "jump_impulse") cfg.phys.jump_impulse = detail::parse_int(key, value);
        else if (key == "subpixels_per_tile") cfg.phys.subpixels_per_tile = detail::parse_int(key, value);
        else if (key == "frame_cap") cfg.phys.frame_cap = detail::parse_int(key, value);
        else if (key == "action.kind") cfg.func.kind = parse_action_kind(std::string(value));
        else if (key == "action.mass") cfg.func.mass = detail::parse_real(key, value);
        else if (key == "action.penalty_weight") cfg.func.penalty_weight = detail::parse_real(key, value);
        else if (key == "action.gravity_potential_coeff")
            cfg.func.gravity_potential_coeff = detail::parse_real(key, value);
        else if (key == "action.potential_midpoint")
            cfg.func.potential_midpoint = detail::parse_int(key, value) != 0;
        else if (key == "category") cfg.category = std::string(value);
        else throw UnknownKey(std::string(key));
    }

    if (cfg.phys.subpixels_per_tile < 1) throw BadValue("subpixels_per_tile must be >= 1");
    if (cfg.phys.frame_cap < 1) throw BadValue("frame_cap must be >= 1");
    if (!(cfg.func.mass > 0.0)) throw BadValue("action.mass must be > 0");
    if (cfg.func.penalty_weight < 0.0) throw BadValue("action.penalty_weight must be >= 0");
    if (cfg.category != "any%" && cfg.category != "100%")
        throw BadValue("category must be any% or 100%");
    return cfg;
}

inline FileConfig load_config_file(const std::string& path) {
    return parse_config(read_text_file(path));
}

}  // namespace pathrun

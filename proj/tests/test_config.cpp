#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include "pathrun/config.hpp"
#include "pathrun/io.hpp"

using namespace pathrun;

TEST_CASE("empty config keeps every default") {
    const FileConfig cfg = parse_config("");
    const PhysicsConfig def;
    REQUIRE(cfg.phys.gravity == def.gravity);
    REQUIRE(cfg.phys.accel == def.accel);
    REQUIRE(cfg.phys.vmax_x == def.vmax_x);
    REQUIRE(cfg.phys.vmax_y == def.vmax_y);
    REQUIRE(cfg.phys.jump_impulse == def.jump_impulse);
    REQUIRE(cfg.phys.subpixels_per_tile == def.subpixels_per_tile);
    REQUIRE(cfg.phys.frame_cap == def.frame_cap);
    REQUIRE(cfg.func.kind == ActionKind::Lagrangian);
    REQUIRE(cfg.func.mass == 1.0);
    REQUIRE(cfg.func.penalty_weight == 100.0);
    REQUIRE(cfg.category == "any%");
}

TEST_CASE("every key is settable, with comments and noise tolerated") {
    const std::string text =
        "# physics overrides\n"
        "gravity = 2\n"
        "accel=3   # trailing comment\n"
        "\n"
        "vmax_x\t=\t7\n"
        "vmax_y = 9\n"
        "jump_impulse = -12\n"
        "subpixels_per_tile = 32\n"
        "frame_cap = 99\n"
        "action.kind = composite\n"
        "action.mass = 0.5\n"
        "action.penalty_weight = 2.25\n"
        "action.gravity_potential_coeff = 1.5\n"
        "action.potential_midpoint = 1\n"
        "category = 100%\n";
    const FileConfig cfg = parse_config(text);
    REQUIRE(cfg.phys.gravity == 2);
    REQUIRE(cfg.phys.accel == 3);
    REQUIRE(cfg.phys.vmax_x == 7);
    REQUIRE(cfg.phys.vmax_y == 9);
    REQUIRE(cfg.phys.jump_impulse == -12);
    REQUIRE(cfg.phys.subpixels_per_tile == 32);
    REQUIRE(cfg.phys.frame_cap == 99);
    REQUIRE(cfg.func.kind == ActionKind::Composite);
    REQUIRE(cfg.func.mass == 0.5);
    REQUIRE(cfg.func.penalty_weight == 2.25);
    REQUIRE(cfg.func.gravity_potential_coeff == 1.5);
    REQUIRE(cfg.func.potential_midpoint);
    REQUIRE(cfg.category == "100%");
}

TEST_CASE("later assignments win") {
    const FileConfig cfg = parse_config("gravity = 3\ngravity = 5\n");
    REQUIRE(cfg.phys.gravity == 5);
}

TEST_CASE("unknown keys are rejected by name") {
    REQUIRE_THROWS_AS(parse_config("gravty = 1\n"), UnknownKey);
    REQUIRE_THROWS_WITH(parse_config("warp_speed = 9\n"),
                        Catch::Matchers::ContainsSubstring("warp_speed"));
}

TEST_CASE("malformed lines and values are rejected") {
    REQUIRE_THROWS_AS(parse_config("gravity\n"), BadValue);
    REQUIRE_THROWS_WITH(parse_config("just some words\n"),
                        Catch::Matchers::ContainsSubstring("line 1"));
    REQUIRE_THROWS_AS(parse_config("gravity = fast\n"), BadValue);
    REQUIRE_THROWS_AS(parse_config("gravity = 1.5\n"), BadValue);
    REQUIRE_THROWS_AS(parse_config("action.mass = heavy\n"), BadValue);
    REQUIRE_THROWS_AS(parse_config("action.kind = feynman\n"), BadValue);
}

TEST_CASE("range constraints hold after parsing") {
    REQUIRE_THROWS_AS(parse_config("subpixels_per_tile = 0\n"), BadValue);
    REQUIRE_THROWS_AS(parse_config("frame_cap = 0\n"), BadValue);
    REQUIRE_THROWS_AS(parse_config("action.mass = 0\n"), BadValue);
    REQUIRE_THROWS_AS(parse_config("action.mass = -1\n"), BadValue);
    REQUIRE_THROWS_AS(parse_config("action.penalty_weight = -0.5\n"), BadValue);
    REQUIRE_THROWS_AS(parse_config("category = low%\n"), BadValue);
}

TEST_CASE("config files load from disk") {
    const std::string path = "/tmp/pathrun_test_config.cfg";
    write_text_file(path, "frame_cap = 10\ncategory = 100%\n");
    const FileConfig cfg = load_config_file(path);
    REQUIRE(cfg.phys.frame_cap == 10);
    REQUIRE(cfg.category == "100%");
    std::remove(path.c_str());
    REQUIRE_THROWS_AS(load_config_file(path), BadValue);
}

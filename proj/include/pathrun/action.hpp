#pragma once

#include <cstdint>
#include <string>

#include "pathrun/errors.hpp"
#include "pathrun/lattice.hpp"
#include "pathrun/sim.hpp"
#include "pathrun/transition.hpp"

namespace pathrun {

enum class CategoryKind { AnyPercent, HundredPercent };

struct CategoryConstraint {
    CategoryKind kind = CategoryKind::AnyPercent;
    std::uint16_t required_items = 0;  // HundredPercent: every item in the level

    bool operator==(const CategoryConstraint&) const = default;
};

inline CategoryConstraint any_percent() { return {}; }

inline CategoryConstraint hundred_percent(const Level& lvl) {
    return {CategoryKind::HundredPercent,
            static_cast<std::uint16_t>((1u << lvl.item_count()) - 1u)};
}

inline CategoryConstraint parse_category(const std::string& text, const Level& lvl) {
    if (text == "any%") return any_percent();
    if (text == "100%") return hundred_percent(lvl);
    throw BadValue("unknown category '" + text + "' (expected any% or 100%)");
}

inline std::string category_name(const CategoryConstraint& c) {
    return c.kind == CategoryKind::AnyPercent ? "any%" : "100%";
}

// A state satisfies a category when it is in goal contact holding the
// required items. Trajectories satisfy through their completion state.
inline bool state_satisfies(const Level& lvl, const PhysicsConfig& phys, const SimState& s,
                            const CategoryConstraint& c) {
    if (!goal_contact(lvl, phys, s)) return false;
    return (s.items & c.required_items) == c.required_items;
}

inline bool satisfies_category(const Trajectory& traj, const CategoryConstraint& c) {
    if (!traj.completed) return false;
    return (traj.states.back().items & c.required_items) == c.required_items;
}

enum class ActionKind { Lagrangian, CompletionTime, Composite };

// Per-step costs, dimensionless action quanta with dt = 1 frame:
//   Lagrangian:     1/2 * mass * (vx'^2 + vy'^2) - V, with V = coeff * height
//                   at the successor state (midpoint averaging is opt-in).
//   CompletionTime: 1 per frame.
//   Composite:      1 per frame, plus penalty_weight added once per
//                   trajectory when the category is unsatisfied.
struct ActionFunctional {
    ActionKind kind = ActionKind::Lagrangian;
    double mass = 1.0;
    double gravity_potential_coeff = 1.0;  // per subpixel of height; default = physics g
    double penalty_weight = 100.0;
    CategoryConstraint category;
    bool potential_midpoint = false;

    bool operator==(const ActionFunctional&) const = default;
};

inline ActionKind parse_action_kind(const std::string& text) {
    if (text == "lagrangian") return ActionKind::Lagrangian;
    if (text == "completion_time") return ActionKind::CompletionTime;
    if (text == "composite") return ActionKind::Composite;
    throw BadValue("unknown action.kind '" + text + "'");
}

inline std::string action_kind_name(ActionKind k) {
    switch (k) {
        case ActionKind::Lagrangian: return "lagrangian";
        case ActionKind::CompletionTime: return "completion_time";
        default: return "composite";
    }
}

inline double step_action(const SimState& s, const SimState& sp, const ActionFunctional& f,
                          const Level& lvl, const PhysicsConfig& phys = {}) {
    if (f.kind != ActionKind::Lagrangian) return 1.0;
    const double kinetic =
        0.5 * f.mass * (static_cast<double>(sp.vx) * sp.vx + static_cast<double>(sp.vy) * sp.vy);
    double h = height_above_bottom(lvl, phys, sp);
    if (f.potential_midpoint) h = 0.5 * (h + height_above_bottom(lvl, phys, s));
    return kinetic - f.gravity_potential_coeff * h;
}

// Lattice steps carry kinetic action only; there is no height on the walk.
inline double step_action(const LatticeState& s, const LatticeState& sp,
                          const ActionFunctional& f) {
    if (f.kind != ActionKind::Lagrangian) return 1.0;
    const double dx = sp.x - s.x;
    return 0.5 * f.mass * dx * dx;
}

inline double trajectory_action(const Trajectory& traj, const ActionFunctional& f,
                                const Level& lvl, const PhysicsConfig& phys = {}) {
    double total = 0.0;
    for (size_t k = 0; k + 1 < traj.states.size(); ++k)
        total += step_action(traj.states[k], traj.states[k + 1], f, lvl, phys);
    if (f.kind == ActionKind::Composite && !satisfies_category(traj, f.category))
        total += f.penalty_weight;
    return total;
}

// Step-cost and endpoint-penalty functors over a TransitionSystem, shared by
// the search and propagation layers.
inline auto make_step_cost(const PlatformerSystem& ts, const ActionFunctional& f) {
    return [&ts, f](const SimState& s, const SimState& sp) {
        return step_action(s, sp, f, ts.level(), ts.physics());
    };
}

inline auto make_step_cost(const LatticeSystem&, const ActionFunctional& f) {
    return [f](const LatticeState& s, const LatticeState& sp) { return step_action(s, sp, f); };
}

inline double terminal_action(const SimState& s, const ActionFunctional& f, const Level& lvl,
                              const PhysicsConfig& phys = {}) {
    if (f.kind != ActionKind::Composite) return 0.0;
    return state_satisfies(lvl, phys, s, f.category) ? 0.0 : f.penalty_weight;
}

inline auto make_terminal_cost(const PlatformerSystem& ts, const ActionFunctional& f) {
    return [&ts, f](const SimState& s) { return terminal_action(s, f, ts.level(), ts.physics()); };
}

inline auto make_terminal_cost(const LatticeSystem&, const ActionFunctional&) {
    return [](const LatticeState&) { return 0.0; };
}

}  // namespace pathrun

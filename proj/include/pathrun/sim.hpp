#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pathrun/errors.hpp"
#include "pathrun/level.hpp"

namespace pathrun {

// All constants are per-config; these defaults keep exhaustive oracles tractable.
struct PhysicsConfig {
    int gravity = 1;             // subpixels/frame^2, downward
    int accel = 1;               // horizontal subpixels/frame^2 per held direction
    int vmax_x = 4;
    int vmax_y = 8;
    int jump_impulse = -8;       // vy set to this on a grounded jump
    int subpixels_per_tile = 16; // Q
    int frame_cap = 600;
};

enum class Horizontal : unsigned char { Left, Neutral, Right };

struct InputSymbol {
    Horizontal horizontal = Horizontal::Neutral;
    bool jump = false;

    bool operator==(const InputSymbol&) const = default;
};

inline constexpr int kInputAlphabet = 6;

// Canonical label order: L- LJ N- NJ R- RJ. This equals lexicographic order
// of the two-char encoding, so "lowest label" and "lowest encoded string" agree.
inline constexpr int input_label(InputSymbol u) {
    return static_cast<int>(u.horizontal) * 2 + (u.jump ? 1 : 0);
}

inline constexpr InputSymbol input_from_label(int label) {
    return InputSymbol{static_cast<Horizontal>(label / 2), (label % 2) != 0};
}

inline std::string encode_input(InputSymbol u) {
    std::string s(2, '-');
    s[0] = u.horizontal == Horizontal::Left ? 'L' : u.horizontal == Horizontal::Right ? 'R' : 'N';
    s[1] = u.jump ? 'J' : '-';
    return s;
}

inline InputSymbol decode_input(std::string_view s) {
    if (s.size() != 2) throw BadValue("input symbol must be 2 chars: '" + std::string(s) + "'");
    InputSymbol u;
    switch (s[0]) {
        case 'L': u.horizontal = Horizontal::Left; break;
        case 'N': u.horizontal = Horizontal::Neutral; break;
        case 'R': u.horizontal = Horizontal::Right; break;
        default: throw BadValue("bad horizontal char in '" + std::string(s) + "'");
    }
    switch (s[1]) {
        case 'J': u.jump = true; break;
        case '-': u.jump = false; break;
        default: throw BadValue("bad jump char in '" + std::string(s) + "'");
    }
    return u;
}

// Space-separated pair encoding, e.g. "R- R- RJ". Empty vector -> "".
inline std::string encode_inputs(const std::vector<InputSymbol>& inputs) {
    std::string out;
    for (size_t i = 0; i < inputs.size(); ++i) {
        if (i) out.push_back(' ');
        out += encode_input(inputs[i]);
    }
    return out;
}

inline std::vector<InputSymbol> decode_inputs(std::string_view text) {
    std::vector<InputSymbol> out;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && text[i] == ' ') ++i;
        if (i >= text.size()) break;
        size_t j = text.find(' ', i);
        if (j == std::string_view::npos) j = text.size();
        out.push_back(decode_input(text.substr(i, j - i)));
        i = j;
    }
    return out;
}

struct SimState {
    int x = 0;   // avatar box top-left, subpixels
    int y = 0;
    int vx = 0;
    int vy = 0;
    int frame = 0;
    std::uint16_t items = 0;  // bit i = level item i collected
    bool grounded = false;

    bool operator==(const SimState&) const = default;
};

namespace detail {

inline int floor_div(int a, int b) {
    int q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

// Visits every tile the avatar box [x, x+Q) x [y, y+Q) overlaps.
template <class Fn>
inline void for_each_overlapped(const PhysicsConfig& phys, int x, int y, Fn&& fn) {
    const int q = phys.subpixels_per_tile;
    const int tx0 = floor_div(x, q), tx1 = floor_div(x + q - 1, q);
    const int ty0 = floor_div(y, q), ty1 = floor_div(y + q - 1, q);
    for (int ty = ty0; ty <= ty1; ++ty)
        for (int tx = tx0; tx <= tx1; ++tx) fn(tx, ty);
}

inline bool overlaps_solid(const Level& lvl, const PhysicsConfig& phys, int x, int y) {
    bool hit = false;
    for_each_overlapped(phys, x, y, [&](int tx, int ty) { hit = hit || lvl.solid(tx, ty); });
    return hit;
}

}  // namespace detail

inline bool goal_contact(const Level& lvl, const PhysicsConfig& phys, const SimState& s) {
    bool hit = false;
    detail::for_each_overlapped(phys, s.x, s.y,
                                [&](int tx, int ty) { hit = hit || lvl.at(tx, ty) == Tile::Goal; });
    return hit;
}

// True when the box would collide if moved down one subpixel.
inline bool standing_on_solid(const Level& lvl, const PhysicsConfig& phys, int x, int y) {
    return detail::overlaps_solid(lvl, phys, x, y + 1);
}

inline SimState start_state(const Level& lvl, const PhysicsConfig& phys) {
    SimState s;
    s.x = lvl.start_x() * phys.subpixels_per_tile;
    s.y = lvl.start_y() * phys.subpixels_per_tile;
    s.grounded = standing_on_solid(lvl, phys, s.x, s.y);
    return s;
}

// Subpixel distance of the avatar top from its lowest possible position
// (resting on the closed bottom boundary). Zero exactly at the bottom row.
inline int height_above_bottom(const Level& lvl, const PhysicsConfig& phys, const SimState& s) {
    return (lvl.height() - 1) * phys.subpixels_per_tile - s.y;
}

// One frame of the fixed-order integer update:
// (1) horizontal accel, (2) grounded jump sets vy, (3) gravity, (4) clamp,
// (5) x move with snap-to-wall, (6) y move with snap and grounded-iff-landed,
// (7) item pickup, (8) frame increment. Total on valid states.
inline SimState step(const SimState& s, InputSymbol u, const Level& lvl,
                     const PhysicsConfig& phys = {}) {
    const int q = phys.subpixels_per_tile;
    SimState n = s;

    const int dir = u.horizontal == Horizontal::Left ? -1
                  : u.horizontal == Horizontal::Right ? 1 : 0;
    n.vx += phys.accel * dir;
    if (u.jump && n.grounded) n.vy = phys.jump_impulse;
    n.vy += phys.gravity;
    n.vx = std::clamp(n.vx, -phys.vmax_x, phys.vmax_x);
    n.vy = std::clamp(n.vy, -phys.vmax_y, phys.vmax_y);

    n.x += n.vx;
    if (detail::overlaps_solid(lvl, phys, n.x, n.y)) {
        // |vx| < Q, so only the leading column can be newly solid.
        int snap_tx = 0;
        bool found = false;
        detail::for_each_overlapped(phys, n.x, n.y, [&](int tx, int ty) {
            if (!lvl.solid(tx, ty)) return;
            if (!found) { snap_tx = tx; found = true; }
            else if (n.vx > 0) snap_tx = std::min(snap_tx, tx);
            else snap_tx = std::max(snap_tx, tx);
        });
        n.x = n.vx > 0 ? snap_tx * q - q : (snap_tx + 1) * q;
        n.vx = 0;
    }

    n.y += n.vy;
    bool landed = false;
    if (detail::overlaps_solid(lvl, phys, n.x, n.y)) {
        int snap_ty = 0;
        bool found = false;
        detail::for_each_overlapped(phys, n.x, n.y, [&](int tx, int ty) {
            if (!lvl.solid(tx, ty)) return;
            if (!found) { snap_ty = ty; found = true; }
            else if (n.vy > 0) snap_ty = std::min(snap_ty, ty);
            else snap_ty = std::max(snap_ty, ty);
        });
        if (n.vy > 0) {
            n.y = snap_ty * q - q;
            landed = true;
        } else {
            n.y = (snap_ty + 1) * q;
        }
        n.vy = 0;
    }
    n.grounded = landed;

    detail::for_each_overlapped(phys, n.x, n.y, [&](int tx, int ty) {
        if (lvl.at(tx, ty) == Tile::Item) {
            int idx = lvl.item_index(tx, ty);
            n.items = static_cast<std::uint16_t>(n.items | (1u << idx));
        }
    });

    n.frame += 1;
    return n;
}

struct Trajectory {
    std::vector<SimState> states;      // states[0] = start; states[k+1] = step(states[k], inputs[k])
    std::vector<InputSymbol> inputs;   // inputs actually consumed
    bool completed = false;
    int completion_frame = -1;         // frame of first goal contact, -1 if none

    bool operator==(const Trajectory&) const = default;
};

// Pure fold of step from the start state. Stops early at the first Goal
// contact. With require_completion, a cap-length run without goal contact
// throws FrameCapExceeded.
inline Trajectory run(const Level& lvl, const std::vector<InputSymbol>& inputs,
                      const PhysicsConfig& phys = {}, bool require_completion = false) {
    if (static_cast<int>(inputs.size()) > phys.frame_cap)
        throw FrameCapExceeded("input length exceeds frame cap");

    Trajectory traj;
    traj.states.push_back(start_state(lvl, phys));
    if (goal_contact(lvl, phys, traj.states.back())) {
        traj.completed = true;
        traj.completion_frame = 0;
        return traj;
    }
    for (InputSymbol u : inputs) {
        traj.inputs.push_back(u);
        traj.states.push_back(step(traj.states.back(), u, lvl, phys));
        if (goal_contact(lvl, phys, traj.states.back())) {
            traj.completed = true;
            traj.completion_frame = traj.states.back().frame;
            break;
        }
    }
    if (require_completion && !traj.completed)
        throw FrameCapExceeded("goal not reached within frame cap");
    return traj;
}

}  // namespace pathrun

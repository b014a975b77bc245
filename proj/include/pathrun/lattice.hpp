#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "pathrun/errors.hpp"
#include "pathrun/transition.hpp"

namespace pathrun {

struct LatticeState {
    int x = 0;      // cell in [0, W)
    int frame = 0;

    bool operator==(const LatticeState&) const = default;
};

// One-dimensional walk on W cells for T frames: per frame the walker moves
// by -1, 0, or +1 (that label order), never leaving [0, W) and never entering
// a wall cell at its active frame. Walls that block everything are reported
// lazily by consumers as empty amplitude, not here.
class LatticeSystem {
public:
    using State = LatticeState;

    LatticeSystem(int width, int frames, std::set<std::pair<int, int>> walls = {},
                  int start = -1, std::vector<int> goal_cells = {})
        : width_(width),
          frames_(frames),
          walls_(std::move(walls)),
          start_(start < 0 ? width / 2 : start),
          goal_cells_(std::move(goal_cells)) {
        if (width_ < 3) throw BadValue("lattice width must be >= 3");
        if (frames_ < 1) throw BadValue("lattice frame count must be >= 1");
        for (auto [frame, cell] : walls_)
            if (frame < 0 || frame > frames_ || cell < 0 || cell >= width_)
                throw BadValue("wall outside lattice bounds");
        if (start_ < 0 || start_ >= width_) throw BadValue("lattice start outside [0, W)");
    }

    State initial() const { return {start_, 0}; }
    int label_count() const { return 3; }

    bool wall(int frame, int cell) const { return walls_.count({frame, cell}) != 0; }

    // Optional absorbing cells (platformer-goal analogue); empty by default.
    bool absorbing(const State& s) const {
        for (int g : goal_cells_)
            if (s.x == g) return true;
        return false;
    }

    std::vector<Transition<State>> transitions(const State& s) const {
        std::vector<Transition<State>> out;
        if (absorbing(s) || s.frame >= frames_) return out;
        for (int label = 0; label < 3; ++label) {
            const int nx = s.x + (label - 1);  // labels 0,1,2 = dx -1,0,+1
            if (nx < 0 || nx >= width_) continue;
            if (wall(s.frame + 1, nx)) continue;
            out.push_back({label, State{nx, s.frame + 1}});
        }
        return out;
    }

    std::uint64_t encode(const State& s) const {
        return static_cast<std::uint64_t>(s.frame) * width_ + s.x;
    }
    State decode(std::uint64_t id) const {
        return {static_cast<int>(id % width_), static_cast<int>(id / width_)};
    }
    int frame_of(const State& s) const { return s.frame; }
    std::array<int, 2> position(const State& s) const { return {s.x, 0}; }

    int width() const { return width_; }
    int frames() const { return frames_; }

private:
    int width_;
    int frames_;
    std::set<std::pair<int, int>> walls_;
    int start_;
    std::vector<int> goal_cells_;
};

static_assert(TransitionSystem<LatticeSystem>);

inline LatticeSystem lattice_system(int width, int frames,
                                    std::set<std::pair<int, int>> walls = {},
                                    int start = -1) {
    return LatticeSystem(width, frames, std::move(walls), start);
}

}  // namespace pathrun

#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <vector>

#include "pathrun/errors.hpp"
#include "pathrun/sim.hpp"

namespace pathrun {

template <class State>
struct Transition {
    int label;
    State to;
};

// Shared shape for the platformer and the lattice walk. Transitions are
// deterministic per (state, label) and listed in a fixed label order;
// encode is injective on reachable states and decode inverts it exactly.
// Absorbing states (goal contact) have no out-transitions, so every path
// is counted once, at its first arrival.
template <class TS>
concept TransitionSystem = requires(const TS ts, const typename TS::State& s, std::uint64_t id) {
    typename TS::State;
    { ts.initial() } -> std::same_as<typename TS::State>;
    { ts.label_count() } -> std::convertible_to<int>;
    { ts.transitions(s) } -> std::same_as<std::vector<Transition<typename TS::State>>>;
    { ts.absorbing(s) } -> std::same_as<bool>;
    { ts.encode(s) } -> std::same_as<std::uint64_t>;
    { ts.decode(id) } -> std::same_as<typename TS::State>;
    { ts.frame_of(s) } -> std::convertible_to<int>;
    { ts.position(s) } -> std::same_as<std::array<int, 2>>;
};

namespace detail {

inline void check_field(bool ok, const char* what) {
    if (!ok) throw BadValue(std::string("state outside encodable range: ") + what);
}

}  // namespace detail

// Packs a SimState into a u64: x(12) y(12) vx(5) vy(6) grounded(1) items(16)
// frame(12), frame in the high bits so ids sort by frame first. Field widths
// admit levels up to 256x256 tiles, |vx| <= 15, |vy| <= 31, frame <= 4095.
inline std::uint64_t encode_sim_state(const SimState& s) {
    detail::check_field(s.x >= 0 && s.x < (1 << 12), "x");
    detail::check_field(s.y >= 0 && s.y < (1 << 12), "y");
    detail::check_field(s.vx >= -15 && s.vx <= 15, "vx");
    detail::check_field(s.vy >= -31 && s.vy <= 31, "vy");
    detail::check_field(s.frame >= 0 && s.frame < (1 << 12), "frame");
    std::uint64_t id = 0;
    id |= static_cast<std::uint64_t>(s.x);
    id |= static_cast<std::uint64_t>(s.y) << 12;
    id |= static_cast<std::uint64_t>(s.vx + 15) << 24;
    id |= static_cast<std::uint64_t>(s.vy + 31) << 29;
    id |= static_cast<std::uint64_t>(s.grounded ? 1 : 0) << 35;
    id |= static_cast<std::uint64_t>(s.items) << 36;
    id |= static_cast<std::uint64_t>(s.frame) << 52;
    return id;
}

inline SimState decode_sim_state(std::uint64_t id) {
    SimState s;
    s.x = static_cast<int>(id & 0xFFF);
    s.y = static_cast<int>((id >> 12) & 0xFFF);
    s.vx = static_cast<int>((id >> 24) & 0x1F) - 15;
    s.vy = static_cast<int>((id >> 29) & 0x3F) - 31;
    s.grounded = ((id >> 35) & 1) != 0;
    s.items = static_cast<std::uint16_t>((id >> 36) & 0xFFFF);
    s.frame = static_cast<int>((id >> 52) & 0xFFF);
    return s;
}

// The platformer as a transition system: one transition per input symbol,
// in canonical label order, except from goal-contact states (absorbing).
class PlatformerSystem {
public:
    using State = SimState;

    PlatformerSystem(Level lvl, PhysicsConfig phys = {})
        : lvl_(std::move(lvl)), phys_(phys) {}

    State initial() const { return start_state(lvl_, phys_); }
    int label_count() const { return kInputAlphabet; }
    bool absorbing(const State& s) const { return goal_contact(lvl_, phys_, s); }

    std::vector<Transition<State>> transitions(const State& s) const {
        std::vector<Transition<State>> out;
        if (absorbing(s)) return out;
        out.reserve(kInputAlphabet);
        for (int label = 0; label < kInputAlphabet; ++label)
            out.push_back({label, step(s, input_from_label(label), lvl_, phys_)});
        return out;
    }

    std::uint64_t encode(const State& s) const { return encode_sim_state(s); }
    State decode(std::uint64_t id) const { return decode_sim_state(id); }
    int frame_of(const State& s) const { return s.frame; }
    std::array<int, 2> position(const State& s) const { return {s.x, s.y}; }

    const Level& level() const { return lvl_; }
    const PhysicsConfig& physics() const { return phys_; }

private:
    Level lvl_;
    PhysicsConfig phys_;
};

static_assert(TransitionSystem<PlatformerSystem>);

}  // namespace pathrun

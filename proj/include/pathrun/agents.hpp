#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "pathrun/action.hpp"
#include "pathrun/errors.hpp"
#include "pathrun/pathsearch.hpp"
#include "pathrun/rng.hpp"
#include "pathrun/sim.hpp"

namespace pathrun {

enum class AgentKind { Optimal, NoisyOptimal, UniformRandom, Replay };

struct AgentSpec {
    AgentKind kind = AgentKind::Optimal;
    double p = 0.0;                    // NoisyOptimal per-frame error probability
    std::uint64_t seed = 0;
    CategoryConstraint category;
    std::vector<InputSymbol> replay_inputs;
};

inline AgentKind parse_agent_kind(const std::string& text) {
    if (text == "optimal") return AgentKind::Optimal;
    if (text == "noisy") return AgentKind::NoisyOptimal;
    if (text == "random") return AgentKind::UniformRandom;
    if (text == "replay") return AgentKind::Replay;
    throw BadValue("unknown agent kind '" + text + "'");
}

namespace detail {
inline constexpr std::uint64_t kNoiseSalt = 0x6E6F697365ULL;    // error-or-not draw
inline constexpr std::uint64_t kSymbolSalt = 0x73796D626FULL;   // replacement symbol draw
}  // namespace detail

// Per-frame input policy. The policy is a pure function of the state's frame
// and the agent's seed, so a run replays bit-exactly from its record.
class Agent {
public:
    Agent(AgentSpec spec, std::vector<InputSymbol> base_inputs)
        : spec_(std::move(spec)), base_(std::move(base_inputs)) {}

    InputSymbol act(const SimState& s) const {
        const std::uint64_t frame = static_cast<std::uint64_t>(s.frame);
        const InputSymbol base = s.frame < static_cast<int>(base_.size())
                                     ? base_[static_cast<std::size_t>(s.frame)]
                                     : InputSymbol{Horizontal::Neutral, false};
        switch (spec_.kind) {
            case AgentKind::Optimal:
            case AgentKind::Replay:
                return base;
            case AgentKind::UniformRandom:
                return input_from_label(static_cast<int>(
                    uniform_below(spec_.seed, frame, detail::kSymbolSalt, kInputAlphabet)));
            case AgentKind::NoisyOptimal: {
                const double roll =
                    uniform_double(counter_rand(spec_.seed, frame, detail::kNoiseSalt));
                if (roll < spec_.p)
                    return input_from_label(static_cast<int>(
                        uniform_below(spec_.seed, frame, detail::kSymbolSalt, kInputAlphabet)));
                return base;
            }
        }
        return base;
    }

    const AgentSpec& spec() const { return spec_; }
    const std::vector<InputSymbol>& base_inputs() const { return base_; }

private:
    AgentSpec spec_;
    std::vector<InputSymbol> base_;
};

// Optimal and NoisyOptimal replay the min-time witness; Replay plays stored
// inputs; all fall back to Neutral/NoJump past their script.
inline Agent make_agent(const AgentSpec& spec, const Level& lvl, const PhysicsConfig& phys = {}) {
    if (spec.p < 0.0 || spec.p > 1.0) throw BadValue("noise probability outside [0, 1]");
    std::vector<InputSymbol> base;
    if (spec.kind == AgentKind::Optimal || spec.kind == AgentKind::NoisyOptimal)
        base = min_time_path(lvl, spec.category, phys.frame_cap, phys).witness.inputs;
    else if (spec.kind == AgentKind::Replay)
        base = spec.replay_inputs;
    return Agent(spec, base);
}

struct RunRecord {
    std::uint64_t run_index = 0;
    std::uint64_t seed = 0;
    std::string inputs;       // encoded, e.g. "R- R- RJ"
    bool completed = false;
    int frames = 0;
    double action = 0.0;
    bool in_tube = false;     // back-filled by tube statistics

    bool operator==(const RunRecord&) const = default;
};

// One agent-driven run from the start state, stopping at goal contact or the
// frame cap.
inline Trajectory play(const Agent& agent, const Level& lvl, const PhysicsConfig& phys = {}) {
    Trajectory traj;
    traj.states.push_back(start_state(lvl, phys));
    if (goal_contact(lvl, phys, traj.states.back())) {
        traj.completed = true;
        traj.completion_frame = 0;
        return traj;
    }
    while (static_cast<int>(traj.inputs.size()) < phys.frame_cap) {
        const InputSymbol u = agent.act(traj.states.back());
        traj.inputs.push_back(u);
        traj.states.push_back(step(traj.states.back(), u, lvl, phys));
        if (goal_contact(lvl, phys, traj.states.back())) {
            traj.completed = true;
            traj.completion_frame = traj.states.back().frame;
            break;
        }
    }
    return traj;
}

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (requested == 0) {
        if (const char* env = std::getenv("PATHRUN_THREADS")) {
            const int n = std::atoi(env);
            if (n > 0) return n;
        }
        const unsigned hw = std::thread::hardware_concurrency();
        return hw == 0 ? 1 : static_cast<int>(hw);
    }
    return 1;
}

// Batch of N runs; run i plays with seed = run_seed(baseSeed, i) from the
// same start state. Records are emitted in index order and are bit-identical
// for any worker count, since each record is a pure function of its index.
inline std::vector<RunRecord> generate_runs(const AgentSpec& spec, const Level& lvl, int n,
                                            std::uint64_t base_seed,
                                            const PhysicsConfig& phys = {},
                                            const ActionFunctional& f = {}, int threads = 0) {
    if (n < 1) throw BadValue("run count must be >= 1");
    const Agent proto = make_agent(spec, lvl, phys);  // resolves the witness once
    std::vector<RunRecord> records(static_cast<std::size_t>(n));

    auto worker = [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            AgentSpec s = proto.spec();
            s.seed = run_seed(base_seed, static_cast<std::uint64_t>(i));
            Agent agent(s, proto.base_inputs());
            const Trajectory traj = play(agent, lvl, phys);
            RunRecord& r = records[static_cast<std::size_t>(i)];
            r.run_index = static_cast<std::uint64_t>(i);
            r.seed = s.seed;
            r.inputs = encode_inputs(traj.inputs);
            r.completed = traj.completed;
            r.frames = static_cast<int>(traj.inputs.size());
            r.action = trajectory_action(traj, f, lvl, phys);
            r.in_tube = false;
        }
    };

    const int workers = std::min(resolve_threads(threads), n);
    if (workers <= 1) {
        worker(0, n);
    } else {
        std::vector<std::thread> pool;
        const int chunk = (n + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const int begin = w * chunk;
            const int end = std::min(n, begin + chunk);
            if (begin < end) pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }
    return records;
}

}  // namespace pathrun

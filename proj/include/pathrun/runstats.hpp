#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "pathrun/agents.hpp"
#include "pathrun/errors.hpp"
#include "pathrun/propagator.hpp"
#include "pathrun/transition.hpp"

namespace pathrun {

// Distinguished histogram key for runs that never reached the goal.
inline constexpr int kDnfKey = -1;

// Relative frequency per completion frame; DNF runs binned under kDnfKey.
// Counts are integers and each bin divides once, so the bin set is exact.
inline std::map<int, double> completion_histogram(const std::vector<RunRecord>& runs) {
    if (runs.empty()) throw EmptyInput("no runs");
    std::map<int, std::uint64_t> counts;
    for (const RunRecord& r : runs) counts[r.completed ? r.frames : kDnfKey] += 1;
    std::map<int, double> out;
    const double n = static_cast<double>(runs.size());
    for (const auto& [k, c] : counts) out.emplace(k, static_cast<double>(c) / n);
    return out;
}

struct TubeSpec {
    Trajectory reference;
    int radius = 0;  // Chebyshev, subpixels, per frame
};

// A run is in-tube iff it completed and, at every frame up to its completion,
// its position stays within Chebyshev radius of the reference state at that
// frame. Frames past the reference's end compare against the reference's
// final state (a late finisher hovering at the goal still counts). Back-fills
// in_tube on the records and returns in-tube count / total runs.
inline double tube_fraction(std::vector<RunRecord>& runs, const TubeSpec& tube, const Level& lvl,
                            const PhysicsConfig& phys = {}) {
    if (runs.empty()) throw EmptyInput("no runs");
    if (tube.reference.states.empty()) throw EmptyInput("reference trajectory has no states");
    if (tube.radius < 0) throw BadValue("tube radius must be >= 0");

    std::uint64_t in = 0;
    for (RunRecord& r : runs) {
        bool inside = r.completed;
        if (inside) {
            const Trajectory traj = run(lvl, decode_inputs(r.inputs), phys);
            for (std::size_t k = 0; k < traj.states.size() && inside; ++k) {
                const SimState& ref =
                    tube.reference.states[std::min(k, tube.reference.states.size() - 1)];
                const SimState& s = traj.states[k];
                inside = chebyshev({s.x, s.y}, {ref.x, ref.y}) <= tube.radius;
            }
        }
        r.in_tube = inside;
        if (inside) ++in;
    }
    return static_cast<double>(in) / static_cast<double>(runs.size());
}

// Exact grouping by full input string.
inline std::map<std::string, double> trajectory_frequencies(const std::vector<RunRecord>& runs) {
    if (runs.empty()) throw EmptyInput("no runs");
    std::map<std::string, std::uint64_t> counts;
    for (const RunRecord& r : runs) counts[r.inputs] += 1;
    std::map<std::string, double> out;
    const double n = static_cast<double>(runs.size());
    for (const auto& [k, c] : counts) out.emplace(k, static_cast<double>(c) / n);
    return out;
}

// Prefix tree over input strings. Each node's count equals the sum of child
// counts plus the runs terminating there; a node with >= 2 children is a
// branch event (a separation point between distinct run futures).
struct WorldsTree {
    struct Node {
        std::uint64_t count = 0;      // runs passing through or ending here
        std::uint64_t terminal = 0;   // runs ending exactly here
        int depth = 0;
        std::array<std::int32_t, kInputAlphabet> child;  // -1 = absent

        Node() { child.fill(-1); }
    };

    std::vector<Node> nodes;  // nodes[0] = root

    std::uint64_t leaf_count() const {
        std::uint64_t leaves = 0;
        for (const Node& n : nodes)
            if (n.terminal > 0) ++leaves;
        return leaves;
    }

    // Branch events per depth: nodes with at least two children.
    std::map<int, std::uint64_t> branch_events() const {
        std::map<int, std::uint64_t> out;
        for (const Node& n : nodes) {
            int kids = 0;
            for (std::int32_t c : n.child) kids += (c >= 0);
            if (kids >= 2) out[n.depth] += 1;
        }
        return out;
    }

    std::uint64_t branch_event_total() const {
        std::uint64_t total = 0;
        for (const auto& [d, c] : branch_events()) total += c;
        return total;
    }
};

inline WorldsTree worlds_tree(const std::vector<RunRecord>& runs) {
    if (runs.empty()) throw EmptyInput("no runs");
    WorldsTree tree;
    tree.nodes.emplace_back();
    for (const RunRecord& r : runs) {
        const auto inputs = decode_inputs(r.inputs);
        std::int32_t at = 0;
        tree.nodes[0].count += 1;
        for (InputSymbol u : inputs) {
            const int label = input_label(u);
            std::int32_t next = tree.nodes[static_cast<std::size_t>(at)].child[label];
            if (next < 0) {
                next = static_cast<std::int32_t>(tree.nodes.size());
                tree.nodes[static_cast<std::size_t>(at)].child[label] = next;
                tree.nodes.emplace_back();
                tree.nodes.back().depth = tree.nodes[static_cast<std::size_t>(at)].depth + 1;
            }
            tree.nodes[static_cast<std::size_t>(next)].count += 1;
            at = next;
        }
        tree.nodes[static_cast<std::size_t>(at)].terminal += 1;
    }
    return tree;
}

struct HbarFit {
    std::vector<double> grid;
    std::vector<double> divergence;  // KL(empirical || model) per grid point
    double hbar_eff = 0.0;           // grid argmin, ties toward the smaller hbar
    double dnf_fraction = 0.0;       // excluded mass, reported not fitted
};

inline std::vector<double> default_hbar_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 40; ++i) grid.push_back(std::pow(10.0, -2.0 + 4.0 * i / 40.0));
    return grid;
}

// Effective hbar: for each grid value, Born-normalize the model completion
// spectrum, floor every bin in [1, frame_cap] with eps = 1e-9, renormalize,
// and take KL(empirical || model) over completed runs. DNF mass is excluded
// from the divergence and reported separately. frame_cap 0 sizes the model
// to the latest empirical completion.
inline HbarFit fit_hbar(const std::vector<RunRecord>& runs, const Level& lvl,
                        const ActionFunctional& f, const std::vector<double>& grid,
                        const PhysicsConfig& phys = {}, int frame_cap = 0,
                        std::size_t state_budget = kDefaultStateBudget) {
    if (grid.empty()) throw BadValue("hbar grid is empty");
    for (double h : grid)
        if (!(h > 0.0)) throw BadValue("hbar grid values must be > 0");
    if (runs.empty()) throw EmptyInput("no runs");

    std::map<int, std::uint64_t> counts;
    std::uint64_t completed = 0;
    int latest = 0;
    for (const RunRecord& r : runs) {
        if (!r.completed) continue;
        counts[r.frames] += 1;
        ++completed;
        latest = std::max(latest, r.frames);
    }
    if (completed == 0) throw NoCompletedRuns("fit needs at least one completed run");
    if (frame_cap <= 0) frame_cap = latest;
    if (latest > frame_cap)
        throw BadValue("empirical completion at frame " + std::to_string(latest) +
                       " exceeds the model frame cap " + std::to_string(frame_cap));

    std::map<int, double> empirical;
    for (const auto& [t, c] : counts)
        empirical.emplace(t, static_cast<double>(c) / static_cast<double>(completed));

    PlatformerSystem ts(lvl, phys);
    LayeredGraph<SimState> g(ts, make_step_cost(ts, f), frame_cap, state_budget);

    constexpr double kEps = 1e-9;
    HbarFit fit;
    fit.grid = grid;
    fit.dnf_fraction =
        static_cast<double>(runs.size() - completed) / static_cast<double>(runs.size());

    double best_kl = std::numeric_limits<double>::infinity();
    double best_hbar = grid.front();
    for (double hbar : grid) {
        const auto amps = completion_from_layers(g, WeightFunction::feynman(hbar));
        std::map<int, double> born;
        double total = 0.0;
        for (const auto& [t, a] : amps) {
            if (t < 1) continue;
            const double m = std::norm(a);
            born[t] = m;
            total += m;
        }
        // Born-normalize, floor every bin in [1, frame_cap] with eps, renormalize.
        const double denom = 1.0 + kEps * frame_cap;
        double kl = 0.0;
        for (const auto& [t, p] : empirical) {
            auto it = born.find(t);
            const double born_p = (it == born.end() || total == 0.0) ? 0.0 : it->second / total;
            const double q = (born_p + kEps) / denom;
            kl += p * std::log(p / q);
        }
        fit.divergence.push_back(kl);
        if (kl < best_kl || (kl == best_kl && hbar < best_hbar)) {
            best_kl = kl;
            best_hbar = hbar;
        }
    }
    fit.hbar_eff = best_hbar;
    return fit;
}

}  // namespace pathrun

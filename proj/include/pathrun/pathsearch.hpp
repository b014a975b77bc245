#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "pathrun/action.hpp"
#include "pathrun/errors.hpp"
#include "pathrun/layered.hpp"
#include "pathrun/transition.hpp"

namespace pathrun {

template <class State>
struct GenericSearchResult {
    double optimal_value = 0.0;
    std::vector<State> witness_states;
    std::vector<int> witness_labels;
    std::uint64_t optimal_count = 0;            // saturating at 2^64-1
    std::vector<std::vector<int>> co_optimal;   // label sequences, lexicographic order
};

// Platformer-facing result; witnesses replay through run().
struct SearchResult {
    double optimal_value = 0.0;
    Trajectory witness;
    std::uint64_t optimal_count = 0;
    std::vector<Trajectory> co_optimal;
};

namespace detail {

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
    return r;
}

// Layered DP minimizing accumulated step cost from the initial state.
// Handles negative costs (the graph is a time-layered DAG). Candidate
// endpoints are predicate-passing states that are absorbing or sit at the
// final layer; a terminal cost (constraint penalty) is added there.
//
// Count soundness: every equality test recomputes dist[src] + edge.cost, the
// exact expression whose minimum dist[dst] stores, so tie detection is exact
// for any float costs. Parents hold the (label, source-id)-least optimal
// in-edge, giving a deterministic witness.
template <TransitionSystem TS, class StepCost, class TerminalCost, class Pred>
GenericSearchResult<typename TS::State> layered_optimum(
    const TS& ts, StepCost cost, TerminalCost terminal, int frames, Pred pred, bool enumerate,
    std::uint64_t cap, std::size_t state_budget) {
    using State = typename TS::State;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    LayeredGraph<State> g(ts, cost, frames, state_budget);

    std::vector<std::vector<double>> dist(g.layer_count());
    std::vector<std::vector<std::uint64_t>> cnt(g.layer_count());
    std::vector<std::vector<std::int32_t>> parent(g.layer_count());  // edge index in prev layer
    for (std::size_t t = 0; t < g.layer_count(); ++t) {
        dist[t].assign(g.layer(t).ids.size(), kInf);
        cnt[t].assign(g.layer(t).ids.size(), 0);
        parent[t].assign(g.layer(t).ids.size(), -1);
    }
    dist[0][0] = 0.0;
    cnt[0][0] = 1;

    for (int t = 0; t < g.frames(); ++t) {
        const auto& layer = g.layer(t);
        for (std::size_t ei = 0; ei < layer.edges.size(); ++ei) {
            const auto& e = layer.edges[ei];
            if (dist[t][e.src] == kInf) continue;
            const double cand = dist[t][e.src] + e.cost;
            auto& d = dist[t + 1][e.dst];
            if (cand < d) {
                d = cand;
                cnt[t + 1][e.dst] = cnt[t][e.src];
                parent[t + 1][e.dst] = static_cast<std::int32_t>(ei);
            } else if (cand == d) {
                cnt[t + 1][e.dst] = sat_add(cnt[t + 1][e.dst], cnt[t][e.src]);
                const auto& old = layer.edges[static_cast<std::size_t>(parent[t + 1][e.dst])];
                if (std::make_pair(e.label, layer.ids[e.src]) <
                    std::make_pair(old.label, layer.ids[old.src]))
                    parent[t + 1][e.dst] = static_cast<std::int32_t>(ei);
            }
        }
    }

    struct Candidate {
        double total;
        int t;
        std::int32_t node;
    };
    std::vector<Candidate> cands;
    for (int t = 0; t <= g.frames(); ++t) {
        const auto& layer = g.layer(t);
        for (std::int32_t i = 0; i < static_cast<std::int32_t>(layer.ids.size()); ++i) {
            if (dist[t][i] == kInf) continue;
            if (!layer.absorbing[i] && t != g.frames()) continue;
            if (!pred(layer.states[i])) continue;
            cands.push_back({dist[t][i] + terminal(layer.states[i]), t, i});
        }
    }
    if (cands.empty()) throw Unreachable("no admissible endpoint within " +
                                         std::to_string(frames) + " frames");

    auto better = [&](const Candidate& a, const Candidate& b) {
        if (a.total != b.total) return a.total < b.total;
        if (a.t != b.t) return a.t < b.t;
        return g.layer(a.t).ids[a.node] < g.layer(b.t).ids[b.node];
    };
    const Candidate best = *std::min_element(
        cands.begin(), cands.end(), [&](const Candidate& a, const Candidate& b) { return better(a, b); });

    GenericSearchResult<State> res;
    res.optimal_value = best.total;
    for (const Candidate& c : cands)
        if (c.total == best.total) res.optimal_count = sat_add(res.optimal_count, cnt[c.t][c.node]);

    // Witness by parent links.
    {
        int t = best.t;
        std::int32_t i = best.node;
        std::vector<int> labels;
        std::vector<State> states;
        states.push_back(g.layer(t).states[i]);
        while (t > 0) {
            const auto& e = g.layer(t - 1).edges[static_cast<std::size_t>(parent[t][i])];
            labels.push_back(e.label);
            i = e.src;
            --t;
            states.push_back(g.layer(t).states[i]);
        }
        std::reverse(labels.begin(), labels.end());
        std::reverse(states.begin(), states.end());
        res.witness_labels = std::move(labels);
        res.witness_states = std::move(states);
    }

    if (enumerate) {
        // Backward DFS over optimal in-edges, one endpoint at a time in
        // (frame, id) order; emitted sequences are sorted lexicographically.
        std::vector<Candidate> opt;
        for (const Candidate& c : cands)
            if (c.total == best.total) opt.push_back(c);
        std::sort(opt.begin(), opt.end(), [&](const Candidate& a, const Candidate& b) {
            if (a.t != b.t) return a.t < b.t;
            return g.layer(a.t).ids[a.node] < g.layer(b.t).ids[b.node];
        });

        // Per-layer in-edge indices sorted by (dst, label, src id).
        std::vector<std::vector<std::int32_t>> order(static_cast<std::size_t>(g.frames()));
        for (int t = 0; t < g.frames(); ++t) {
            const auto& edges = g.layer(t).edges;
            auto& ord = order[static_cast<std::size_t>(t)];
            ord.resize(edges.size());
            for (std::size_t k = 0; k < edges.size(); ++k) ord[k] = static_cast<std::int32_t>(k);
            std::sort(ord.begin(), ord.end(), [&](std::int32_t x, std::int32_t y) {
                const auto& ex = edges[static_cast<std::size_t>(x)];
                const auto& ey = edges[static_cast<std::size_t>(y)];
                if (ex.dst != ey.dst) return ex.dst < ey.dst;
                if (ex.label != ey.label) return ex.label < ey.label;
                return g.layer(t).ids[ex.src] < g.layer(t).ids[ey.src];
            });
        }

        std::vector<int> stack;
        bool capped = false;
        auto dfs = [&](auto&& self, int t, std::int32_t node) -> void {
            if (capped) return;
            if (t == 0) {
                std::vector<int> seq(stack.rbegin(), stack.rend());
                res.co_optimal.push_back(std::move(seq));
                if (res.co_optimal.size() >= cap) capped = true;
                return;
            }
            const auto& edges = g.layer(t - 1).edges;
            for (std::int32_t k : order[static_cast<std::size_t>(t - 1)]) {
                const auto& e = edges[static_cast<std::size_t>(k)];
                if (e.dst != node) continue;
                if (dist[t - 1][e.src] == kInf) continue;
                if (dist[t - 1][e.src] + e.cost != dist[t][node]) continue;
                stack.push_back(e.label);
                self(self, t - 1, e.src);
                stack.pop_back();
                if (capped) return;
            }
        };
        for (const Candidate& c : opt) {
            dfs(dfs, c.t, c.node);
            if (capped) break;
        }
        std::sort(res.co_optimal.begin(), res.co_optimal.end());
        if (!res.co_optimal.empty() && res.optimal_count <= cap) {
            res.witness_labels = res.co_optimal.front();
            // Rebuild witness states along the lexicographically least sequence.
            std::vector<State> states{ts.initial()};
            for (int label : res.witness_labels) {
                for (const auto& tr : ts.transitions(states.back()))
                    if (tr.label == label) {
                        states.push_back(tr.to);
                        break;
                    }
            }
            res.witness_states = std::move(states);
        }
    }
    return res;
}

}  // namespace detail

// Least-action trajectory over the time-layered DAG. Ties in the endpoint
// choice break toward the earliest frame, then the lowest state id; ties in
// the witness's parent links break toward the lowest label, then lowest
// source id.
template <TransitionSystem TS, class Pred>
GenericSearchResult<typename TS::State> least_action_path(
    const TS& ts, const ActionFunctional& f, int frames, Pred pred,
    std::size_t state_budget = kDefaultStateBudget) {
    if (frames < 1) throw BadValue("search horizon must be >= 1");
    return detail::layered_optimum(ts, make_step_cost(ts, f), make_terminal_cost(ts, f), frames,
                                   pred, /*enumerate=*/false, /*cap=*/0, state_budget);
}

// least_action_path plus materialized co-optimal label sequences (up to cap,
// lexicographic order; the witness becomes the least sequence when complete).
template <TransitionSystem TS, class Pred>
GenericSearchResult<typename TS::State> enumerate_optimal(
    const TS& ts, const ActionFunctional& f, int frames, Pred pred, std::uint64_t cap,
    std::size_t state_budget = kDefaultStateBudget) {
    if (frames < 1) throw BadValue("search horizon must be >= 1");
    if (cap == 0) throw BadValue("witness cap must be >= 1");
    return detail::layered_optimum(ts, make_step_cost(ts, f), make_terminal_cost(ts, f), frames,
                                   pred, /*enumerate=*/true, cap, state_budget);
}

namespace detail {

inline Trajectory witness_trajectory(const Level& lvl, const PhysicsConfig& phys,
                                     const std::vector<int>& labels) {
    std::vector<InputSymbol> inputs;
    inputs.reserve(labels.size());
    for (int l : labels) inputs.push_back(input_from_label(l));
    return run(lvl, inputs, phys);
}

}  // namespace detail

// Earliest frame at which the category is satisfied, via breadth-first layer
// expansion, then the layered DP at that horizon for the witness and the
// count of distinct minimal input sequences.
inline SearchResult min_time_path(const Level& lvl, const CategoryConstraint& c, int frame_cap,
                                  const PhysicsConfig& phys = {},
                                  std::size_t state_budget = kDefaultStateBudget) {
    if (frame_cap < 1) throw BadValue("frame cap must be >= 1");
    PlatformerSystem ts(lvl, phys);
    auto satisfied = [&](const SimState& s) { return state_satisfies(lvl, phys, s, c); };

    int t_star = -1;
    {
        std::set<std::uint64_t> layer{ts.encode(ts.initial())};
        if (satisfied(ts.initial())) t_star = 0;
        for (int t = 1; t_star < 0 && t <= frame_cap; ++t) {
            std::set<std::uint64_t> next;
            for (std::uint64_t id : layer) {
                const SimState s = ts.decode(id);
                for (const auto& tr : ts.transitions(s)) next.insert(ts.encode(tr.to));
            }
            if (next.size() > state_budget)
                throw StateBudgetExceeded("frame " + std::to_string(t) + " holds " +
                                          std::to_string(next.size()) + " states");
            for (std::uint64_t id : next)
                if (satisfied(ts.decode(id))) {
                    t_star = t;
                    break;
                }
            layer = std::move(next);
            if (layer.empty()) break;
        }
    }
    if (t_star < 0)
        throw Unreachable("category not satisfiable within " + std::to_string(frame_cap) +
                          " frames");
    if (t_star == 0) {
        SearchResult res;
        res.optimal_value = 0.0;
        res.witness = run(lvl, {}, phys);
        res.optimal_count = 1;
        return res;
    }

    ActionFunctional time_f;
    time_f.kind = ActionKind::CompletionTime;
    const auto generic =
        detail::layered_optimum(ts, make_step_cost(ts, time_f), make_terminal_cost(ts, time_f),
                                t_star, satisfied, /*enumerate=*/false, 0, state_budget);

    SearchResult res;
    res.optimal_value = generic.optimal_value;
    res.optimal_count = generic.optimal_count;
    res.witness = detail::witness_trajectory(lvl, phys, generic.witness_labels);
    return res;
}

// Platformer wrappers returning replayable trajectories.
inline SearchResult least_action_trajectory(const Level& lvl, const ActionFunctional& f,
                                            int frames, const CategoryConstraint& c,
                                            const PhysicsConfig& phys = {},
                                            std::size_t state_budget = kDefaultStateBudget) {
    PlatformerSystem ts(lvl, phys);
    auto satisfied = [&](const SimState& s) { return state_satisfies(lvl, phys, s, c); };
    const auto generic = least_action_path(ts, f, frames, satisfied, state_budget);
    SearchResult res;
    res.optimal_value = generic.optimal_value;
    res.optimal_count = generic.optimal_count;
    res.witness = detail::witness_trajectory(lvl, phys, generic.witness_labels);
    return res;
}

inline SearchResult enumerate_optimal_trajectories(const Level& lvl, const ActionFunctional& f,
                                                   int frames, const CategoryConstraint& c,
                                                   std::uint64_t cap,
                                                   const PhysicsConfig& phys = {},
                                                   std::size_t state_budget = kDefaultStateBudget) {
    PlatformerSystem ts(lvl, phys);
    auto satisfied = [&](const SimState& s) { return state_satisfies(lvl, phys, s, c); };
    const auto generic = enumerate_optimal(ts, f, frames, satisfied, cap, state_budget);
    SearchResult res;
    res.optimal_value = generic.optimal_value;
    res.optimal_count = generic.optimal_count;
    res.witness = detail::witness_trajectory(lvl, phys, generic.witness_labels);
    for (const auto& seq : generic.co_optimal)
        res.co_optimal.push_back(detail::witness_trajectory(lvl, phys, seq));
    return res;
}

}  // namespace pathrun

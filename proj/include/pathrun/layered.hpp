#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "pathrun/errors.hpp"
#include "pathrun/transition.hpp"

namespace pathrun {

inline constexpr std::size_t kDefaultStateBudget = 1'000'000;

// Frame-by-frame expansion of the reachable graph under a step-cost functor.
// Node ids are sorted ascending within each layer and edges are listed in
// (source index, label) order, so every consumer that walks layers in order
// performs floating-point accumulation in one fixed order. Edge costs are
// weight-free: the same built graph serves every hbar.
template <class State>
class LayeredGraph {
public:
    struct Edge {
        std::int32_t src;   // index into layer t
        std::int32_t dst;   // index into layer t+1
        std::int16_t label;
        double cost;
    };

    struct Layer {
        std::vector<std::uint64_t> ids;   // ascending
        std::vector<State> states;        // decoded, same order
        std::vector<char> absorbing;
        std::vector<Edge> edges;          // into the next layer
    };

    template <class TS, class StepCost>
    LayeredGraph(const TS& ts, StepCost cost, int frames,
                 std::size_t state_budget = kDefaultStateBudget) {
        layers_.resize(static_cast<std::size_t>(frames) + 1);
        Layer& first = layers_[0];
        const State init = ts.initial();
        first.ids.push_back(ts.encode(init));
        first.states.push_back(init);
        first.absorbing.push_back(ts.absorbing(init) ? 1 : 0);

        for (int t = 0; t < frames; ++t) {
            Layer& cur = layers_[t];
            Layer& nxt = layers_[t + 1];
            std::map<std::uint64_t, std::int32_t> index;  // sorted -> final indices
            struct Pending {
                std::int32_t src;
                std::int16_t label;
                std::uint64_t dst_id;
                double cost;
            };
            std::vector<Pending> pending;
            for (std::int32_t i = 0; i < static_cast<std::int32_t>(cur.states.size()); ++i) {
                if (cur.absorbing[i]) continue;
                for (const auto& tr : ts.transitions(cur.states[i])) {
                    const std::uint64_t id = ts.encode(tr.to);
                    index.emplace(id, 0);
                    pending.push_back(
                        {i, static_cast<std::int16_t>(tr.label), id, cost(cur.states[i], tr.to)});
                }
            }
            if (index.size() > state_budget) {
                std::ostringstream os;
                os << "frame " << (t + 1) << " holds " << index.size()
                   << " states, budget " << state_budget;
                throw StateBudgetExceeded(os.str());
            }
            std::int32_t next_index = 0;
            for (auto& [id, idx] : index) {
                idx = next_index++;
                nxt.ids.push_back(id);
                const State st = ts.decode(id);
                nxt.states.push_back(st);
                nxt.absorbing.push_back(ts.absorbing(st) ? 1 : 0);
            }
            cur.edges.reserve(pending.size());
            for (const Pending& p : pending)
                cur.edges.push_back({p.src, index.at(p.dst_id), p.label, p.cost});
        }
    }

    int frames() const { return static_cast<int>(layers_.size()) - 1; }
    const Layer& layer(int t) const { return layers_[static_cast<std::size_t>(t)]; }
    std::size_t layer_count() const { return layers_.size(); }

private:
    std::vector<Layer> layers_;
};

}  // namespace pathrun

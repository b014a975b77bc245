#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pathrun/action.hpp"
#include "pathrun/errors.hpp"
#include "pathrun/lattice.hpp"
#include "pathrun/layered.hpp"
#include "pathrun/transition.hpp"

namespace pathrun {

using Amplitude = std::complex<double>;

struct AmplitudeField {
    int frame = 0;
    std::map<std::uint64_t, Amplitude> entries;  // ascending state id
};

// Weight of one path as a function of its action. Feynman: exp(iS/hbar);
// Boltzmann: exp(-S/hbar), real, kept for diagnostics; Custom: caller-supplied.
class WeightFunction {
public:
    enum class Kind { Feynman, Boltzmann, Custom };

    static WeightFunction feynman(double hbar) { return WeightFunction(Kind::Feynman, hbar); }
    static WeightFunction boltzmann(double hbar) { return WeightFunction(Kind::Boltzmann, hbar); }
    static WeightFunction custom(std::function<Amplitude(double)> fn) {
        WeightFunction w(Kind::Custom, 1.0);
        w.custom_ = std::move(fn);
        return w;
    }

    Amplitude operator()(double action) const {
        switch (kind_) {
            case Kind::Feynman: return std::polar(1.0, action / hbar_);
            case Kind::Boltzmann: return Amplitude(std::exp(-action / hbar_), 0.0);
            default: return custom_(action);
        }
    }

    Kind kind() const { return kind_; }
    double hbar() const { return hbar_; }

private:
    WeightFunction(Kind kind, double hbar) : kind_(kind), hbar_(hbar) {
        if (kind_ != Kind::Custom && !(hbar_ > 0.0)) throw BadValue("hbar must be > 0");
    }

    Kind kind_;
    double hbar_;
    std::function<Amplitude(double)> custom_;
};

inline constexpr std::uint64_t kDefaultPathCap = 1'000'000;

// Depth-first enumeration, in label order, of every path of exactly t_f steps
// whose endpoint satisfies the predicate. Paths absorbed before t_f cannot be
// extended and are not reported.
template <TransitionSystem TS, class Pred>
std::vector<std::vector<int>> enumerate_paths(const TS& ts, int t_f, Pred final_predicate,
                                              std::uint64_t cap = kDefaultPathCap) {
    std::vector<std::vector<int>> out;
    std::vector<int> labels;
    auto dfs = [&](auto&& self, const typename TS::State& s, int depth) -> void {
        if (depth == t_f) {
            if (final_predicate(s)) {
                if (out.size() >= cap) throw PathCapExceeded("more than " + std::to_string(cap) + " paths");
                out.push_back(labels);
            }
            return;
        }
        for (const auto& tr : ts.transitions(s)) {
            labels.push_back(tr.label);
            self(self, tr.to, depth + 1);
            labels.pop_back();
        }
    };
    dfs(dfs, ts.initial(), 0);
    return out;
}

// Sum of w(S(path)) over every t_f-step path from x_i to x_f, accumulated in
// enumeration order. The independent oracle for propagate().
template <TransitionSystem TS>
Amplitude amplitude_bruteforce(const TS& ts, const typename TS::State& x_i,
                               const typename TS::State& x_f, int t_f, const WeightFunction& w,
                               const ActionFunctional& f, std::uint64_t cap = kDefaultPathCap) {
    const std::uint64_t target = ts.encode(x_f);
    auto cost = make_step_cost(ts, f);
    Amplitude total(0.0, 0.0);
    std::uint64_t seen = 0;
    auto dfs = [&](auto&& self, const typename TS::State& s, int depth, double action) -> void {
        if (depth == t_f) {
            if (++seen > cap) throw PathCapExceeded("more than " + std::to_string(cap) + " paths");
            if (ts.encode(s) == target) total += w(action);
            return;
        }
        for (const auto& tr : ts.transitions(s)) self(self, tr.to, depth + 1, action + cost(s, tr.to));
    };
    dfs(dfs, x_i, 0, 0.0);
    return total;
}

namespace detail {

template <class State>
std::vector<AmplitudeField> evaluate_layers(const LayeredGraph<State>& g,
                                            const WeightFunction& w) {
    std::vector<AmplitudeField> fields;
    fields.reserve(g.layer_count());
    std::vector<Amplitude> cur{Amplitude(1.0, 0.0)};
    for (int t = 0;; ++t) {
        const auto& layer = g.layer(t);
        AmplitudeField field;
        field.frame = t;
        for (std::size_t i = 0; i < layer.ids.size(); ++i) field.entries.emplace(layer.ids[i], cur[i]);
        fields.push_back(std::move(field));
        if (t == g.frames()) break;
        std::vector<Amplitude> nxt(g.layer(t + 1).ids.size(), Amplitude(0.0, 0.0));
        for (const auto& e : layer.edges) nxt[e.dst] += cur[e.src] * w(e.cost);
        cur = std::move(nxt);
    }
    return fields;
}

}  // namespace detail

// Transfer-matrix recurrence K_{t+1}(s') = sum_s w(step_action(s, s')) K_t(s),
// summed in ascending source-id order within each frame so the output is
// bit-stable. field[0] is a unit amplitude at the initial state. Absorbing
// states keep their arrival amplitude and feed nothing forward.
template <TransitionSystem TS>
std::vector<AmplitudeField> propagate(const TS& ts, const WeightFunction& w,
                                      const ActionFunctional& f, int frames,
                                      std::size_t state_budget = kDefaultStateBudget) {
    LayeredGraph<typename TS::State> g(ts, make_step_cost(ts, f), frames, state_budget);
    return detail::evaluate_layers(g, w);
}

inline std::map<std::uint64_t, double> born_distribution(const AmplitudeField& field) {
    double total = 0.0;
    for (const auto& [id, amp] : field.entries) total += std::norm(amp);
    if (total == 0.0) throw ZeroField("all amplitudes are zero at frame " +
                                      std::to_string(field.frame));
    std::map<std::uint64_t, double> out;
    for (const auto& [id, amp] : field.entries) out.emplace(id, std::norm(amp) / total);
    return out;
}

// Amplitude first absorbed into the goal per frame. Frames with no arrivals
// are absent; an unreachable goal yields an empty map.
template <class State>
std::map<int, Amplitude> completion_from_layers(const LayeredGraph<State>& g,
                                                const WeightFunction& w) {
    std::map<int, Amplitude> out;
    std::vector<Amplitude> cur{Amplitude(1.0, 0.0)};
    for (int t = 0;; ++t) {
        const auto& layer = g.layer(t);
        Amplitude absorbed(0.0, 0.0);
        bool any = false;
        for (std::size_t i = 0; i < layer.ids.size(); ++i) {
            if (layer.absorbing[i]) {
                absorbed += cur[i];
                any = true;
            }
        }
        if (any) out.emplace(t, absorbed);
        if (t == g.frames()) break;
        std::vector<Amplitude> nxt(g.layer(t + 1).ids.size(), Amplitude(0.0, 0.0));
        for (const auto& e : layer.edges) nxt[e.dst] += cur[e.src] * w(e.cost);
        cur = std::move(nxt);
    }
    return out;
}

template <TransitionSystem TS>
std::map<int, Amplitude> completion_amplitude(const TS& ts, const WeightFunction& w,
                                              const ActionFunctional& f, int frame_cap,
                                              std::size_t state_budget = kDefaultStateBudget) {
    if (frame_cap < 1) throw BadValue("frame cap must be >= 1");
    LayeredGraph<typename TS::State> g(ts, make_step_cost(ts, f), frame_cap, state_budget);
    return completion_from_layers(g, w);
}

// Born-normalized completion-time distribution over frames.
inline std::map<int, double> completion_distribution(const std::map<int, Amplitude>& amps) {
    double total = 0.0;
    for (const auto& [t, a] : amps) total += std::norm(a);
    if (total == 0.0) throw ZeroField("no completion amplitude within the frame cap");
    std::map<int, double> out;
    for (const auto& [t, a] : amps) out.emplace(t, std::norm(a) / total);
    return out;
}

inline int chebyshev(std::array<int, 2> a, std::array<int, 2> b) {
    return std::max(std::abs(a[0] - b[0]), std::abs(a[1] - b[1]));
}

struct SweepRow {
    double hbar = 0.0;
    double in_tube_probability = 0.0;     // endpoint Born mass near the reference endpoint
    std::optional<double> path_tube_mass; // whole-path tube mass, enumerable instances only
};

// For each hbar (strictly decreasing input), propagates with Feynman weights
// and measures Born mass within Chebyshev `radius` of the reference endpoint.
// On instances with at most `enumeration_cap` paths, also reports the mass
// carried by paths that stay inside the tube at every frame.
template <TransitionSystem TS>
std::vector<SweepRow> hbar_sweep(const TS& ts, const ActionFunctional& f,
                                 const std::vector<double>& hbars,
                                 const std::vector<typename TS::State>& reference_path,
                                 int radius, std::uint64_t enumeration_cap = kDefaultPathCap,
                                 std::size_t state_budget = kDefaultStateBudget) {
    if (reference_path.empty()) throw EmptyInput("reference path has no states");
    const int frames = static_cast<int>(reference_path.size()) - 1;
    auto cost = make_step_cost(ts, f);
    LayeredGraph<typename TS::State> g(ts, cost, frames, state_budget);
    const auto ref_end = ts.position(reference_path.back());

    // One enumeration pass collects per-path endpoint/action/tube-membership;
    // it is reused for every hbar.
    struct PathInfo {
        std::uint64_t endpoint;
        double action;
        bool in_tube;
    };
    std::vector<PathInfo> paths;
    bool enumerable = true;
    {
        std::vector<PathInfo> acc;
        auto dfs = [&](auto&& self, const typename TS::State& s, int depth, double action,
                       bool in_tube) -> bool {
            const bool still_in = in_tube &&
                chebyshev(ts.position(s),
                          ts.position(reference_path[static_cast<std::size_t>(depth)])) <= radius;
            if (depth == frames) {
                acc.push_back({ts.encode(s), action, still_in});
                return acc.size() <= enumeration_cap;
            }
            for (const auto& tr : ts.transitions(s))
                if (!self(self, tr.to, depth + 1, action + cost(s, tr.to), still_in)) return false;
            return true;
        };
        enumerable = dfs(dfs, ts.initial(), 0, 0.0, true);
        if (enumerable) paths = std::move(acc);
    }

    std::vector<SweepRow> rows;
    for (double hbar : hbars) {
        const WeightFunction w = WeightFunction::feynman(hbar);
        SweepRow row;
        row.hbar = hbar;

        const auto fields = detail::evaluate_layers(g, w);
        const auto born = born_distribution(fields.back());
        double near = 0.0;
        for (const auto& [id, p] : born)
            if (chebyshev(ts.position(ts.decode(id)), ref_end) <= radius) near += p;
        row.in_tube_probability = near;

        if (enumerable) {
            std::map<std::uint64_t, Amplitude> tube_amp, all_amp;
            for (const PathInfo& pi : paths) {
                const Amplitude a = w(pi.action);
                all_amp[pi.endpoint] += a;
                if (pi.in_tube) tube_amp[pi.endpoint] += a;
            }
            double tube_mass = 0.0, all_mass = 0.0;
            for (const auto& [id, a] : all_amp) all_mass += std::norm(a);
            for (const auto& [id, a] : tube_amp) tube_mass += std::norm(a);
            if (all_mass > 0.0) row.path_tube_mass = tube_mass / all_mass;
        }
        rows.push_back(row);
    }
    return rows;
}

struct DoubleSlitResult {
    std::map<int, Amplitude> both, left, right;   // screen cell -> amplitude at frame T
    std::map<int, double> born_both;              // Born distribution, both slits open
    std::map<int, double> classical_add;          // normalized |K_left|^2 + |K_right|^2
    double linearity_max_err = 0.0;               // max |K_both - (K_left + K_right)|
    double interference_contrast = 0.0;           // max |P_both - P_classicalAdd|
};

// Walker starts at cell W/2; a wall at slitFrame is open only at the slit
// cells. "Left" is the smaller slit index. Paths partition by slit, so
// K_both = K_left + K_right exactly up to floating-point roundoff.
inline DoubleSlitResult double_slit(int width, int frames, int slit_frame,
                                    std::pair<int, int> slits, const WeightFunction& w,
                                    const ActionFunctional& f) {
    const int a = std::min(slits.first, slits.second);
    const int b = std::max(slits.first, slits.second);
    if (a == b) throw SlitBlocked("slits coincide");
    if (a < 0 || b >= width) throw SlitBlocked("slit outside [0, W)");
    if (slit_frame <= 0 || slit_frame >= frames) throw SlitBlocked("slit frame outside (0, T)");

    auto wall_except = [&](std::initializer_list<int> open) {
        std::set<std::pair<int, int>> walls;
        for (int c = 0; c < width; ++c) {
            bool is_open = false;
            for (int o : open) is_open = is_open || (c == o);
            if (!is_open) walls.insert({slit_frame, c});
        }
        return walls;
    };

    auto screen = [&](const std::set<std::pair<int, int>>& walls) {
        LatticeSystem ts(width, frames, walls);
        const auto fields = propagate(ts, w, f, frames);
        std::map<int, Amplitude> out;
        for (const auto& [id, amp] : fields.back().entries) out.emplace(ts.decode(id).x, amp);
        return out;
    };

    DoubleSlitResult res;
    res.both = screen(wall_except({a, b}));
    res.left = screen(wall_except({a}));
    res.right = screen(wall_except({b}));

    std::set<int> cells;
    for (const auto& [c, amp] : res.both) cells.insert(c);
    for (const auto& [c, amp] : res.left) cells.insert(c);
    for (const auto& [c, amp] : res.right) cells.insert(c);
    auto at = [](const std::map<int, Amplitude>& m, int c) {
        auto it = m.find(c);
        return it == m.end() ? Amplitude(0.0, 0.0) : it->second;
    };
    for (int c : cells)
        res.linearity_max_err = std::max(
            res.linearity_max_err, std::abs(at(res.both, c) - (at(res.left, c) + at(res.right, c))));

    double total_both = 0.0, total_classical = 0.0;
    for (int c : cells) {
        total_both += std::norm(at(res.both, c));
        total_classical += std::norm(at(res.left, c)) + std::norm(at(res.right, c));
    }
    if (total_both == 0.0) throw ZeroField("both-slit screen is fully blocked");
    for (int c : cells) {
        res.born_both[c] = std::norm(at(res.both, c)) / total_both;
        res.classical_add[c] =
            (std::norm(at(res.left, c)) + std::norm(at(res.right, c))) / total_classical;
    }
    for (int c : cells)
        res.interference_contrast = std::max(
            res.interference_contrast, std::abs(res.born_both[c] - res.classical_add[c]));
    return res;
}

}  // namespace pathrun

#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <string>
#include <vector>

#include "pathrun/runstats.hpp"

using namespace pathrun;

static std::string fixture(const char* name) {
    return std::string(PATHRUN_FIXTURE_DIR) + "/" + name;
}

static RunRecord record(std::uint64_t i, const std::string& inputs, bool completed, int frames) {
    RunRecord r;
    r.run_index = i;
    r.seed = i;
    r.inputs = inputs;
    r.completed = completed;
    r.frames = frames;
    return r;
}

TEST_CASE("completion histogram bins by frame with DNF under its own key") {
    std::vector<RunRecord> runs = {
        record(0, "", true, 6),  record(1, "", true, 6), record(2, "", true, 6),
        record(3, "", true, 7),  record(4, "", false, 40),
    };
    const auto hist = completion_histogram(runs);
    REQUIRE(hist.size() == 3);
    REQUIRE(hist.at(6) == 3.0 / 5.0);
    REQUIRE(hist.at(7) == 1.0 / 5.0);
    REQUIRE(hist.at(kDnfKey) == 1.0 / 5.0);
    REQUIRE_THROWS_AS(completion_histogram({}), EmptyInput);
}

TEST_CASE("tube membership compares every frame against the reference") {
    const Level lvl = load_level_file(fixture("corridor.txt"));
    const PhysicsConfig phys;
    TubeSpec tube;
    tube.reference = run(lvl, decode_inputs("R- R- R- R- R- R-"), phys);
    REQUIRE(tube.reference.completed);

    std::vector<RunRecord> runs = {
        record(0, "R- R- R- R- R- R-", true, 6),   // the reference itself
        record(1, "N- R- R- R- R- R- R-", true, 7), // one-frame stutter, lags by 4
        record(2, "N- N-", false, 2),               // DNF never qualifies
    };

    tube.radius = 0;
    REQUIRE(tube_fraction(runs, tube, lvl, phys) == 1.0 / 3.0);
    REQUIRE(runs[0].in_tube);
    REQUIRE_FALSE(runs[1].in_tube);
    REQUIRE_FALSE(runs[2].in_tube);

    // The stutter run's largest lag is 4 subpixels; its frame 7 compares
    // against the clamped reference end and matches exactly.
    tube.radius = 3;
    REQUIRE(tube_fraction(runs, tube, lvl, phys) == 1.0 / 3.0);
    tube.radius = 4;
    REQUIRE(tube_fraction(runs, tube, lvl, phys) == 2.0 / 3.0);
    REQUIRE(runs[1].in_tube);

    tube.radius = -1;
    REQUIRE_THROWS_AS(tube_fraction(runs, tube, lvl, phys), BadValue);
    tube.radius = 0;
    tube.reference = Trajectory{};
    REQUIRE_THROWS_AS(tube_fraction(runs, tube, lvl, phys), EmptyInput);
    std::vector<RunRecord> none;
    tube.reference = run(lvl, decode_inputs("R-"), phys);
    REQUIRE_THROWS_AS(tube_fraction(none, tube, lvl, phys), EmptyInput);
}

TEST_CASE("trajectory frequencies group exact input strings") {
    std::vector<RunRecord> runs = {
        record(0, "R- R-", true, 2),
        record(1, "R- R-", true, 2),
        record(2, "L-", false, 1),
    };
    const auto freq = trajectory_frequencies(runs);
    REQUIRE(freq.size() == 2);
    REQUIRE(freq.at("R- R-") == 2.0 / 3.0);
    REQUIRE(freq.at("L-") == 1.0 / 3.0);
    REQUIRE_THROWS_AS(trajectory_frequencies({}), EmptyInput);
}

TEST_CASE("worlds trie by hand") {
    std::vector<RunRecord> runs = {
        record(0, "R- R-", true, 2),
        record(1, "R- L-", true, 2),
        record(2, "N-", false, 1),
        record(3, "R- R-", true, 2),
    };
    const WorldsTree tree = worlds_tree(runs);
    REQUIRE(tree.nodes[0].count == 4);            // root counts every run
    REQUIRE(tree.leaf_count() == 3);              // distinct input strings

    std::uint64_t terminals = 0;
    for (const auto& n : tree.nodes) terminals += n.terminal;
    REQUIRE(terminals == 4);

    // Node consistency: count = child counts + terminal.
    for (const auto& n : tree.nodes) {
        std::uint64_t kids = 0;
        for (std::int32_t c : n.child)
            if (c >= 0) kids += tree.nodes[static_cast<std::size_t>(c)].count;
        REQUIRE(n.count == kids + n.terminal);
    }

    const auto events = tree.branch_events();
    REQUIRE(events.size() == 2);
    REQUIRE(events.at(0) == 1);  // root splits N/R
    REQUIRE(events.at(1) == 1);  // "R-" splits L/R
    REQUIRE(tree.branch_event_total() == 2);
    REQUIRE_THROWS_AS(worlds_tree({}), EmptyInput);
}

// Oracle: a branch event at depth d is a length-d label prefix followed by
// at least two distinct next labels. Recounted from the raw strings.
TEST_CASE("branch events match the prefix-divergence count on a real batch") {
    const Level lvl = load_level_file(fixture("corridor.txt"));
    PhysicsConfig phys;
    phys.frame_cap = 8;
    AgentSpec spec;
    spec.kind = AgentKind::UniformRandom;
    const auto runs = generate_runs(spec, lvl, 200, 31415, phys);

    std::map<int, std::map<std::vector<int>, std::set<int>>> nexts;
    for (const RunRecord& r : runs) {
        std::vector<int> labels;
        for (InputSymbol u : decode_inputs(r.inputs)) labels.push_back(input_label(u));
        for (std::size_t d = 0; d < labels.size(); ++d)
            nexts[static_cast<int>(d)][std::vector<int>(labels.begin(), labels.begin() + d)]
                .insert(labels[d]);
    }
    std::map<int, std::uint64_t> expected;
    for (const auto& [d, prefixes] : nexts) {
        std::uint64_t events = 0;
        for (const auto& [prefix, syms] : prefixes) events += (syms.size() >= 2);
        if (events > 0) expected[d] = events;
    }

    const WorldsTree tree = worlds_tree(runs);
    REQUIRE(tree.branch_events() == expected);
    REQUIRE(tree.nodes[0].count == 200);
}

TEST_CASE("default grid is 41 log-spaced decades") {
    const auto grid = default_hbar_grid();
    REQUIRE(grid.size() == 41);
    REQUIRE(grid.front() == Catch::Approx(0.01).margin(1e-15));
    REQUIRE(grid.back() == Catch::Approx(100.0).margin(1e-10));
    const double step = std::pow(10.0, 0.1);
    for (size_t i = 1; i < grid.size(); ++i) {
        REQUIRE(grid[i] > grid[i - 1]);
        REQUIRE(grid[i] / grid[i - 1] == Catch::Approx(step).epsilon(1e-12));
    }
}

TEST_CASE("fit validates its inputs") {
    const Level lvl = load_level_file(fixture("corridor.txt"));
    std::vector<RunRecord> runs = {record(0, "", true, 6)};
    REQUIRE_THROWS_AS(fit_hbar(runs, lvl, {}, {}), BadValue);
    REQUIRE_THROWS_AS(fit_hbar(runs, lvl, {}, {0.0, 1.0}), BadValue);
    REQUIRE_THROWS_AS(fit_hbar({}, lvl, {}, {1.0}), EmptyInput);
    std::vector<RunRecord> dnfs = {record(0, "", false, 6)};
    REQUIRE_THROWS_AS(fit_hbar(dnfs, lvl, {}, {1.0}), NoCompletedRuns);
    REQUIRE_THROWS_AS(fit_hbar(runs, lvl, {}, {1.0}, {}, 4), BadValue);  // cap below latest
}

TEST_CASE("fit recovers the generating hbar from model samples") {
    const Level lvl = load_level_file(fixture("l1.txt"));
    const PhysicsConfig phys;
    const ActionFunctional f;
    const int cap = 30;

    // Sample completion frames from the model spectrum at hbar = 1 by
    // inverse CDF over counter-based uniforms.
    const PlatformerSystem ts(lvl, phys);
    const auto amps = completion_amplitude(ts, WeightFunction::feynman(1.0), f, cap);
    const auto dist = completion_distribution(amps);
    REQUIRE(dist.size() >= 3);  // spread spectrum, not a point mass

    std::vector<std::pair<int, double>> cdf;
    double acc = 0.0;
    for (const auto& [t, p] : dist) {
        acc += p;
        cdf.push_back({t, acc});
    }
    std::vector<RunRecord> runs;
    for (std::uint64_t i = 0; i < 4000; ++i) {
        const double u = uniform_double(counter_rand(20260816, i));
        int frames = cdf.back().first;
        for (const auto& [t, c] : cdf)
            if (u < c) {
                frames = t;
                break;
            }
        runs.push_back(record(i, "", true, frames));
    }

    const HbarFit fit = fit_hbar(runs, lvl, f, {0.5, 1.0, 2.0}, phys, cap);
    REQUIRE(fit.hbar_eff == 1.0);
    REQUIRE(fit.grid == std::vector<double>{0.5, 1.0, 2.0});
    REQUIRE(fit.divergence.size() == 3);
    REQUIRE(fit.dnf_fraction == 0.0);

    // DNF records change the reported fraction but not the fit itself.
    auto with_dnfs = runs;
    for (std::uint64_t i = 0; i < 1000; ++i)
        with_dnfs.push_back(record(4000 + i, "", false, 60));
    const HbarFit refit = fit_hbar(with_dnfs, lvl, f, {0.5, 1.0, 2.0}, phys, cap);
    REQUIRE(refit.hbar_eff == 1.0);
    REQUIRE(refit.divergence == fit.divergence);
    REQUIRE(refit.dnf_fraction == 0.2);
}

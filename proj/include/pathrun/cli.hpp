#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "pathrun/pathrun.hpp"

namespace pathrun {

namespace cli_detail {

// One summary line per invocation, space-separated key=value tokens, emitted
// files last under files=. Values with spaces are quoted so the line splits
// on unquoted whitespace.
class Summary {
public:
    Summary& kv(std::string_view key, const std::string& value) {
        const bool quote = value.empty() || value.find(' ') != std::string::npos;
        append(key, quote ? "\"" + value + "\"" : value);
        return *this;
    }
    Summary& kv(std::string_view key, const char* value) { return kv(key, std::string(value)); }
    Summary& kv(std::string_view key, bool value) {
        append(key, value ? "true" : "false");
        return *this;
    }
    Summary& kv(std::string_view key, double value) {
        append(key, format_double(value));
        return *this;
    }
    Summary& kv(std::string_view key, int value) {
        append(key, std::to_string(value));
        return *this;
    }
    Summary& kv(std::string_view key, std::uint64_t value) {
        append(key, std::to_string(value));
        return *this;
    }
    Summary& file(const std::string& path) {
        files_.push_back(path);
        return *this;
    }
    void print(std::ostream& out) {
        if (!files_.empty()) {
            std::string joined;
            for (const std::string& f : files_) {
                if (!joined.empty()) joined += ',';
                joined += f;
            }
            append("files", joined);
        }
        out << line_.str() << '\n';
    }

private:
    void append(std::string_view key, std::string_view value) {
        if (!first_) line_ << ' ';
        first_ = false;
        line_ << key << '=' << value;
    }

    std::ostringstream line_;
    bool first_ = true;
    std::vector<std::string> files_;
};

inline std::vector<std::string> split_csv(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t comma = text.find(',', pos);
        out.push_back(text.substr(pos, comma == std::string::npos ? std::string::npos
                                                                  : comma - pos));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

inline std::vector<double> parse_double_list(std::string_view key, const std::string& text) {
    std::vector<double> out;
    for (const std::string& tok : split_csv(text))
        out.push_back(detail::parse_real(key, detail::trim(tok)));
    return out;
}

inline std::pair<int, int> parse_int_pair(std::string_view key, const std::string& text) {
    const auto parts = split_csv(text);
    if (parts.size() != 2)
        throw BadValue(std::string(key) + " expects two comma-separated integers, got '" +
                       text + "'");
    return {detail::parse_int(key, detail::trim(parts[0])),
            detail::parse_int(key, detail::trim(parts[1]))};
}

inline std::string join_path(const std::string& dir, const std::string& name) {
    if (dir.empty() || dir == ".") return name;
    return dir.back() == '/' ? dir + name : dir + "/" + name;
}

inline void ensure_dir(const std::string& dir) {
    if (dir.empty() || dir == ".") return;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw BadValue("cannot create output directory '" + dir + "': " + ec.message());
}

inline FileConfig load_config(const std::string& path, const std::string& category_override) {
    FileConfig cfg = path.empty() ? FileConfig{} : load_config_file(path);
    if (!category_override.empty()) cfg.category = category_override;
    if (cfg.category != "any%" && cfg.category != "100%")
        throw BadValue("category must be any% or 100%");
    return cfg;
}

inline RunRecord record_from_trajectory(const Trajectory& traj, std::uint64_t index,
                                        const ActionFunctional& f, const Level& lvl,
                                        const PhysicsConfig& phys) {
    RunRecord r;
    r.run_index = index;
    r.seed = 0;
    r.inputs = encode_inputs(traj.inputs);
    r.completed = traj.completed;
    r.frames = static_cast<int>(traj.inputs.size());
    r.action = trajectory_action(traj, f, lvl, phys);
    return r;
}

}  // namespace cli_detail

// Single entry point behind the pathrun binary. Returns 0 on success, 1 on
// domain errors (printed to err with the error name verbatim), 2 on usage
// errors (printed with the full help text). The output directory is the sole
// side-effect surface; every file written is named in the summary line.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    using cli_detail::Summary;

    CLI::App app{"deterministic quantized platformer with a sum-over-paths engine"};
    app.name("pathrun");
    app.require_subcommand(1);

    // simulate: replay an input script, report where it lands.
    struct {
        std::string level, config, inputs, category;
    } sim;
    auto* sim_cmd = app.add_subcommand("simulate", "Replay an input script on a level");
    sim_cmd->add_option("--level", sim.level, "Level file")->required();
    sim_cmd->add_option("--config", sim.config, "key=value physics/action config");
    sim_cmd->add_option("--inputs", sim.inputs, "Input script, e.g. \"R- R- RJ\"");
    sim_cmd->add_option("--category", sim.category, "any% or 100% (default any%)");
    sim_cmd->callback([&] {
        const Level lvl = load_level_file(sim.level);
        FileConfig cfg = cli_detail::load_config(sim.config, sim.category);
        cfg.func.category = parse_category(cfg.category, lvl);
        const Trajectory traj = run(lvl, decode_inputs(sim.inputs), cfg.phys);
        const SimState& last = traj.states.back();
        Summary s;
        s.kv("completed", traj.completed)
            .kv("frames", static_cast<int>(traj.inputs.size()))
            .kv("completion_frame", traj.completion_frame)
            .kv("action", trajectory_action(traj, cfg.func, lvl, cfg.phys))
            .kv("x", last.x)
            .kv("y", last.y)
            .kv("items", static_cast<int>(last.items))
            .print(out);
    });

    // search: earliest completion (time mode) or least action at a horizon.
    struct {
        std::string level, config, category, mode = "time", outdir;
        int frame_cap = 0;
        int horizon = 0;
        std::uint64_t cap = 16;
        std::size_t budget = kDefaultStateBudget;
    } se;
    auto* se_cmd = app.add_subcommand("search", "Find optimal trajectories");
    se_cmd->add_option("--level", se.level, "Level file")->required();
    se_cmd->add_option("--config", se.config, "key=value physics/action config");
    se_cmd->add_option("--category", se.category, "any% or 100%");
    se_cmd->add_option("--mode", se.mode, "time (earliest completion) or action (least action)")
        ->check(CLI::IsMember({"time", "action"}));
    se_cmd->add_option("--frame-cap", se.frame_cap, "Search cap in frames (default from config)");
    se_cmd->add_option("--horizon", se.horizon, "Frame horizon, action mode only");
    se_cmd->add_option("--cap", se.cap, "Max co-optimal witnesses to list");
    se_cmd->add_option("--budget", se.budget, "Per-frame state budget");
    se_cmd->add_option("--out", se.outdir, "Directory for witness run records");
    se_cmd->callback([&] {
        const Level lvl = load_level_file(se.level);
        FileConfig cfg = cli_detail::load_config(se.config, se.category);
        const CategoryConstraint cat = parse_category(cfg.category, lvl);
        cfg.func.category = cat;
        const int frame_cap = se.frame_cap > 0 ? se.frame_cap : cfg.phys.frame_cap;

        Summary s;
        std::vector<RunRecord> witnesses;
        if (se.mode == "time") {
            const SearchResult res = min_time_path(lvl, cat, frame_cap, cfg.phys, se.budget);
            s.kv("optimal_frames", res.witness.completion_frame)
                .kv("optimal_count", res.optimal_count)
                .kv("inputs", encode_inputs(res.witness.inputs))
                .kv("category", category_name(cat));
            witnesses.push_back(
                cli_detail::record_from_trajectory(res.witness, 0, cfg.func, lvl, cfg.phys));
        } else {
            if (se.horizon < 1) throw BadValue("action mode needs --horizon >= 1");
            const SearchResult res = enumerate_optimal_trajectories(lvl, cfg.func, se.horizon,
                                                                    cat, se.cap, cfg.phys,
                                                                    se.budget);
            s.kv("optimal_action", res.optimal_value)
                .kv("optimal_count", res.optimal_count)
                .kv("co_optimal_listed", static_cast<std::uint64_t>(res.co_optimal.size()))
                .kv("inputs", encode_inputs(res.witness.inputs))
                .kv("category", category_name(cat));
            std::uint64_t index = 0;
            for (const Trajectory& t : res.co_optimal)
                witnesses.push_back(
                    cli_detail::record_from_trajectory(t, index++, cfg.func, lvl, cfg.phys));
            if (witnesses.empty())
                witnesses.push_back(
                    cli_detail::record_from_trajectory(res.witness, 0, cfg.func, lvl, cfg.phys));
        }
        if (!se.outdir.empty()) {
            cli_detail::ensure_dir(se.outdir);
            const std::string path = cli_detail::join_path(se.outdir, "witness.jsonl");
            write_runs_jsonl(path, witnesses);
            s.file(path);
        }
        s.print(out);
    });

    // propagate: evolve the amplitude field over the platformer state space.
    struct {
        std::string level, config, weight = "feynman", outdir = ".";
        double hbar = 1.0;
        int frames = 0;
        std::size_t budget = kDefaultStateBudget;
    } pr;
    auto* pr_cmd = app.add_subcommand("propagate", "Sum-over-paths amplitude propagation");
    pr_cmd->add_option("--level", pr.level, "Level file")->required();
    pr_cmd->add_option("--config", pr.config, "key=value physics/action config");
    pr_cmd->add_option("--frames", pr.frames, "Propagation horizon in frames")->required();
    pr_cmd->add_option("--hbar", pr.hbar, "Weight scale");
    pr_cmd->add_option("--weight", pr.weight, "feynman or boltzmann")
        ->check(CLI::IsMember({"feynman", "boltzmann"}));
    pr_cmd->add_option("--budget", pr.budget, "Per-frame state budget");
    pr_cmd->add_option("--out", pr.outdir, "Output directory");
    pr_cmd->callback([&] {
        const Level lvl = load_level_file(pr.level);
        FileConfig cfg = cli_detail::load_config(pr.config, "");
        cfg.func.category = parse_category(cfg.category, lvl);
        if (pr.frames < 1) throw BadValue("frames must be >= 1");
        const WeightFunction w = pr.weight == "feynman" ? WeightFunction::feynman(pr.hbar)
                                                        : WeightFunction::boltzmann(pr.hbar);
        PlatformerSystem ts(lvl, cfg.phys);
        LayeredGraph<SimState> g(ts, make_step_cost(ts, cfg.func), pr.frames, pr.budget);
        const auto fields = detail::evaluate_layers(g, w);
        const auto amps = completion_from_layers(g, w);
        const std::map<int, double> dist =
            amps.empty() ? std::map<int, double>{} : completion_distribution(amps);

        cli_detail::ensure_dir(pr.outdir);
        const std::string prop_path = cli_detail::join_path(pr.outdir, "propagation.csv");
        const std::string comp_path = cli_detail::join_path(pr.outdir, "completion.csv");
        write_text_file(prop_path, propagation_csv(ts, fields));
        write_text_file(comp_path, histogram_csv(dist));

        Summary s;
        s.kv("frames", pr.frames)
            .kv("hbar", pr.hbar)
            .kv("weight", pr.weight)
            .kv("final_states", static_cast<std::uint64_t>(fields.back().entries.size()))
            .kv("completion_frames", static_cast<std::uint64_t>(dist.size()))
            .file(prop_path)
            .file(comp_path)
            .print(out);
    });

    // doubleslit: lattice interference screen, paths partitioned by slit.
    struct {
        std::string slits = "5,9", weight = "feynman", outdir = ".";
        int width = 15, frames = 8, slit_frame = 4;
        double hbar = 1.0, mass = 1.0;
    } ds;
    auto* ds_cmd = app.add_subcommand("doubleslit", "Two-slit interference on the lattice");
    ds_cmd->add_option("--width", ds.width, "Lattice width");
    ds_cmd->add_option("--frames", ds.frames, "Frames until the screen");
    ds_cmd->add_option("--slit-frame", ds.slit_frame, "Frame of the slit wall");
    ds_cmd->add_option("--slits", ds.slits, "Two open cells, e.g. 5,9");
    ds_cmd->add_option("--hbar", ds.hbar, "Weight scale");
    ds_cmd->add_option("--mass", ds.mass, "Kinetic action mass");
    ds_cmd->add_option("--weight", ds.weight, "feynman or boltzmann")
        ->check(CLI::IsMember({"feynman", "boltzmann"}));
    ds_cmd->add_option("--out", ds.outdir, "Output directory");
    ds_cmd->callback([&] {
        const auto slits = cli_detail::parse_int_pair("slits", ds.slits);
        const WeightFunction w = ds.weight == "feynman" ? WeightFunction::feynman(ds.hbar)
                                                        : WeightFunction::boltzmann(ds.hbar);
        ActionFunctional f;
        f.mass = ds.mass;
        const DoubleSlitResult res =
            double_slit(ds.width, ds.frames, ds.slit_frame, slits, w, f);

        cli_detail::ensure_dir(ds.outdir);
        const std::string both_path = cli_detail::join_path(ds.outdir, "screen_both.csv");
        const std::string left_path = cli_detail::join_path(ds.outdir, "screen_left.csv");
        const std::string right_path = cli_detail::join_path(ds.outdir, "screen_right.csv");
        write_text_file(both_path, screen_csv(res.both, &res.born_both, &res.classical_add));
        write_text_file(left_path, screen_csv(res.left));
        write_text_file(right_path, screen_csv(res.right));

        Summary s;
        s.kv("linearity_max_err", res.linearity_max_err)
            .kv("interference_contrast", res.interference_contrast)
            .kv("hbar", ds.hbar)
            .file(both_path)
            .file(left_path)
            .file(right_path)
            .print(out);
    });

    // sweep: classical-limit table on the ballistic lattice benchmark.
    struct {
        std::string hbars = "10,1,0.1,0.01", outdir = ".";
        int width = 9, frames = 4, radius = 1;
        double mass = 0.1;
        std::uint64_t enum_cap = kDefaultPathCap;
        std::size_t budget = kDefaultStateBudget;
    } sw;
    auto* sw_cmd = app.add_subcommand("sweep", "In-tube Born mass across an hbar ladder");
    sw_cmd->add_option("--width", sw.width, "Lattice width");
    sw_cmd->add_option("--frames", sw.frames, "Walk length in frames");
    sw_cmd->add_option("--mass", sw.mass, "Kinetic action mass");
    sw_cmd->add_option("--radius", sw.radius, "Tube radius around the ballistic reference");
    sw_cmd->add_option("--hbars", sw.hbars, "Comma-separated descending hbar ladder");
    sw_cmd->add_option("--enum-cap", sw.enum_cap, "Path cap for whole-path tube mass");
    sw_cmd->add_option("--budget", sw.budget, "Per-frame state budget");
    sw_cmd->add_option("--out", sw.outdir, "Output directory");
    sw_cmd->callback([&] {
        const std::vector<double> hbars = cli_detail::parse_double_list("hbars", sw.hbars);
        const LatticeSystem ts = lattice_system(sw.width, sw.frames);
        ActionFunctional f;
        f.mass = sw.mass;

        // Ballistic reference: one step right per frame from the center.
        std::vector<LatticeState> ref{ts.initial()};
        for (int t = 0; t < sw.frames; ++t) {
            bool advanced = false;
            for (const auto& tr : ts.transitions(ref.back()))
                if (tr.to.x == ref.back().x + 1) {
                    ref.push_back(tr.to);
                    advanced = true;
                    break;
                }
            if (!advanced)
                throw BadValue("ballistic reference leaves the lattice; widen --width");
        }

        const std::vector<SweepRow> rows =
            hbar_sweep(ts, f, hbars, ref, sw.radius, sw.enum_cap, sw.budget);

        cli_detail::ensure_dir(sw.outdir);
        const std::string csv_path = cli_detail::join_path(sw.outdir, "sweep.csv");
        const std::string svg_path = cli_detail::join_path(sw.outdir, "sweep.svg");
        write_text_file(csv_path, sweep_csv(rows));
        std::vector<std::pair<double, double>> points;
        for (const SweepRow& r : rows) points.emplace_back(r.hbar, r.in_tube_probability);
        write_text_file(svg_path, svg_line_chart("in-tube Born mass vs hbar", points,
                                                 /*log_x=*/true, "hbar", "in-tube mass"));

        Summary s;
        s.kv("rows", static_cast<std::uint64_t>(rows.size()))
            .kv("radius", sw.radius)
            .file(csv_path)
            .file(svg_path)
            .print(out);
    });

    // runs: seeded agent batch, one JSON line per run.
    struct {
        std::string level, config, agent = "noisy", category, replay, outdir = ".";
        double p = 0.1;
        int n = 1000;
        std::uint64_t seed = 1;
        int threads = 0;
    } ru;
    auto* ru_cmd = app.add_subcommand("runs", "Generate a seeded batch of agent runs");
    ru_cmd->add_option("--level", ru.level, "Level file")->required();
    ru_cmd->add_option("--config", ru.config, "key=value physics/action config");
    ru_cmd->add_option("--agent", ru.agent, "optimal, noisy, random, or replay")
        ->check(CLI::IsMember({"optimal", "noisy", "random", "replay"}));
    ru_cmd->add_option("--p", ru.p, "Per-frame error probability (noisy agent)");
    ru_cmd->add_option("--n", ru.n, "Number of runs");
    ru_cmd->add_option("--seed", ru.seed, "Base seed; run i draws from hash(seed, i)");
    ru_cmd->add_option("--category", ru.category, "any% or 100%");
    ru_cmd->add_option("--replay-inputs", ru.replay, "Input script for the replay agent");
    ru_cmd->add_option("--threads", ru.threads, "Worker count, 0 = auto (PATHRUN_THREADS)");
    ru_cmd->add_option("--out", ru.outdir, "Output directory");
    ru_cmd->callback([&] {
        const Level lvl = load_level_file(ru.level);
        FileConfig cfg = cli_detail::load_config(ru.config, ru.category);
        const CategoryConstraint cat = parse_category(cfg.category, lvl);
        cfg.func.category = cat;

        AgentSpec spec;
        spec.kind = parse_agent_kind(ru.agent);
        spec.p = ru.p;
        spec.category = cat;
        spec.replay_inputs = decode_inputs(ru.replay);
        const std::vector<RunRecord> records =
            generate_runs(spec, lvl, ru.n, ru.seed, cfg.phys, cfg.func, ru.threads);

        std::uint64_t completed = 0;
        for (const RunRecord& r : records) completed += r.completed ? 1 : 0;

        cli_detail::ensure_dir(ru.outdir);
        const std::string path = cli_detail::join_path(ru.outdir, "runs.jsonl");
        write_runs_jsonl(path, records);

        Summary s;
        s.kv("n", static_cast<std::uint64_t>(records.size()))
            .kv("completed", completed)
            .kv("dnf_fraction",
                static_cast<double>(records.size() - completed) /
                    static_cast<double>(records.size()))
            .kv("agent", ru.agent)
            .kv("p", ru.p)
            .kv("seed", ru.seed)
            .file(path)
            .print(out);
    });

    // stats: histogram + exact-trajectory frequencies, optional tube check.
    struct {
        std::string runs, level, config, category, ref_inputs, outdir = ".";
        int radius = -1;
    } st;
    auto* st_cmd = app.add_subcommand("stats", "Completion and trajectory statistics of a log");
    st_cmd->add_option("--runs", st.runs, "Run log (JSON lines)")->required();
    st_cmd->add_option("--level", st.level, "Level file (needed for --radius)");
    st_cmd->add_option("--config", st.config, "key=value physics/action config");
    st_cmd->add_option("--category", st.category, "any% or 100%");
    st_cmd->add_option("--radius", st.radius,
                       "Tube radius in subpixels; reference is the optimal witness");
    st_cmd->add_option("--ref-inputs", st.ref_inputs, "Override the tube reference inputs");
    st_cmd->add_option("--out", st.outdir, "Output directory");
    st_cmd->callback([&] {
        std::vector<RunRecord> records = read_runs_jsonl(st.runs);
        const auto hist = completion_histogram(records);
        const auto freqs = trajectory_frequencies(records);

        std::uint64_t completed = 0;
        for (const RunRecord& r : records) completed += r.completed ? 1 : 0;

        cli_detail::ensure_dir(st.outdir);
        const std::string hist_path = cli_detail::join_path(st.outdir, "histogram.csv");
        const std::string freq_path = cli_detail::join_path(st.outdir, "frequencies.csv");
        write_text_file(hist_path, histogram_csv(hist));
        write_text_file(freq_path, frequencies_csv(freqs));

        Summary s;
        s.kv("runs", static_cast<std::uint64_t>(records.size()))
            .kv("completion_rate",
                static_cast<double>(completed) / static_cast<double>(records.size()))
            .kv("dnf_fraction",
                static_cast<double>(records.size() - completed) /
                    static_cast<double>(records.size()))
            .kv("distinct_trajectories", static_cast<std::uint64_t>(freqs.size()));
        if (st.radius >= 0) {
            if (st.level.empty())
                throw BadValue("--radius needs --level to build the reference trajectory");
            const Level lvl = load_level_file(st.level);
            FileConfig cfg = cli_detail::load_config(st.config, st.category);
            const CategoryConstraint cat = parse_category(cfg.category, lvl);
            const Trajectory ref =
                st.ref_inputs.empty()
                    ? min_time_path(lvl, cat, cfg.phys.frame_cap, cfg.phys).witness
                    : run(lvl, decode_inputs(st.ref_inputs), cfg.phys);
            s.kv("tube_fraction",
                 tube_fraction(records, TubeSpec{ref, st.radius}, lvl, cfg.phys));
            s.kv("tube_radius", st.radius);
        }
        s.file(hist_path).file(freq_path).print(out);
    });

    // fit: effective hbar of a run log against the model completion spectrum.
    struct {
        std::string runs, level, config, grid = "default", outdir = ".";
        int frame_cap = 0;
        std::size_t budget = kDefaultStateBudget;
    } ft;
    auto* ft_cmd = app.add_subcommand("fit", "Fit the effective hbar of a run log");
    ft_cmd->add_option("--runs", ft.runs, "Run log (JSON lines)")->required();
    ft_cmd->add_option("--level", ft.level, "Level file")->required();
    ft_cmd->add_option("--config", ft.config, "key=value physics/action config");
    ft_cmd->add_option("--grid", ft.grid, "Comma-separated hbar grid, or 'default'");
    ft_cmd->add_option("--frame-cap", ft.frame_cap,
                       "Model horizon in frames, 0 = latest empirical completion");
    ft_cmd->add_option("--budget", ft.budget, "Per-frame state budget");
    ft_cmd->add_option("--out", ft.outdir, "Output directory");
    ft_cmd->callback([&] {
        const std::vector<RunRecord> records = read_runs_jsonl(ft.runs);
        const Level lvl = load_level_file(ft.level);
        FileConfig cfg = cli_detail::load_config(ft.config, "");
        cfg.func.category = parse_category(cfg.category, lvl);
        const std::vector<double> grid = ft.grid == "default"
                                             ? default_hbar_grid()
                                             : cli_detail::parse_double_list("grid", ft.grid);
        const HbarFit fit =
            fit_hbar(records, lvl, cfg.func, grid, cfg.phys, ft.frame_cap, ft.budget);

        cli_detail::ensure_dir(ft.outdir);
        const std::string csv_path = cli_detail::join_path(ft.outdir, "fit.csv");
        const std::string svg_path = cli_detail::join_path(ft.outdir, "fit.svg");
        write_text_file(csv_path, fit_csv(fit));
        std::vector<std::pair<double, double>> points;
        for (std::size_t i = 0; i < fit.grid.size(); ++i)
            points.emplace_back(fit.grid[i], fit.divergence[i]);
        write_text_file(svg_path, svg_line_chart("KL divergence vs hbar", points,
                                                 /*log_x=*/true, "hbar",
                                                 "KL(empirical || model)"));

        Summary s;
        s.kv("hbar_eff", fit.hbar_eff)
            .kv("kl_min", *std::min_element(fit.divergence.begin(), fit.divergence.end()))
            .kv("dnf_fraction", fit.dnf_fraction)
            .kv("grid_points", static_cast<std::uint64_t>(fit.grid.size()))
            .file(csv_path)
            .file(svg_path)
            .print(out);
    });

    // worlds: branching trie over the input strings of a log.
    struct {
        std::string runs, outdir = ".";
    } wo;
    auto* wo_cmd = app.add_subcommand("worlds", "Branching structure of a run log");
    wo_cmd->add_option("--runs", wo.runs, "Run log (JSON lines)")->required();
    wo_cmd->add_option("--out", wo.outdir, "Output directory");
    wo_cmd->callback([&] {
        const std::vector<RunRecord> records = read_runs_jsonl(wo.runs);
        const WorldsTree tree = worlds_tree(records);

        cli_detail::ensure_dir(wo.outdir);
        const std::string text_path = cli_detail::join_path(wo.outdir, "worlds.txt");
        const std::string dot_path = cli_detail::join_path(wo.outdir, "worlds.dot");
        const std::string events_path = cli_detail::join_path(wo.outdir, "branch_events.csv");
        write_text_file(text_path, worlds_to_text(tree));
        write_text_file(dot_path, worlds_to_dot(tree));
        write_text_file(events_path, branch_events_csv(tree));

        Summary s;
        s.kv("root_count", tree.nodes.front().count)
            .kv("leaf_count", tree.leaf_count())
            .kv("branch_event_total", tree.branch_event_total())
            .file(text_path)
            .file(dot_path)
            .file(events_path)
            .print(out);
    });

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n\n" << app.help();
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace pathrun

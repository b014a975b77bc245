#include <catch2/catch_amalgamated.hpp>

#include <charconv>
#include <filesystem>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pathrun/cli.hpp"

using namespace pathrun;

static std::string fixture(const char* name) {
    return std::string(PATHRUN_FIXTURE_DIR) + "/" + name;
}

struct CliResult {
    int code = 0;
    std::string out, err;
    std::map<std::string, std::string> kv;
};

// Splits the one-line summary into key=value tokens, honoring quoted values.
static std::map<std::string, std::string> parse_summary(const std::string& line) {
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const std::size_t eq = line.find('=', pos);
        if (eq == std::string::npos) break;
        const std::string key = line.substr(pos, eq - pos);
        std::size_t end;
        std::string value;
        if (eq + 1 < line.size() && line[eq + 1] == '"') {
            end = line.find('"', eq + 2);
            REQUIRE(end != std::string::npos);
            value = line.substr(eq + 2, end - (eq + 2));
            ++end;
        } else {
            end = line.find(' ', eq + 1);
            if (end == std::string::npos) end = line.size();
            value = line.substr(eq + 1, end - (eq + 1));
        }
        kv[key] = value;
        pos = end + 1;
    }
    return kv;
}

static CliResult invoke(std::vector<std::string> args) {
    CliResult res;
    std::ostringstream out, err;
    res.code = run_cli(std::move(args), out, err);
    res.out = out.str();
    res.err = err.str();
    const std::size_t nl = res.out.find('\n');
    if (nl != std::string::npos) res.kv = parse_summary(res.out.substr(0, nl));
    return res;
}

static double num(const CliResult& res, const std::string& key) {
    const auto it = res.kv.find(key);
    REQUIRE(it != res.kv.end());
    double v = 0.0;
    const auto rc = std::from_chars(it->second.data(), it->second.data() + it->second.size(), v);
    REQUIRE(rc.ec == std::errc());
    return v;
}

static std::string fresh_dir(const char* name) {
    const std::string dir = std::string("/tmp/pathrun_cli_test/") + name;
    std::filesystem::remove_all(dir);
    return dir;
}

TEST_CASE("search prints the optimal frame count for both categories") {
    for (const char* cat : {"any%", "100%"}) {
        const CliResult res = invoke({"search", "--level", fixture("l1.txt"), "--category", cat});
        CAPTURE(cat, res.err);
        REQUIRE(res.code == 0);
        REQUIRE(num(res, "optimal_frames") == 26.0);
        REQUIRE(res.kv.at("category") == cat);
    }
}

TEST_CASE("action-mode search reproduces the enumeration oracle") {
    const CliResult corridor = invoke({"search", "--level", fixture("corridor.txt"),
                                       "--mode", "action", "--horizon", "6", "--cap", "4"});
    REQUIRE(corridor.code == 0);
    REQUIRE(num(corridor, "optimal_action") == -68.5);
    REQUIRE(num(corridor, "optimal_count") == 320.0);
    REQUIRE(num(corridor, "co_optimal_listed") == 4.0);

    const CliResult two = invoke({"search", "--level", fixture("tworoutes.txt"),
                                  "--mode", "action", "--horizon", "1"});
    REQUIRE(two.code == 0);
    REQUIRE(num(two, "optimal_count") == 2.0);
}

TEST_CASE("search writes replayable witness records") {
    const std::string dir = fresh_dir("witness");
    const CliResult res = invoke({"search", "--level", fixture("corridor.txt"), "--out", dir});
    REQUIRE(res.code == 0);
    const std::string path = dir + "/witness.jsonl";
    REQUIRE(res.kv.at("files") == path);
    const auto records = read_runs_jsonl(path);
    REQUIRE(records.size() == 1);
    const Level lvl = load_level_file(fixture("corridor.txt"));
    const Trajectory replay = run(lvl, decode_inputs(records[0].inputs));
    REQUIRE(replay.completed == records[0].completed);
    REQUIRE(replay.completion_frame == 6);
}

TEST_CASE("simulate reports the landing state of a script") {
    const CliResult res = invoke({"simulate", "--level", fixture("corridor.txt"),
                                  "--inputs", "R- R- R- R- R- R-"});
    REQUIRE(res.code == 0);
    REQUIRE(res.kv.at("completed") == "true");
    REQUIRE(num(res, "frames") == 6.0);
    REQUIRE(num(res, "completion_frame") == 6.0);
    REQUIRE(num(res, "action") == -65.0);
    REQUIRE(num(res, "x") == 18.0);
}

TEST_CASE("usage errors exit 2 and name the offending flag") {
    const CliResult missing = invoke({"search"});
    REQUIRE(missing.code == 2);
    REQUIRE(missing.err.find("--level") != std::string::npos);
    REQUIRE(missing.err.find("Usage") != std::string::npos);

    REQUIRE(invoke({}).code == 2);
    REQUIRE(invoke({"warp"}).code == 2);
    REQUIRE(invoke({"search", "--level", fixture("l1.txt"), "--mode", "sideways"}).code == 2);
}

TEST_CASE("domain errors exit 1 with the error name verbatim") {
    const CliResult blocked = invoke({"search", "--level", fixture("walled.txt")});
    REQUIRE(blocked.code == 1);
    REQUIRE(blocked.err.find("Unreachable") != std::string::npos);

    const CliResult garbage = invoke({"simulate", "--level", fixture("corridor.txt"),
                                      "--inputs", "XX"});
    REQUIRE(garbage.code == 1);
    REQUIRE(garbage.err.find("BadValue") != std::string::npos);

    const CliResult nofile = invoke({"search", "--level", "/nonexistent/void.txt"});
    REQUIRE(nofile.code == 1);
}

TEST_CASE("help exits 0 and lists the subcommands") {
    const CliResult res = invoke({"--help"});
    REQUIRE(res.code == 0);
    for (const char* name : {"simulate", "search", "propagate", "doubleslit", "sweep",
                             "runs", "stats", "fit", "worlds"})
        REQUIRE(res.out.find(name) != std::string::npos);
}

TEST_CASE("propagate declares its files and reruns byte-identically") {
    const std::string dir = fresh_dir("prop");
    auto go = [&] {
        return invoke({"propagate", "--level", fixture("corridor.txt"), "--frames", "7",
                       "--out", dir});
    };
    const CliResult res = go();
    REQUIRE(res.code == 0);
    REQUIRE(res.kv.at("files") == dir + "/propagation.csv," + dir + "/completion.csv");
    const std::string prop = read_text_file(dir + "/propagation.csv");
    const std::string comp = read_text_file(dir + "/completion.csv");
    REQUIRE(prop.rfind("frame,state_id,x,y,re,im,prob\n", 0) == 0);
    REQUIRE(comp.find("\n6,") != std::string::npos);  // first completion at frame 6
    REQUIRE(comp.find("\n7,") != std::string::npos);

    REQUIRE(go().code == 0);
    REQUIRE(read_text_file(dir + "/propagation.csv") == prop);
    REQUIRE(read_text_file(dir + "/completion.csv") == comp);
}

TEST_CASE("doubleslit reports linearity and interference") {
    const std::string dir = fresh_dir("slit");
    const CliResult res = invoke({"doubleslit", "--width", "15", "--frames", "8",
                                  "--slit-frame", "4", "--slits", "5,9", "--hbar", "1",
                                  "--out", dir});
    REQUIRE(res.code == 0);
    REQUIRE(num(res, "linearity_max_err") <= 1e-12);
    REQUIRE(num(res, "interference_contrast") > 0.01);
    for (const char* f : {"/screen_both.csv", "/screen_left.csv", "/screen_right.csv"}) {
        REQUIRE(res.kv.at("files").find(dir + f) != std::string::npos);
        REQUIRE(std::filesystem::exists(dir + f));
    }
    REQUIRE(read_text_file(dir + "/screen_both.csv")
                .rfind("cell,re,im,prob,classical_add\n", 0) == 0);
}

TEST_CASE("sweep emits the descending-hbar table and chart") {
    const std::string dir = fresh_dir("sweep");
    const CliResult res = invoke({"sweep", "--out", dir});
    REQUIRE(res.code == 0);
    REQUIRE(num(res, "rows") == 4.0);
    const std::string csv = read_text_file(dir + "/sweep.csv");
    REQUIRE(csv.rfind("hbar,in_tube_probability,path_tube_mass\n", 0) == 0);
    REQUIRE(std::count(csv.begin(), csv.end(), '\n') == 5);

    // Classical limit on the default ladder: mass concentrates as hbar drops.
    std::vector<double> tube;
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    while (std::getline(lines, line)) {
        const std::size_t a = line.find(','), b = line.find(',', a + 1);
        tube.push_back(std::stod(line.substr(a + 1, b - a - 1)));
    }
    REQUIRE(tube.size() == 4);
    REQUIRE(std::is_sorted(tube.begin(), tube.end()));
    REQUIRE(read_text_file(dir + "/sweep.svg").rfind("<svg ", 0) == 0);
}

TEST_CASE("runs are byte-identical across thread counts") {
    const std::string d1 = fresh_dir("runs1");
    const std::string d4 = fresh_dir("runs4");
    const std::vector<std::string> base = {"runs", "--level", fixture("corridor.txt"),
                                           "--agent", "noisy", "--p", "0.1", "--n", "200",
                                           "--seed", "5"};
    auto with = [&](const std::string& dir, const char* threads) {
        std::vector<std::string> args = base;
        args.insert(args.end(), {"--threads", threads, "--out", dir});
        return invoke(args);
    };
    const CliResult r1 = with(d1, "1");
    const CliResult r4 = with(d4, "4");
    REQUIRE(r1.code == 0);
    REQUIRE(r4.code == 0);
    REQUIRE(num(r1, "n") == 200.0);
    REQUIRE(read_text_file(d1 + "/runs.jsonl") == read_text_file(d4 + "/runs.jsonl"));
}

TEST_CASE("stats, worlds, and fit agree on one log") {
    const std::string dir = fresh_dir("pipeline");
    const std::string cfg_path = "/tmp/pathrun_cli_test/cap40.cfg";
    write_text_file(cfg_path, "frame_cap = 40\n");

    REQUIRE(invoke({"runs", "--level", fixture("corridor.txt"), "--config", cfg_path,
                    "--agent", "noisy", "--p", "0.1", "--n", "300", "--seed", "11",
                    "--out", dir})
                .code == 0);
    const std::string log = dir + "/runs.jsonl";

    const CliResult stats = invoke({"stats", "--runs", log, "--level", fixture("corridor.txt"),
                                    "--config", cfg_path, "--radius", "4", "--out", dir});
    REQUIRE(stats.code == 0);
    const double rate = num(stats, "completion_rate");
    REQUIRE(rate > 0.0);
    REQUIRE(rate <= 1.0);
    REQUIRE(num(stats, "completion_rate") + num(stats, "dnf_fraction") == 1.0);
    const double tube = num(stats, "tube_fraction");
    REQUIRE(tube >= 0.0);
    REQUIRE(tube <= rate);
    REQUIRE(std::filesystem::exists(dir + "/histogram.csv"));
    REQUIRE(std::filesystem::exists(dir + "/frequencies.csv"));

    const CliResult worlds = invoke({"worlds", "--runs", log, "--out", dir});
    REQUIRE(worlds.code == 0);
    REQUIRE(num(worlds, "root_count") == 300.0);
    REQUIRE(num(worlds, "leaf_count") == num(stats, "distinct_trajectories"));
    REQUIRE(std::filesystem::exists(dir + "/worlds.txt"));
    REQUIRE(std::filesystem::exists(dir + "/worlds.dot"));
    REQUIRE(std::filesystem::exists(dir + "/branch_events.csv"));

    const CliResult fit = invoke({"fit", "--runs", log, "--level", fixture("corridor.txt"),
                                  "--config", cfg_path, "--grid", "0.5,1,2", "--out", dir});
    REQUIRE(fit.code == 0);
    const double hbar_eff = num(fit, "hbar_eff");
    REQUIRE((hbar_eff == 0.5 || hbar_eff == 1.0 || hbar_eff == 2.0));
    REQUIRE(num(fit, "grid_points") == 3.0);
    REQUIRE(std::filesystem::exists(dir + "/fit.csv"));
    REQUIRE(std::filesystem::exists(dir + "/fit.svg"));
}

TEST_CASE("output directories are created on demand") {
    const std::string dir = fresh_dir("nested") + "/a/b";
    const CliResult res = invoke({"sweep", "--hbars", "1", "--out", dir});
    REQUIRE(res.code == 0);
    REQUIRE(std::filesystem::exists(dir + "/sweep.csv"));
}

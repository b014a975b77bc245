#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathrun/agents.hpp"
#include "pathrun/propagator.hpp"
#include "pathrun/runstats.hpp"
#include "pathrun/transition.hpp"

namespace pathrun {

// Shortest round-trip decimal form; locale-free, so emitted files are
// byte-stable across machines.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw BadValue("cannot open for writing: " + path);
    out << content;
    if (!out) throw BadValue("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadValue("cannot open: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// ---- run logs: JSON lines, one record per line, keys in alphabetical order

inline nlohmann::json run_record_to_json(const RunRecord& r) {
    nlohmann::json j;
    j["run_index"] = r.run_index;
    j["seed"] = r.seed;
    j["inputs"] = r.inputs;
    j["completed"] = r.completed;
    j["frames"] = r.frames;
    j["action"] = r.action;
    j["in_tube"] = r.in_tube;
    return j;
}

inline RunRecord run_record_from_json(const nlohmann::json& j) {
    RunRecord r;
    r.run_index = j.at("run_index").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.inputs = j.at("inputs").get<std::string>();
    r.completed = j.at("completed").get<bool>();
    r.frames = j.at("frames").get<int>();
    r.action = j.at("action").get<double>();
    r.in_tube = j.at("in_tube").get<bool>();
    return r;
}

inline std::string runs_to_jsonl(const std::vector<RunRecord>& runs) {
    std::string out;
    for (const RunRecord& r : runs) {
        out += run_record_to_json(r).dump();
        out.push_back('\n');
    }
    return out;
}

inline void write_runs_jsonl(const std::string& path, const std::vector<RunRecord>& runs) {
    write_text_file(path, runs_to_jsonl(runs));
}

inline std::vector<RunRecord> parse_runs_jsonl(const std::string& text) {
    std::vector<RunRecord> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(run_record_from_json(nlohmann::json::parse(line)));
    }
    return out;
}

inline std::vector<RunRecord> read_runs_jsonl(const std::string& path) {
    return parse_runs_jsonl(read_text_file(path));
}

// ---- CSV emitters

template <TransitionSystem TS>
std::string propagation_csv(const TS& ts, const std::vector<AmplitudeField>& fields) {
    std::string out = "frame,state_id,x,y,re,im,prob\n";
    for (const AmplitudeField& field : fields) {
        double total = 0.0;
        for (const auto& [id, amp] : field.entries) total += std::norm(amp);
        for (const auto& [id, amp] : field.entries) {
            const auto pos = ts.position(ts.decode(id));
            out += std::to_string(field.frame);
            out.push_back(',');
            out += std::to_string(id);
            out.push_back(',');
            out += std::to_string(pos[0]);
            out.push_back(',');
            out += std::to_string(pos[1]);
            out.push_back(',');
            out += format_double(amp.real());
            out.push_back(',');
            out += format_double(amp.imag());
            out.push_back(',');
            out += format_double(total == 0.0 ? 0.0 : std::norm(amp) / total);
            out.push_back('\n');
        }
    }
    return out;
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out = "hbar,in_tube_probability,path_tube_mass\n";
    for (const SweepRow& r : rows) {
        out += format_double(r.hbar);
        out.push_back(',');
        out += format_double(r.in_tube_probability);
        out.push_back(',');
        if (r.path_tube_mass) out += format_double(*r.path_tube_mass);
        out.push_back('\n');
    }
    return out;
}

inline std::string histogram_csv(const std::map<int, double>& hist) {
    std::string out = "frames,frequency\n";
    for (const auto& [k, v] : hist) {
        out += (k == kDnfKey) ? "DNF" : std::to_string(k);
        out.push_back(',');
        out += format_double(v);
        out.push_back('\n');
    }
    return out;
}

inline std::string frequencies_csv(const std::map<std::string, double>& freqs) {
    std::string out = "inputs,frequency\n";
    for (const auto& [k, v] : freqs) {
        out.push_back('"');
        out += k;  // input encodings contain no quotes or commas
        out.push_back('"');
        out.push_back(',');
        out += format_double(v);
        out.push_back('\n');
    }
    return out;
}

inline std::string fit_csv(const HbarFit& fit) {
    std::string out = "hbar,kl_divergence\n";
    for (std::size_t i = 0; i < fit.grid.size(); ++i) {
        out += format_double(fit.grid[i]);
        out.push_back(',');
        out += format_double(fit.divergence[i]);
        out.push_back('\n');
    }
    return out;
}

inline std::string screen_csv(const std::map<int, Amplitude>& amps,
                              const std::map<int, double>* born = nullptr,
                              const std::map<int, double>* classical = nullptr) {
    std::string out = "cell,re,im";
    if (born) out += ",prob";
    if (classical) out += ",classical_add";
    out.push_back('\n');
    for (const auto& [cell, amp] : amps) {
        out += std::to_string(cell);
        out.push_back(',');
        out += format_double(amp.real());
        out.push_back(',');
        out += format_double(amp.imag());
        if (born) {
            out.push_back(',');
            auto it = born->find(cell);
            out += format_double(it == born->end() ? 0.0 : it->second);
        }
        if (classical) {
            out.push_back(',');
            auto it = classical->find(cell);
            out += format_double(it == classical->end() ? 0.0 : it->second);
        }
        out.push_back('\n');
    }
    return out;
}

inline std::string branch_events_csv(const WorldsTree& tree) {
    std::string out = "depth,branch_events\n";
    for (const auto& [depth, count] : tree.branch_events()) {
        out += std::to_string(depth);
        out.push_back(',');
        out += std::to_string(count);
        out.push_back('\n');
    }
    return out;
}

// ---- SVG: minimal, dependency-free, timestamp-free line chart

namespace detail {

inline std::string svg_num(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

}  // namespace detail

// Polyline chart of (x, y) points, optionally with log10 x mapping. The
// markup carries no timestamps or environment data, so identical inputs give
// identical bytes.
inline std::string svg_line_chart(const std::string& title,
                                  const std::vector<std::pair<double, double>>& points,
                                  bool log_x = false, const std::string& x_label = "x",
                                  const std::string& y_label = "y") {
    const double w = 640, h = 400, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool first = true;
    auto tx = [&](double x) { return log_x ? std::log10(x) : x; };
    for (const auto& [x, y] : points) {
        const double xv = tx(x);
        if (first) {
            xmin = xmax = xv;
            ymin = ymax = y;
            first = false;
        } else {
            xmin = std::min(xmin, xv);
            xmax = std::max(xmax, xv);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (tx(x) - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" "
           "viewBox=\"0 0 640 400\">\n";
    svg += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
    svg += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"14\">" + title + "</text>\n";
    svg += "<line x1=\"" + detail::svg_num(ml) + "\" y1=\"" + detail::svg_num(h - mb) +
           "\" x2=\"" + detail::svg_num(w - mr) + "\" y2=\"" + detail::svg_num(h - mb) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + detail::svg_num(ml) + "\" y1=\"" + detail::svg_num(mt) + "\" x2=\"" +
           detail::svg_num(ml) + "\" y2=\"" + detail::svg_num(h - mb) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + detail::svg_num((ml + w - mr) / 2) + "\" y=\"" +
           detail::svg_num(h - 12) + "\" text-anchor=\"middle\" font-family=\"monospace\" "
           "font-size=\"12\">" + x_label + (log_x ? " (log10)" : "") + "</text>\n";
    svg += "<text x=\"16\" y=\"" + detail::svg_num((mt + h - mb) / 2) +
           "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " + detail::svg_num((mt + h - mb) / 2) + ")\">" + y_label +
           "</text>\n";
    svg += "<text x=\"" + detail::svg_num(ml) + "\" y=\"" + detail::svg_num(h - mb + 16) +
           "\" font-family=\"monospace\" font-size=\"10\">" + format_double(log_x ? std::pow(10, xmin) : xmin) +
           "</text>\n";
    svg += "<text x=\"" + detail::svg_num(w - mr) + "\" y=\"" + detail::svg_num(h - mb + 16) +
           "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" +
           format_double(log_x ? std::pow(10, xmax) : xmax) + "</text>\n";
    svg += "<text x=\"" + detail::svg_num(ml - 6) + "\" y=\"" + detail::svg_num(h - mb) +
           "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" +
           format_double(ymin) + "</text>\n";
    svg += "<text x=\"" + detail::svg_num(ml - 6) + "\" y=\"" + detail::svg_num(mt + 4) +
           "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"10\">" +
           format_double(ymax) + "</text>\n";
    svg += "<polyline fill=\"none\" stroke=\"#1f6feb\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i) svg.push_back(' ');
        svg += detail::svg_num(px(points[i].first)) + "," + detail::svg_num(py(points[i].second));
    }
    svg += "\"/>\n</svg>\n";
    return svg;
}

// ---- worlds tree exports

inline std::string worlds_to_text(const WorldsTree& tree) {
    std::string out;
    auto walk = [&](auto&& self, std::int32_t node, int depth, const std::string& edge) -> void {
        const auto& n = tree.nodes[static_cast<std::size_t>(node)];
        out.append(static_cast<std::size_t>(depth) * 2, ' ');
        out += (depth == 0 ? "*" : edge);
        out += " count=" + std::to_string(n.count);
        if (n.terminal > 0) out += " terminal=" + std::to_string(n.terminal);
        out.push_back('\n');
        for (int label = 0; label < kInputAlphabet; ++label)
            if (n.child[label] >= 0)
                self(self, n.child[label], depth + 1, encode_input(input_from_label(label)));
    };
    walk(walk, 0, 0, "");
    return out;
}

inline std::string worlds_to_dot(const WorldsTree& tree) {
    std::string out = "digraph worlds {\n  node [shape=circle, fontname=\"monospace\"];\n";
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        out += "  n" + std::to_string(i) + " [label=\"" + std::to_string(n.count);
        if (n.terminal > 0) out += "/" + std::to_string(n.terminal);
        out += "\"];\n";
    }
    for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
        const auto& n = tree.nodes[i];
        for (int label = 0; label < kInputAlphabet; ++label)
            if (n.child[label] >= 0)
                out += "  n" + std::to_string(i) + " -> n" + std::to_string(n.child[label]) +
                       " [label=\"" + encode_input(input_from_label(label)) + "\"];\n";
    }
    out += "}\n";
    return out;
}

}  // namespace pathrun

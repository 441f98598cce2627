#include "nullnet/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace nullnet {

namespace {

using json = nlohmann::ordered_json;

struct RawEdge {
    std::string time;  // empty in two-column mode
    std::string src;
    std::string dst;
};

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line, bool comma) {
    std::vector<std::string> fields;
    if (comma) {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) fields.push_back(trim(tok));
    } else {
        std::stringstream ss(line);
        std::string tok;
        while (ss >> tok) fields.push_back(tok);
    }
    return fields;
}

/// Parses one edge-list file. Records are 2 or 3 fields, consistent within
/// the file; '#' lines and blank lines are skipped.
std::vector<RawEdge> parse_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    std::vector<RawEdge> edges;
    std::string line;
    int lineno = 0;
    int arity = 0;
    bool comma = false, delim_known = false;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        if (!delim_known) {
            comma = stripped.find(',') != std::string::npos;
            delim_known = true;
        }
        const auto fields = split_fields(stripped, comma);
        if (arity == 0) {
            if (fields.size() != 2 && fields.size() != 3)
                throw InputError(path.string() + ":" + std::to_string(lineno) +
                                 ": expected 2 or 3 fields, got " +
                                 std::to_string(fields.size()));
            arity = static_cast<int>(fields.size());
        }
        if (static_cast<int>(fields.size()) != arity)
            throw InputError(path.string() + ":" + std::to_string(lineno) +
                             ": inconsistent field count");
        for (const auto& f : fields)
            if (f.empty())
                throw InputError(path.string() + ":" + std::to_string(lineno) +
                                 ": empty field");
        if (arity == 2) edges.push_back({"", fields[0], fields[1]});
        else edges.push_back({fields[0], fields[1], fields[2]});
    }
    return edges;
}

bool all_numeric(const std::vector<std::string>& keys) {
    for (const auto& k : keys) {
        char* end = nullptr;
        std::strtod(k.c_str(), &end);
        if (end == nullptr || *end != '\0') return false;
    }
    return true;
}

void format_double(std::string& out, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

}  // namespace

LoadedSeries load_snapshots(const std::filesystem::path& path, LoadOptions opts) {
    namespace fs = std::filesystem;
    if (!fs::exists(path)) throw InputError("no such path: " + path.string());

    // (label, edges) per snapshot, in series order
    std::vector<std::pair<std::string, std::vector<RawEdge>>> raw;
    if (fs::is_directory(path)) {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(path))
            if (entry.is_regular_file()) files.push_back(entry.path());
        if (files.empty()) throw InputError("empty directory: " + path.string());
        std::sort(files.begin(), files.end(),
                  [](const fs::path& a, const fs::path& b) {
                      return a.filename().string() < b.filename().string();
                  });
        for (const auto& f : files) {
            auto edges = parse_file(f);
            for (const auto& e : edges)
                if (!e.time.empty())
                    throw InputError(f.string() + ": time column not allowed in "
                                                  "directory mode");
            raw.emplace_back(f.stem().string(), std::move(edges));
        }
    } else {
        auto edges = parse_file(path);
        const bool timed = !edges.empty() && !edges.front().time.empty();
        if (timed) {
            std::vector<std::string> keys;
            std::unordered_map<std::string, std::size_t> slot;
            std::vector<std::vector<RawEdge>> grouped;
            for (auto& e : edges) {
                auto [it, fresh] = slot.try_emplace(e.time, grouped.size());
                if (fresh) {
                    keys.push_back(e.time);
                    grouped.emplace_back();
                }
                grouped[it->second].push_back(std::move(e));
            }
            std::vector<std::size_t> order(keys.size());
            for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
            if (all_numeric(keys)) {
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return std::stod(keys[a]) < std::stod(keys[b]);
                });
            } else {
                std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
                    return keys[a] < keys[b];
                });
            }
            for (std::size_t i : order)
                raw.emplace_back(keys[i], std::move(grouped[i]));
        } else {
            raw.emplace_back(path.stem().string(), std::move(edges));
        }
    }

    LoadedSeries out;
    auto build = [&out](const std::string& label,
                        const std::vector<RawEdge>& edges,
                        const std::vector<std::string>& labels,
                        const std::unordered_map<std::string, int>& index) {
        DirectedGraph g(static_cast<int>(labels.size()));
        for (const auto& e : edges)
            g.add_edge(index.at(e.src), index.at(e.dst));
        g.set_node_labels(labels);
        out.self_loops_dropped += g.self_loops_dropped();
        out.duplicates_collapsed += g.duplicates_collapsed();
        if (g.link_count() == 0)
            out.warnings.push_back("snapshot '" + label + "' has no edges");
        out.series.snapshots.push_back({label, std::move(g)});
    };

    if (opts.per_snapshot_nodes) {
        for (const auto& [label, edges] : raw) {
            std::vector<std::string> labels;
            std::unordered_map<std::string, int> index;
            for (const auto& e : edges) {
                for (const auto* s : {&e.src, &e.dst}) {
                    if (index.try_emplace(*s, static_cast<int>(labels.size())).second)
                        labels.push_back(*s);
                }
            }
            if (labels.empty()) {
                labels.push_back("0");  // placeholder node for an empty snapshot
                index.emplace("0", 0);
            }
            build(label, edges, labels, index);
        }
    } else {
        // union node set, first-seen order across the whole series
        std::vector<std::string> labels;
        std::unordered_map<std::string, int> index;
        for (const auto& [label, edges] : raw) {
            (void)label;
            for (const auto& e : edges) {
                for (const auto* s : {&e.src, &e.dst}) {
                    if (index.try_emplace(*s, static_cast<int>(labels.size())).second)
                        labels.push_back(*s);
                }
            }
        }
        if (labels.empty()) throw InputError("input contains no edges at all");
        for (const auto& [label, edges] : raw) build(label, edges, labels, index);
        out.node_labels = labels;
    }
    return out;
}

void write_reports(const ReportBundle& bundle, const std::filesystem::path& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);

    json root;
    root["meta"] = {{"version", bundle.meta.version},
                    {"seed", bundle.meta.seed},
                    {"config", bundle.meta.config}};
    root["node_labels"] = bundle.node_labels;
    root["snapshots"] = bundle.snapshot_labels;
    root["models"] = json::array();
    for (const auto& rep : bundle.reports) {
        json jm;
        jm["model"] = model_name(rep.model);
        jm["collapse_score"] = rep.collapse;
        jm["segments"] = json::array();
        for (const auto& [lo, hi] : rep.segments) jm["segments"].push_back({lo, hi});
        jm["early_warnings"] = json::array();
        for (const auto& w : rep.warnings) {
            json jw;
            jw["motif"] = w.motif.name();
            jw["events"] = json::array();
            for (const auto& ev : w.events)
                jw["events"].push_back({{"snapshot", ev.snapshot},
                                        {"direction", ev.direction}});
            jm["early_warnings"].push_back(std::move(jw));
        }
        jm["snapshots"] = json::array();
        for (std::size_t t = 0; t < rep.per_snapshot.size(); ++t) {
            const auto& r = rep.per_snapshot[t];
            json js;
            js["label"] = t < bundle.snapshot_labels.size() ? bundle.snapshot_labels[t]
                                                            : std::to_string(t);
            json jf;
            jf["residual"] = r.fit.residual;
            jf["iterations"] = r.fit.iterations;
            jf["converged"] = r.fit.converged;
            jf["degenerate"] = r.fit.degenerate;
            jf["near_saturation"] = r.fit.near_saturation;
            if (r.fit.kind == ModelKind::DRG) {
                jf["p"] = r.fit.p;
            } else {
                jf["x"] = r.fit.x;
                jf["y"] = r.fit.y;
                if (r.fit.kind == ModelKind::RCM) jf["z"] = r.fit.z;
            }
            js["fit"] = std::move(jf);
            js["motifs"] = json::array();
            for (const auto& st : r.stats) {
                json jx;
                jx["motif"] = st.motif.name();
                jx["observed"] = st.observed;
                jx["expected"] = st.expected;
                jx["std"] = st.std_dev;
                if (st.z_defined) jx["z"] = st.z;
                else jx["z"] = nullptr;
                if (st.motif.triadic) jx["sp"] = st.sp;
                js["motifs"].push_back(std::move(jx));
            }
            jm["snapshots"].push_back(std::move(js));
        }
        root["models"].push_back(std::move(jm));
    }
    {
        std::ofstream out(out_dir / "report.json");
        if (!out) throw InputError("cannot write " + (out_dir / "report.json").string());
        out << root.dump(2) << '\n';
    }

    {
        std::string csv = "snapshot,model,motif,observed,expected,std,z,sp\n";
        for (const auto& rep : bundle.reports) {
            for (std::size_t t = 0; t < rep.per_snapshot.size(); ++t) {
                const std::string& label = t < bundle.snapshot_labels.size()
                                               ? bundle.snapshot_labels[t]
                                               : std::to_string(t);
                for (const auto& st : rep.per_snapshot[t].stats) {
                    csv += label;
                    csv += ',';
                    csv += model_name(rep.model);
                    csv += ',';
                    csv += st.motif.name();
                    csv += ',';
                    format_double(csv, st.observed);
                    csv += ',';
                    format_double(csv, st.expected);
                    csv += ',';
                    format_double(csv, st.std_dev);
                    csv += ',';
                    if (st.z_defined) format_double(csv, st.z);
                    csv += ',';
                    if (st.motif.triadic) format_double(csv, st.sp);
                    csv += '\n';
                }
            }
        }
        std::ofstream out(out_dir / "zscores.csv");
        if (!out) throw InputError("cannot write " + (out_dir / "zscores.csv").string());
        out << csv;
    }

    {
        std::string csv = "snapshot,model";
        for (int m = 1; m <= 13; ++m) csv += ",M" + std::to_string(m);
        csv += '\n';
        for (const auto& rep : bundle.reports) {
            for (std::size_t t = 0; t < rep.sp_matrix.size(); ++t) {
                csv += t < bundle.snapshot_labels.size() ? bundle.snapshot_labels[t]
                                                         : std::to_string(t);
                csv += ',';
                csv += model_name(rep.model);
                for (int m = 0; m < 13; ++m) {
                    csv += ',';
                    format_double(csv, rep.sp_matrix[t][m]);
                }
                csv += '\n';
            }
        }
        std::ofstream out(out_dir / "profiles.csv");
        if (!out) throw InputError("cannot write " + (out_dir / "profiles.csv").string());
        out << csv;
    }
}

}  // namespace nullnet

#pragma once

// JSON and CSV forms for bifiltrations, landscapes, datasets and feature matrices.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "zzgril/bifiltration.hpp"
#include "zzgril/error.hpp"
#include "zzgril/landscape.hpp"
#include "zzgril/pipeline.hpp"

namespace zzgril::io {

using nlohmann::json;

inline constexpr const char* kBifiltrationFormat = "zzgril-bifiltration";
inline constexpr int kFormatVersion = 1;

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write " + path.string());
    out << text;
    if (!out) throw DataError("write failed: " + path.string());
}

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw DataError(what + ": malformed JSON: " + e.what());
    }
}

// FNV-1a of a canonical JSON dump, as 16 hex digits.
inline std::string config_hash(const json& config) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---- bifiltration ----

inline json bifiltration_to_json(const QuasiZigzagBifiltration& b, const json& metadata = json::object()) {
    json j;
    j["format"] = kBifiltrationFormat;
    j["version"] = kFormatVersion;
    j["T"] = b.time_steps();
    j["L"] = b.levels();
    j["vertices"] = b.vertices();
    json simplices = json::array();
    for (auto& s : b.universe()) simplices.push_back(s.vertices());
    j["simplices"] = std::move(simplices);
    json columns = json::array();
    for (int t = 0; t < b.time_steps(); ++t) {
        json births = json::array();
        for (auto l : b.births_at_time(t)) births.push_back(l == kAbsent ? json(nullptr) : json(l));
        columns.push_back({{"time", t}, {"births", std::move(births)}});
    }
    j["columns"] = std::move(columns);
    j["metadata"] = metadata;
    return j;
}

inline bool is_bifiltration_json(const json& j) {
    return j.is_object() && j.contains("format") && j["format"] == kBifiltrationFormat;
}

inline QuasiZigzagBifiltration bifiltration_from_json(const json& j) {
    try {
        if (!is_bifiltration_json(j)) throw DataError("not a bifiltration document");
        if (j.at("version").get<int>() != kFormatVersion) throw DataError("unsupported bifiltration version");
        int T = j.at("T").get<int>();
        int L = j.at("L").get<int>();
        std::vector<Simplex> universe;
        for (auto& s : j.at("simplices")) universe.emplace_back(s.get<std::vector<Vertex>>());
        auto& cols = j.at("columns");
        if (static_cast<int>(cols.size()) != T) throw DataError("column count does not match T");
        // the file may list simplices in any order; the bifiltration wants FaceOrder
        std::vector<std::size_t> order(universe.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return FaceOrder{}(universe[a], universe[b]); });
        std::vector<Simplex> sorted;
        for (auto i : order) sorted.push_back(universe[i]);
        std::vector<std::vector<Level>> births;
        for (auto& c : cols) {
            auto& raw = c.at("births");
            if (raw.size() != universe.size()) throw DataError("birth list length does not match simplices");
            std::vector<Level> col;
            for (auto i : order) col.push_back(raw[i].is_null() ? kAbsent : raw[i].get<Level>());
            births.push_back(std::move(col));
        }
        auto b = QuasiZigzagBifiltration(L, std::move(sorted), std::move(births));
        if (j.contains("vertices") && j["vertices"].get<std::vector<Vertex>>() != b.vertices())
            throw DataError("vertex list does not match the simplices");
        return b;
    } catch (const json::exception& e) {
        throw DataError(std::string("bifiltration JSON: ") + e.what());
    } catch (const ParameterError& e) {
        throw DataError(std::string("bifiltration JSON: ") + e.what());
    } catch (const StructuralError& e) {
        throw DataError(std::string("bifiltration JSON: ") + e.what());
    }
}

inline QuasiZigzagBifiltration read_bifiltration(const std::filesystem::path& path) {
    return bifiltration_from_json(parse_json(read_file(path), path.string()));
}

// ---- landscape ----

inline json landscape_to_json(const ZzGrilLandscape& l, const json& metadata = json::object()) {
    json j;
    j["metadata"] = metadata;
    j["grid"] = {{"width", l.grid_width}, {"height", l.grid_height}, {"delta_max", l.delta_max}};
    json centers = json::array();
    for (auto& c : l.centers) centers.push_back({c.x, c.y});
    j["centers"] = std::move(centers);
    j["ks"] = l.ks;
    j["degrees"] = l.degrees;
    json entries = json::array();
    for (auto& e : l.entries())
        entries.push_back({{"cx", e.center.x}, {"cy", e.center.y}, {"k", e.k}, {"degree", e.degree}, {"lambda", e.lambda}});
    j["entries"] = std::move(entries);
    return j;
}

inline std::string landscape_to_csv(const ZzGrilLandscape& l) {
    std::ostringstream out;
    out << "cx,cy,k,degree,lambda\n";
    for (auto& e : l.entries())
        out << e.center.x << ',' << e.center.y << ',' << e.k << ',' << e.degree << ',' << e.lambda << '\n';
    return out.str();
}

// One matrix per (k, degree): rows are center y values (ascending), columns center x values.
// Cells without a center are left empty.
inline std::map<std::pair<int, int>, std::string> landscape_heatmaps(const ZzGrilLandscape& l) {
    std::set<int> xs, ys;
    for (auto& c : l.centers) {
        xs.insert(c.x);
        ys.insert(c.y);
    }
    std::map<std::pair<int, int>, std::string> out;
    for (std::size_t di = 0; di < l.degrees.size(); ++di)
        for (std::size_t ki = 0; ki < l.ks.size(); ++ki) {
            std::map<std::pair<int, int>, int> cell;
            for (std::size_t ci = 0; ci < l.centers.size(); ++ci)
                cell[{l.centers[ci].y, l.centers[ci].x}] = l.value(di, ki, ci);
            std::ostringstream s;
            s << "y\\x";
            for (int x : xs) s << ',' << x;
            s << '\n';
            for (int y : ys) {
                s << y;
                for (int x : xs) {
                    s << ',';
                    auto it = cell.find({y, x});
                    if (it != cell.end()) s << it->second;
                }
                s << '\n';
            }
            out[{l.ks[ki], l.degrees[di]}] = s.str();
        }
    return out;
}

// ---- datasets ----

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline double parse_double(const std::string& text, const std::string& where) {
    auto t = trim(text);
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw DataError(where + ": not a number: '" + t + "'");
    }
    if (used != t.size()) throw DataError(where + ": not a number: '" + t + "'");
    return v;
}

// Rows are channels, columns time steps, no header.
inline Series read_series_csv(const std::filesystem::path& path) {
    std::istringstream in(read_file(path));
    Series out;
    std::string line;
    int row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (trim(line).empty() || trim(line) == "\r") continue;
        std::vector<double> vals;
        auto cells = split_csv_line(line);
        for (std::size_t i = 0; i < cells.size(); ++i)
            vals.push_back(parse_double(cells[i], path.filename().string() + " row " + std::to_string(row) + " col " +
                                                      std::to_string(i + 1)));
        out.push_back(std::move(vals));
    }
    if (out.empty()) throw DataError(path.string() + ": empty series");
    return out;
}

// Every *.csv in the directory except labels.csv is a sample, id = file stem, ordered by id.
// labels.csv (optional) has a header and rows sample_id,label.
inline TimeSeriesDataset read_dataset_dir(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw DataError("not a directory: " + dir.string());
    std::vector<fs::path> files;
    for (auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".csv" && e.path().filename() != "labels.csv")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::map<std::string, std::string> labels;
    auto lpath = dir / "labels.csv";
    if (fs::exists(lpath)) {
        std::istringstream in(read_file(lpath));
        std::string line;
        bool header = true;
        while (std::getline(in, line)) {
            if (trim(line).empty()) continue;
            auto cells = split_csv_line(line);
            if (header) {
                header = false;
                if (cells.size() >= 1 && trim(cells[0]) == "sample_id") continue;
            }
            if (cells.size() != 2) throw DataError("labels.csv: expected sample_id,label rows");
            labels[trim(cells[0])] = trim(cells[1]);
        }
    }
    TimeSeriesDataset ds;
    for (auto& f : files) {
        Sample s;
        s.id = f.stem().string();
        s.data = read_series_csv(f);
        if (auto it = labels.find(s.id); it != labels.end()) s.label = it->second;
        ds.samples.push_back(std::move(s));
    }
    if (ds.samples.empty()) throw DataError("no sample CSV files in " + dir.string());
    ds.validate();
    return ds;
}

inline void write_series_csv(const std::filesystem::path& path, const Series& s) {
    std::ostringstream out;
    out.precision(17);
    for (auto& row : s) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << '\n';
    }
    write_file(path, out.str());
}

// ---- features ----

inline std::string features_to_csv(const FeatureMatrix& fm) {
    std::ostringstream out;
    out << "sample_id,label";
    for (auto& n : fm.column_names) out << ',' << n;
    out << '\n';
    for (std::size_t i = 0; i < fm.rows.size(); ++i) {
        out << fm.ids[i] << ',' << fm.labels[i].value_or("");
        for (int v : fm.rows[i]) out << ',' << v;
        out << '\n';
    }
    return out.str();
}

inline json config_to_json(const WindowConfig& c) {
    return {{"mode", to_string(c.mode)},
            {"width", c.width},
            {"overlap", c.overlap},
            {"percentile", {c.k_lo, c.k_hi}},
            {"levels", c.levels},
            {"max_dim", c.max_dim},
            {"ks", c.ks},
            {"degrees", c.degrees},
            {"centers", c.centers.to_string()},
            {"seed", c.seed},
            {"znormalize", c.znormalize}};
}

// Applies the keys present in j over c. Unknown keys are rejected.
inline void apply_config_json(const json& j, WindowConfig& c) {
    if (!j.is_object()) throw ParameterError("config must be a JSON object");
    try {
        for (auto& [key, v] : j.items()) {
            if (key == "mode")
                c.mode = parse_mode(v.get<std::string>());
            else if (key == "width")
                c.width = v.get<int>();
            else if (key == "overlap")
                c.overlap = v.get<int>();
            else if (key == "percentile") {
                auto r = v.get<std::vector<double>>();
                if (r.size() != 2) throw ParameterError("percentile must be [lo, hi]");
                c.k_lo = r[0];
                c.k_hi = r[1];
            } else if (key == "levels")
                c.levels = v.get<int>();
            else if (key == "max_dim")
                c.max_dim = v.get<int>();
            else if (key == "ks")
                c.ks = v.get<std::vector<int>>();
            else if (key == "degrees")
                c.degrees = v.get<std::vector<int>>();
            else if (key == "centers")
                c.centers = CenterSpec::parse(v.get<std::string>());
            else if (key == "seed")
                c.seed = v.get<std::uint64_t>();
            else if (key == "znormalize")
                c.znormalize = v.get<bool>();
            else if (key == "jobs")
                c.jobs = v.get<unsigned>();
            else
                throw ParameterError("unknown config key: " + key);
        }
    } catch (const json::exception& e) {
        throw ParameterError(std::string("config: ") + e.what());
    }
}

inline json features_meta(const FeatureMatrix& fm, const WindowConfig& c) {
    auto cfg = config_to_json(c);
    return {{"config", cfg},
            {"config_hash", config_hash(cfg)},
            {"samples", fm.rows.size()},
            {"features", fm.column_names.size()},
            {"time_steps", fm.time_steps},
            {"grid", {{"width", fm.grid_width}, {"height", fm.grid_height}}},
            {"window", {{"width", fm.window.width}, {"overlap", fm.window.overlap}}}};
}

}  // namespace zzgril::io

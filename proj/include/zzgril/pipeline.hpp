#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zzgril/bifiltration.hpp"
#include "zzgril/error.hpp"
#include "zzgril/landscape.hpp"
#include "zzgril/simplex.hpp"

namespace zzgril {

// channels x time steps
using Series = std::vector<std::vector<double>>;

struct Sample {
    std::string id;
    Series data;
    std::optional<std::string> label;
};

struct TimeSeriesDataset {
    std::vector<Sample> samples;

    std::size_t channels() const { return samples.empty() ? 0 : samples[0].data.size(); }

    void validate() const {
        for (auto& s : samples) {
            if (s.data.empty()) throw DataError("sample " + s.id + ": no channels");
            if (s.data.size() != channels()) throw DataError("sample " + s.id + ": channel count differs");
            for (auto& row : s.data) {
                if (row.size() != s.data[0].size()) throw DataError("sample " + s.id + ": ragged channels");
                for (double v : row)
                    if (!std::isfinite(v)) throw DataError("sample " + s.id + ": non-finite value");
            }
        }
    }
};

enum class Mode { PointClouds, Graphs };

inline std::string to_string(Mode m) { return m == Mode::Graphs ? "graphs" : "pointclouds"; }

inline Mode parse_mode(const std::string& s) {
    if (s == "graphs" || s == "graph") return Mode::Graphs;
    if (s == "pointclouds" || s == "pointcloud" || s == "pcd") return Mode::PointClouds;
    throw ParameterError("unknown mode: " + s);
}

struct WindowConfig {
    Mode mode = Mode::PointClouds;
    int width = 0;     // 0 selects the mode default
    int overlap = -1;  // -1 selects the mode default
    double k_lo = 65;
    double k_hi = 75;
    int levels = 8;
    int max_dim = 2;
    std::vector<int> ks{1, 2};
    std::vector<int> degrees{0, 1};
    CenterSpec centers{6, 6};
    std::uint64_t seed = 0;
    bool znormalize = false;
    unsigned jobs = 1;

    void validate() const {
        if (width < 0) throw ParameterError("window width must be non-negative");
        if (overlap < -1) throw ParameterError("overlap must be non-negative");
        if (width > 0 && overlap >= width) throw ParameterError("overlap must be smaller than the window width");
        if (!(0 <= k_lo && k_lo <= k_hi && k_hi <= 100)) throw ParameterError("percentile range must satisfy 0 <= lo <= hi <= 100");
        if (levels < 1) throw ParameterError("levels must be positive");
        if (max_dim < 1) throw ParameterError("max_dim must be at least 1");
        if (ks.empty() || degrees.empty()) throw ParameterError("ks and degrees must be non-empty");
        for (int k : ks)
            if (k < 1) throw ParameterError("ks must be positive");
        for (int p : degrees)
            if (p < 0 || p >= max_dim) throw ParameterError("degrees must lie in [0, max_dim)");
        if (centers.rows < 1 || centers.cols < 1) throw ParameterError("center spec must be positive");
        if (jobs < 1) throw ParameterError("jobs must be positive");
    }
};

struct WindowShape {
    int width;
    int overlap;
};

inline WindowShape resolve_window(int n, const WindowConfig& c) {
    int w = c.width;
    if (w == 0) w = c.mode == Mode::PointClouds ? std::max(5, n / 128) : std::min(n / 5, 128);
    int ov = c.overlap;
    if (ov < 0) ov = c.mode == Mode::PointClouds ? std::max(4, (7 * w) / 10) : (7 * w) / 10;
    if (w < 1) throw ParameterError("series too short for the default window (n=" + std::to_string(n) + ")");
    if (ov >= w) throw ParameterError("overlap must be smaller than the window width");
    return {w, ov};
}

inline int window_count(int n, int w, int overlap) {
    if (w > n) throw ParameterError("window width " + std::to_string(w) + " exceeds series length " + std::to_string(n));
    int stride = w - overlap;
    if (stride < 1 || overlap < 0) throw ParameterError("stride must be at least 1");
    return (n - w) / stride + 1;
}

inline std::vector<Series> windows(const Series& series, int w, int overlap) {
    if (series.empty()) throw ParameterError("windows: empty series");
    int n = static_cast<int>(series[0].size());
    int T = window_count(n, w, overlap);
    int stride = w - overlap;
    std::vector<Series> out;
    out.reserve(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) {
        Series win;
        for (auto& row : series)
            win.emplace_back(row.begin() + t * stride, row.begin() + t * stride + w);
        out.push_back(std::move(win));
    }
    return out;
}

// Pearson correlation; 0 when either input is constant.
inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty()) throw ParameterError("pearson: length mismatch");
    double n = static_cast<double>(x.size());
    double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0 || syy == 0) return 0.0;
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

// Complete correlation graph thinned to the top `percent` of edges by correlation (ties by vertex
// pair). Edge weights are the correlations.
inline WeightedGraph pearson_graph(const Series& window, double percent) {
    if (window.size() < 2) throw ParameterError("pearson_graph: need at least two channels");
    if (window[0].size() < 2) throw ParameterError("pearson_graph: need at least two time steps");
    if (!(percent >= 0 && percent <= 100)) throw ParameterError("pearson_graph: percent out of range");
    WeightedGraph g;
    g.num_vertices = window.size();
    std::vector<WeightedEdge> all;
    for (std::size_t i = 0; i < window.size(); ++i)
        for (std::size_t j = i + 1; j < window.size(); ++j)
            all.push_back({static_cast<Vertex>(i), static_cast<Vertex>(j), pearson(window[i], window[j])});
    std::stable_sort(all.begin(), all.end(), [](auto& a, auto& b) { return a.weight > b.weight; });
    auto keep = static_cast<std::size_t>(std::llround(static_cast<double>(all.size()) * percent / 100.0));
    all.resize(std::min(keep, all.size()));
    std::sort(all.begin(), all.end(), [](auto& a, auto& b) { return std::tie(a.u, a.v) < std::tie(b.u, b.v); });
    g.edges = std::move(all);
    return g;
}

inline std::vector<std::vector<double>> pointcloud_embed(const Series& window) { return window; }

inline Series znormalized(const Series& s) {
    Series out = s;
    for (auto& row : out) {
        double n = static_cast<double>(row.size());
        double m = std::accumulate(row.begin(), row.end(), 0.0) / n;
        double v = 0;
        for (double x : row) v += (x - m) * (x - m);
        double sd = std::sqrt(v / n);
        for (double& x : row) x = sd > 0 ? (x - m) / sd : 0.0;
    }
    return out;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Per-sample stream, independent of processing order.
inline std::mt19937_64 sample_rng(std::uint64_t seed, std::size_t sample_index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(sample_index)));
}

inline double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
}

// One LevelFiltration per window. Levels are binned over the sample's pooled filtration values.
inline std::vector<LevelFiltration> sample_filtrations(const Series& raw, const WindowConfig& c, std::mt19937_64& rng) {
    Series series = c.znormalize ? znormalized(raw) : raw;
    if (series.empty() || series[0].empty()) throw DataError("empty sample");
    auto shape = resolve_window(static_cast<int>(series[0].size()), c);
    auto wins = windows(series, shape.width, shape.overlap);
    std::vector<LevelFiltration> out;
    out.reserve(wins.size());
    if (c.mode == Mode::Graphs) {
        std::vector<WeightedGraph> graphs;
        std::vector<double> values;
        for (auto& w : wins) {
            auto g = pearson_graph(w, uniform_real(rng, c.k_lo, c.k_hi));
            for (auto& e : g.edges) {
                e.weight = 1.0 - e.weight;
                values.push_back(e.weight);
            }
            graphs.push_back(std::move(g));
        }
        auto rule = LevelBinning::fit(values, c.levels);
        for (auto& g : graphs) out.push_back(graph_clique_filtration(g, c.levels, c.max_dim, rule));
    } else {
        std::vector<std::vector<std::vector<double>>> clouds;
        std::vector<double> values;
        for (auto& w : wins) {
            clouds.push_back(pointcloud_embed(w));
            auto d = pairwise_distances(clouds.back());
            values.insert(values.end(), d.begin(), d.end());
        }
        auto rule = LevelBinning::fit(values, c.levels);
        for (auto& pts : clouds) out.push_back(rips_level_filtration(pts, c.levels, c.max_dim, rule));
    }
    return out;
}

inline QuasiZigzagBifiltration sample_bifiltration(const Series& raw, const WindowConfig& c, std::uint64_t seed,
                                                   std::size_t sample_index) {
    auto rng = sample_rng(seed, sample_index);
    return QuasiZigzagBifiltration::build(sample_filtrations(raw, c, rng));
}

// Random-walk dataset for benchmarks and smoke runs. Odd samples get correlated channel pairs.
inline TimeSeriesDataset synthetic_dataset(std::uint64_t seed, std::size_t samples, int channels, int length) {
    if (channels < 1 || length < 1) throw ParameterError("synthetic_dataset: sizes must be positive");
    TimeSeriesDataset ds;
    for (std::size_t i = 0; i < samples; ++i) {
        auto rng = sample_rng(seed, i);
        std::normal_distribution<double> nd;
        Series s(static_cast<std::size_t>(channels), std::vector<double>(static_cast<std::size_t>(length)));
        for (std::size_t c = 0; c < s.size(); ++c) {
            double v = 0;
            for (auto& x : s[c]) x = v += nd(rng);
            if (i % 2 == 1 && c % 2 == 1)
                for (std::size_t t = 0; t < s[c].size(); ++t) s[c][t] = 0.7 * s[c - 1][t] + 0.3 * s[c][t];
        }
        ds.samples.push_back({"s" + std::to_string(i), std::move(s), std::to_string(i % 2)});
    }
    return ds;
}

struct FeatureMatrix {
    std::vector<std::string> column_names;
    std::vector<std::string> ids;
    std::vector<std::optional<std::string>> labels;
    std::vector<std::vector<int>> rows;
    int time_steps = 0;
    int grid_width = 0;
    int grid_height = 0;
    WindowShape window{0, 0};
};

inline std::vector<std::string> feature_names(const ZzGrilLandscape& l) {
    std::vector<std::string> out;
    for (int p : l.degrees)
        for (int k : l.ks)
            for (auto& c : l.centers)
                out.push_back("d" + std::to_string(p) + "_k" + std::to_string(k) + "_x" + std::to_string(c.x) + "_y" +
                              std::to_string(c.y));
    return out;
}

inline FeatureMatrix featurize(const TimeSeriesDataset& ds, const WindowConfig& c) {
    c.validate();
    ds.validate();
    FeatureMatrix fm;
    std::size_t n = ds.samples.size();
    fm.rows.resize(n);
    std::vector<ZzGrilLandscape> first(n > 0 ? 1 : 0);
    std::vector<int> steps(n, 0);
    // workers split samples; each landscape runs single-threaded
    parallel_for(n, c.jobs, [&](std::size_t i) {
        auto& s = ds.samples[i];
        try {
            auto b = sample_bifiltration(s.data, c, c.seed, i);
            auto centers = sample_centers(b, c.centers);
            auto l = landscape(b, centers, c.ks, c.degrees, 1);
            fm.rows[i] = l.values;
            steps[i] = b.time_steps();
            if (i == 0) first[0] = std::move(l);
        } catch (const ParameterError& e) {
            throw ParameterError("sample " + s.id + ": " + e.what());
        } catch (const std::exception& e) {
            throw DataError("sample " + s.id + ": " + e.what());
        }
    });
    for (auto& s : ds.samples) {
        fm.ids.push_back(s.id);
        fm.labels.push_back(s.label);
    }
    if (n > 0) {
        fm.column_names = feature_names(first[0]);
        fm.grid_width = first[0].grid_width;
        fm.grid_height = first[0].grid_height;
        fm.time_steps = steps[0];
        fm.window = resolve_window(static_cast<int>(ds.samples[0].data[0].size()), c);
        for (std::size_t i = 0; i < n; ++i)
            if (fm.rows[i].size() != fm.column_names.size())
                throw DataError("sample " + ds.samples[i].id + ": feature length differs from the first sample");
    }
    return fm;
}

}  // namespace zzgril

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "zzgril/error.hpp"
#include "zzgril/f2.hpp"

namespace zzgril {

using Vertex = std::uint32_t;
using Level = int;

// Birth value of a simplex that never appears. Compares greater than every level.
inline constexpr Level kAbsent = std::numeric_limits<Level>::max();

class Simplex {
public:
    Simplex() = default;

    Simplex(std::initializer_list<Vertex> vs) : Simplex(std::vector<Vertex>(vs)) {}

    explicit Simplex(std::vector<Vertex> vs) : vertices_(std::move(vs)) {
        if (vertices_.empty()) throw ParameterError("simplex must have at least one vertex");
        for (std::size_t i = 1; i < vertices_.size(); ++i)
            if (vertices_[i - 1] >= vertices_[i])
                throw ParameterError("simplex vertices must be strictly increasing: " + to_string());
    }

    const std::vector<Vertex>& vertices() const { return vertices_; }
    int dimension() const { return static_cast<int>(vertices_.size()) - 1; }

    std::vector<Simplex> facets() const {
        std::vector<Simplex> out;
        if (vertices_.size() < 2) return out;
        out.reserve(vertices_.size());
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            Simplex f;
            f.vertices_.reserve(vertices_.size() - 1);
            for (std::size_t j = 0; j < vertices_.size(); ++j)
                if (j != i) f.vertices_.push_back(vertices_[j]);
            out.push_back(std::move(f));
        }
        // lexicographic order of facets
        std::reverse(out.begin(), out.end());
        return out;
    }

    bool is_face_of(const Simplex& other) const {
        return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
    }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(vertices_[i]);
        }
        return s + "}";
    }

    friend bool operator==(const Simplex&, const Simplex&) = default;
    friend auto operator<=>(const Simplex& a, const Simplex& b) { return a.vertices_ <=> b.vertices_; }

private:
    std::vector<Vertex> vertices_;
};

// Faces before cofaces: by dimension, then lexicographic.
struct FaceOrder {
    bool operator()(const Simplex& a, const Simplex& b) const {
        if (a.dimension() != b.dimension()) return a.dimension() < b.dimension();
        return a < b;
    }
};

// Throws StructuralError unless every facet of every member is a member. Input must be sorted by FaceOrder.
inline void require_closed(const std::vector<Simplex>& sorted) {
    for (auto& s : sorted)
        for (auto& f : s.facets())
            if (!std::binary_search(sorted.begin(), sorted.end(), f, FaceOrder{}))
                throw StructuralError("complex not closed: " + s.to_string() + " is missing facet " + f.to_string());
}

// Matrix of the p-th boundary map. Rows are (p-1)-simplices, columns p-simplices, both lexicographic.
inline F2Matrix boundary_matrix(std::vector<Simplex> complex, int p) {
    if (p < 0) throw ParameterError("boundary_matrix: negative degree");
    std::sort(complex.begin(), complex.end(), FaceOrder{});
    complex.erase(std::unique(complex.begin(), complex.end()), complex.end());
    require_closed(complex);
    std::vector<Simplex> rows, cols;
    for (auto& s : complex) {
        if (s.dimension() == p - 1) rows.push_back(s);
        if (s.dimension() == p) cols.push_back(s);
    }
    F2Matrix m(rows.size(), 0);
    for (auto& c : cols) {
        F2Column col;
        for (auto& f : c.facets()) {
            auto it = std::lower_bound(rows.begin(), rows.end(), f);
            col.push_back(static_cast<std::uint32_t>(it - rows.begin()));
        }
        std::sort(col.begin(), col.end());
        m.append(std::move(col));
    }
    return m;
}

class LevelFiltration {
public:
    LevelFiltration() = default;

    // Entries may list ABSENT simplices; duplicates are rejected.
    LevelFiltration(int levels, std::vector<std::pair<Simplex, Level>> entries) : levels_(levels) {
        if (levels < 1) throw ParameterError("LevelFiltration: levels must be positive");
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) { return FaceOrder{}(a.first, b.first); });
        universe_.reserve(entries.size());
        births_.reserve(entries.size());
        for (auto& [s, b] : entries) {
            if (!universe_.empty() && universe_.back() == s)
                throw ParameterError("LevelFiltration: duplicate simplex " + s.to_string());
            if (b != kAbsent && (b < 1 || b > levels))
                throw ParameterError("LevelFiltration: level out of range for " + s.to_string());
            universe_.push_back(std::move(s));
            births_.push_back(b);
        }
        for (std::size_t i = 0; i < universe_.size(); ++i) {
            if (births_[i] == kAbsent) continue;
            for (auto& f : universe_[i].facets()) {
                Level fb = birth(f);
                if (fb == kAbsent || fb > births_[i])
                    throw StructuralError("filtration not closure-monotone at " + universe_[i].to_string() +
                                          " (facet " + f.to_string() + ")");
            }
        }
    }

    int levels() const { return levels_; }
    const std::vector<Simplex>& universe() const { return universe_; }
    const std::vector<Level>& births() const { return births_; }

    Level birth(const Simplex& s) const {
        auto it = std::lower_bound(universe_.begin(), universe_.end(), s, FaceOrder{});
        if (it == universe_.end() || *it != s) return kAbsent;
        return births_[static_cast<std::size_t>(it - universe_.begin())];
    }

    std::vector<Simplex> sublevel(Level y) const {
        std::vector<Simplex> out;
        for (std::size_t i = 0; i < universe_.size(); ++i)
            if (births_[i] <= y) out.push_back(universe_[i]);
        return out;
    }

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        for (auto& s : universe_)
            if (s.dimension() == 0) out.push_back(s.vertices()[0]);
        return out;
    }

private:
    int levels_ = 0;
    std::vector<Simplex> universe_;
    std::vector<Level> births_;
};

// Uniform binning of [lo, hi] into L levels: level l covers (lo + (l-1)h, lo + l h] with h = (hi-lo)/L,
// i.e. the ceiling of the scaled value. lo itself is level 1; a degenerate range maps everything to 1.
class LevelBinning {
public:
    LevelBinning(double lo, double hi, int levels) : lo_(lo), hi_(hi), levels_(levels) {
        if (levels < 1) throw ParameterError("LevelBinning: levels must be positive");
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw ParameterError("LevelBinning: invalid range");
    }

    static LevelBinning fit(const std::vector<double>& values, int levels) {
        if (values.empty()) return LevelBinning(0.0, 0.0, levels);
        auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        return LevelBinning(*mn, *mx, levels);
    }

    int levels() const { return levels_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }

    double upper_edge(int l) const {
        if (l >= levels_) return hi_;
        return lo_ + (hi_ - lo_) * static_cast<double>(l) / static_cast<double>(levels_);
    }

    Level operator()(double v) const {
        if (!std::isfinite(v)) throw ParameterError("LevelBinning: non-finite value");
        if (hi_ <= lo_ || v <= lo_) return 1;
        if (v >= hi_) return levels_;
        int l = static_cast<int>(std::ceil((v - lo_) / (hi_ - lo_) * levels_));
        l = std::clamp(l, 1, levels_);
        while (l > 1 && v <= upper_edge(l - 1)) --l;
        while (l < levels_ && v > upper_edge(l)) ++l;
        return l;
    }

private:
    double lo_, hi_;
    int levels_;
};

struct WeightedEdge {
    Vertex u, v;
    double weight;
};

struct WeightedGraph {
    std::size_t num_vertices = 0;
    std::vector<WeightedEdge> edges;
};

namespace detail {

// Flag complex of a graph given by a dense matrix of edge levels (kAbsent = no edge), up to max_dim.
inline std::vector<std::pair<Simplex, Level>> flag_complex(const std::vector<std::vector<Level>>& edge_level,
                                                           int max_dim) {
    std::size_t n = edge_level.size();
    std::vector<std::pair<Simplex, Level>> out;
    std::vector<std::pair<std::vector<Vertex>, Level>> layer;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back(Simplex{static_cast<Vertex>(i)}, 1);
        layer.push_back({{static_cast<Vertex>(i)}, 1});
    }
    for (int d = 1; d <= max_dim && !layer.empty(); ++d) {
        std::vector<std::pair<std::vector<Vertex>, Level>> next;
        for (auto& [vs, b] : layer) {
            for (std::size_t w = vs.back() + 1; w < n; ++w) {
                Level nb = b;
                bool ok = true;
                for (auto v : vs) {
                    Level e = edge_level[v][w];
                    if (e == kAbsent) {
                        ok = false;
                        break;
                    }
                    nb = std::max(nb, e);
                }
                if (!ok) continue;
                auto ext = vs;
                ext.push_back(static_cast<Vertex>(w));
                next.push_back({std::move(ext), nb});
            }
        }
        for (auto& [vs, b] : next) out.emplace_back(Simplex(vs), b);
        layer = std::move(next);
    }
    return out;
}

}  // namespace detail

inline LevelFiltration graph_clique_filtration(const WeightedGraph& g, int levels, int max_dim,
                                               const LevelBinning& rule) {
    if (levels < 1) throw ParameterError("graph_clique_filtration: levels must be positive");
    if (max_dim < 1) throw ParameterError("graph_clique_filtration: max_dim must be at least 1");
    if (rule.levels() != levels) throw ParameterError("graph_clique_filtration: rule has different level count");
    std::vector<std::vector<Level>> lv(g.num_vertices, std::vector<Level>(g.num_vertices, kAbsent));
    for (auto& e : g.edges) {
        if (e.u >= g.num_vertices || e.v >= g.num_vertices || e.u == e.v)
            throw ParameterError("graph_clique_filtration: invalid edge");
        if (lv[e.u][e.v] != kAbsent) throw ParameterError("graph_clique_filtration: duplicate edge");
        lv[e.u][e.v] = lv[e.v][e.u] = rule(e.weight);
    }
    return LevelFiltration(levels, detail::flag_complex(lv, max_dim));
}

inline LevelFiltration graph_clique_filtration(const WeightedGraph& g, int levels, int max_dim) {
    std::vector<double> ws;
    for (auto& e : g.edges) ws.push_back(e.weight);
    return graph_clique_filtration(g, levels, max_dim, LevelBinning::fit(ws, levels));
}

inline double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

inline std::vector<double> pairwise_distances(const std::vector<std::vector<double>>& points) {
    std::vector<double> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j) out.push_back(euclidean(points[i], points[j]));
    return out;
}

inline LevelFiltration rips_level_filtration(const std::vector<std::vector<double>>& points, int levels,
                                             int max_dim, const LevelBinning& rule) {
    if (points.empty()) throw ParameterError("rips_level_filtration: no points");
    if (levels < 1) throw ParameterError("rips_level_filtration: levels must be positive");
    if (max_dim < 0) throw ParameterError("rips_level_filtration: negative max_dim");
    if (rule.levels() != levels) throw ParameterError("rips_level_filtration: rule has different level count");
    for (auto& p : points)
        if (p.size() != points[0].size()) throw ParameterError("rips_level_filtration: mixed dimensions");
    std::size_t n = points.size();
    std::vector<std::vector<Level>> lv(n, std::vector<Level>(n, kAbsent));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) lv[i][j] = lv[j][i] = rule(euclidean(points[i], points[j]));
    return LevelFiltration(levels, detail::flag_complex(lv, max_dim));
}

inline LevelFiltration rips_level_filtration(const std::vector<std::vector<double>>& points, int levels,
                                             int max_dim) {
    if (points.empty()) throw ParameterError("rips_level_filtration: no points");
    return rips_level_filtration(points, levels, max_dim, LevelBinning::fit(pairwise_distances(points), levels));
}

}  // namespace zzgril

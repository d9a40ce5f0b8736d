#pragma once

// Seeded random inputs for property tests, oracle checks and benchmarks.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "zzgril/bifiltration.hpp"
#include "zzgril/error.hpp"
#include "zzgril/simplex.hpp"
#include "zzgril/zigzag.hpp"

namespace zzgril {

inline std::uint64_t uniform_index(std::mt19937_64& rng, std::uint64_t n) { return n == 0 ? 0 : rng() % n; }

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {
    return lo + static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline bool coin(std::mt19937_64& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

struct InstanceParams {
    int max_vertices = 6;
    int max_time_steps = 4;
    int max_levels = 4;
    int max_dim = 2;
    double edge_probability = 0.6;
    double change_probability = 0.4;  // per edge, between consecutive time steps
    double late_vertex_probability = 0.2;
};

// T level filtrations over a shared vertex set. Consecutive steps share most edges so the zigzag
// carries persistent features; vertices are occasionally born late.
inline std::vector<LevelFiltration> random_filtrations(std::mt19937_64& rng, const InstanceParams& ip) {
    if (ip.max_vertices < 1 || ip.max_time_steps < 1 || ip.max_levels < 1 || ip.max_dim < 1)
        throw ParameterError("random_filtrations: sizes must be positive");
    int n = uniform_int(rng, 1, ip.max_vertices);
    int T = uniform_int(rng, 1, ip.max_time_steps);
    int L = uniform_int(rng, 1, ip.max_levels);
    auto fresh_vertex = [&] { return coin(rng, ip.late_vertex_probability) ? uniform_int(rng, 1, L) : 1; };
    auto fresh_edge = [&] { return coin(rng, ip.edge_probability) ? uniform_int(rng, 1, L) : kAbsent; };
    std::vector<Level> vb(static_cast<std::size_t>(n));
    std::vector<std::vector<Level>> eb(static_cast<std::size_t>(n), std::vector<Level>(static_cast<std::size_t>(n), kAbsent));
    for (auto& v : vb) v = fresh_vertex();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) eb[i][j] = fresh_edge();
    std::vector<LevelFiltration> out;
    for (int t = 0; t < T; ++t) {
        if (t > 0) {
            for (auto& v : vb)
                if (coin(rng, ip.change_probability / 2)) v = fresh_vertex();
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (coin(rng, ip.change_probability)) eb[i][j] = fresh_edge();
        }
        std::vector<std::vector<Level>> lv(static_cast<std::size_t>(n), std::vector<Level>(static_cast<std::size_t>(n), kAbsent));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (eb[i][j] != kAbsent) lv[i][j] = lv[j][i] = std::max({eb[i][j], vb[i], vb[j]});
        auto entries = detail::flag_complex(lv, ip.max_dim);
        for (auto& [s, b] : entries) {
            if (s.dimension() == 0) b = vb[s.vertices()[0]];
            for (auto v : s.vertices()) b = std::max(b, vb[v]);
        }
        out.emplace_back(L, std::move(entries));
    }
    return out;
}

inline QuasiZigzagBifiltration random_bifiltration(std::mt19937_64& rng, const InstanceParams& ip) {
    return QuasiZigzagBifiltration::build(random_filtrations(rng, ip));
}

// Legal closed zigzag filtration on at most max_vertices vertices and at most max_ops ops.
inline ZigzagFiltration random_zigzag(std::mt19937_64& rng, int max_ops, int max_vertices, int max_dim = 2) {
    if (max_ops < 2 || max_vertices < 1) throw ParameterError("random_zigzag: sizes too small");
    ZigzagFiltration f;
    std::set<Simplex> present;
    auto addable = [&] {
        std::vector<Simplex> out;
        for (int v = 0; v < max_vertices; ++v) {
            Simplex s{static_cast<Vertex>(v)};
            if (!present.count(s)) out.push_back(s);
        }
        for (auto& s : present) {
            if (s.dimension() >= max_dim) continue;
            for (int v = static_cast<int>(s.vertices().back()) + 1; v < max_vertices; ++v) {
                auto vs = s.vertices();
                vs.push_back(static_cast<Vertex>(v));
                Simplex c(vs);
                if (present.count(c)) continue;
                auto fs = c.facets();
                if (std::all_of(fs.begin(), fs.end(), [&](auto& x) { return present.count(x) > 0; })) out.push_back(c);
            }
        }
        return out;
    };
    auto removable = [&] {
        std::vector<Simplex> out;
        for (auto& s : present) {
            bool free = std::none_of(present.begin(), present.end(),
                                     [&](auto& c) { return c.dimension() == s.dimension() + 1 && s.is_face_of(c); });
            if (free) out.push_back(s);
        }
        return out;
    };
    while (static_cast<int>(f.ops.size() + present.size()) < max_ops - 1) {
        bool grow = present.empty() || coin(rng, 0.6);
        auto cands = grow ? addable() : removable();
        if (cands.empty()) break;
        auto s = cands[uniform_index(rng, cands.size())];
        if (grow) {
            present.insert(s);
            f.ops.push_back({OpKind::Insert, s});
        } else {
            present.erase(s);
            f.ops.push_back({OpKind::Delete, s});
        }
    }
    std::vector<Simplex> rest(present.begin(), present.end());
    std::sort(rest.begin(), rest.end(), FaceOrder{});
    for (auto it = rest.rbegin(); it != rest.rend(); ++it) f.ops.push_back({OpKind::Delete, *it});
    return f;
}

}  // namespace zzgril

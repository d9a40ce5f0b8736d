#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <vector>

#include "zzgril/error.hpp"
#include "zzgril/simplex.hpp"

namespace zzgril {

// x in [0, 2T-2]: even x is time x/2, odd x the union of its two neighbours. y in [1, L].
struct GridPoint {
    int x = 0;
    int y = 1;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
    friend auto operator<=>(const GridPoint&, const GridPoint&) = default;

    std::string to_string() const { return "(" + std::to_string(x) + "," + std::to_string(y) + ")"; }
};

// Order of the quasi-zigzag grid: y is a plain order; an even column sits below both odd neighbours.
inline bool zz_leq(GridPoint a, GridPoint b) {
    if (a.y > b.y) return false;
    if (a.x == b.x) return true;
    return a.x % 2 == 0 && std::abs(a.x - b.x) == 1;
}

struct ArrowDelta {
    std::vector<Simplex> inserted;
    std::vector<Simplex> deleted;
};

class QuasiZigzagBifiltration {
public:
    QuasiZigzagBifiltration() = default;

    static QuasiZigzagBifiltration build(const std::vector<LevelFiltration>& filtrations) {
        if (filtrations.empty()) throw ParameterError("build: no filtrations");
        int L = filtrations[0].levels();
        auto verts = filtrations[0].vertices();
        for (std::size_t t = 1; t < filtrations.size(); ++t) {
            if (filtrations[t].levels() != L) throw ParameterError("build: filtrations disagree on level count");
            if (filtrations[t].vertices() != verts)
                throw ParameterError("build: filtrations disagree on the vertex universe");
        }
        std::vector<Simplex> universe;
        for (auto& f : filtrations) {
            std::vector<Simplex> merged;
            std::vector<Simplex> present;
            for (std::size_t i = 0; i < f.universe().size(); ++i)
                if (f.births()[i] != kAbsent || f.universe()[i].dimension() == 0) present.push_back(f.universe()[i]);
            std::set_union(universe.begin(), universe.end(), present.begin(), present.end(),
                           std::back_inserter(merged), FaceOrder{});
            universe = std::move(merged);
        }
        std::vector<std::vector<Level>> births(filtrations.size(), std::vector<Level>(universe.size(), kAbsent));
        for (std::size_t t = 0; t < filtrations.size(); ++t) {
            auto& f = filtrations[t];
            std::size_t j = 0;
            for (std::size_t i = 0; i < f.universe().size(); ++i) {
                while (j < universe.size() && FaceOrder{}(universe[j], f.universe()[i])) ++j;
                if (j < universe.size() && universe[j] == f.universe()[i]) births[t][j] = f.births()[i];
            }
        }
        return QuasiZigzagBifiltration(L, std::move(universe), std::move(births));
    }

    // Direct construction from per-time birth tables over a shared universe (sorted by FaceOrder).
    QuasiZigzagBifiltration(int levels, std::vector<Simplex> universe, std::vector<std::vector<Level>> births)
        : L_(levels), universe_(std::move(universe)), births_(std::move(births)) {
        if (L_ < 1) throw ParameterError("bifiltration: levels must be positive");
        if (births_.empty()) throw ParameterError("bifiltration: no time steps");
        for (std::size_t i = 1; i < universe_.size(); ++i)
            if (!FaceOrder{}(universe_[i - 1], universe_[i]))
                throw ParameterError("bifiltration: universe not strictly sorted");
        for (auto& b : births_) {
            if (b.size() != universe_.size()) throw ParameterError("bifiltration: birth table size mismatch");
            for (auto l : b)
                if (l != kAbsent && (l < 1 || l > L_)) throw ParameterError("bifiltration: level out of range");
        }
        index_();
    }

    int time_steps() const { return static_cast<int>(births_.size()); }
    int levels() const { return L_; }
    int width() const { return 2 * time_steps() - 1; }
    int height() const { return L_; }

    const std::vector<Simplex>& universe() const { return universe_; }
    std::size_t size() const { return universe_.size(); }
    int dimension(std::size_t id) const { return dims_[id]; }
    const std::vector<Level>& births_at_time(int t) const { return births_[static_cast<std::size_t>(t)]; }

    const std::uint32_t* facets_begin(std::size_t id) const { return facet_ids_.data() + facet_offsets_[id]; }
    std::size_t num_facets(std::size_t id) const { return facet_offsets_[id + 1] - facet_offsets_[id]; }

    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        for (auto& s : universe_)
            if (s.dimension() == 0) out.push_back(s.vertices()[0]);
        return out;
    }

    bool in_grid(GridPoint p) const { return p.x >= 0 && p.x < width() && p.y >= 1 && p.y <= L_; }

    void require_in_grid(GridPoint p) const {
        if (!in_grid(p)) throw ParameterError("grid point " + p.to_string() + " outside the grid");
    }

    Level birth(int x, std::size_t id) const {
        if (x % 2 == 0) return births_[static_cast<std::size_t>(x / 2)][id];
        return std::min(births_[static_cast<std::size_t>(x / 2)][id], births_[static_cast<std::size_t>(x / 2 + 1)][id]);
    }

    std::size_t id_of(const Simplex& s) const {
        auto it = std::lower_bound(universe_.begin(), universe_.end(), s, FaceOrder{});
        if (it == universe_.end() || *it != s) return universe_.size();
        return static_cast<std::size_t>(it - universe_.begin());
    }

    Level birth(int x, const Simplex& s) const {
        auto id = id_of(s);
        return id == universe_.size() ? kAbsent : birth(x, id);
    }

    // Ids of the complex at p, ascending (faces first).
    std::vector<std::uint32_t> complex_ids_at(GridPoint p) const {
        require_in_grid(p);
        std::vector<std::uint32_t> out;
        if (p.x % 2 == 0) {
            prefix_(p.x / 2, p.y, out);
            std::sort(out.begin(), out.end());
            return out;
        }
        std::vector<std::uint32_t> a, b;
        prefix_(p.x / 2, p.y, a);
        prefix_(p.x / 2 + 1, p.y, b);
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
        return out;
    }

    std::vector<Simplex> complex_at(GridPoint p) const { return to_simplices_(complex_ids_at(p)); }

    // Symmetric difference for one grid step, both lists ascending by id.
    void arrow_delta_ids(GridPoint from, GridPoint to, std::vector<std::uint32_t>& inserted,
                         std::vector<std::uint32_t>& deleted) const {
        require_in_grid(from);
        require_in_grid(to);
        inserted.clear();
        deleted.clear();
        int dx = to.x - from.x, dy = to.y - from.y;
        if (std::abs(dx) + std::abs(dy) != 1)
            throw ParameterError("arrow_delta: " + from.to_string() + " and " + to.to_string() + " are not adjacent");
        if (dx == 0) {
            auto& out = dy > 0 ? inserted : deleted;
            born_at_(from.x, std::max(from.y, to.y), out);
            return;
        }
        bool up = from.x % 2 == 0;  // even -> odd is an inclusion
        int even = up ? from.x : to.x;
        int odd = up ? to.x : from.x;
        int other = 2 * odd - even;
        auto& out = up ? inserted : deleted;
        auto& be = births_[static_cast<std::size_t>(even / 2)];
        auto& bo = births_[static_cast<std::size_t>(other / 2)];
        int y = from.y;
        for (auto id : diff_[static_cast<std::size_t>(std::min(even, other) / 2)])
            if (bo[id] <= y && y < be[id]) out.push_back(id);
    }

    ArrowDelta arrow_delta(GridPoint from, GridPoint to) const {
        std::vector<std::uint32_t> ins, del;
        arrow_delta_ids(from, to, ins, del);
        return {to_simplices_(ins), to_simplices_(del)};
    }

private:
    void index_() {
        dims_.resize(universe_.size());
        facet_offsets_.assign(1, 0);
        for (std::size_t i = 0; i < universe_.size(); ++i) {
            dims_[i] = universe_[i].dimension();
            for (auto& f : universe_[i].facets()) {
                auto id = id_of(f);
                if (id == universe_.size())
                    throw StructuralError("bifiltration: universe misses facet " + f.to_string() + " of " +
                                          universe_[i].to_string());
                facet_ids_.push_back(static_cast<std::uint32_t>(id));
            }
            facet_offsets_.push_back(facet_ids_.size());
        }
        for (auto& b : births_)
            for (std::size_t i = 0; i < universe_.size(); ++i) {
                if (b[i] == kAbsent) continue;
                for (auto k = facet_offsets_[i]; k < facet_offsets_[i + 1]; ++k)
                    if (b[facet_ids_[k]] > b[i])
                        throw StructuralError("bifiltration: births not closure-monotone at " + universe_[i].to_string());
            }
        std::size_t T = births_.size();
        by_level_.assign(T, {});
        level_start_.assign(T, std::vector<std::size_t>(static_cast<std::size_t>(L_) + 2, 0));
        for (std::size_t t = 0; t < T; ++t) {
            auto& b = births_[t];
            auto& order = by_level_[t];
            auto& start = level_start_[t];
            for (std::size_t i = 0; i < universe_.size(); ++i)
                if (b[i] != kAbsent) ++start[static_cast<std::size_t>(b[i]) + 1];
            for (std::size_t l = 1; l < start.size(); ++l) start[l] += start[l - 1];
            order.resize(start.back());
            auto pos = start;
            for (std::size_t i = 0; i < universe_.size(); ++i)
                if (b[i] != kAbsent) order[pos[static_cast<std::size_t>(b[i])]++] = static_cast<std::uint32_t>(i);
        }
        diff_.assign(T > 0 ? T - 1 : 0, {});
        for (std::size_t t = 0; t + 1 < T; ++t)
            for (std::size_t i = 0; i < universe_.size(); ++i)
                if (births_[t][i] != births_[t + 1][i]) diff_[t].push_back(static_cast<std::uint32_t>(i));
    }

    // Ids born at level <= y at time t, grouped by level.
    void prefix_(int t, int y, std::vector<std::uint32_t>& out) const {
        auto& order = by_level_[static_cast<std::size_t>(t)];
        auto end = level_start_[static_cast<std::size_t>(t)][static_cast<std::size_t>(y) + 1];
        out.insert(out.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(end));
    }

    // Ids whose birth in column x equals y, ascending.
    void born_at_(int x, int y, std::vector<std::uint32_t>& out) const {
        auto bucket = [&](int t) {
            auto& order = by_level_[static_cast<std::size_t>(t)];
            auto& start = level_start_[static_cast<std::size_t>(t)];
            return std::pair{order.begin() + static_cast<std::ptrdiff_t>(start[static_cast<std::size_t>(y)]),
                             order.begin() + static_cast<std::ptrdiff_t>(start[static_cast<std::size_t>(y) + 1])};
        };
        if (x % 2 == 0) {
            auto [b, e] = bucket(x / 2);
            out.assign(b, e);
            return;
        }
        int tl = x / 2, tr = x / 2 + 1;
        auto& bl = births_[static_cast<std::size_t>(tl)];
        auto& br = births_[static_cast<std::size_t>(tr)];
        auto [lb, le] = bucket(tl);
        auto [rb, re] = bucket(tr);
        while (lb != le || rb != re) {
            if (lb != le && (rb == re || *lb < *rb)) {
                if (br[*lb] >= y) out.push_back(*lb);
                ++lb;
            } else if (lb != le && *lb == *rb) {
                out.push_back(*lb);
                ++lb;
                ++rb;
            } else {
                if (bl[*rb] > y) out.push_back(*rb);
                ++rb;
            }
        }
    }

    std::vector<Simplex> to_simplices_(const std::vector<std::uint32_t>& ids) const {
        std::vector<Simplex> out;
        out.reserve(ids.size());
        for (auto id : ids) out.push_back(universe_[id]);
        return out;
    }

    int L_ = 0;
    std::vector<Simplex> universe_;
    std::vector<std::vector<Level>> births_;
    std::vector<int> dims_;
    std::vector<std::size_t> facet_offsets_;
    std::vector<std::uint32_t> facet_ids_;
    std::vector<std::vector<std::uint32_t>> by_level_;
    std::vector<std::vector<std::size_t>> level_start_;
    std::vector<std::vector<std::uint32_t>> diff_;
};

}  // namespace zzgril

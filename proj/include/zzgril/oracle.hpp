#pragma once

// Slow reference computations used to check the fast paths: simplicial homology over F2, induced
// maps, the limit-to-colimit rank over finite subposets of the grid, explicit union complexes and
// a finite-grid erosion distance.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <vector>

#include "zzgril/bifiltration.hpp"
#include "zzgril/error.hpp"
#include "zzgril/f2.hpp"
#include "zzgril/simplex.hpp"
#include "zzgril/worms.hpp"

namespace zzgril {

class HomologyBasis {
public:
    HomologyBasis() = default;

    HomologyBasis(std::vector<Simplex> complex, int p) : degree_(p) {
        std::sort(complex.begin(), complex.end(), FaceOrder{});
        complex.erase(std::unique(complex.begin(), complex.end()), complex.end());
        for (auto& s : complex)
            if (s.dimension() == p) simplices_.push_back(s);
        owner_.assign(simplices_.size(), -1);
        auto bd = reduce(boundary_matrix(complex, p + 1));
        for (auto& c : bd.reduced.columns())
            if (!c.empty()) push_(c, -1);
        for (auto& z : kernel_basis(boundary_matrix(complex, p))) {
            F2Column rem = z;
            while (!rem.empty() && owner_[rem.back()] >= 0)
                add_into(rem, table_[static_cast<std::size_t>(owner_[rem.back()])]);
            if (rem.empty()) continue;
            push_(rem, static_cast<int>(reps_.size()));
            reps_.push_back(rem);
        }
    }

    int degree() const { return degree_; }
    std::size_t dim() const { return reps_.size(); }

    // Coordinate basis for chains: the p-simplices in lexicographic order.
    const std::vector<Simplex>& simplices() const { return simplices_; }
    const std::vector<F2Column>& representatives() const { return reps_; }

    // Coordinates of a cycle's class in the representative basis.
    F2Column coordinates(F2Column cycle) const {
        F2Column coords;
        while (!cycle.empty()) {
            auto o = owner_[cycle.back()];
            if (o < 0) throw ParameterError("HomologyBasis::coordinates: chain is not a cycle");
            add_into(cycle, table_[static_cast<std::size_t>(o)]);
            if (rep_of_[static_cast<std::size_t>(o)] >= 0)
                coords.push_back(static_cast<std::uint32_t>(rep_of_[static_cast<std::size_t>(o)]));
        }
        std::sort(coords.begin(), coords.end());
        return coords;
    }

    std::int64_t index_of(const Simplex& s) const {
        auto it = std::lower_bound(simplices_.begin(), simplices_.end(), s);
        if (it == simplices_.end() || *it != s) return -1;
        return it - simplices_.begin();
    }

private:
    void push_(const F2Column& c, int rep) {
        owner_[c.back()] = static_cast<std::int64_t>(table_.size());
        table_.push_back(c);
        rep_of_.push_back(rep);
    }

    int degree_ = 0;
    std::vector<Simplex> simplices_;
    std::vector<F2Column> reps_;
    std::vector<F2Column> table_;  // boundaries and representatives with distinct pivots
    std::vector<int> rep_of_;
    std::vector<std::int64_t> owner_;
};

inline HomologyBasis homology(const std::vector<Simplex>& complex, int p) { return HomologyBasis(complex, p); }

// Matrix of H_p(K) -> H_p(K') for bases already computed on both sides.
inline F2Matrix induced_map(const HomologyBasis& from, const HomologyBasis& to) {
    F2Matrix m(to.dim(), 0);
    for (auto& rep : from.representatives()) {
        F2Column pushed;
        for (auto i : rep) {
            auto j = to.index_of(from.simplices()[i]);
            if (j < 0) throw ParameterError("induced_map: source is not a subcomplex of the target");
            pushed.push_back(static_cast<std::uint32_t>(j));
        }
        std::sort(pushed.begin(), pushed.end());
        m.append(to.coordinates(std::move(pushed)));
    }
    return m;
}

inline F2Matrix induced_map(const std::vector<Simplex>& k, const std::vector<Simplex>& k2, int p) {
    std::set<Simplex> big(k2.begin(), k2.end());
    for (auto& s : k)
        if (!big.count(s)) throw ParameterError("induced_map: " + s.to_string() + " is not in the target complex");
    return induced_map(homology(k, p), homology(k2, p));
}

// Homology of a bi-filtration at every grid point with induced maps between comparable points,
// computed lazily from explicit complexes.
class PosetDiagram {
public:
    PosetDiagram(const QuasiZigzagBifiltration& b, int p) : b_(b), p_(p) {}

    int degree() const { return p_; }

    const HomologyBasis& space(GridPoint q) {
        auto it = spaces_.find(q);
        if (it == spaces_.end()) it = spaces_.emplace(q, homology(b_.complex_at(q), p_)).first;
        return it->second;
    }

    const F2Matrix& map(GridPoint a, GridPoint c) {
        if (!zz_leq(a, c)) throw ParameterError("PosetDiagram::map: points are not comparable");
        auto key = std::pair{a, c};
        auto it = maps_.find(key);
        if (it == maps_.end()) {
            auto& sa = space(a);
            auto& sc = space(c);
            it = maps_.emplace(key, induced_map(sa, sc)).first;
        }
        return it->second;
    }

private:
    const QuasiZigzagBifiltration& b_;
    int p_;
    std::map<GridPoint, HomologyBasis> spaces_;
    std::map<std::pair<GridPoint, GridPoint>, F2Matrix> maps_;
};

inline bool comparability_connected(const std::vector<GridPoint>& pts) {
    if (pts.empty()) return false;
    std::vector<char> seen(pts.size(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        auto i = stack.back();
        stack.pop_back();
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (!seen[j] && (zz_leq(pts[i], pts[j]) || zz_leq(pts[j], pts[i]))) {
                seen[j] = 1;
                stack.push_back(j);
            }
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

// Rank of the canonical map lim -> colim of the diagram restricted to sub, using every comparable
// pair of sub as a relation.
inline std::size_t brute_rank(PosetDiagram& d, std::vector<GridPoint> sub) {
    std::sort(sub.begin(), sub.end());
    sub.erase(std::unique(sub.begin(), sub.end()), sub.end());
    if (!comparability_connected(sub)) throw ParameterError("brute_rank: subposet is empty or disconnected");
    std::vector<std::size_t> offset(sub.size() + 1, 0);
    for (std::size_t i = 0; i < sub.size(); ++i) offset[i + 1] = offset[i] + d.space(sub[i]).dim();
    std::size_t total = offset.back();
    if (total == 0) return 0;

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < sub.size(); ++i)
        for (std::size_t j = 0; j < sub.size(); ++j)
            if (i != j && zz_leq(sub[i], sub[j])) pairs.emplace_back(i, j);

    // limit: sections s with M(i->j) s_i = s_j for every pair
    std::size_t constraint_rows = 0;
    std::vector<std::size_t> row_offset;
    for (auto& [i, j] : pairs) {
        row_offset.push_back(constraint_rows);
        constraint_rows += d.space(sub[j]).dim();
    }
    F2Matrix constraints(constraint_rows, total);
    F2Matrix relations(total, 0);
    for (std::size_t e = 0; e < pairs.size(); ++e) {
        auto [i, j] = pairs[e];
        auto& m = d.map(sub[i], sub[j]);
        for (std::size_t a = 0; a < m.cols(); ++a) {
            auto& col = constraints.column(offset[i] + a);
            F2Column rel{static_cast<std::uint32_t>(offset[i] + a)};
            for (auto r : m.column(a)) {
                col.push_back(static_cast<std::uint32_t>(row_offset[e] + r));
                rel.push_back(static_cast<std::uint32_t>(offset[j] + r));
            }
            std::sort(rel.begin(), rel.end());
            relations.append(std::move(rel));
        }
        for (std::size_t r = 0; r < d.space(sub[j]).dim(); ++r)
            constraints.column(offset[j] + r).push_back(static_cast<std::uint32_t>(row_offset[e] + r));
    }
    for (std::size_t c = 0; c < total; ++c) std::sort(constraints.column(c).begin(), constraints.column(c).end());
    auto lim = kernel_basis(constraints);
    if (lim.empty()) return 0;

    // canonical map: restrict a section to the first point, then pass to the colimit
    F2Matrix images(total, 0);
    for (auto& s : lim) {
        F2Column img;
        for (auto v : s)
            if (v < offset[1]) img.push_back(v);
        images.append(std::move(img));
    }
    return hconcat(relations, images).rank() - relations.rank();
}

inline std::size_t brute_rank(const QuasiZigzagBifiltration& b, const std::vector<GridPoint>& sub, int p) {
    for (auto& q : sub) b.require_in_grid(q);
    PosetDiagram d(b, p);
    return brute_rank(d, sub);
}

// Complexes K'_{x,y} with odd columns built as explicit unions of their neighbours.
struct ExplicitGrid {
    int time_steps = 0;
    int levels = 0;
    std::vector<std::vector<std::vector<Simplex>>> complexes;  // [x][y-1], sorted by FaceOrder

    const std::vector<Simplex>& at(GridPoint p) const {
        return complexes[static_cast<std::size_t>(p.x)][static_cast<std::size_t>(p.y - 1)];
    }
};

inline ExplicitGrid explicit_union_build(const std::vector<LevelFiltration>& fs) {
    if (fs.empty()) throw ParameterError("explicit_union_build: no filtrations");
    ExplicitGrid g;
    g.time_steps = static_cast<int>(fs.size());
    g.levels = fs[0].levels();
    for (auto& f : fs) {
        if (f.levels() != g.levels) throw ParameterError("explicit_union_build: level counts differ");
        if (f.vertices() != fs[0].vertices()) throw ParameterError("explicit_union_build: vertex universes differ");
    }
    int w = 2 * g.time_steps - 1;
    g.complexes.assign(static_cast<std::size_t>(w), std::vector<std::vector<Simplex>>(static_cast<std::size_t>(g.levels)));
    for (int x = 0; x < w; x += 2)
        for (int y = 1; y <= g.levels; ++y) {
            auto k = fs[static_cast<std::size_t>(x / 2)].sublevel(y);
            std::sort(k.begin(), k.end(), FaceOrder{});
            g.complexes[static_cast<std::size_t>(x)][static_cast<std::size_t>(y - 1)] = std::move(k);
        }
    for (int x = 1; x < w; x += 2)
        for (int y = 1; y <= g.levels; ++y) {
            auto& l = g.at({x - 1, y});
            auto& r = g.at({x + 1, y});
            std::vector<Simplex> u;
            std::set_union(l.begin(), l.end(), r.begin(), r.end(), std::back_inserter(u), FaceOrder{});
            g.complexes[static_cast<std::size_t>(x)][static_cast<std::size_t>(y - 1)] = std::move(u);
        }
    return g;
}

// Largest width whose unclipped worm at the center fits in the grid, or -1.
inline int max_fitting_width(int grid_width, int grid_height, GridPoint c) {
    int d = std::min({c.x, grid_width - 1 - c.x, c.y - 1, grid_height - c.y});
    return d < 0 ? -1 : d / 2;
}

// Ranks of fitting worms at a center, widths 0..max_fitting_width.
inline std::vector<std::size_t> brute_worm_ranks(PosetDiagram& d, int gw, int gh, GridPoint c) {
    std::vector<std::size_t> out;
    int dmax = max_fitting_width(gw, gh, c);
    for (int delta = 0; delta <= dmax; ++delta) out.push_back(brute_rank(d, members(Worm(c, delta, gw, gh))));
    return out;
}

// Smallest eps with rk1(delta) >= rk2(delta+eps) and rk2(delta) >= rk1(delta+eps) for every center
// and every pair of fitting widths.
inline int erosion_distance_finite(const QuasiZigzagBifiltration& b1, const QuasiZigzagBifiltration& b2,
                                   const std::vector<GridPoint>& centers, int p) {
    if (b1.width() != b2.width() || b1.height() != b2.height())
        throw ParameterError("erosion_distance_finite: grids differ");
    PosetDiagram d1(b1, p), d2(b2, p);
    int eps = 0;
    for (auto& c : centers) {
        b1.require_in_grid(c);
        if (max_fitting_width(b1.width(), b1.height(), c) < 0)
            throw ParameterError("erosion_distance_finite: center " + c.to_string() + " is not interior");
        auto r1 = brute_worm_ranks(d1, b1.width(), b1.height(), c);
        auto r2 = brute_worm_ranks(d2, b2.width(), b2.height(), c);
        int n = static_cast<int>(r1.size());
        auto ok = [&](int e) {
            for (int delta = 0; delta + e < n; ++delta) {
                auto i = static_cast<std::size_t>(delta), j = static_cast<std::size_t>(delta + e);
                if (r1[i] < r2[j] || r2[i] < r1[j]) return false;
            }
            return true;
        };
        while (!ok(eps)) ++eps;
    }
    return eps;
}

}  // namespace zzgril

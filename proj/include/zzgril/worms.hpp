#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "zzgril/bifiltration.hpp"
#include "zzgril/error.hpp"
#include "zzgril/zigzag.hpp"

namespace zzgril {

// Interval of the grid whose columns x_begin..x_end are [lo(x), hi(x)] with lo and hi both
// non-increasing in x and consecutive columns overlapping. Worms, rows, rectangles and the full grid
// are all of this form.
struct StaircaseInterval {
    int x_begin = 0;
    std::vector<int> lo, hi;

    int x_end() const { return x_begin + static_cast<int>(lo.size()) - 1; }
    int columns() const { return static_cast<int>(lo.size()); }
    int lo_at(int x) const { return lo[static_cast<std::size_t>(x - x_begin)]; }
    int hi_at(int x) const { return hi[static_cast<std::size_t>(x - x_begin)]; }

    bool contains(GridPoint p) const {
        if (p.x < x_begin || p.x > x_end()) return false;
        return lo_at(p.x) <= p.y && p.y <= hi_at(p.x);
    }

    std::size_t size() const {
        std::size_t n = 0;
        for (std::size_t i = 0; i < lo.size(); ++i) n += static_cast<std::size_t>(hi[i] - lo[i] + 1);
        return n;
    }

    // Members sorted by (x, y).
    std::vector<GridPoint> points() const {
        std::vector<GridPoint> out;
        out.reserve(size());
        for (int x = x_begin; x <= x_end(); ++x)
            for (int y = lo_at(x); y <= hi_at(x); ++y) out.push_back({x, y});
        return out;
    }

    void validate() const {
        if (lo.empty() || lo.size() != hi.size()) throw ParameterError("staircase interval: bad column data");
        for (std::size_t i = 0; i < lo.size(); ++i) {
            if (lo[i] > hi[i]) throw ParameterError("staircase interval: empty column");
            if (i > 0 && (lo[i] > lo[i - 1] || hi[i] > hi[i - 1] || lo[i - 1] > hi[i]))
                throw ParameterError("staircase interval: columns do not form a staircase");
        }
    }

    static StaircaseInterval rectangle(int x0, int x1, int y0, int y1) {
        if (x0 > x1 || y0 > y1) throw ParameterError("rectangle: empty range");
        StaircaseInterval s;
        s.x_begin = x0;
        s.lo.assign(static_cast<std::size_t>(x1 - x0 + 1), y0);
        s.hi.assign(static_cast<std::size_t>(x1 - x0 + 1), y1);
        return s;
    }

    static StaircaseInterval full_grid(const QuasiZigzagBifiltration& b) {
        return rectangle(0, b.width() - 1, 1, b.height());
    }

    void require_within(const QuasiZigzagBifiltration& b) const {
        validate();
        if (x_begin < 0 || x_end() >= b.width()) throw ParameterError("interval outside the grid");
        for (std::size_t i = 0; i < lo.size(); ++i)
            if (lo[i] < 1 || hi[i] > b.height()) throw ParameterError("interval outside the grid");
    }
};

// Union of the three width-delta squares centred at p, p+(d,-d) and p-(d,-d), clipped to the grid.
struct Worm {
    GridPoint center;
    int width = 0;
    int grid_width = 1;
    int grid_height = 1;

    Worm() = default;
    Worm(GridPoint c, int delta, int gw, int gh) : center(c), width(delta), grid_width(gw), grid_height(gh) {
        if (gw < 1 || gh < 1) throw ParameterError("worm: empty grid");
        if (c.x < 0 || c.x >= gw || c.y < 1 || c.y > gh)
            throw ParameterError("worm: center " + c.to_string() + " outside the grid");
        if (delta < 0) throw ParameterError("worm: negative width");
    }

    Worm(GridPoint c, int delta, const QuasiZigzagBifiltration& b) : Worm(c, delta, b.width(), b.height()) {}

    // Whether the unclipped worm fits inside the grid.
    bool fits() const {
        int d = width;
        return center.x - 2 * d >= 0 && center.x + 2 * d < grid_width && center.y - 2 * d >= 1 &&
               center.y + 2 * d <= grid_height;
    }

    StaircaseInterval interval() const {
        int px = center.x, py = center.y, d = width;
        StaircaseInterval s;
        s.x_begin = std::max(0, px - 2 * d);
        int x_end = std::min(grid_width - 1, px + 2 * d);
        for (int x = s.x_begin; x <= x_end; ++x) {
            int lo, hi;
            if (x < px - d)
                lo = py;
            else if (x < px)
                lo = py - d;
            else
                lo = py - 2 * d;
            if (x <= px)
                hi = py + 2 * d;
            else if (x <= px + d)
                hi = py + d;
            else
                hi = py;
            s.lo.push_back(std::max(lo, 1));
            s.hi.push_back(std::min(hi, grid_height));
        }
        return s;
    }
};

inline std::vector<GridPoint> members(const Worm& w) { return w.interval().points(); }

struct Extrema {
    std::vector<GridPoint> minima;
    std::vector<GridPoint> maxima;
};

inline bool is_minimal(const StaircaseInterval& s, GridPoint q) {
    if (s.contains({q.x, q.y - 1})) return false;
    return !(q.x % 2 == 1 && (s.contains({q.x - 1, q.y}) || s.contains({q.x + 1, q.y})));
}

inline bool is_maximal(const StaircaseInterval& s, GridPoint q) {
    if (s.contains({q.x, q.y + 1})) return false;
    return !(q.x % 2 == 0 && (s.contains({q.x - 1, q.y}) || s.contains({q.x + 1, q.y})));
}

inline Extrema extrema(const StaircaseInterval& s) {
    Extrema e;
    for (auto& q : s.points()) {
        if (is_minimal(s, q)) e.minima.push_back(q);
        if (is_maximal(s, q)) e.maxima.push_back(q);
    }
    return e;
}

inline Extrema extrema(const Worm& w) { return extrema(w.interval()); }

enum class StepKind { Up, Down, Left, Right };

struct BoundaryCap {
    std::vector<GridPoint> path;

    StepKind step(std::size_t i) const {
        auto a = path[i], b = path[i + 1];
        if (b.y > a.y) return StepKind::Up;
        if (b.y < a.y) return StepKind::Down;
        return b.x > a.x ? StepKind::Right : StepKind::Left;
    }

    // Whether step i follows an arrow of the grid order (so the complex grows).
    bool forward(std::size_t i) const { return zz_leq(path[i], path[i + 1]); }
};

// Lower boundary rightwards, right column upwards, upper boundary leftwards.
inline std::vector<GridPoint> boundary_walk(const StaircaseInterval& s) {
    std::vector<GridPoint> w;
    int xa = s.x_begin, xb = s.x_end();
    w.push_back({xa, s.lo_at(xa)});
    for (int x = xa; x < xb; ++x) {
        w.push_back({x + 1, s.lo_at(x)});
        for (int y = s.lo_at(x) - 1; y >= s.lo_at(x + 1); --y) w.push_back({x + 1, y});
    }
    for (int y = s.lo_at(xb) + 1; y <= s.hi_at(xb); ++y) w.push_back({xb, y});
    for (int x = xb; x > xa; --x) {
        w.push_back({x - 1, s.hi_at(x)});
        for (int y = s.hi_at(x) + 1; y <= s.hi_at(x - 1); ++y) w.push_back({x - 1, y});
    }
    return w;
}

// The boundary walk cut down to start at its first extremum and stop once every extremum has been
// visited. On two-dimensional shapes this runs from the leftmost minimum to the leftmost maximum.
// Clipped worms can be one cell thick somewhere; the walk then passes such cells twice.
inline BoundaryCap boundary_cap(const StaircaseInterval& s) {
    s.validate();
    auto walk = boundary_walk(s);
    auto ex = extrema(s);
    std::set<GridPoint> pending(ex.minima.begin(), ex.minima.end());
    pending.insert(ex.maxima.begin(), ex.maxima.end());
    std::size_t start = 0;
    while (start < walk.size() && !pending.count(walk[start])) ++start;
    BoundaryCap cap;
    for (std::size_t i = start; i < walk.size() && !pending.empty(); ++i) {
        cap.path.push_back(walk[i]);
        pending.erase(walk[i]);
    }
    if (!pending.empty()) throw StructuralError("boundary cap misses an extremum");
    return cap;
}

inline BoundaryCap boundary_cap(const Worm& w) { return boundary_cap(w.interval()); }

struct CapFiltration {
    ZigzagFiltration filtration;
    int span_lo = 0;
    int span_hi = 0;
};

// Walks the cap emitting (id, is_insert) ops: build the first complex, follow each step, tear down
// the last complex. Ops on simplices above max_dim are skipped. Returns the span of node indices
// covering the cap's complexes in the emitted sequence.
template <class Emit>
std::pair<int, int> walk_cap_ops(const QuasiZigzagBifiltration& b, const BoundaryCap& cap, int max_dim,
                                 Emit&& emit, bool teardown = true) {
    if (cap.path.empty()) throw ParameterError("cap_filtration: empty cap");
    for (std::size_t i = 0; i + 1 < cap.path.size(); ++i) {
        auto a = cap.path[i], c = cap.path[i + 1];
        if (std::abs(a.x - c.x) + std::abs(a.y - c.y) != 1)
            throw ParameterError("cap_filtration: consecutive cap points are not adjacent");
    }
    int n = 0;
    auto keep = [&](std::uint32_t id) { return b.dimension(id) <= max_dim; };
    auto first = b.complex_ids_at(cap.path.front());
    for (auto id : first)
        if (keep(id)) {
            emit(id, true);
            ++n;
        }
    int lo = n;
    std::vector<std::uint32_t> ins, del;
    for (std::size_t i = 0; i + 1 < cap.path.size(); ++i) {
        b.arrow_delta_ids(cap.path[i], cap.path[i + 1], ins, del);
        for (auto it = del.rbegin(); it != del.rend(); ++it)
            if (keep(*it)) {
                emit(*it, false);
                ++n;
            }
        for (auto id : ins)
            if (keep(id)) {
                emit(id, true);
                ++n;
            }
    }
    int hi = n;
    if (teardown) {
        auto last = b.complex_ids_at(cap.path.back());
        for (auto it = last.rbegin(); it != last.rend(); ++it)
            if (keep(*it)) emit(*it, false);
    }
    return {lo, hi};
}

inline CapFiltration cap_filtration(const QuasiZigzagBifiltration& b, const BoundaryCap& cap) {
    for (auto& p : cap.path) b.require_in_grid(p);
    CapFiltration out;
    auto& u = b.universe();
    auto [lo, hi] = walk_cap_ops(b, cap, std::numeric_limits<int>::max(), [&](std::uint32_t id, bool insert) {
        out.filtration.ops.push_back({insert ? OpKind::Insert : OpKind::Delete, u[id]});
    });
    out.span_lo = lo;
    out.span_hi = hi;
    try {
        out.filtration.validate();
    } catch (const StructuralError& e) {
        throw StructuralError(std::string("cap_filtration: internal inconsistency: ") + e.what());
    }
    return out;
}

}  // namespace zzgril

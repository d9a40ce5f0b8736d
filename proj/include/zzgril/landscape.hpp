#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "zzgril/bifiltration.hpp"
#include "zzgril/error.hpp"
#include "zzgril/worms.hpp"
#include "zzgril/zigzag.hpp"

namespace zzgril {

// Generalized ranks over an interval for degrees 0..max_degree: full bars of the boundary-cap zigzag.
// Full bars are the classes still alive at the last cap node that were born by the first, so the
// teardown of the cap filtration is never run.
inline std::vector<std::size_t> generalized_ranks(const QuasiZigzagBifiltration& b, const StaircaseInterval& s,
                                                  int max_degree) {
    if (max_degree < 0) throw ParameterError("generalized_rank: negative degree");
    s.require_within(b);
    auto cap = boundary_cap(s);
    ZigzagEngine engine(max_degree + 1);
    auto [lo, hi] = walk_cap_ops(
        b, cap, max_degree + 1,
        [&](std::uint32_t id, bool insert) {
            if (insert)
                engine.insert(id, b.dimension(id), b.facets_begin(id), b.num_facets(id));
            else
                engine.remove(id, b.dimension(id));
        },
        false);
    (void)hi;
    std::vector<std::size_t> out(static_cast<std::size_t>(max_degree) + 1, 0);
    if (lo == 0) return out;
    for (int p = 0; p <= max_degree; ++p) out[static_cast<std::size_t>(p)] = engine.live_born_by(p, lo);
    return out;
}

inline std::size_t generalized_rank(const QuasiZigzagBifiltration& b, const StaircaseInterval& s, int p) {
    if (p < 0) throw ParameterError("generalized_rank: negative degree");
    return generalized_ranks(b, s, p)[static_cast<std::size_t>(p)];
}

inline std::size_t generalized_rank(const QuasiZigzagBifiltration& b, const Worm& w, int p) {
    return generalized_rank(b, w.interval(), p);
}

inline int delta_max(const QuasiZigzagBifiltration& b) { return std::max(b.width(), b.height()); }

// Worm ranks at one center, memoized by width. Not thread-safe; one cache per worker.
class WormRankCache {
public:
    WormRankCache(const QuasiZigzagBifiltration& b, GridPoint center, int max_degree)
        : b_(b), center_(center), max_degree_(max_degree) {
        b.require_in_grid(center);
    }

    std::size_t rank(int delta, int p) {
        if (p < 0 || p > max_degree_) throw ParameterError("WormRankCache: degree out of range");
        auto it = cache_.find(delta);
        if (it == cache_.end())
            it = cache_.emplace(delta, generalized_ranks(b_, Worm(center_, delta, b_).interval(), max_degree_)).first;
        return it->second[static_cast<std::size_t>(p)];
    }

    std::size_t evaluations() const { return cache_.size(); }

private:
    const QuasiZigzagBifiltration& b_;
    GridPoint center_;
    int max_degree_;
    std::map<int, std::vector<std::size_t>> cache_;
};

// Largest width in [0, delta_max] whose worm rank is at least k; 0 when none qualifies.
inline int zzgril_value(WormRankCache& cache, int dmax, int k, int p) {
    if (k < 1) throw ParameterError("zzgril_value: k must be positive");
    if (cache.rank(0, p) < static_cast<std::size_t>(k)) return 0;
    if (cache.rank(dmax, p) >= static_cast<std::size_t>(k)) return dmax;
    int good = 0, bad = dmax;
    while (bad - good > 1) {
        int mid = good + (bad - good) / 2;
        if (cache.rank(mid, p) >= static_cast<std::size_t>(k))
            good = mid;
        else
            bad = mid;
    }
    return good;
}

inline int zzgril_value(const QuasiZigzagBifiltration& b, GridPoint center, int k, int p) {
    if (k < 1) throw ParameterError("zzgril_value: k must be positive");
    if (p < 0) throw ParameterError("zzgril_value: negative degree");
    WormRankCache cache(b, center, p);
    return zzgril_value(cache, delta_max(b), k, p);
}

struct CenterSpec {
    int rows = 6;
    int cols = 6;

    // "RxC", e.g. "6x6".
    static CenterSpec parse(const std::string& text) {
        auto pos = text.find_first_of("xX");
        if (pos == std::string::npos) throw ParameterError("center spec must look like RxC: " + text);
        CenterSpec c;
        try {
            std::size_t used = 0;
            c.rows = std::stoi(text.substr(0, pos), &used);
            if (used != pos) throw ParameterError("");
            auto rest = text.substr(pos + 1);
            c.cols = std::stoi(rest, &used);
            if (used != rest.size()) throw ParameterError("");
        } catch (const std::exception&) {
            throw ParameterError("center spec must look like RxC: " + text);
        }
        if (c.rows < 1 || c.cols < 1) throw ParameterError("center spec must be positive: " + text);
        return c;
    }

    std::string to_string() const { return std::to_string(rows) + "x" + std::to_string(cols); }
};

// rows x cols lattice placed at floor((i+1) * (extent-1) / (n+1)) along each axis, row-major with rows
// ordered by increasing y. Rejects specs whose lattice points would collide.
inline std::vector<GridPoint> sample_centers(int grid_width, int grid_height, CenterSpec spec) {
    if (spec.rows < 1 || spec.cols < 1) throw ParameterError("sample_centers: spec must be positive");
    if (grid_width < 1 || grid_height < 1) throw ParameterError("sample_centers: empty grid");
    auto axis = [](int n, int extent) {
        std::vector<int> out;
        for (int i = 0; i < n; ++i)
            out.push_back(static_cast<int>(static_cast<long long>(i + 1) * (extent - 1) / (n + 1)));
        return out;
    };
    auto xs = axis(spec.cols, grid_width);
    auto ys = axis(spec.rows, grid_height);
    if (std::adjacent_find(xs.begin(), xs.end()) != xs.end() || std::adjacent_find(ys.begin(), ys.end()) != ys.end())
        throw ParameterError("sample_centers: " + spec.to_string() + " lattice does not fit a " +
                             std::to_string(grid_width) + "x" + std::to_string(grid_height) + " grid");
    std::vector<GridPoint> out;
    for (int y : ys)
        for (int x : xs) out.push_back({x, y + 1});
    return out;
}

inline std::vector<GridPoint> sample_centers(const QuasiZigzagBifiltration& b, CenterSpec spec) {
    return sample_centers(b.width(), b.height(), spec);
}

struct LandscapeEntry {
    GridPoint center;
    int k;
    int degree;
    int lambda;
};

struct ZzGrilLandscape {
    int grid_width = 0;
    int grid_height = 0;
    int delta_max = 0;
    std::vector<GridPoint> centers;
    std::vector<int> ks;
    std::vector<int> degrees;
    // Flattened in (degree, k, center) order.
    std::vector<int> values;

    std::size_t index(std::size_t di, std::size_t ki, std::size_t ci) const {
        return (di * ks.size() + ki) * centers.size() + ci;
    }

    int value(std::size_t di, std::size_t ki, std::size_t ci) const { return values[index(di, ki, ci)]; }

    std::vector<LandscapeEntry> entries() const {
        std::vector<LandscapeEntry> out;
        for (std::size_t di = 0; di < degrees.size(); ++di)
            for (std::size_t ki = 0; ki < ks.size(); ++ki)
                for (std::size_t ci = 0; ci < centers.size(); ++ci)
                    out.push_back({centers[ci], ks[ki], degrees[di], value(di, ki, ci)});
        return out;
    }
};

inline unsigned default_jobs() {
    auto n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : n;
}

// Runs body(i) for i in [0, n) on up to jobs threads; rethrows the first failure.
template <class Body>
void parallel_for(std::size_t n, unsigned jobs, Body&& body) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> threads;
    for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
    if (error) std::rethrow_exception(error);
}

inline ZzGrilLandscape landscape(const QuasiZigzagBifiltration& b, const std::vector<GridPoint>& centers,
                                 const std::vector<int>& ks, const std::vector<int>& degrees, unsigned jobs = 1) {
    for (auto& c : centers) b.require_in_grid(c);
    for (int k : ks)
        if (k < 1) throw ParameterError("landscape: k must be positive");
    for (int p : degrees)
        if (p < 0) throw ParameterError("landscape: negative degree");
    ZzGrilLandscape out;
    out.grid_width = b.width();
    out.grid_height = b.height();
    out.delta_max = delta_max(b);
    out.centers = centers;
    out.ks = ks;
    out.degrees = degrees;
    out.values.assign(centers.size() * ks.size() * degrees.size(), 0);
    if (out.values.empty()) return out;
    int top = *std::max_element(degrees.begin(), degrees.end());
    parallel_for(centers.size(), jobs, [&](std::size_t ci) {
        WormRankCache cache(b, centers[ci], top);
        for (std::size_t di = 0; di < degrees.size(); ++di)
            for (std::size_t ki = 0; ki < ks.size(); ++ki)
                out.values[out.index(di, ki, ci)] = zzgril_value(cache, out.delta_max, ks[ki], degrees[di]);
    });
    return out;
}

}  // namespace zzgril

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support/reference.hpp"
#include "zzgril/instances.hpp"
#include "zzgril/worms.hpp"

using namespace zzgril;

namespace {

std::set<GridPoint> as_set(const std::vector<GridPoint>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Worm, ZeroWidthIsCenter) {
    Worm w({3, 2}, 0, 7, 4);
    EXPECT_EQ(members(w), (std::vector<GridPoint>{{3, 2}}));
    auto c = boundary_cap(w);
    EXPECT_EQ(c.path, (std::vector<GridPoint>{{3, 2}}));
}

TEST(Worm, WidthOneInteriorHasNineteenPoints) {
    Worm w({4, 5}, 1, 9, 9);
    auto m = members(w);
    EXPECT_EQ(m.size(), 19u);
    EXPECT_EQ(as_set(m), ref::worm_members({4, 5}, 1, 9, 9));
    auto s = w.interval();
    std::vector<int> extents;
    for (int i = 0; i < s.columns(); ++i) extents.push_back(s.hi[static_cast<std::size_t>(i)] - s.lo[static_cast<std::size_t>(i)] + 1);
    EXPECT_EQ(extents, (std::vector<int>{3, 4, 5, 4, 3}));
    EXPECT_EQ(s.x_begin, 2);
}

TEST(Worm, MembersMatchSquareUnionEverywhere) {
    for (int gw = 1; gw <= 9; ++gw)
        for (int gh = 1; gh <= 6; ++gh)
            for (int x = 0; x < gw; ++x)
                for (int y = 1; y <= gh; ++y)
                    for (int d = 0; d <= std::max(gw, gh); ++d) {
                        Worm w({x, y}, d, gw, gh);
                        ASSERT_EQ(as_set(members(w)), ref::worm_members({x, y}, d, gw, gh));
                        ASSERT_NO_THROW(w.interval().validate());
                    }
}

TEST(Worm, LargeWidthCoversGrid) {
    Worm w({3, 2}, 20, 7, 4);
    EXPECT_EQ(members(w).size(), 28u);
}

TEST(Worm, Nesting) {
    for (int x = 0; x < 7; ++x)
        for (int y = 1; y <= 5; ++y)
            for (int d = 0; d < 8; ++d) {
                auto a = as_set(members(Worm({x, y}, d, 7, 5)));
                auto b = as_set(members(Worm({x, y}, d + 1, 7, 5)));
                EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
            }
}

TEST(Worm, CenterOutsideGridRejected) {
    EXPECT_THROW(Worm({7, 1}, 0, 7, 5), ParameterError);
    EXPECT_THROW(Worm({0, 0}, 0, 7, 5), ParameterError);
    EXPECT_THROW(Worm({0, 1}, -1, 7, 5), ParameterError);
}

TEST(Extrema, Center) {
    auto e = extrema(Worm({2, 3}, 0, 5, 5));
    EXPECT_EQ(e.minima, (std::vector<GridPoint>{{2, 3}}));
    EXPECT_EQ(e.maxima, (std::vector<GridPoint>{{2, 3}}));
}

TEST(Extrema, SingleColumn) {
    auto s = StaircaseInterval::rectangle(3, 3, 1, 4);
    auto e = extrema(s);
    EXPECT_EQ(e.minima, (std::vector<GridPoint>{{3, 1}}));
    EXPECT_EQ(e.maxima, (std::vector<GridPoint>{{3, 4}}));
}

TEST(Extrema, MatchBruteForceOrder) {
    for (int gw = 1; gw <= 9; ++gw)
        for (int gh = 1; gh <= 5; ++gh)
            for (int x = 0; x < gw; ++x)
                for (int y = 1; y <= gh; ++y)
                    for (int d = 0; d <= 3; ++d) {
                        Worm w({x, y}, d, gw, gh);
                        auto e = extrema(w);
                        auto [mins, maxs] = ref::brute_extrema(as_set(members(w)));
                        ASSERT_EQ(e.minima, mins);
                        ASSERT_EQ(e.maxima, maxs);
                    }
}

TEST(Extrema, InteriorWidthOneOnStaircases) {
    for (int px : {4, 5}) {
        Worm w({px, 5}, 1, 11, 9);
        auto s = w.interval();
        auto e = extrema(w);
        for (auto& q : e.minima) EXPECT_EQ(q.y, s.lo_at(q.x));
        for (auto& q : e.maxima) EXPECT_EQ(q.y, s.hi_at(q.x));
    }
}

TEST(Cap, VerticalColumn) {
    auto c = boundary_cap(StaircaseInterval::rectangle(2, 2, 1, 4));
    EXPECT_EQ(c.path, (std::vector<GridPoint>{{2, 1}, {2, 2}, {2, 3}, {2, 4}}));
}

TEST(Cap, WidthOneInterior) {
    Worm w({4, 5}, 1, 11, 11);
    auto s = w.interval();
    auto walk = boundary_walk(s);
    EXPECT_EQ(walk.size(), 15u);
    EXPECT_TRUE(is_minimal(s, walk.front()));
    auto cap = boundary_cap(w);
    auto e = extrema(w);
    std::set<GridPoint> need(e.minima.begin(), e.minima.end());
    need.insert(e.maxima.begin(), e.maxima.end());
    // the cap is a contiguous piece of the walk whose dropped ends are not extremal
    auto it = std::search(walk.begin(), walk.end(), cap.path.begin(), cap.path.end());
    ASSERT_NE(it, walk.end());
    for (auto p = walk.begin(); p != it; ++p) EXPECT_FALSE(need.count(*p));
    for (auto p = it + static_cast<std::ptrdiff_t>(cap.path.size()); p != walk.end(); ++p) EXPECT_FALSE(need.count(*p));
    EXPECT_TRUE(need.count(cap.path.front()));
    EXPECT_TRUE(need.count(cap.path.back()));
    EXPECT_EQ(cap.path.size(), 14u);
}

TEST(Cap, ContainsExtremaAndStaysOnBoundary) {
    for (int gw = 1; gw <= 11; ++gw)
        for (int gh = 1; gh <= 6; ++gh)
            for (int x = 0; x < gw; ++x)
                for (int y = 1; y <= gh; ++y)
                    for (int d = 0; d <= std::max(gw, gh); ++d) {
                        Worm w({x, y}, d, gw, gh);
                        auto s = w.interval();
                        auto cap = boundary_cap(w);
                        auto e = extrema(w);
                        auto on = as_set(cap.path);
                        for (auto& q : e.minima) ASSERT_TRUE(on.count(q));
                        for (auto& q : e.maxima) ASSERT_TRUE(on.count(q));
                        for (std::size_t i = 0; i < cap.path.size(); ++i) {
                            auto q = cap.path[i];
                            ASSERT_TRUE(s.contains(q));
                            // staircase corners touch the outside only diagonally
                            bool boundary = false;
                            for (int dx = -1; dx <= 1; ++dx)
                                for (int dy = -1; dy <= 1; ++dy) boundary = boundary || !s.contains({q.x + dx, q.y + dy});
                            ASSERT_TRUE(boundary) << gw << "x" << gh << " c=" << x << "," << y << " d=" << d;
                            if (i + 1 < cap.path.size()) {
                                auto r = cap.path[i + 1];
                                ASSERT_EQ(std::abs(q.x - r.x) + std::abs(q.y - r.y), 1);
                            }
                        }
                    }
}

TEST(Cap, SimpleOnUnclippedWorms) {
    for (int d = 0; d <= 3; ++d)
        for (int px : {8, 9}) {
            auto cap = boundary_cap(Worm({px, 8}, d, 17, 16));
            EXPECT_EQ(as_set(cap.path).size(), cap.path.size()) << "d=" << d << " px=" << px;
        }
}

TEST(CapFiltration, SingleVertex) {
    LevelFiltration f(1, {{Simplex{0}, 1}});
    auto b = QuasiZigzagBifiltration::build({f});
    auto cf = cap_filtration(b, boundary_cap(Worm({0, 1}, 0, b)));
    ASSERT_EQ(cf.filtration.ops.size(), 2u);
    EXPECT_EQ(cf.filtration.ops[0], (ZigzagOp{OpKind::Insert, Simplex{0}}));
    EXPECT_EQ(cf.filtration.ops[1], (ZigzagOp{OpKind::Delete, Simplex{0}}));
    EXPECT_EQ(cf.span_lo, 1);
    EXPECT_EQ(cf.span_hi, 1);
}

TEST(CapFiltration, StaticDataHasOnlyBuildAndTeardown) {
    LevelFiltration f(3, {{Simplex{0}, 1}, {Simplex{1}, 1}, {Simplex{2}, 1}, {Simplex{0, 1}, 1}});
    auto b = QuasiZigzagBifiltration::build({f, f, f});
    auto cf = cap_filtration(b, boundary_cap(Worm({2, 2}, 1, b)));
    EXPECT_EQ(cf.filtration.ops.size(), 8u);
    EXPECT_TRUE(cf.filtration.is_closed());
    auto bc = compute_barcode(cf.filtration, 1);
    EXPECT_EQ(count_full_bars(bc, cf.span_lo, cf.span_hi, 0), 2u);
}

TEST(CapFiltration, SpanNodesReplayCapComplexes) {
    std::mt19937_64 rng(55);
    for (int trial = 0; trial < 30; ++trial) {
        auto b = random_bifiltration(rng, {});
        for (int x = 0; x < b.width(); ++x)
            for (int y = 1; y <= b.height(); ++y)
                for (int d = 0; d <= 2; ++d) {
                    auto cap = boundary_cap(Worm({x, y}, d, b));
                    auto cf = cap_filtration(b, cap);
                    ASSERT_TRUE(cf.filtration.is_closed());
                    ASSERT_EQ(cf.span_lo, static_cast<int>(b.complex_at(cap.path.front()).size()));
                    ASSERT_EQ(cf.span_hi, static_cast<int>(cf.filtration.size() - b.complex_at(cap.path.back()).size()));
                    auto st = ref::states(cf.filtration);
                    // the nodes in the span visit the cap complexes in order
                    std::vector<std::set<Simplex>> visited;
                    for (int i = cf.span_lo; i <= cf.span_hi; ++i) {
                        std::set<Simplex> s(st[static_cast<std::size_t>(i)].begin(), st[static_cast<std::size_t>(i)].end());
                        if (visited.empty() || visited.back() != s) visited.push_back(s);
                    }
                    std::vector<std::set<Simplex>> expect;
                    for (auto& q : cap.path) {
                        auto c = b.complex_at(q);
                        std::set<Simplex> s(c.begin(), c.end());
                        if (expect.empty() || expect.back() != s) expect.push_back(s);
                    }
                    for (auto& s : expect) ASSERT_NE(std::find(visited.begin(), visited.end(), s), visited.end());
                    ASSERT_EQ(visited.front(), expect.front());
                    ASSERT_EQ(visited.back(), expect.back());
                }
    }
}

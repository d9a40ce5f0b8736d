#include <gtest/gtest.h>

#include <random>
#include <set>

#include "zzgril/bifiltration.hpp"
#include "zzgril/instances.hpp"
#include "zzgril/oracle.hpp"

using namespace zzgril;

namespace {

std::set<Simplex> as_set(const std::vector<Simplex>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST(Bifiltration, UnionTakesMinimumBirth) {
    LevelFiltration f1(2, {{Simplex{0}, 1}, {Simplex{1}, 1}, {Simplex{0, 1}, 2}});
    LevelFiltration f2(2, {{Simplex{0}, 1}, {Simplex{1}, 1}, {Simplex{0, 1}, 1}});
    auto b = QuasiZigzagBifiltration::build({f1, f2});
    EXPECT_EQ(b.width(), 3);
    EXPECT_EQ(b.birth(1, Simplex{0, 1}), 1);
    auto d = b.arrow_delta({0, 1}, {1, 1});
    ASSERT_EQ(d.inserted.size(), 1u);
    EXPECT_EQ(d.inserted[0], Simplex({0, 1}));
    EXPECT_TRUE(d.deleted.empty());
}

TEST(Bifiltration, OneSidedSimplexUsesThatSide) {
    LevelFiltration f1(3, {{Simplex{0}, 1}, {Simplex{1}, 1}, {Simplex{0, 1}, 2}});
    LevelFiltration f2(3, {{Simplex{0}, 1}, {Simplex{1}, 1}});
    auto b = QuasiZigzagBifiltration::build({f1, f2});
    EXPECT_EQ(b.birth(1, Simplex{0, 1}), 2);
    EXPECT_EQ(b.birth(2, Simplex{0, 1}), kAbsent);
    for (int y = 1; y <= 3; ++y) {
        auto d = b.arrow_delta({2, y}, {1, y});
        EXPECT_EQ(d.inserted.size(), y >= 2 ? 1u : 0u) << y;
    }
}

TEST(Bifiltration, BuildRejectsMismatches) {
    LevelFiltration f1(2, {{Simplex{0}, 1}});
    LevelFiltration f2(3, {{Simplex{0}, 1}});
    LevelFiltration f3(2, {{Simplex{0}, 1}, {Simplex{1}, 1}});
    EXPECT_THROW(QuasiZigzagBifiltration::build({f1, f2}), ParameterError);
    EXPECT_THROW(QuasiZigzagBifiltration::build({f1, f3}), ParameterError);
    EXPECT_THROW(QuasiZigzagBifiltration::build({}), ParameterError);
}

TEST(Bifiltration, DirectConstructionChecksClosure) {
    std::vector<Simplex> u{Simplex{0}, Simplex{1}, Simplex{0, 1}};
    EXPECT_THROW(QuasiZigzagBifiltration(2, u, {{1, 2, 1}}), StructuralError);
    EXPECT_NO_THROW(QuasiZigzagBifiltration(2, u, {{1, 2, 2}}));
}

TEST(Bifiltration, TopOfEvenColumnIsInputComplex) {
    std::mt19937_64 rng(1);
    auto fs = random_filtrations(rng, {});
    auto b = QuasiZigzagBifiltration::build(fs);
    for (int t = 0; t < b.time_steps(); ++t)
        EXPECT_EQ(as_set(b.complex_at({2 * t, b.height()})), as_set(fs[static_cast<std::size_t>(t)].sublevel(b.height())));
}

TEST(Bifiltration, QueriesRejectOutOfGrid) {
    std::mt19937_64 rng(2);
    auto b = random_bifiltration(rng, {});
    EXPECT_THROW(b.complex_at({-1, 1}), ParameterError);
    EXPECT_THROW(b.complex_at({0, 0}), ParameterError);
    EXPECT_THROW(b.complex_at({b.width(), 1}), ParameterError);
    EXPECT_THROW(b.arrow_delta({0, 1}, {0, 3}), ParameterError);
}

TEST(Bifiltration, MatchesExplicitUnions) {
    std::mt19937_64 rng(99);
    InstanceParams ip;
    ip.max_vertices = 5;
    for (int trial = 0; trial < 60; ++trial) {
        auto fs = random_filtrations(rng, ip);
        auto b = QuasiZigzagBifiltration::build(fs);
        auto g = explicit_union_build(fs);
        for (int x = 0; x < b.width(); ++x)
            for (int y = 1; y <= b.height(); ++y)
                ASSERT_EQ(as_set(b.complex_at({x, y})), as_set(g.at({x, y}))) << "trial " << trial << " at " << x << "," << y;
    }
}

TEST(Bifiltration, DeltasReplayAlongPaths) {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        auto b = random_bifiltration(rng, {});
        GridPoint cur{static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(b.width()))), 1};
        auto state = as_set(b.complex_at(cur));
        for (int step = 0; step < 30; ++step) {
            std::vector<GridPoint> nbrs;
            for (GridPoint n : {GridPoint{cur.x + 1, cur.y}, GridPoint{cur.x - 1, cur.y}, GridPoint{cur.x, cur.y + 1},
                                GridPoint{cur.x, cur.y - 1}})
                if (b.in_grid(n)) nbrs.push_back(n);
            if (nbrs.empty()) break;
            auto next = nbrs[uniform_index(rng, nbrs.size())];
            auto d = b.arrow_delta(cur, next);
            if (zz_leq(cur, next)) {
                EXPECT_TRUE(d.deleted.empty());
            }
            if (zz_leq(next, cur)) {
                EXPECT_TRUE(d.inserted.empty());
            }
            for (std::size_t i = 1; i < d.inserted.size(); ++i)
                EXPECT_FALSE(FaceOrder{}(d.inserted[i], d.inserted[i - 1]));
            for (auto& s : d.deleted) ASSERT_TRUE(state.erase(s));
            for (auto& s : d.inserted) ASSERT_TRUE(state.insert(s).second);
            cur = next;
            ASSERT_EQ(state, as_set(b.complex_at(cur)));
        }
    }
}

TEST(Bifiltration, ForwardArrowsOnlyGrow) {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 20; ++trial) {
        auto b = random_bifiltration(rng, {});
        for (int x = 0; x < b.width(); ++x)
            for (int y = 1; y <= b.height(); ++y) {
                auto here = as_set(b.complex_at({x, y}));
                for (GridPoint n : {GridPoint{x, y + 1}, GridPoint{x - 1, y}, GridPoint{x + 1, y}}) {
                    if (!b.in_grid(n) || !zz_leq({x, y}, n)) continue;
                    auto there = as_set(b.complex_at(n));
                    EXPECT_TRUE(std::includes(there.begin(), there.end(), here.begin(), here.end()));
                }
            }
    }
}

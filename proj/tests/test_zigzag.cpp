#include <gtest/gtest.h>

#include <random>

#include "support/reference.hpp"
#include "zzgril/instances.hpp"
#include "zzgril/oracle.hpp"
#include "zzgril/zigzag.hpp"

using namespace zzgril;

namespace {

ZigzagFiltration ops(std::initializer_list<std::pair<OpKind, Simplex>> list) {
    ZigzagFiltration f;
    for (auto& [k, s] : list) f.ops.push_back({k, s});
    return f;
}

constexpr auto I = OpKind::Insert;
constexpr auto D = OpKind::Delete;

}  // namespace

TEST(Zigzag, SingleVertex) {
    auto bc = compute_barcode(ops({{I, Simplex{0}}}), 1);
    ASSERT_EQ(bc.bars.size(), 1u);
    EXPECT_EQ(bc.bars[0], (Bar{0, 1, 1}));
}

TEST(Zigzag, EdgeInAndOut) {
    Simplex a{0}, b{1}, ab{0, 1};
    auto f = ops({{I, a}, {I, b}, {I, ab}, {D, ab}, {D, b}, {D, a}});
    auto bc = compute_barcode(f, 1);
    std::vector<Bar> expect{{0, 1, 5}, {0, 2, 2}, {0, 4, 4}};
    EXPECT_EQ(bc.bars, expect);
    std::vector<std::size_t> dims{1, 2, 1, 2, 1, 0};
    auto st = ref::states(f);
    for (int node = 1; node <= 6; ++node) EXPECT_EQ(ref::betti(st[static_cast<std::size_t>(node)], 0), dims[node - 1]);
}

TEST(Zigzag, IllegalOpsReportIndex) {
    Simplex a{0}, ab{0, 1};
    try {
        compute_barcode(ops({{I, a}, {I, ab}}), 1);
        FAIL();
    } catch (const StructuralError& e) {
        EXPECT_NE(std::string(e.what()).find("op 1"), std::string::npos);
    }
    EXPECT_THROW(compute_barcode(ops({{I, a}, {I, a}}), 1), StructuralError);
    EXPECT_THROW(compute_barcode(ops({{I, a}, {I, Simplex{1}}, {I, ab}, {D, a}}), 1), StructuralError);
    EXPECT_THROW(compute_barcode(ops({{D, a}}), 1), StructuralError);
}

TEST(Zigzag, CoverageMatchesHomologyOnRandomClosedFiltrations) {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
        auto f = random_zigzag(rng, 40, 6);
        ASSERT_TRUE(f.is_closed());
        auto bc = compute_barcode(f, 1);
        auto st = ref::states(f);
        for (auto& b : bc.bars) {
            EXPECT_GE(b.birth, 1);
            EXPECT_LE(b.death, static_cast<int>(f.size()) - 1);
        }
        for (std::size_t node = 1; node <= f.size(); ++node)
            for (int p = 0; p <= 1; ++p) {
                std::size_t cover = 0;
                for (auto& b : bc.bars)
                    if (b.degree == p && b.birth <= static_cast<int>(node) && static_cast<int>(node) <= b.death) ++cover;
                ASSERT_EQ(cover, homology(st[node], p).dim()) << "trial " << trial << " node " << node << " p " << p;
            }
    }
}

TEST(Zigzag, MonotoneMatchesStandardPersistence) {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        InstanceParams ip;
        ip.max_time_steps = 1;
        ip.max_vertices = 7;
        auto lf = random_filtrations(rng, ip)[0];
        std::vector<std::pair<Level, Simplex>> order;
        for (std::size_t i = 0; i < lf.universe().size(); ++i)
            if (lf.births()[i] != kAbsent) order.push_back({lf.births()[i], lf.universe()[i]});
        std::stable_sort(order.begin(), order.end(), [](auto& a, auto& b) {
            if (a.first != b.first) return a.first < b.first;
            return FaceOrder{}(a.second, b.second);
        });
        ZigzagFiltration f;
        std::vector<Simplex> seq;
        for (auto& [l, s] : order) {
            f.ops.push_back({OpKind::Insert, s});
            seq.push_back(s);
        }
        auto bc = compute_barcode(f, 1);
        EXPECT_EQ(bc.bars, ref::standard_persistence(seq, 1)) << "trial " << trial;
    }
}

TEST(Zigzag, Deterministic) {
    std::mt19937_64 rng(4);
    auto f = random_zigzag(rng, 40, 6);
    EXPECT_EQ(compute_barcode(f, 1).bars, compute_barcode(f, 1).bars);
}

TEST(FullBars, Examples) {
    Barcode bc{{{0, 1, 5}, {0, 2, 2}, {0, 4, 4}}, 6};
    EXPECT_EQ(count_full_bars(bc, 1, 5, 0), 1u);
    EXPECT_EQ(count_full_bars(Barcode{{}, 6}, 2, 3, 0), 0u);
    EXPECT_THROW(count_full_bars(bc, 0, 2, 0), ParameterError);
    EXPECT_THROW(count_full_bars(bc, 3, 2, 0), ParameterError);
    EXPECT_THROW(count_full_bars(bc, 1, 7, 0), ParameterError);
}

TEST(FullBars, PointSpanCountsBarsThroughNode) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_zigzag(rng, 30, 5);
        auto bc = compute_barcode(f, 1);
        for (int i = 1; i <= bc.length; ++i) {
            std::size_t direct = 0;
            for (auto& b : bc.bars) direct += b.degree == 1 && b.birth <= i && i <= b.death;
            EXPECT_EQ(count_full_bars(bc, i, i, 1), direct);
        }
    }
}

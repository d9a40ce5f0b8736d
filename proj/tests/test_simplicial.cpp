#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support/reference.hpp"
#include "zzgril/f2.hpp"
#include "zzgril/instances.hpp"
#include "zzgril/simplex.hpp"

using namespace zzgril;

TEST(Simplex, RejectsUnsortedOrEmpty) {
    EXPECT_THROW(Simplex({2, 1}), ParameterError);
    EXPECT_THROW(Simplex({1, 1}), ParameterError);
    EXPECT_THROW(Simplex(std::vector<Vertex>{}), ParameterError);
    Simplex s{0, 3, 5};
    EXPECT_EQ(s.dimension(), 2);
    EXPECT_EQ(s, Simplex({0, 3, 5}));
}

TEST(Simplex, FacetsAreLexicographic) {
    auto fs = Simplex{0, 1, 2}.facets();
    ASSERT_EQ(fs.size(), 3u);
    EXPECT_EQ(fs[0], Simplex({0, 1}));
    EXPECT_EQ(fs[1], Simplex({0, 2}));
    EXPECT_EQ(fs[2], Simplex({1, 2}));
    EXPECT_TRUE(Simplex{0}.facets().empty());
}

TEST(BoundaryMatrix, SingleEdge) {
    auto m = boundary_matrix({Simplex{0}, Simplex{1}, Simplex{0, 1}}, 1);
    EXPECT_EQ(m.rows(), 2u);
    EXPECT_EQ(m.cols(), 1u);
    EXPECT_TRUE(m.get(0, 0));
    EXPECT_TRUE(m.get(1, 0));
}

TEST(BoundaryMatrix, HollowTriangleHasRankTwo) {
    auto m = boundary_matrix({Simplex{0}, Simplex{1}, Simplex{2}, Simplex{0, 1}, Simplex{1, 2}, Simplex{0, 2}}, 1);
    EXPECT_EQ(m.rows(), 3u);
    EXPECT_EQ(m.cols(), 3u);
    EXPECT_EQ(m.rank(), 2u);
}

TEST(BoundaryMatrix, NonClosedComplexNamesCoface) {
    try {
        boundary_matrix({Simplex{0}, Simplex{0, 1}}, 1);
        FAIL() << "expected StructuralError";
    } catch (const StructuralError& e) {
        EXPECT_NE(std::string(e.what()).find("{0,1}"), std::string::npos);
    }
    EXPECT_THROW(boundary_matrix({Simplex{0}}, -1), ParameterError);
}

TEST(BoundaryMatrix, BoundaryOfBoundaryVanishes) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        InstanceParams ip;
        ip.max_vertices = 6;
        ip.max_time_steps = 1;
        ip.max_dim = 3;
        auto f = random_filtrations(rng, ip)[0];
        auto k = f.sublevel(f.levels());
        for (int p = 1; p <= 2; ++p) {
            auto lo = boundary_matrix(k, p), hi = boundary_matrix(k, p + 1);
            if (hi.cols() == 0 || lo.cols() == 0) continue;
            auto prod = multiply(lo, hi);
            for (std::size_t c = 0; c < prod.cols(); ++c) EXPECT_TRUE(prod.column(c).empty());
        }
    }
}

TEST(F2, RankAndKernel) {
    F2Matrix m(3, 0);
    m.append({0, 1});
    m.append({1, 2});
    m.append({0, 2});
    EXPECT_EQ(m.rank(), 2u);
    auto ker = kernel_basis(m);
    ASSERT_EQ(ker.size(), 1u);
    EXPECT_EQ(ker[0], (F2Column{0, 1, 2}));
    EXPECT_EQ(F2Matrix::identity(4).rank(), 4u);
}

TEST(LevelFiltration, RejectsNonMonotoneAndDuplicates) {
    EXPECT_THROW(LevelFiltration(2, {{Simplex{0}, 2}, {Simplex{1}, 1}, {Simplex{0, 1}, 1}}), StructuralError);
    EXPECT_THROW(LevelFiltration(2, {{Simplex{0}, 1}, {Simplex{0}, 1}}), ParameterError);
    EXPECT_THROW(LevelFiltration(2, {{Simplex{0}, 3}}), ParameterError);
    EXPECT_THROW(LevelFiltration(0, {}), ParameterError);
}

TEST(LevelBinning, CeilingRule) {
    LevelBinning r(0.0, 4.0, 4);
    EXPECT_EQ(r(0.0), 1);
    EXPECT_EQ(r(1.0), 1);
    EXPECT_EQ(r(1.0001), 2);
    EXPECT_EQ(r(3.0), 3);
    EXPECT_EQ(r(4.0), 4);
    EXPECT_EQ(LevelBinning(2.0, 2.0, 3)(2.0), 1);
}

TEST(GraphClique, EqualWeightsTriangle) {
    WeightedGraph g{3, {{0, 1, 0.5}, {1, 2, 0.5}, {0, 2, 0.5}}};
    auto f = graph_clique_filtration(g, 1, 2);
    EXPECT_EQ(f.universe().size(), 7u);
    for (auto b : f.births()) EXPECT_EQ(b, 1);
}

TEST(GraphClique, PathGraph) {
    WeightedGraph g{3, {{0, 1, 1.0}, {1, 2, 2.0}}};
    auto f = graph_clique_filtration(g, 2, 1, LevelBinning(0.0, 2.0, 2));
    EXPECT_EQ(f.birth(Simplex{0, 1}), 1);
    EXPECT_EQ(f.birth(Simplex{1, 2}), 2);
    for (Vertex v = 0; v < 3; ++v) EXPECT_EQ(f.birth(Simplex{v}), 1);
    EXPECT_EQ(f.birth(Simplex{0, 2}), kAbsent);
}

TEST(GraphClique, ParameterErrors) {
    WeightedGraph g{2, {{0, 1, 1.0}}};
    EXPECT_THROW(graph_clique_filtration(g, 0, 2), ParameterError);
    EXPECT_THROW(graph_clique_filtration(g, 2, 0), ParameterError);
}

TEST(GraphClique, SublevelsAreFlagComplexesOfThresholdedGraph) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        WeightedGraph g{5, {}};
        for (Vertex a = 0; a < 5; ++a)
            for (Vertex b = a + 1; b < 5; ++b)
                if (u(rng) < 0.8) g.edges.push_back({a, b, u(rng)});
        LevelBinning rule(0.0, 1.0, 4);
        auto f = graph_clique_filtration(g, 4, 2, rule);
        for (int l = 1; l <= 4; ++l) {
            std::set<std::pair<Vertex, Vertex>> kept;
            for (auto& e : g.edges)
                if (rule(e.weight) <= l) kept.insert({e.u, e.v});
            std::set<Simplex> expect;
            for (Vertex a = 0; a < 5; ++a) {
                expect.insert(Simplex{a});
                for (Vertex b = a + 1; b < 5; ++b) {
                    if (!kept.count({a, b})) continue;
                    expect.insert(Simplex{a, b});
                    for (Vertex c = b + 1; c < 5; ++c)
                        if (kept.count({a, c}) && kept.count({b, c})) expect.insert(Simplex{a, b, c});
                }
            }
            auto got = f.sublevel(l);
            EXPECT_EQ(std::set<Simplex>(got.begin(), got.end()), expect) << "level " << l;
        }
    }
}

TEST(Rips, SinglePoint) {
    auto f = rips_level_filtration({{1.0, 2.0}}, 3, 2);
    ASSERT_EQ(f.universe().size(), 1u);
    EXPECT_EQ(f.births()[0], 1);
}

TEST(Rips, TwoPoints) {
    auto f = rips_level_filtration({{0.0}, {2.5}}, 4, 1, LevelBinning(0.0, 4.0, 4));
    EXPECT_EQ(f.birth(Simplex{0, 1}), 3);
}

TEST(Rips, EmptyInputRejected) { EXPECT_THROW(rips_level_filtration({}, 3, 2), ParameterError); }

TEST(Rips, LevelComplexesMatchThresholdRips) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<double>> pts(4);
        for (auto& p : pts) p = {u(rng), u(rng)};
        LevelBinning rule(0.0, 1.5, 5);
        auto f = rips_level_filtration(pts, 5, 2, rule);
        for (int l = 1; l <= 5; ++l) {
            double r = rule.upper_edge(l);
            auto close = [&](Vertex a, Vertex b) {
                double dx = pts[a][0] - pts[b][0], dy = pts[a][1] - pts[b][1];
                return std::sqrt(dx * dx + dy * dy) <= r;
            };
            std::set<Simplex> expect;
            for (Vertex a = 0; a < 4; ++a) {
                expect.insert(Simplex{a});
                for (Vertex b = a + 1; b < 4; ++b) {
                    if (!close(a, b)) continue;
                    expect.insert(Simplex{a, b});
                    for (Vertex c = b + 1; c < 4; ++c)
                        if (close(a, c) && close(b, c)) expect.insert(Simplex{a, b, c});
                }
            }
            auto got = f.sublevel(l);
            EXPECT_EQ(std::set<Simplex>(got.begin(), got.end()), expect) << "level " << l;
        }
    }
}

TEST(Rips, SublevelsAreClosed) {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> nd;
    std::vector<std::vector<double>> pts(7, std::vector<double>(3));
    for (auto& p : pts)
        for (auto& x : p) x = nd(rng);
    auto f = rips_level_filtration(pts, 6, 3);
    for (int l = 1; l <= 6; ++l) {
        auto k = f.sublevel(l);
        std::sort(k.begin(), k.end(), FaceOrder{});
        EXPECT_NO_THROW(require_closed(k));
    }
}

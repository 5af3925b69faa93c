#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <random>
#include <set>

#include "rcover/covering.hpp"
#include "rcover/oracle.hpp"
#include "rcover/planar.hpp"
#include "util.hpp"

using namespace rcover;

namespace {

// stacked triangulation with some edges removed while 3-connectivity survives
Multigraph random_3conn_planar(int n, std::mt19937& rng) {
    std::vector<std::array<int, 3>> faces{{0, 1, 2}, {0, 1, 3}, {1, 2, 3}, {0, 2, 3}};
    std::set<std::pair<int, int>> es{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (int v = 4; v < n; ++v) {
        int f = std::uniform_int_distribution<int>(0, static_cast<int>(faces.size()) - 1)(rng);
        auto [a, b, c] = faces[f];
        faces[f] = {a, b, v};
        faces.push_back({b, c, v});
        faces.push_back({a, c, v});
        es.insert({a, v});
        es.insert({b, v});
        es.insert({c, v});
    }
    std::vector<std::pair<int, int>> list(es.begin(), es.end());
    std::shuffle(list.begin(), list.end(), rng);
    for (auto e : list) {
        auto trial = es;
        trial.erase(e);
        if (is_3connected(fx::from_edges(n, {trial.begin(), trial.end()}))) es = trial;
        if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) break;
    }
    return fx::from_edges(n, {es.begin(), es.end()});
}

std::set<std::vector<int>> vertex_maps(const PermutationGroup& g) {
    std::set<std::vector<int>> s;
    for (auto& a : g) s.insert(a.vmap);
    return s;
}

}  // namespace

TEST(Planar, EmbeddingFaces) {
    auto k4 = planar_embedding(fx::complete(4));
    ASSERT_TRUE(k4);
    EXPECT_EQ(k4->faces, 4);
    EXPECT_FALSE(planar_embedding(fx::complete(5)));
    auto cube = planar_embedding(fx::load("cube"));
    ASSERT_TRUE(cube);
    EXPECT_EQ(cube->faces, 6);
    EXPECT_FALSE(is_planar(fx::load("petersen")));
}

TEST(Planar, Connectivity) {
    EXPECT_TRUE(is_3connected(fx::complete(4)));
    EXPECT_TRUE(is_3connected(fx::load("cube")));
    EXPECT_FALSE(is_3connected(fx::cycle(5)));
    EXPECT_FALSE(is_3connected(fx::complete(3)));
}

TEST(Planar, PlatonicOrders) {
    struct Case {
        const char* name;
        size_t order;
    };
    for (auto [name, order] : {Case{"tetrahedron", 24}, Case{"cube", 48}, Case{"octahedron", 48},
                               Case{"dodecahedron", 120}, Case{"icosahedron", 120}}) {
        auto t0 = std::chrono::steady_clock::now();
        auto g = fx::load(name);
        auto aut = aut_3conn_planar(g);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        EXPECT_EQ(aut.size(), order) << name;
        EXPECT_LT(s, 1.0) << name;
        for (auto& a : aut) EXPECT_TRUE(is_automorphism(g, a));
    }
}

TEST(Planar, ColoredVertex) {
    auto g = fx::complete(4);
    g.vertex_color[0] = 1;
    EXPECT_EQ(aut_3conn_planar(g).size(), 6u);
}

TEST(Planar, RejectsNon3Connected) {
    EXPECT_THROW(aut_3conn_planar(fx::cycle(6)), Misuse);
}

TEST(Planar, MatchesOracleOnRandomGraphs) {
    std::mt19937 rng(7);
    for (int it = 0; it < 60; ++it) {
        int n = std::uniform_int_distribution<int>(4, 10)(rng);
        auto g = random_3conn_planar(n, rng);
        if (it % 3 == 0) g.vertex_color[std::uniform_int_distribution<int>(0, n - 1)(rng)] = 2;
        if (it % 4 == 1) g.add_pendant(std::uniform_int_distribution<int>(0, n - 1)(rng));
        if (it % 5 == 2) g.add_half_edge(0);
        auto mine = aut_3conn_planar(g);
        auto ref = oracle::aut_bruteforce(g);
        EXPECT_EQ(mine.size(), ref.size());
        EXPECT_EQ(vertex_maps(mine), vertex_maps(ref));
    }
}

TEST(Planar, ListIso) {
    auto k4 = fx::complete(4);
    EXPECT_TRUE(list_iso_3conn_planar(k4, k4));
    auto cube = fx::load("cube");
    // antipode of each vertex: the unique vertex at distance 3
    auto inc = cube.incidence();
    std::vector<std::vector<int>> lists(cube.v());
    for (int s = 0; s < cube.v(); ++s) {
        std::vector<int> d(cube.v(), -1);
        std::vector<int> q{s};
        d[s] = 0;
        for (size_t i = 0; i < q.size(); ++i)
            for (int x : inc[q[i]]) {
                int w = cube.half_edges[cube.half_edges[x].partner].vertex;
                if (d[w] < 0) d[w] = d[q[i]] + 1, q.push_back(w);
            }
        for (int w = 0; w < cube.v(); ++w)
            if (d[w] == 3) lists[s].push_back(w);
    }
    auto m = list_iso_3conn_planar(cube, cube, &lists);
    ASSERT_TRUE(m);
    for (int u = 0; u < cube.v(); ++u) EXPECT_EQ(m->image[u], lists[u][0]);
    lists[3].clear();
    EXPECT_FALSE(list_iso_3conn_planar(cube, cube, &lists));
}

TEST(Planar, ListIsoAgreesWithBacktracking) {
    std::mt19937 rng(11);
    for (int it = 0; it < 40; ++it) {
        int n = std::uniform_int_distribution<int>(4, 9)(rng);
        auto g = random_3conn_planar(n, rng);
        auto h = random_3conn_planar(n, rng);
        if (it % 2) h = fx::relabel(g, rng);
        if (!is_3connected(h)) continue;
        bool a = list_iso_3conn_planar(g, h).has_value();
        bool b = backtrack_list_iso(g, h).has_value();
        EXPECT_EQ(a, b);
    }
}

TEST(Planar, SemiregularSubgroupsMatchOracle) {
    for (auto g : {fx::complete(4), fx::load("cube"), fx::load("octahedron"), fx::cycle(6), fx::path(2),
                   fx::cycle(4)}) {
        auto mine = semiregular_subgroups(g);
        auto ref = oracle::semiregular_subgroups_bruteforce(g);
        std::multiset<size_t> a, b;
        for (auto& s : mine) {
            a.insert(s.size());
            EXPECT_EQ(semiregularity_violation(g, s), "");
        }
        for (auto& s : ref) b.insert(s.size());
        EXPECT_EQ(a, b);
    }
    EXPECT_EQ(semiregular_subgroups(fx::complete(4)).size(), 8u);
    EXPECT_EQ(semiregular_subgroups(fx::load("cube")).size(), 40u);
}

TEST(Planar, HalfQuotientsOfFourCycleAtom) {
    // u - x - v - y - u with boundary u, v
    auto a = fx::from_edges(4, {{0, 2}, {2, 1}, {1, 3}, {3, 0}});
    auto qs = proper_atom_half_quotients(a, 0, 1);
    // rotation (u v)(x y): two vertices joined by a double edge; reflection (u v) with x, y
    // fixed is not allowed, so only the rotational quotient exists
    ASSERT_EQ(qs.size(), 1u);
    EXPECT_EQ(qs[0].v(), 2);
    EXPECT_THROW(proper_atom_half_quotients(fx::path(3), 0, 1), Misuse);
}

TEST(Planar, HalfQuotientOfPathAtomWithMiddleEdge) {
    // u - x - y - v: the reflection flips xy into a half-edge
    auto a = fx::from_edges(4, {{0, 2}, {2, 3}, {3, 1}});
    auto qs = proper_atom_half_quotients(a, 0, 1);
    ASSERT_EQ(qs.size(), 1u);
    EXPECT_EQ(qs[0].v(), 2);
    int halves = 0;
    for (auto& he : qs[0].half_edges) halves += he.partner == kNone;
    EXPECT_EQ(halves, 1);
}

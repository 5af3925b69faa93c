#include <gtest/gtest.h>

#include <random>

#include "rcover/oracle.hpp"
#include "rcover/reduction.hpp"
#include "util.hpp"

using namespace rcover;

namespace {

Multigraph theta(int paths, int len) {
    Multigraph g;
    g.add_vertex();
    g.add_vertex();
    for (int p = 0; p < paths; ++p) {
        int prev = 0;
        for (int i = 1; i < len; ++i) {
            int x = g.add_vertex();
            g.add_edge(prev, x);
            prev = x;
        }
        g.add_edge(prev, 1);
    }
    return g;
}

ReductionSeries run(const Multigraph& g, Catalog& cat) { return reduction_series(normalize(g).graph, cat); }

std::vector<Sym> halvable_links(const std::vector<int>& classes) {
    std::vector<Sym> out;
    for (size_t c = 0; c < classes.size(); ++c)
        for (int i = 0; i < classes[c]; ++i)
            out.push_back({SymKind::Link, static_cast<int>(c) + 1, Ty::Halvable, 0});
    return out;
}

}  // namespace

TEST(Dipoles, HalfQuotientCountsMatchOracle) {
    std::vector<std::vector<int>> cases = {{1}, {2}, {3}, {4}, {5}, {7}, {2, 2}, {2, 2, 2}, {3, 1, 4}, {6, 2}};
    for (const auto& c : cases)
        EXPECT_EQ(dipole_half_count(halvable_links(c)), oracle::dipole_involution_quotients(c));
    for (int t = 1; t <= 5; ++t)
        EXPECT_EQ(dipole_half_count(halvable_links(std::vector<int>(t, 2))), 1L << t);
    for (int m = 1; m <= 9; ++m) EXPECT_EQ(dipole_half_count(halvable_links({m})), m / 2 + 1);
}

TEST(Dipoles, PatternsRespectOrientation) {
    Sym fwd{SymKind::Link, 1, Ty::Directed, 1};
    EXPECT_TRUE(dipole_half_patterns({fwd, fwd}).empty());
    auto p = dipole_half_patterns({fwd, fwd.reversed()});
    ASSERT_EQ(p.size(), 1u);
    ASSERT_EQ(p[0].size(), 1u);
    EXPECT_EQ(p[0][0].kind, SymKind::Loop);
    Sym und{SymKind::Link, 2, Ty::Undirected, 0};
    EXPECT_TRUE(dipole_half_patterns({und, und, und}).empty());
    EXPECT_EQ(dipole_half_patterns({und, und}).size(), 1u);
    EXPECT_EQ(dipole_loop_pattern({fwd, und}).size(), 2u);
}

TEST(Reduction, K4IsPrimitive) {
    Catalog cat;
    auto S = run(fx::complete(4), cat);
    EXPECT_EQ(S.r(), 0);
    EXPECT_EQ(cat.size(), 0);
}

TEST(Reduction, BowtieCollapsesToVertex) {
    Catalog cat;
    auto S = run(fx::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}), cat);
    EXPECT_EQ(S.center.kind, Center::Vertex);
    EXPECT_EQ(S.w.live_vertices().size(), 1u);
    EXPECT_EQ(S.levels[0].size(), 2u);
    EXPECT_EQ(S.levels[0][0].sym, S.levels[0][1].sym);
}

TEST(Reduction, ThetaTypes) {
    {
        Catalog cat;
        auto S = run(theta(3, 2), cat);
        ASSERT_GE(S.r(), 1);
        const auto& e = cat.entry(S.levels[0][0].sym.color);
        EXPECT_EQ(e.kind, AtomKind::Proper);
        EXPECT_EQ(e.sym, SymType::Symmetric);
        EXPECT_EQ(e.forms.size(), 1u);
    }
    {
        Catalog cat;
        auto S = run(theta(3, 3), cat);
        ASSERT_GE(S.r(), 1);
        const auto& e = cat.entry(S.levels[0][0].sym.color);
        EXPECT_EQ(e.sym, SymType::Halvable);
        ASSERT_EQ(e.forms.size(), 2u);
        EXPECT_EQ(e.forms[1].kind, Form::Half);
    }
}

TEST(Reduction, DeterministicAndRelabelInvariant) {
    std::mt19937 rng(7);
    std::vector<Multigraph> gs = {theta(4, 3), fx::load("cube"), fx::cycle(9),
                                  fx::from_edges(7, {{0, 1}, {1, 2}, {2, 0}, {2, 3}, {3, 4}, {4, 5}, {5, 3}, {5, 6}})};
    for (const auto& g : gs) {
        Catalog a, b;
        auto Sa = run(g, a), Sb = run(g, b);
        EXPECT_EQ(Sa.describe(), Sb.describe());
        EXPECT_EQ(a.dump(), b.dump());
        for (int i = 0; i < 5; ++i) {
            Catalog c;
            auto Sc = run(fx::relabel(g, rng), c);
            EXPECT_EQ(Sc.r(), Sa.r());
            EXPECT_EQ(c.size(), a.size());
            EXPECT_EQ(Sc.w.live_vertices().size(), Sa.w.live_vertices().size());
        }
    }
}

TEST(WAutomorphisms, MatchOracle) {
    for (const char* name : {"cube", "k4", "octahedron", "petersen"}) {
        auto g = fx::load(name);
        auto w = to_wgraph(normalize(g).graph).w;
        auto aut = automorphisms(w);
        EXPECT_EQ(aut.size(), oracle::aut_bruteforce(g).size()) << name;
        EXPECT_EQ(semiregular_subgroups(w).size(), oracle::semiregular_subgroups_bruteforce(g).size())
            << name;
    }
}

TEST(WAutomorphisms, QuotientOfCubeByAntipodal) {
    auto w = to_wgraph(normalize(fx::load("cube")).graph).w;
    for (const auto& grp : semiregular_subgroups(w, 2)) {
        auto q = quotient_w(w, grp);
        EXPECT_EQ(q.g.live_vertices().size(), 4u);
        size_t fixed = 0;
        for (int e : w.live_elems()) fixed += grp[1].e[e] == e;
        EXPECT_EQ(q.g.live_elems().size(), (12 + fixed) / 2);
        size_t halves = 0;
        for (int e : q.g.live_elems()) halves += q.g.elems[e].sym().kind == SymKind::Half;
        EXPECT_EQ(halves, fixed);
    }
}

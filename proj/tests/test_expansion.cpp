#include <gtest/gtest.h>

#include <random>
#include <set>

#include "rcover/covering.hpp"
#include "rcover/expansion.hpp"
#include "rcover/oracle.hpp"
#include "rcover/planar.hpp"
#include "util.hpp"

using namespace rcover;

namespace {

void expect_certified(const Multigraph& g, const Multigraph& h, const CoverResult& r) {
    ASSERT_EQ(r.verdict, Verdict::Yes) << r.why;
    EXPECT_TRUE(certificate_check(g, h, r.group, r.iso)) << certificate_check(g, h, r.group, r.iso).why;
    auto rep = verify_covering(g, h, certificate_projection(g, r.group, r.iso));
    EXPECT_EQ(rep.kind, CoverKind::RegularCovering) << rep.why;
}

Multigraph bouquet(int loops) {
    Multigraph h;
    h.add_vertex();
    for (int i = 0; i < loops; ++i) h.add_edge(0, 0);
    return h;
}

}  // namespace

TEST(Matching, SmallCases) {
    auto k33 = bipartite_perfect_matching(std::vector<std::vector<char>>(3, std::vector<char>(3, 1)));
    ASSERT_TRUE(k33);
    EXPECT_EQ(std::set<int>(k33->begin(), k33->end()).size(), 3u);
    // one centre against three leaves, padded to a square
    EXPECT_FALSE(bipartite_perfect_matching({{1, 1, 1}, {0, 0, 0}, {0, 0, 0}}));
    auto forced = bipartite_perfect_matching({{1, 1}, {1, 0}});
    ASSERT_TRUE(forced);
    EXPECT_EQ(*forced, (std::vector<int>{1, 0}));
    EXPECT_FALSE(bipartite_perfect_matching({{1, 1}, {0, 0}}));
}

TEST(Cover, CubeOverK4) {
    auto g = fx::load("cube"), h = fx::complete(4);
    auto r = regular_cover(g, h);
    expect_certified(g, h, r);
    EXPECT_EQ(r.k, 2);
}

TEST(Cover, IsomorphismWhenKIsOne) {
    auto g = fx::complete(4);
    std::mt19937 rng(3);
    auto h = fx::relabel(g, rng);
    auto r = regular_cover(g, h);
    expect_certified(g, h, r);
    EXPECT_EQ(r.route, "isomorphism");
    EXPECT_EQ(regular_cover(fx::cycle(5), fx::path(5)).verdict, Verdict::No);
}

TEST(Cover, PetersenOverLoopEdgeLoop) {
    auto g = fx::load("petersen");
    auto h = fx::load("petersen_quotient");
    auto r = regular_cover(g, h);
    expect_certified(g, h, r);
    EXPECT_EQ(r.k, 5);
    EXPECT_EQ(regular_cover(g, fx::load("petersen_quotient_recolored")).verdict, Verdict::No);
}

TEST(Cover, QuickRejections) {
    EXPECT_EQ(regular_cover(fx::cycle(6), fx::cycle(4)).verdict, Verdict::No);
    EXPECT_EQ(regular_cover(fx::cycle(6), fx::path(3)).verdict, Verdict::No);
    Multigraph two = fx::cycle(3);
    two.add_vertex();
    EXPECT_EQ(regular_cover(two, fx::complete(1)).verdict, Verdict::Refused);
}

TEST(Cover, PathsHaveNoFreeActions) {
    // a path of odd order has a central vertex
    auto r = regular_cover(fx::path(5), fx::complete(1));
    EXPECT_EQ(r.verdict, Verdict::No);
}

TEST(Cover, IrregularCoverIsRejected) {
    // the 3-fold cover of the two-loop bouquet given by a transposition and a 3-cycle
    Multigraph h = bouquet(2);
    auto l = fx::voltage_lift(h, 3, {{1, 0, 2}, {1, 2, 0}});
    ASSERT_TRUE(l.g.connected());
    ASSERT_EQ(fx::deck_count(l, 3), 1);
    EXPECT_EQ(regular_cover(l.g, h).verdict, Verdict::No);
    EXPECT_FALSE(oracle::regular_cover_bruteforce(l.g, h));
}

TEST(Cover, AgreesWithOracleOnLifts) {
    std::mt19937 rng(11);
    int checked = 0;
    for (int it = 0; it < 150; ++it) {
        int n = 1 + rng() % 3;
        Multigraph h;
        for (int i = 0; i < n; ++i) h.add_vertex();
        for (int i = 1; i < n; ++i) h.add_edge(rng() % i, i, rng() % 3 == 0);
        for (int j = rng() % 3; j > 0; --j) h.add_edge(rng() % n, rng() % n, rng() % 2);
        int k = 2 + rng() % 2;
        std::vector<std::vector<int>> perm;
        for (int e = 0; e < h.e(); ++e) {
            std::vector<int> p(k);
            for (int t = 0; t < k; ++t) p[t] = t;
            std::shuffle(p.begin(), p.end(), rng);
            perm.push_back(p);
        }
        auto l = fx::voltage_lift(h, k, perm);
        if (!l.g.connected() || !is_planar(l.g)) continue;
        ++checked;
        auto r = regular_cover(l.g, h);
        bool want = oracle::regular_cover_bruteforce(l.g, h).has_value();
        ASSERT_EQ(r.verdict, want ? Verdict::Yes : Verdict::No) << serialize_graph(l.g) << "--\n" << serialize_graph(h);
        if (want) expect_certified(l.g, h, r);
    }
    EXPECT_GT(checked, 60);
}

TEST(FastPaths, Routes) {
    auto cube = fx::load("cube"), k4 = fx::complete(4);
    auto r = fast_paths(cube, k4);
    expect_certified(cube, k4, r);
    EXPECT_EQ(r.route, "3-connected G");
    EXPECT_EQ(r.stats.list_star_calls, 0);

    auto c9 = fx::cycle(9), c3 = fx::cycle(3);
    auto odd = fast_paths(c9, c3);
    expect_certified(c9, c3, odd);

    // even k, G with 2-cuts, H with a pendant edge
    Multigraph g = fx::cycle(6);
    g.add_edge(0, g.add_vertex());
    g.add_edge(3, g.add_vertex());
    Multigraph h = fx::from_edges(4, {{0, 1}, {1, 2}, {2, 0}, {0, 3}});
    EXPECT_EQ(fast_paths(g, h).verdict, Verdict::NotApplicable);
    expect_certified(g, h, regular_cover(g, h));
}

TEST(FastPaths, MatchGeneralPipeline) {
    auto cube = fx::load("cube");
    std::vector<Multigraph> hs;
    enumerate_quotients(cube, true, [&](const QuotientItem& q) {
        hs.push_back(q.h);
        return true;
    });
    for (const auto& h : hs) {
        auto a = fast_paths(cube, h), b = regular_cover(cube, h);
        EXPECT_EQ(a.verdict, b.verdict) << serialize_graph(h);
        EXPECT_EQ(a.verdict, Verdict::Yes);
    }
}

TEST(Quotients, CountsMatchOracle) {
    // values computed once by the brute-force oracle
    std::vector<std::pair<Multigraph, std::size_t>> cases = {
        {fx::complete(1), 1}, {fx::complete(2), 2}, {fx::path(3), 1}, {fx::cycle(4), 5},
        {fx::cycle(6), 6},    {fx::complete(4), 4}, {fx::load("cube"), 11}, {fx::cycle(5), 2},
    };
    for (const auto& [g, want] : cases) {
        std::vector<Multigraph> got;
        enumerate_quotients(g, true, [&](const QuotientItem& q) {
            EXPECT_TRUE(isomorphic(quotient(g, q.group).graph, q.h));
            got.push_back(q.h);
            return true;
        });
        EXPECT_EQ(got.size(), want) << serialize_graph(g);
        EXPECT_EQ(oracle::quotient_set_bruteforce(g).size(), want);
    }
}

TEST(Quotients, CubeIncludesK4) {
    auto cube = fx::load("cube");
    bool k4 = false;
    std::size_t all = 0;
    enumerate_quotients(cube, false, [&](const QuotientItem& q) {
        ++all;
        k4 = k4 || isomorphic(q.h, fx::complete(4));
        return true;
    });
    EXPECT_TRUE(k4);
    EXPECT_GE(all, 11u);
}

TEST(Quotients, EarlyStop) {
    int seen = 0;
    enumerate_quotients(fx::cycle(6), false, [&](const QuotientItem&) { return ++seen < 2; });
    EXPECT_EQ(seen, 2);
}

#include <gtest/gtest.h>

#include "rcover/oracle.hpp"
#include "util.hpp"

using namespace rcover;

TEST(OracleAut, Orders) {
    EXPECT_EQ(oracle::aut_bruteforce(fx::complete(4)).size(), 24u);
    EXPECT_EQ(oracle::aut_bruteforce(fx::load("cube")).size(), 48u);
    EXPECT_EQ(oracle::aut_bruteforce(fx::cycle(5)).size(), 10u);
    EXPECT_EQ(oracle::aut_bruteforce(fx::load("petersen")).size(), 120u);
}

TEST(OracleAut, Refuses) {
    EXPECT_THROW(oracle::aut_bruteforce(fx::cycle(13)), Refused);
}

std::vector<size_t> orders(const std::vector<PermutationGroup>& gs) {
    std::vector<size_t> o;
    for (auto& g : gs) o.push_back(g.size());
    return o;
}

TEST(OracleSemiregular, SmallCases) {
    auto k2 = oracle::semiregular_subgroups_bruteforce(fx::path(2));
    EXPECT_EQ(orders(k2), (std::vector<size_t>{1, 2}));
    EXPECT_EQ(oracle::semiregular_subgroups_bruteforce(fx::path(3)).size(), 1u);
    // D4: trivial, rotation by 2, two edge reflections, rotation group, and the
    // Klein group generated by the edge reflections
    EXPECT_EQ(orders(oracle::semiregular_subgroups_bruteforce(fx::cycle(4))),
              (std::vector<size_t>{1, 2, 2, 2, 4, 4}));
    // S4 on K4: trivial, three double transpositions, three 4-cycles, Klein group
    EXPECT_EQ(orders(oracle::semiregular_subgroups_bruteforce(fx::complete(4))),
              (std::vector<size_t>{1, 2, 2, 2, 4, 4, 4, 4}));
    EXPECT_EQ(oracle::semiregular_subgroups_bruteforce(fx::load("cube")).size(), 40u);
    EXPECT_EQ(oracle::semiregular_subgroups_bruteforce(fx::load("petersen")).size(), 7u);
}

TEST(OracleSemiregular, UndirectedEdgeCannotFlip) {
    auto g = parse_graph("v 1\nv 2\ne 1 2 tundirected");
    EXPECT_EQ(oracle::semiregular_subgroups_bruteforce(g).size(), 1u);
}

TEST(OracleQuotient, K4ByDoubleTransposition) {
    auto k4 = fx::complete(4);
    for (auto& grp : oracle::semiregular_subgroups_bruteforce(k4)) {
        if (grp.size() != 2) continue;
        auto q = oracle::quotient(k4, grp);
        EXPECT_TRUE(isomorphic(q, parse_graph("v 1\nv 2\ne 1 2\ne 1 2\nh 1\nh 2")));
    }
}

TEST(OracleQuotient, Sets) {
    EXPECT_EQ(oracle::quotient_set_bruteforce(fx::from_edges(1, {})).size(), 1u);
    auto k2 = oracle::quotient_set_bruteforce(fx::path(2));
    ASSERT_EQ(k2.size(), 2u);
    EXPECT_TRUE(isomorphic(k2[1], parse_graph("v 1\nh 1")));
    EXPECT_EQ(oracle::quotient_set_bruteforce(fx::cycle(4)).size(), 5u);
    EXPECT_EQ(oracle::quotient_set_bruteforce(fx::complete(4)).size(), 4u);
    // frozen: distinct quotients of the cube
    auto cube = oracle::quotient_set_bruteforce(fx::load("cube"));
    EXPECT_EQ(cube.size(), 11u);
    bool has_k4 = false;
    for (auto& q : cube) has_k4 |= isomorphic(q, fx::complete(4));
    EXPECT_TRUE(has_k4);
}

TEST(OracleCover, Decisions) {
    EXPECT_TRUE(oracle::regular_cover_bruteforce(fx::load("cube"), fx::complete(4)));
    EXPECT_TRUE(oracle::regular_cover_bruteforce(fx::cycle(6), fx::cycle(3)));
    EXPECT_FALSE(oracle::regular_cover_bruteforce(fx::complete(4), fx::complete(3)));
    EXPECT_TRUE(oracle::regular_cover_bruteforce(fx::load("petersen"), fx::load("petersen_quotient")));
    EXPECT_FALSE(oracle::regular_cover_bruteforce(fx::load("petersen"),
                                                  fx::load("petersen_quotient_recolored")));
}

TEST(OracleCover, IndependentOfNumbering) {
    std::mt19937 rng(11);
    auto cube = fx::load("cube");
    for (int i = 0; i < 5; ++i) {
        auto r = fx::relabel(cube, rng);
        EXPECT_EQ(oracle::quotient_set_bruteforce(r).size(), 11u);
        EXPECT_EQ(oracle::semiregular_subgroups_bruteforce(r).size(), 40u);
    }
}

TEST(OracleDipole, InvolutionCounts) {
    for (int m = 2; m <= 10; ++m) EXPECT_EQ(oracle::dipole_involution_quotients({m}), m / 2 + 1);
    for (int t = 1; t <= 6; ++t)
        EXPECT_EQ(oracle::dipole_involution_quotients(std::vector<int>(t, 2)), 1 << t);
}

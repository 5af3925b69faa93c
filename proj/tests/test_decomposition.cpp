#include <gtest/gtest.h>

#include "rcover/decomposition.hpp"
#include "util.hpp"

using namespace rcover;

namespace {

WGraph wg(const Multigraph& g) { return to_wgraph(normalize(g).graph).w; }

std::vector<AtomKind> kinds(const std::vector<Atom>& as) {
    std::vector<AtomKind> k;
    for (auto& a : as) k.push_back(a.kind);
    return k;
}

Multigraph two_triangles() { return fx::from_edges(5, {{0, 1}, {1, 2}, {2, 0}, {0, 3}, {3, 4}, {4, 0}}); }

}  // namespace

TEST(BlockTree, PathCenterIsMiddleVertex) {
    auto w = to_wgraph(fx::path(5)).w;
    auto t = build_block_tree(w);
    EXPECT_EQ(t.block_vertices.size(), 4u);
    EXPECT_EQ(t.center.kind, Center::Vertex);
    EXPECT_EQ(t.center.vertices, std::vector<int>{2});
}

TEST(BlockTree, TwoTrianglesShareCenter) {
    auto t = build_block_tree(wg(two_triangles()));
    EXPECT_EQ(t.block_vertices.size(), 2u);
    EXPECT_EQ(t.center.kind, Center::Vertex);
    EXPECT_EQ(t.center.vertices, std::vector<int>{0});
    EXPECT_EQ(t.parent_vertex[0], 0);
    EXPECT_EQ(t.parent_vertex[1], 0);
}

TEST(BlockTree, K4IsOneBlock) {
    auto t = build_block_tree(wg(fx::complete(4)));
    EXPECT_EQ(t.center.kind, Center::Block);
    EXPECT_EQ(t.center.vertices.size(), 4u);
    EXPECT_NE(dump_block_tree(t).find("(center)"), std::string::npos);
}

TEST(BlockTree, StubsAreLeaves) {
    // a vertex with one pendant hanging off a triangle: the triangle is the center
    auto t = build_block_tree(wg(parse_graph("v 1\nv 2\nv 3\ne 1 2\ne 2 3\ne 3 1\np 1\np 1\np 2")));
    EXPECT_EQ(t.center.kind, Center::Block);
    auto k1 = build_block_tree(wg(parse_graph("v 1\np 1")));
    EXPECT_EQ(k1.center.kind, Center::Vertex);
}

TEST(BlockTree, RejectsDisconnected) {
    EXPECT_THROW(build_block_tree(to_wgraph(parse_graph("v 1\nv 2\nv 3\ne 1 2")).w), GraphError);
}

TEST(Atoms, StarAtCenter) {
    auto w = wg(parse_graph("v 1\nv 2\nv 3\nv 4\ne 1 2\ne 1 3\ne 1 4"));
    auto atoms = find_atoms(w, build_block_tree(w));
    ASSERT_EQ(atoms.size(), 1u);
    EXPECT_EQ(atoms[0].kind, AtomKind::Star);
    EXPECT_EQ(atoms[0].elems.size(), 3u);
}

TEST(Atoms, Dipole) {
    auto w = wg(parse_graph("v 1\nv 2\ne 1 2\ne 1 2\ne 1 2"));
    auto atoms = find_atoms(w, build_block_tree(w));
    ASSERT_EQ(atoms.size(), 1u);
    EXPECT_EQ(atoms[0].kind, AtomKind::Dipole);
    EXPECT_EQ(atoms[0].boundary, (std::vector<int>{0, 1}));
}

TEST(Atoms, TwoTrianglesAreBlockAtoms) {
    auto w = wg(two_triangles());
    auto atoms = find_atoms(w, build_block_tree(w));
    EXPECT_EQ(kinds(atoms), (std::vector<AtomKind>{AtomKind::NonStar, AtomKind::NonStar}));
    EXPECT_EQ(atoms[0].interior, (std::vector<int>{1, 2}));
    EXPECT_EQ(atoms[1].interior, (std::vector<int>{3, 4}));
}

TEST(Atoms, ProperAtomsOfSubdividedK4) {
    // K4 with one edge replaced by a path 0-4-5-1: {0,1} is a non-trivial 2-cut
    auto w = wg(fx::from_edges(6, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}, {0, 4}, {4, 5}, {5, 1}}));
    auto atoms = find_atoms(w, build_block_tree(w));
    // both sides of the cut are proper atoms
    ASSERT_EQ(atoms.size(), 2u);
    for (auto& a : atoms) {
        EXPECT_EQ(a.kind, AtomKind::Proper);
        EXPECT_EQ(a.boundary, (std::vector<int>{0, 1}));
    }
    EXPECT_EQ(atoms[0].interior, (std::vector<int>{2, 3}));
    EXPECT_EQ(atoms[1].interior, (std::vector<int>{4, 5}));
}

TEST(Atoms, InteriorsDisjointOnRandomGraphs) {
    std::mt19937 rng(5);
    for (int it = 0; it < 300; ++it) {
        int n = 3 + it % 8;
        Multigraph g;
        for (int i = 0; i < n; ++i) g.add_vertex();
        for (int i = 1; i < n; ++i) g.add_edge(i, rng() % i);
        for (int k = rng() % 5; k > 0; --k) {
            int a = rng() % n, b = rng() % n;
            if (a != b) g.add_edge(a, b);
        }
        auto w = wg(g);
        auto atoms = find_atoms(w, build_block_tree(w));
        std::vector<int> seen_v(w.num_vertices(), 0), seen_e(w.num_elems(), 0);
        for (auto& a : atoms) {
            for (int u : a.interior) EXPECT_EQ(seen_v[u]++, 0);
            for (int e : a.elems) EXPECT_EQ(seen_e[e]++, 0);
        }
    }
}

TEST(Primitive, Classification) {
    auto k4 = wg(parse_graph("v 1\nv 2\nv 3\nv 4\ne 1 2\ne 1 3\ne 1 4\ne 2 3\ne 2 4\ne 3 4\np 1\np 2"));
    EXPECT_EQ(is_primitive(k4, build_block_tree(k4)), Primitive::ThreeConnected);
    auto c6 = wg(fx::cycle(6));
    EXPECT_EQ(is_primitive(c6, build_block_tree(c6)), Primitive::Cycle);
    auto tt = wg(two_triangles());
    EXPECT_EQ(is_primitive(tt, build_block_tree(tt)), Primitive::NotPrimitive);
    auto k2 = wg(fx::path(2));
    EXPECT_EQ(is_primitive(k2, build_block_tree(k2)), Primitive::K2);
}

TEST(DipoleType, CaseAnalysis) {
    Sym fwd{SymKind::Link, 0, Ty::Directed, 1}, bwd{SymKind::Link, 0, Ty::Directed, -1};
    Sym und{SymKind::Link, 0, Ty::Undirected, 0}, hal{SymKind::Link, 0, Ty::Halvable, 0};
    EXPECT_EQ(dipole_symmetry_type({fwd, fwd, bwd, bwd}), SymType::Halvable);
    EXPECT_EQ(dipole_symmetry_type({fwd, fwd, bwd}), SymType::Asymmetric);
    EXPECT_EQ(dipole_symmetry_type({und, und, und}), SymType::Symmetric);
    EXPECT_EQ(dipole_symmetry_type({und, und, hal}), SymType::Halvable);
}

TEST(Match, PathAtomsIsomorphic) {
    // u-x-v with a pendant at x, twice
    auto w = wg(parse_graph("v 1\nv 2\nv 3\nv 4\nv 5\ne 1 2\ne 2 3\np 2\ne 1 4\ne 4 3\np 4"));
    Pattern a{&w, {0, 2, 1}, 2, {}}, b{&w, {0, 2, 3}, 2, {}};
    for (int e : w.live_elems()) {
        const auto& el = w.elems[e];
        bool in_a = el.a == 1 || el.b == 1;
        bool in_b = el.a == 3 || el.b == 3;
        if (in_a) a.elems.push_back(e);
        if (in_b) b.elems.push_back(e);
    }
    EXPECT_TRUE(match_one(a, b).has_value());
    MatchOptions swap;
    swap.pin_swap = true;
    EXPECT_TRUE(match_one(a, b, swap).has_value());
    int autos = 0;
    MatchOptions all;
    all.all_element_maps = true;
    match_patterns(a, a, all, [&](const MatchResult&) { return ++autos, true; });
    EXPECT_EQ(autos, 1);
}

#include "rcover/planar.hpp"

#include <algorithm>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <map>
#include <set>
#include <tuple>

#include "rcover/covering.hpp"
#include "rcover/groups.hpp"

namespace rcover {

namespace {

// neighbours over proper edges, each once
std::vector<std::vector<int>> simple_adj(const Multigraph& g) {
    std::vector<std::set<int>> s(g.v());
    for (const auto& he : g.half_edges) {
        if (he.vertex == kFree || he.partner == kNone) continue;
        int w = g.half_edges[he.partner].vertex;
        if (w == kFree || w == he.vertex) continue;
        s[he.vertex].insert(w);
    }
    std::vector<std::vector<int>> out(g.v());
    for (int u = 0; u < g.v(); ++u) out[u].assign(s[u].begin(), s[u].end());
    return out;
}

bool connected_without(const std::vector<std::vector<int>>& adj, int a, int b) {
    int n = static_cast<int>(adj.size());
    int start = -1;
    for (int u = 0; u < n && start < 0; ++u)
        if (u != a && u != b) start = u;
    if (start < 0) return true;
    std::vector<char> seen(n, 0);
    seen[start] = 1;
    if (a >= 0) seen[a] = 1;
    if (b >= 0) seen[b] = 1;
    std::vector<int> st{start};
    while (!st.empty()) {
        int x = st.back();
        st.pop_back();
        for (int y : adj[x])
            if (!seen[y]) seen[y] = 1, st.push_back(y);
    }
    return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

using Label = std::vector<int>;

// vertex colour plus the multiset of stubs
std::vector<Label> vertex_labels(const Multigraph& g) {
    std::vector<Label> lab(g.v());
    for (int u = 0; u < g.v(); ++u) lab[u] = {g.vertex_color[u]};
    std::vector<std::vector<int>> extra(g.v());
    for (int x = 0; x < g.h(); ++x) {
        const auto& he = g.half_edges[x];
        if (he.vertex == kFree) continue;
        int kind;
        if (he.partner == kNone)
            kind = 0;
        else if (g.half_edges[he.partner].vertex == kFree)
            kind = 1;
        else if (g.half_edges[he.partner].vertex == he.vertex)
            kind = 2;
        else
            continue;
        extra[he.vertex].push_back(kind * 1000003 + he.color * 8 + static_cast<int>(he.type));
    }
    for (int u = 0; u < g.v(); ++u) {
        std::sort(extra[u].begin(), extra[u].end());
        lab[u].insert(lab[u].end(), extra[u].begin(), extra[u].end());
    }
    return lab;
}

// (u,v) -> colour and type as seen from u; simple core assumed
std::map<std::pair<int, int>, std::pair<int, int>> edge_labels(const Multigraph& g) {
    std::map<std::pair<int, int>, std::pair<int, int>> out;
    for (const auto& he : g.half_edges) {
        if (he.vertex == kFree || he.partner == kNone) continue;
        int w = g.half_edges[he.partner].vertex;
        if (w == kFree || w == he.vertex) continue;
        out[{he.vertex, w}] = {he.color, static_cast<int>(he.type)};
    }
    return out;
}

struct Map3 {
    const Multigraph& g;
    RotationSystem rot;
    std::vector<Label> vlab;
    std::map<std::pair<int, int>, std::pair<int, int>> elab;
    std::vector<std::map<int, int>> pos;

    explicit Map3(const Multigraph& gr) : g(gr) {
        auto r = planar_embedding(g);
        if (!r) throw Misuse("graph is not planar");
        rot = *r;
        vlab = vertex_labels(g);
        elab = edge_labels(g);
        pos.resize(g.v());
        for (int u = 0; u < g.v(); ++u)
            for (int i = 0; i < static_cast<int>(rot.rot[u].size()); ++i) pos[u][rot.rot[u][i]] = i;
    }
};

void require_3conn(const Multigraph& g) {
    if (!is_simple_core(g) || !is_3connected(g))
        throw Misuse("angle method needs a simple 3-connected core");
}

// the unique extension sending dart (0, A.rot[0][0]) to (w, B.rot[w][j]) with orientation o
std::optional<std::vector<int>> extend(const Map3& A, const Map3& B, int w, int j, int o) {
    int n = A.g.v();
    std::vector<int> f(n, -1), finv(B.g.v(), -1);
    if (A.vlab[0] != B.vlab[w]) return std::nullopt;
    f[0] = w;
    finv[w] = 0;
    std::vector<std::tuple<int, int, int>> queue{{0, 0, j}};
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        auto [x, px, py] = queue[qi];
        int y = f[x];
        const auto& ra = A.rot.rot[x];
        const auto& rb = B.rot.rot[y];
        int d = static_cast<int>(ra.size());
        if (d != static_cast<int>(rb.size())) return std::nullopt;
        for (int t = 0; t < d; ++t) {
            int a = ra[(px + t) % d];
            int b = rb[(((py + o * t) % d) + d) % d];
            if (f[a] < 0) {
                if (finv[b] >= 0 || A.vlab[a] != B.vlab[b]) return std::nullopt;
                f[a] = b;
                finv[b] = a;
                queue.push_back({a, A.pos[a].at(x), B.pos[b].at(y)});
            } else if (f[a] != b) {
                return std::nullopt;
            }
            if (A.elab.at({x, a}) != B.elab.at({y, b})) return std::nullopt;
        }
    }
    for (int u = 0; u < n; ++u)
        if (f[u] < 0) return std::nullopt;
    return f;
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {
    Automorphism c;
    c.vmap.resize(b.vmap.size());
    c.hmap.resize(b.hmap.size());
    for (size_t i = 0; i < b.vmap.size(); ++i) c.vmap[i] = a.vmap[b.vmap[i]];
    for (size_t i = 0; i < b.hmap.size(); ++i) c.hmap[i] = a.hmap[b.hmap[i]];
    return c;
}

bool is_identity(const Automorphism& a) {
    for (size_t i = 0; i < a.vmap.size(); ++i)
        if (a.vmap[i] != static_cast<int>(i)) return false;
    for (size_t i = 0; i < a.hmap.size(); ++i)
        if (a.hmap[i] != static_cast<int>(i)) return false;
    return true;
}

}  // namespace

std::optional<RotationSystem> planar_embedding(const Multigraph& g) {
    using namespace boost;
    using BG = adjacency_list<vecS, vecS, undirectedS, property<vertex_index_t, int>,
                              property<edge_index_t, int>>;
    auto adj = simple_adj(g);
    int n = g.v();
    BG bg(n);
    int m = 0;
    for (int u = 0; u < n; ++u)
        for (int v : adj[u])
            if (u < v) add_edge(u, v, m++, bg);
    using Edge = graph_traits<BG>::edge_descriptor;
    std::vector<std::vector<Edge>> emb(n);
    if (!boyer_myrvold_planarity_test(boyer_myrvold_params::graph = bg,
                                      boyer_myrvold_params::embedding = emb.data()))
        return std::nullopt;
    RotationSystem r;
    r.rot.resize(n);
    for (int u = 0; u < n; ++u)
        for (auto e : emb[u]) {
            int a = static_cast<int>(source(e, bg)), b = static_cast<int>(target(e, bg));
            r.rot[u].push_back(a == u ? b : a);
        }
    // faces by tracing darts
    std::vector<std::map<int, int>> pos(n);
    for (int u = 0; u < n; ++u)
        for (int i = 0; i < static_cast<int>(r.rot[u].size()); ++i) pos[u][r.rot[u][i]] = i;
    std::set<std::pair<int, int>> used;
    for (int u = 0; u < n; ++u)
        for (int v : r.rot[u]) {
            if (used.count({u, v})) continue;
            ++r.faces;
            int a = u, b = v;
            while (used.insert({a, b}).second) {
                const auto& rb = r.rot[b];
                int nxt = rb[(pos[b].at(a) + 1) % rb.size()];
                a = b;
                b = nxt;
            }
        }
    if (m == 0) r.faces = 1;
    if (g.connected() && n - m + r.faces != 2) throw std::logic_error("embedding violates Euler");
    return r;
}

bool is_planar(const Multigraph& g) { return planar_embedding(g).has_value(); }

bool is_simple_core(const Multigraph& g) {
    std::set<std::pair<int, int>> seen;
    for (int x = 0; x < g.h(); ++x) {
        const auto& he = g.half_edges[x];
        if (he.vertex == kFree || he.partner == kNone || he.partner < x) continue;
        int w = g.half_edges[he.partner].vertex;
        if (w == kFree || w == he.vertex) continue;
        if (!seen.insert({std::min(he.vertex, w), std::max(he.vertex, w)}).second) return false;
    }
    return true;
}

bool is_3connected(const Multigraph& g) {
    if (g.v() < 4) return false;
    auto adj = simple_adj(g);
    if (!connected_without(adj, -1, -1)) return false;
    for (int a = 0; a < g.v(); ++a)
        for (int b = a + 1; b < g.v(); ++b)
            if (!connected_without(adj, a, b)) return false;
    return true;
}

PermutationGroup aut_3conn_planar(const Multigraph& g) {
    require_3conn(g);
    Map3 A(g);
    PermutationGroup out;
    for (int w = 0; w < g.v(); ++w) {
        int d = static_cast<int>(A.rot.rot[w].size());
        for (int j = 0; j < d; ++j)
            for (int o : {1, -1}) {
                auto f = extend(A, A, w, j, o);
                if (!f) continue;
                lift_vertex_map(g, g, *f, [&](const std::vector<int>& hm) {
                    out.push_back({*f, hm});
                    return true;
                });
            }
    }
    bool stubs = false;
    for (const auto& he : g.half_edges)
        if (he.partner == kNone || he.vertex == kFree || g.half_edges[he.partner].vertex == kFree ||
            g.half_edges[he.partner].vertex == he.vertex)
            stubs = true;
    if (!stubs && out.size() > static_cast<size_t>(4 * g.e()))
        throw std::logic_error("more automorphisms than angles");
    return out;
}

std::optional<VertexMapping> list_iso_3conn_planar(const Multigraph& g, const Multigraph& h,
                                                   const std::vector<std::vector<int>>* lists) {
    require_3conn(g);
    require_3conn(h);
    if (g.v() != h.v() || g.h() != h.h()) return std::nullopt;
    Map3 A(g), B(h);
    for (int w = 0; w < h.v(); ++w) {
        if (lists && std::find((*lists)[0].begin(), (*lists)[0].end(), w) == (*lists)[0].end())
            continue;
        int d = static_cast<int>(B.rot.rot[w].size());
        for (int j = 0; j < d; ++j)
            for (int o : {1, -1}) {
                auto f = extend(A, B, w, j, o);
                if (!f) continue;
                bool ok = true;
                for (int u = 0; u < g.v() && ok && lists; ++u) {
                    const auto& L = (*lists)[u];
                    ok = std::find(L.begin(), L.end(), (*f)[u]) != L.end();
                }
                if (!ok) continue;
                if (auto hm = lift_one(g, h, *f)) return VertexMapping{*f, *hm};
            }
    }
    return std::nullopt;
}

PermutationGroup automorphisms(const Multigraph& g, int max_vertices) {
    if (g.v() >= 4 && is_simple_core(g) && is_3connected(g) && is_planar(g)) return aut_3conn_planar(g);
    PermutationGroup out;
    IsoOptions opt;
    opt.max_vertices = max_vertices;
    backtrack_all_isos(g, g, opt, [&](const std::vector<int>& vm) {
        lift_vertex_map(g, g, vm, [&](const std::vector<int>& hm) {
            out.push_back({vm, hm});
            return true;
        });
        return true;
    });
    return out;
}

bool semiregular_element(const Multigraph& g, const Automorphism& a) {
    for (int u = 0; u < g.v(); ++u)
        if (a.vmap[u] == u) return false;
    for (int x = 0; x < g.h(); ++x) {
        if (a.hmap[x] == x) return false;
        const auto& he = g.half_edges[x];
        if (he.partner != kNone && a.hmap[x] == he.partner && he.type != EdgeType::Halvable)
            return false;
    }
    return true;
}

std::vector<PermutationGroup> semiregular_subgroups(const Multigraph& g) {
    auto aut = automorphisms(g);
    int id = -1;
    for (int i = 0; i < static_cast<int>(aut.size()) && id < 0; ++i)
        if (is_identity(aut[i])) id = i;
    auto key = [](const Automorphism& a) {
        auto k = a.vmap;
        k.insert(k.end(), a.hmap.begin(), a.hmap.end());
        return k;
    };
    auto t = make_table(aut, id, key, compose);
    std::vector<char> ok(aut.size());
    for (size_t i = 0; i < aut.size(); ++i) ok[i] = static_cast<int>(i) == id || semiregular_element(g, aut[i]);
    std::vector<PermutationGroup> out;
    for (auto& s : ok_subgroups(t, ok)) {
        PermutationGroup grp;
        for (int i : s) grp.push_back(aut[i]);
        out.push_back(std::move(grp));
    }
    return out;
}

std::vector<Multigraph> proper_atom_half_quotients(const Multigraph& a, int u, int v) {
    std::vector<Multigraph> out;
    for (const auto& s : automorphisms(a)) {
        if (s.vmap[u] != v || !is_identity(compose(s, s)) || !semiregular_element(a, s)) continue;
        Automorphism id;
        id.vmap.resize(a.v());
        id.hmap.resize(a.h());
        for (int i = 0; i < a.v(); ++i) id.vmap[i] = i;
        for (int i = 0; i < a.h(); ++i) id.hmap[i] = i;
        auto q = quotient(a, {id, s}).graph;
        bool dup = false;
        for (auto& o : out) dup = dup || isomorphic(o, q);
        if (!dup) out.push_back(std::move(q));
    }
    if (out.empty()) throw Misuse("atom is not halvable");
    return out;
}

}  // namespace rcover

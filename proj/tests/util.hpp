#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rcover/multigraph.hpp"

namespace fx {

using rcover::Multigraph;

inline Multigraph from_edges(int n, const std::vector<std::pair<int, int>>& es) {
    Multigraph g;
    for (int i = 0; i < n; ++i) g.add_vertex();
    for (auto [a, b] : es) g.add_edge(a, b);
    return g;
}

inline Multigraph cycle(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i) es.push_back({i, (i + 1) % n});
    return from_edges(n, es);
}

inline Multigraph path(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i + 1 < n; ++i) es.push_back({i, i + 1});
    return from_edges(n, es);
}

inline Multigraph complete(int n) {
    std::vector<std::pair<int, int>> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.push_back({i, j});
    return from_edges(n, es);
}

inline Multigraph load(const std::string& name) {
    return rcover::read_graph_file(std::string(RCOVER_DATA) + "/" + name + ".graph");
}

// same graph with vertices and half-edges renumbered
inline Multigraph relabel(const Multigraph& g, std::mt19937& rng) {
    std::vector<int> pv(g.v());
    for (int i = 0; i < g.v(); ++i) pv[i] = i;
    std::shuffle(pv.begin(), pv.end(), rng);
    std::vector<int> ph(g.h());
    for (int i = 0; i < g.h(); ++i) ph[i] = i;
    std::shuffle(ph.begin(), ph.end(), rng);
    Multigraph r;
    r.vertex_color.resize(g.v());
    for (int u = 0; u < g.v(); ++u) r.vertex_color[pv[u]] = g.vertex_color[u];
    r.half_edges.resize(g.h());
    for (int x = 0; x < g.h(); ++x) {
        auto he = g.half_edges[x];
        if (he.vertex != rcover::kFree) he.vertex = pv[he.vertex];
        if (he.partner != rcover::kNone) he.partner = ph[he.partner];
        r.half_edges[ph[x]] = he;
    }
    return r;
}

}  // namespace fx

namespace fx {

// k-fold cover of h from one permutation per edge (identity on half-edges and
// pendants is not supported); returns the lift and its projection on half-edges
struct Lift {
    Multigraph g;
    std::vector<int> proj;
};

inline Lift voltage_lift(const Multigraph& h, int k, const std::vector<std::vector<int>>& perm) {
    Lift out;
    for (int y = 0; y < h.v(); ++y)
        for (int t = 0; t < k; ++t) out.g.add_vertex(h.vertex_color[y]);
    int ei = 0;
    for (int x = 0; x < h.h(); ++x) {
        const auto& he = h.half_edges[x];
        if (he.partner < x) continue;
        const auto& pe = h.half_edges[he.partner];
        const auto& s = perm[ei++];
        for (int t = 0; t < k; ++t) {
            int a = he.vertex * k + t, b = pe.vertex * k + s[t];
            int z = he.type == rcover::EdgeType::DirTail   ? out.g.add_arc(a, b, he.color)
                    : he.type == rcover::EdgeType::DirHead ? out.g.add_arc(b, a, he.color)
                                                           : out.g.add_edge(a, b, he.color, he.type);
            int w = out.g.half_edges[z].partner;
            if (out.g.half_edges[z].vertex != a || (a == b && he.type == rcover::EdgeType::DirHead))
                std::swap(z, w);
            out.proj.resize(out.g.h());
            out.proj[z] = x;
            out.proj[w] = he.partner;
        }
    }
    return out;
}

// number of deck transformations of a connected lift: vertex maps commuting with the
// projection, found by lifting from each target of vertex 0 inside its fibre
inline int deck_count(const Lift& l, int k) {
    const auto& g = l.g;
    auto inc = g.incidence();
    int count = 0;
    for (int t = 0; t < k; ++t) {
        std::vector<int> img(g.v(), -1), himg(g.h(), -1);
        img[0] = t;
        std::vector<int> st{0};
        bool ok = true;
        while (!st.empty() && ok) {
            int u = st.back();
            st.pop_back();
            for (int x : inc[u]) {
                int y = -1;
                for (int z : inc[img[u]])
                    if (l.proj[z] == l.proj[x]) y = z;
                if (y < 0) {
                    ok = false;
                    break;
                }
                himg[x] = y;
                int p = g.half_edges[x].partner, q = g.half_edges[y].partner;
                int v = g.half_edges[p].vertex, w = g.half_edges[q].vertex;
                if (img[v] < 0) {
                    img[v] = w;
                    st.push_back(v);
                } else if (img[v] != w) {
                    ok = false;
                }
            }
        }
        std::vector<char> seen(g.v(), 0);
        for (int u = 0; u < g.v() && ok; ++u) {
            if (img[u] < 0 || seen[img[u]]) ok = false;
            else seen[img[u]] = 1;
        }
        count += ok;
    }
    return count;
}

}  // namespace fx

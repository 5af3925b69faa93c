#include "rcover/covering.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace rcover {

bool is_automorphism(const Multigraph& g, const Automorphism& a) {
    if (static_cast<int>(a.vmap.size()) != g.v() || static_cast<int>(a.hmap.size()) != g.h())
        return false;
    std::vector<char> hit(g.h(), 0), vhit(g.v(), 0);
    for (int u = 0; u < g.v(); ++u) {
        int w = a.vmap[u];
        if (w < 0 || w >= g.v() || vhit[w]) return false;
        vhit[w] = 1;
        if (g.vertex_color[u] != g.vertex_color[w]) return false;
    }
    for (int x = 0; x < g.h(); ++x) {
        int y = a.hmap[x];
        if (y < 0 || y >= g.h() || hit[y]) return false;
        hit[y] = 1;
        const auto& hx = g.half_edges[x];
        const auto& hy = g.half_edges[y];
        if (hx.color != hy.color || hx.type != hy.type) return false;
        if ((hx.vertex == kFree) != (hy.vertex == kFree)) return false;
        if (hx.vertex != kFree && a.vmap[hx.vertex] != hy.vertex) return false;
        if ((hx.partner == kNone) != (hy.partner == kNone)) return false;
        if (hx.partner != kNone && a.hmap[hx.partner] != hy.partner) return false;
    }
    return true;
}

bool is_isomorphism(const Multigraph& g, const Multigraph& h, const VertexMapping& m) {
    if (g.v() != h.v() || g.h() != h.h()) return false;
    Automorphism a{m.image, m.half_edge_image};
    if (static_cast<int>(a.vmap.size()) != g.v() || static_cast<int>(a.hmap.size()) != g.h())
        return false;
    std::vector<char> hit(h.h(), 0), vhit(h.v(), 0);
    for (int u = 0; u < g.v(); ++u) {
        int w = a.vmap[u];
        if (w < 0 || w >= h.v() || vhit[w]) return false;
        vhit[w] = 1;
        if (g.vertex_color[u] != h.vertex_color[w]) return false;
    }
    for (int x = 0; x < g.h(); ++x) {
        int y = a.hmap[x];
        if (y < 0 || y >= h.h() || hit[y]) return false;
        hit[y] = 1;
        const auto& hx = g.half_edges[x];
        const auto& hy = h.half_edges[y];
        if (hx.color != hy.color || hx.type != hy.type) return false;
        if ((hx.vertex == kFree) != (hy.vertex == kFree)) return false;
        if (hx.vertex != kFree && a.vmap[hx.vertex] != hy.vertex) return false;
        if ((hx.partner == kNone) != (hy.partner == kNone)) return false;
        if (hx.partner != kNone && a.hmap[hx.partner] != hy.partner) return false;
    }
    return true;
}

std::string semiregularity_violation(const Multigraph& g, const PermutationGroup& group) {
    for (size_t i = 0; i < group.size(); ++i) {
        const auto& a = group[i];
        bool id = true;
        for (int x = 0; x < g.h() && id; ++x) id = a.hmap[x] == x;
        for (int u = 0; u < g.v() && id; ++u) id = a.vmap[u] == u;
        if (id) continue;
        for (int u = 0; u < g.v(); ++u)
            if (a.vmap[u] == u)
                return "element " + std::to_string(i) + " fixes vertex " + std::to_string(u);
        for (int x = 0; x < g.h(); ++x) {
            if (a.hmap[x] == x)
                return "element " + std::to_string(i) + " fixes half-edge " + std::to_string(x);
            const auto& he = g.half_edges[x];
            if (he.partner != kNone && a.hmap[x] == he.partner && he.type != EdgeType::Halvable)
                return "element " + std::to_string(i) + " flips non-halvable edge at half-edge " +
                       std::to_string(x);
        }
    }
    return {};
}

Quotient quotient(const Multigraph& g, const PermutationGroup& group) {
    if (auto w = semiregularity_violation(g, group); !w.empty()) throw NotSemiregular(w);
    Quotient q;
    auto& pv = q.projection.vertex_map;
    auto& ph = q.projection.half_edge_map;
    pv.assign(g.v(), -1);
    ph.assign(g.h(), -1);
    int nv = 0;
    for (int u = 0; u < g.v(); ++u) {
        if (pv[u] >= 0) continue;
        for (auto& a : group) pv[a.vmap[u]] = nv;
        q.graph.add_vertex(g.vertex_color[u]);
        ++nv;
    }
    std::vector<int> rep;
    for (int x = 0; x < g.h(); ++x) {
        if (ph[x] >= 0) continue;
        for (auto& a : group) ph[a.hmap[x]] = static_cast<int>(rep.size());
        rep.push_back(x);
    }
    q.graph.half_edges.resize(rep.size());
    for (size_t o = 0; o < rep.size(); ++o) {
        const auto& he = g.half_edges[rep[o]];
        auto& qe = q.graph.half_edges[o];
        qe.vertex = he.vertex == kFree ? kFree : pv[he.vertex];
        qe.color = he.color;
        qe.type = he.type;
        qe.partner = kNone;
        if (he.partner != kNone && ph[he.partner] != static_cast<int>(o)) qe.partner = ph[he.partner];
    }
    return q;
}

CoverReport verify_covering(const Multigraph& g, const Multigraph& h,
                            const std::vector<int>& p) {
    CoverReport r;
    auto bad = [&](const std::string& w) {
        r.kind = CoverKind::NotCovering;
        r.why = w;
        return r;
    };
    if (static_cast<int>(p.size()) != g.h()) return bad("map size differs from h(G)");
    std::vector<int> pv(g.v(), -1);
    for (int x = 0; x < g.h(); ++x) {
        int y = p[x];
        if (y < 0 || y >= h.h()) return bad("half-edge " + std::to_string(x) + " maps outside H");
        const auto& a = g.half_edges[x];
        const auto& b = h.half_edges[y];
        std::string at = "half-edge " + std::to_string(x);
        if (a.color != b.color || a.type != b.type) return bad(at + ": color/type mismatch");
        if ((a.vertex == kFree) != (b.vertex == kFree)) return bad(at + ": free end mismatch");
        if (a.vertex != kFree) {
            if (pv[a.vertex] >= 0 && pv[a.vertex] != b.vertex)
                return bad(at + ": inconsistent vertex image");
            pv[a.vertex] = b.vertex;
        }
        if (a.partner == kNone) {
            if (b.partner != kNone) return bad(at + ": standalone maps to edge");
        } else {
            int q = p[a.partner];
            bool ok = (b.partner == kNone) ? q == y : q == b.partner;
            if (!ok) return bad(at + ": partner not preserved");
        }
    }
    for (int u = 0; u < g.v(); ++u)
        if (pv[u] < 0) {
            if (g.v() == 1 && h.v() == 1)
                pv[u] = 0;
            else
                return bad("vertex " + std::to_string(u) + " has no image");
        }
    // local bijectivity
    auto gi = g.incidence(), hi = h.incidence();
    for (int u = 0; u < g.v(); ++u) {
        std::vector<int> imgs;
        for (int x : gi[u]) imgs.push_back(p[x]);
        std::sort(imgs.begin(), imgs.end());
        auto want = hi[pv[u]];
        std::sort(want.begin(), want.end());
        if (imgs != want) return bad("not locally bijective at vertex " + std::to_string(u));
    }
    std::vector<std::vector<int>> fiber(h.v());
    for (int u = 0; u < g.v(); ++u) fiber[pv[u]].push_back(u);
    int k = static_cast<int>(fiber[0].size());
    for (auto& f : fiber)
        if (static_cast<int>(f.size()) != k || k == 0) return bad("fibers of unequal size");
    r.k = k;
    r.kind = CoverKind::Covering;
    // label lifts of a BFS tree of H from vertex 0
    std::vector<int> label(g.v(), -1);
    for (int t = 0; t < k; ++t) label[fiber[0][t]] = t;
    std::vector<char> seen(h.v(), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        int w = queue[qi];
        for (int y : hi[w]) {
            int py = h.half_edges[y].partner;
            if (py == kNone) continue;
            int w2 = h.half_edges[py].vertex;
            if (w2 == kFree || seen[w2]) continue;
            seen[w2] = 1;
            queue.push_back(w2);
            // every lift of y starts at a labelled vertex of fiber(w)
            for (int u : fiber[w])
                for (int x : gi[u])
                    if (p[x] == y) label[g.half_edges[g.half_edges[x].partner].vertex] = label[u];
        }
    }
    for (int u = 0; u < g.v(); ++u)
        if (label[u] < 0) return bad("G is not connected");
    // voltage permutations, one per half-edge of H
    std::set<std::vector<int>> gens;
    std::map<int, std::vector<int>> sigma;
    for (int x = 0; x < g.h(); ++x) {
        const auto& a = g.half_edges[x];
        if (a.vertex == kFree || a.partner == kNone) continue;
        int u2 = g.half_edges[a.partner].vertex;
        if (u2 == kFree) continue;
        auto& s = sigma[p[x]];
        if (s.empty()) s.assign(k, -1);
        s[label[a.vertex]] = label[u2];
    }
    for (auto& [y, s] : sigma) {
        std::vector<int> chk = s;
        std::sort(chk.begin(), chk.end());
        for (int t = 0; t < k; ++t)
            if (chk[t] != t) return bad("voltage is not a permutation");
        gens.insert(s);
    }
    std::vector<int> id(k);
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<int>> theta{id};
    std::vector<std::vector<int>> todo{id};
    while (!todo.empty() && theta.size() <= static_cast<size_t>(k)) {
        auto cur = todo.back();
        todo.pop_back();
        for (auto& s : gens) {
            std::vector<int> nx(k);
            for (int t = 0; t < k; ++t) nx[t] = s[cur[t]];
            if (theta.insert(nx).second) todo.push_back(nx);
        }
    }
    r.theta_order = theta.size();
    if (theta.size() == static_cast<size_t>(k)) r.kind = CoverKind::RegularCovering;
    return r;
}

CheckResult certificate_check(const Multigraph& g, const Multigraph& h,
                              const PermutationGroup& group, const VertexMapping& iso) {
    CheckResult res;
    auto fail = [&](const std::string& w) {
        res.ok = false;
        res.why = w;
        return res;
    };
    if (group.empty()) return fail("empty group");
    std::map<std::vector<int>, int> index;
    bool has_id = false;
    for (size_t i = 0; i < group.size(); ++i) {
        const auto& a = group[i];
        if (!is_automorphism(g, a)) return fail("element " + std::to_string(i) + " is not an automorphism");
        if (!index.emplace(a.hmap, static_cast<int>(i)).second)
            return fail("duplicate element " + std::to_string(i));
        bool id = true;
        for (int x = 0; x < g.h() && id; ++x) id = a.hmap[x] == x;
        has_id |= id;
    }
    if (!has_id) return fail("identity missing");
    // with no half-edges at all the hmap does not identify elements
    if (g.h() == 0 && group.size() > 1) return fail("non-trivial group on an edgeless graph");
    for (size_t i = 0; i < group.size(); ++i)
        for (size_t j = 0; j < group.size(); ++j) {
            std::vector<int> c(g.h());
            for (int x = 0; x < g.h(); ++x) c[x] = group[i].hmap[group[j].hmap[x]];
            if (!index.count(c)) return fail("not closed under composition");
        }
    if (auto w = semiregularity_violation(g, group); !w.empty()) return fail("not semiregular: " + w);
    auto q = quotient(g, group);
    if (!is_isomorphism(q.graph, h, iso)) return fail("iso is not an isomorphism G/Γ -> H");
    res.ok = true;
    return res;
}

std::vector<int> certificate_projection(const Multigraph& g, const PermutationGroup& group,
                                        const VertexMapping& iso) {
    auto q = quotient(g, group);
    std::vector<int> p(g.h());
    for (int x = 0; x < g.h(); ++x) p[x] = iso.half_edge_image[q.projection.half_edge_map[x]];
    return p;
}

std::string write_mapping(const std::vector<int>& m) {
    std::ostringstream out;
    for (size_t x = 0; x < m.size(); ++x) out << "m " << x << " " << m[x] << "\n";
    return out.str();
}

std::vector<int> parse_mapping(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::map<int, int> m;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (auto c = line.find('#'); c != std::string::npos) line.resize(c);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        int a, b;
        if (tag != "m" || !(ls >> a >> b) || a < 0)
            throw GraphError("mapping line " + std::to_string(ln) + ": expected 'm <id> <id>'");
        m[a] = b;
    }
    std::vector<int> out(m.empty() ? 0 : m.rbegin()->first + 1, -1);
    for (auto [a, b] : m) out[a] = b;
    return out;
}

std::string write_certificate(const PermutationGroup& group, const VertexMapping& iso) {
    std::ostringstream out;
    for (size_t i = 0; i < group.size(); ++i) {
        out << "g " << i << ":";
        for (int y : group[i].hmap) out << " " << y;
        out << "\n";
    }
    for (size_t u = 0; u < iso.image.size(); ++u) out << "mv " << u << " " << iso.image[u] << "\n";
    out << write_mapping(iso.half_edge_image);
    return out.str();
}

void parse_certificate(const std::string& text, const Multigraph& g, PermutationGroup& group,
                       VertexMapping& iso) {
    group.clear();
    std::istringstream in(text);
    std::string line, maps;
    std::map<int, int> mv;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "g") {
            std::string id;
            ls >> id;
            Automorphism a;
            for (int y; ls >> y;) a.hmap.push_back(y);
            if (static_cast<int>(a.hmap.size()) != g.h())
                throw GraphError("certificate line " + std::to_string(ln) + ": wrong permutation length");
            a.vmap.assign(g.v(), -1);
            for (int x = 0; x < g.h(); ++x) {
                int u = g.half_edges[x].vertex;
                int y = a.hmap[x];
                if (u == kFree || y < 0 || y >= g.h()) continue;
                a.vmap[u] = g.half_edges[y].vertex;
            }
            for (int u = 0; u < g.v(); ++u)
                if (a.vmap[u] < 0) a.vmap[u] = u;
            group.push_back(std::move(a));
        } else if (tag == "mv") {
            int a, b;
            if (!(ls >> a >> b)) throw GraphError("certificate line " + std::to_string(ln) + ": bad mv");
            mv[a] = b;
        } else if (tag == "m") {
            maps += line + "\n";
        } else {
            throw GraphError("certificate line " + std::to_string(ln) + ": unknown tag '" + tag + "'");
        }
    }
    iso.half_edge_image = parse_mapping(maps);
    iso.image.assign(mv.empty() ? 0 : mv.rbegin()->first + 1, -1);
    for (auto [a, b] : mv) iso.image[a] = b;
}

}  // namespace rcover

#include "rcover/multigraph.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace rcover {

int Multigraph::e() const {
    int n = 0;
    for (int x = 0; x < h(); ++x)
        if (half_edges[x].partner == kNone || half_edges[x].partner > x) ++n;
    return n;
}

int Multigraph::add_vertex(int color) {
    vertex_color.push_back(color);
    return v() - 1;
}

int Multigraph::add_edge(int a, int b, int color, EdgeType t) {
    int x = h();
    half_edges.push_back({a, x + 1, color, t});
    half_edges.push_back({b, x, color, t});
    return x;
}

int Multigraph::add_arc(int tail, int head, int color) {
    int x = h();
    half_edges.push_back({tail, x + 1, color, EdgeType::DirTail});
    half_edges.push_back({head, x, color, EdgeType::DirHead});
    return x;
}

int Multigraph::add_half_edge(int a, int color) {
    half_edges.push_back({a, kNone, color, EdgeType::Halvable});
    return h() - 1;
}

int Multigraph::add_pendant(int a, int color, EdgeType t) {
    return add_edge(a, kFree, color, t);
}

bool Multigraph::is_loop(int x) const {
    const auto& he = half_edges[x];
    return he.partner != kNone && he.vertex != kFree && half_edges[he.partner].vertex == he.vertex;
}

bool Multigraph::is_pendant(int x) const {
    const auto& he = half_edges[x];
    return he.partner != kNone && (he.vertex == kFree || half_edges[he.partner].vertex == kFree);
}

std::vector<std::vector<int>> Multigraph::incidence() const {
    std::vector<std::vector<int>> inc(v());
    for (int x = 0; x < h(); ++x)
        if (half_edges[x].vertex != kFree) inc[half_edges[x].vertex].push_back(x);
    return inc;
}

std::vector<int> Multigraph::degrees() const {
    std::vector<int> d(v(), 0);
    for (const auto& he : half_edges)
        if (he.vertex != kFree) ++d[he.vertex];
    return d;
}

bool Multigraph::connected() const {
    if (v() == 0) return true;
    auto inc = incidence();
    std::vector<char> seen(v(), 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int cnt = 1;
    while (!st.empty()) {
        int u = st.back();
        st.pop_back();
        for (int x : inc[u]) {
            int p = half_edges[x].partner;
            if (p == kNone) continue;
            int w = half_edges[p].vertex;
            if (w != kFree && !seen[w]) seen[w] = 1, ++cnt, st.push_back(w);
        }
    }
    return cnt == v();
}

// ---------------------------------------------------------------- I/O

namespace {

struct LineError : GraphError {
    LineError(int line, const std::string& msg)
        : GraphError("line " + std::to_string(line) + ": " + msg) {}
};

void parse_opts(const std::vector<std::string>& tok, size_t from, int line, int& color,
                EdgeType* type) {
    for (size_t i = from; i < tok.size(); ++i) {
        const auto& t = tok[i];
        if (t.size() > 1 && t[0] == 'c') {
            try {
                size_t used = 0;
                color = std::stoi(t.substr(1), &used);
                if (used != t.size() - 1 || color < 0) throw std::invalid_argument(t);
            } catch (const std::exception&) {
                throw LineError(line, "bad color '" + t + "'");
            }
        } else if (type && t == "thalvable") {
            *type = EdgeType::Halvable;
        } else if (type && t == "tundirected") {
            *type = EdgeType::Undirected;
        } else {
            throw LineError(line, "unexpected token '" + t + "'");
        }
    }
}

}  // namespace

Multigraph parse_graph(const std::string& text) {
    Multigraph g;
    std::unordered_map<std::string, int> ids;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    auto vid = [&](const std::string& s) {
        auto it = ids.find(s);
        if (it == ids.end()) throw LineError(line, "unknown vertex '" + s + "'");
        return it->second;
    };
    while (std::getline(in, raw)) {
        ++line;
        if (auto c = raw.find('#'); c != std::string::npos) raw.resize(c);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        for (std::string t; ls >> t;) tok.push_back(t);
        if (tok.empty()) continue;
        const auto& d = tok[0];
        int color = 0;
        EdgeType type = EdgeType::Halvable;
        if (d == "v") {
            if (tok.size() < 2) throw LineError(line, "vertex id missing");
            if (ids.count(tok[1])) throw LineError(line, "duplicate vertex '" + tok[1] + "'");
            parse_opts(tok, 2, line, color, nullptr);
            ids[tok[1]] = g.add_vertex(color);
        } else if (d == "e" || d == "a") {
            if (tok.size() < 3) throw LineError(line, "edge needs two endpoints");
            int a = vid(tok[1]), b = vid(tok[2]);
            parse_opts(tok, 3, line, color, d == "e" ? &type : nullptr);
            if (d == "e")
                g.add_edge(a, b, color, type);
            else
                g.add_arc(a, b, color);
        } else if (d == "h" || d == "p") {
            if (tok.size() < 2) throw LineError(line, "vertex id missing");
            int a = vid(tok[1]);
            parse_opts(tok, 2, line, color, d == "p" ? &type : nullptr);
            if (d == "h")
                g.add_half_edge(a, color);
            else
                g.add_pendant(a, color, type);
        } else {
            throw LineError(line, "unknown directive '" + d + "'");
        }
    }
    validate(g);
    return g;
}

Multigraph read_graph_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw GraphError("cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    try {
        return parse_graph(ss.str());
    } catch (const GraphError& e) {
        throw GraphError(path + ": " + e.what());
    }
}

std::string serialize_graph(const Multigraph& g) {
    std::ostringstream out;
    auto col = [](int c) { return c ? " c" + std::to_string(c) : std::string(); };
    for (int u = 0; u < g.v(); ++u) out << "v " << u + 1 << col(g.vertex_color[u]) << "\n";
    for (int x = 0; x < g.h(); ++x) {
        const auto& he = g.half_edges[x];
        if (he.partner == kNone) {
            out << "h " << he.vertex + 1 << col(he.color) << "\n";
            continue;
        }
        if (he.partner < x) continue;
        const auto& pe = g.half_edges[he.partner];
        std::string ty = he.type == EdgeType::Undirected ? " tundirected" : "";
        if (he.vertex == kFree || pe.vertex == kFree) {
            int a = he.vertex == kFree ? pe.vertex : he.vertex;
            out << "p " << a + 1 << col(he.color) << ty << "\n";
        } else if (he.type == EdgeType::DirTail) {
            out << "a " << he.vertex + 1 << " " << pe.vertex + 1 << col(he.color) << "\n";
        } else if (he.type == EdgeType::DirHead) {
            out << "a " << pe.vertex + 1 << " " << he.vertex + 1 << col(he.color) << "\n";
        } else {
            out << "e " << he.vertex + 1 << " " << pe.vertex + 1 << col(he.color) << ty << "\n";
        }
    }
    std::string s = out.str();
    if (!s.empty()) s.pop_back();
    return s;
}

void validate(const Multigraph& g) {
    auto fail = [](const std::string& m) { throw GraphError("invalid graph: " + m); };
    for (int x = 0; x < g.h(); ++x) {
        const auto& he = g.half_edges[x];
        if (he.vertex != kFree && (he.vertex < 0 || he.vertex >= g.v()))
            fail("half-edge " + std::to_string(x) + " attached to missing vertex");
        if (he.partner == kNone) {
            if (he.vertex == kFree) fail("free standalone half-edge");
            if (he.type != EdgeType::Halvable) fail("standalone half-edge of non-halvable type");
            continue;
        }
        if (he.partner < 0 || he.partner >= g.h() || he.partner == x) fail("bad partner");
        const auto& pe = g.half_edges[he.partner];
        if (pe.partner != x) fail("partner is not a matching");
        if (pe.color != he.color) fail("edge halves differ in color");
        bool dir = he.type == EdgeType::DirTail || he.type == EdgeType::DirHead;
        if (dir) {
            bool ok = (he.type == EdgeType::DirTail && pe.type == EdgeType::DirHead) ||
                      (he.type == EdgeType::DirHead && pe.type == EdgeType::DirTail);
            if (!ok) fail("directed edge without one tail and one head");
        } else if (pe.type != he.type) {
            fail("edge halves differ in type");
        }
        if (he.vertex == kFree && pe.vertex == kFree) fail("edge with two free ends");
    }
}

Normalized normalize(const Multigraph& g) {
    Normalized out;
    auto deg = g.degrees();
    auto inc = g.incidence();
    std::vector<char> drop(g.v(), 0);
    auto leafy = [&](int u) {
        if (deg[u] != 1 || g.vertex_color[u] != 0) return -1;
        int x = inc[u][0];
        int p = g.half_edges[x].partner;
        if (p == kNone) return -1;
        int w = g.half_edges[p].vertex;
        if (w == kFree || w == u) return -1;
        return w;
    };
    for (int u = 0; u < g.v(); ++u) {
        int w = leafy(u);
        if (w < 0) continue;
        if (g.v() == 2 && leafy(w) == u) continue;  // K2 stays
        drop[u] = 1;
    }
    std::vector<int> nid(g.v(), -1);
    for (int u = 0; u < g.v(); ++u)
        if (!drop[u]) {
            nid[u] = out.graph.add_vertex(g.vertex_color[u]);
            out.vertex_of.push_back(u);
        }
    out.graph.half_edges = g.half_edges;
    out.leaf_of.assign(g.h(), -1);
    for (int x = 0; x < g.h(); ++x) {
        auto& he = out.graph.half_edges[x];
        if (he.vertex == kFree) continue;
        if (drop[he.vertex]) {
            out.leaf_of[x] = he.vertex;
            he.vertex = kFree;
        } else {
            he.vertex = nid[he.vertex];
        }
    }
    out.half_edge_of.resize(g.h());
    std::iota(out.half_edge_of.begin(), out.half_edge_of.end(), 0);
    return out;
}

// ---------------------------------------------------------------- isomorphism

namespace {

enum StubKind { kLoopStub = 1, kPendantStub = 2, kHalfStub = 3 };

int code_at(const HalfEdge& he) { return he.color * 4 + static_cast<int>(he.type); }

struct Shape {
    const Multigraph* g;
    // per vertex: sorted (neighbor, sorted codes) for edges to other vertices
    std::vector<std::vector<std::pair<int, std::vector<int>>>> adj;
    // per vertex: sorted codes of loops / pendants / standalone half-edges
    std::vector<std::vector<int>> stubs;

    explicit Shape(const Multigraph& gr) : g(&gr), adj(gr.v()), stubs(gr.v()) {
        std::vector<std::map<int, std::vector<int>>> tmp(gr.v());
        for (int x = 0; x < gr.h(); ++x) {
            const auto& he = gr.half_edges[x];
            if (he.vertex == kFree) continue;
            int c = code_at(he);
            if (he.partner == kNone) {
                stubs[he.vertex].push_back(kHalfStub * 1000003 + c);
                continue;
            }
            int w = gr.half_edges[he.partner].vertex;
            if (w == kFree)
                stubs[he.vertex].push_back(kPendantStub * 1000003 + c);
            else if (w == he.vertex) {
                if (he.type != EdgeType::DirHead && x < he.partner)
                    stubs[he.vertex].push_back(kLoopStub * 1000003 + he.color * 4 +
                                               (he.type == EdgeType::DirTail ? 2 : int(he.type)));
            } else
                tmp[he.vertex][w].push_back(c);
        }
        for (int u = 0; u < gr.v(); ++u) {
            std::sort(stubs[u].begin(), stubs[u].end());
            for (auto& [w, cs] : tmp[u]) {
                std::sort(cs.begin(), cs.end());
                adj[u].emplace_back(w, std::move(cs));
            }
        }
    }

    const std::vector<int>* between(int u, int w) const {
        const auto& a = adj[u];
        auto it = std::lower_bound(a.begin(), a.end(), w,
                                   [](const auto& p, int key) { return p.first < key; });
        if (it == a.end() || it->first != w) return nullptr;
        return &it->second;
    }
};

// joint colour refinement of both graphs so classes are comparable
std::pair<std::vector<int>, std::vector<int>> refine(const Shape& a, const Shape& b) {
    int na = a.g->v(), nb = b.g->v();
    std::vector<int> cls(na + nb);
    {
        std::map<std::pair<int, std::vector<int>>, int> ids;
        auto init = [&](const Shape& s, int off) {
            for (int u = 0; u < s.g->v(); ++u) {
                // degree-based summary, order-independent
                std::vector<int> key = s.stubs[u];
                int deg = 0;
                for (auto& [w, cs] : s.adj[u]) deg += static_cast<int>(cs.size());
                key.push_back(-deg - 1);
                auto k = std::make_pair(s.g->vertex_color[u], key);
                auto it = ids.emplace(k, static_cast<int>(ids.size())).first;
                cls[off + u] = it->second;
            }
        };
        init(a, 0);
        init(b, na);
    }
    int count = -1;
    while (true) {
        std::map<std::vector<int>, int> ids;
        std::vector<int> next(na + nb);
        auto step = [&](const Shape& s, int off) {
            for (int u = 0; u < s.g->v(); ++u) {
                std::vector<std::vector<int>> parts;
                for (auto& [w, cs] : s.adj[u]) {
                    std::vector<int> p{cls[off + w]};
                    p.insert(p.end(), cs.begin(), cs.end());
                    parts.push_back(std::move(p));
                }
                std::sort(parts.begin(), parts.end());
                std::vector<int> key{cls[off + u]};
                for (auto& p : parts) {
                    key.push_back(-1);
                    key.insert(key.end(), p.begin(), p.end());
                }
                next[off + u] = ids.emplace(key, static_cast<int>(ids.size())).first->second;
            }
        };
        step(a, 0);
        step(b, na);
        cls.swap(next);
        if (static_cast<int>(ids.size()) == count) break;
        count = static_cast<int>(ids.size());
    }
    return {std::vector<int>(cls.begin(), cls.begin() + na),
            std::vector<int>(cls.begin() + na, cls.end())};
}

}  // namespace

void backtrack_all_isos(const Multigraph& g, const Multigraph& h, const IsoOptions& opt,
                        const std::function<bool(const std::vector<int>&)>& visit) {
    if (opt.max_vertices > 0 && g.v() > opt.max_vertices)
        throw Refused("refused: oracle scale only (" + std::to_string(g.v()) + " vertices)");
    if (g.v() != h.v() || g.h() != h.h()) return;
    if (g.v() == 0) {
        visit({});
        return;
    }
    Shape sg(g), sh(h);
    auto [cg, ch] = refine(sg, sh);
    {
        auto a = cg, b = ch;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b) return;
    }
    int n = g.v();
    std::vector<int> freq(n + n + 1, 0);
    for (int c : cg) ++freq[c];
    // BFS order from the rarest class
    int start = 0;
    for (int u = 1; u < n; ++u)
        if (freq[cg[u]] < freq[cg[start]]) start = u;
    std::vector<int> order, parent(n, -1), pos(n, -1);
    std::vector<char> seen(n, 0);
    for (int s = start, round = 0; round < n; ++round, s = (s + 1) % n) {
        if (seen[s]) continue;
        seen[s] = 1;
        size_t head = order.size();
        order.push_back(s);
        while (head < order.size()) {
            int u = order[head++];
            for (auto& [w, cs] : sg.adj[u])
                if (!seen[w]) seen[w] = 1, parent[w] = u, order.push_back(w);
        }
    }
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    std::vector<int> img(n, -1), used(n, 0);
    std::vector<int> cands_all(n);
    std::iota(cands_all.begin(), cands_all.end(), 0);

    std::function<bool(int)> rec = [&](int i) -> bool {
        if (i == n) return visit(img);
        int u = order[i];
        std::vector<int> cands;
        if (parent[u] >= 0) {
            for (auto& [w, cs] : sh.adj[img[parent[u]]]) cands.push_back(w);
        } else {
            cands = cands_all;
        }
        for (int c : cands) {
            if (used[c] || ch[c] != cg[u]) continue;
            if (opt.lists) {
                const auto& l = (*opt.lists)[u];
                if (std::find(l.begin(), l.end(), c) == l.end()) continue;
            }
            bool ok = true;
            int mapped_nb = 0;
            for (auto& [w, cs] : sg.adj[u]) {
                if (img[w] < 0) continue;
                ++mapped_nb;
                const auto* hc = sh.between(c, img[w]);
                if (!hc || *hc != cs) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            int mapped_h = 0;
            for (auto& [w, cs] : sh.adj[c])
                if (used[w]) ++mapped_h;
            if (mapped_h != mapped_nb) continue;
            img[u] = c;
            used[c] = 1;
            bool go = rec(i + 1);
            img[u] = -1;
            used[c] = 0;
            if (!go) return false;
        }
        return true;
    };
    rec(0);
}

void lift_vertex_map(const Multigraph& g, const Multigraph& h, const std::vector<int>& vmap,
                     const std::function<bool(const std::vector<int>&)>& visit) {
    // groups of interchangeable half-edges: key (vertex, neighbor-or-kind, code)
    struct Group {
        std::vector<int> src, dst;
        bool loops = false;
    };
    auto keyed = [](const Multigraph& gr, const std::vector<int>* map) {
        std::map<std::tuple<int, int, int>, std::vector<int>> m;
        for (int x = 0; x < gr.h(); ++x) {
            const auto& he = gr.half_edges[x];
            if (he.vertex == kFree) continue;
            int u = map ? (*map)[he.vertex] : he.vertex;
            int tag;
            if (he.partner == kNone)
                tag = -3;
            else {
                int w = gr.half_edges[he.partner].vertex;
                if (w == kFree)
                    tag = -2;
                else if (w == he.vertex) {
                    // one representative per loop: the tail, or the lower index
                    if (he.type == EdgeType::DirHead) continue;
                    if (he.type != EdgeType::DirTail && he.partner < x) continue;
                    tag = -1;
                } else {
                    // an ordinary edge is chosen once, from its lower mapped endpoint
                    int wm = map ? (*map)[w] : w;
                    if (wm < u) continue;
                    tag = wm;
                }
            }
            m[{u, tag, code_at(he)}].push_back(x);
        }
        return m;
    };
    auto ms = keyed(g, &vmap);
    auto md = keyed(h, nullptr);
    if (ms.size() != md.size()) return;
    std::vector<Group> groups;
    for (auto& [k, xs] : ms) {
        auto it = md.find(k);
        if (it == md.end() || it->second.size() != xs.size()) return;
        groups.push_back({xs, it->second, std::get<1>(k) == -1});
    }
    std::vector<int> out(g.h(), -1);
    std::function<bool(size_t)> rec = [&](size_t gi) -> bool {
        if (gi == groups.size()) return visit(out);
        auto& G = groups[gi];
        std::vector<int> perm(G.dst.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            size_t n = G.src.size();
            // loops of non-directed type may additionally be reversed
            bool flips = G.loops && g.half_edges[G.src[0]].type != EdgeType::DirTail;
            std::uint64_t limit = flips ? (std::uint64_t{1} << n) : 1;
            for (std::uint64_t mask = 0; mask < limit; ++mask) {
                for (size_t i = 0; i < n; ++i) {
                    int x = G.src[i], y = G.dst[perm[i]];
                    int px = g.half_edges[x].partner, py = h.half_edges[y].partner;
                    if ((mask >> i) & 1) std::swap(y, py);
                    out[x] = y;
                    if (px != kNone) out[px] = py;
                }
                if (!rec(gi + 1)) return false;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
        return true;
    };
    rec(0);
}

std::optional<std::vector<int>> lift_one(const Multigraph& g, const Multigraph& h,
                                         const std::vector<int>& vmap) {
    std::optional<std::vector<int>> res;
    lift_vertex_map(g, h, vmap, [&](const std::vector<int>& hm) {
        res = hm;
        return false;
    });
    return res;
}

std::optional<VertexMapping> backtrack_list_iso(const Multigraph& g, const Multigraph& h,
                                                const IsoOptions& opt) {
    std::optional<VertexMapping> res;
    backtrack_all_isos(g, h, opt, [&](const std::vector<int>& vm) {
        auto hm = lift_one(g, h, vm);
        if (!hm) return true;
        res = VertexMapping{vm, *hm};
        return false;
    });
    return res;
}

bool isomorphic(const Multigraph& g, const Multigraph& h, int max_vertices) {
    IsoOptions o;
    o.max_vertices = max_vertices;
    return backtrack_list_iso(g, h, o).has_value();
}

}  // namespace rcover

#include "rcover/decomposition.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace rcover {

std::string to_string(const Sym& s) {
    static const char* kinds[] = {"link", "pendant", "loop", "half"};
    static const char* tys[] = {"h", "u", "d"};
    std::string r = std::string(kinds[static_cast<int>(s.kind)]) + "(" + std::to_string(s.color) +
                    "," + tys[static_cast<int>(s.ty)];
    if (s.orient) r += s.orient > 0 ? ",>" : ",<";
    return r + ")";
}

int WGraph::add_vertex(int color) {
    vcolor.push_back(color);
    valive.push_back(1);
    return num_vertices() - 1;
}

int WGraph::add_link(int a, int b, const Sym& s, long hv2, long he2) {
    Elem e;
    e.a = a;
    e.b = b;
    e.list.push_back(s);
    e.hv2 = hv2;
    e.he2 = he2;
    elems.push_back(std::move(e));
    return num_elems() - 1;
}

int WGraph::add_stub(int a, const Sym& s, long hv2, long he2) {
    return add_link(a, -1, s, hv2, he2);
}

std::vector<int> WGraph::live_vertices() const {
    std::vector<int> out;
    for (int u = 0; u < num_vertices(); ++u)
        if (valive[u]) out.push_back(u);
    return out;
}

std::vector<int> WGraph::live_elems() const {
    std::vector<int> out;
    for (int e = 0; e < num_elems(); ++e)
        if (elems[e].alive) out.push_back(e);
    return out;
}

std::vector<std::vector<int>> WGraph::incidence() const {
    std::vector<std::vector<int>> inc(num_vertices());
    for (int e = 0; e < num_elems(); ++e) {
        const auto& el = elems[e];
        if (!el.alive) continue;
        inc[el.a].push_back(e);
        if (el.is_link()) inc[el.b].push_back(e);
    }
    return inc;
}

Ty ty_of(EdgeType t) {
    switch (t) {
        case EdgeType::Halvable: return Ty::Halvable;
        case EdgeType::Undirected: return Ty::Undirected;
        default: return Ty::Directed;
    }
}

Lifted to_wgraph(const Multigraph& g) {
    Lifted out;
    for (int u = 0; u < g.v(); ++u) out.w.add_vertex(g.vertex_color[u]);
    for (int x = 0; x < g.h(); ++x) {
        const auto& he = g.half_edges[x];
        Ty ty = ty_of(he.type);
        if (he.partner == kNone) {
            out.w.add_stub(he.vertex, {SymKind::Half, he.color, ty, 0}, 0, 1);
            out.half_edges.push_back({x});
            continue;
        }
        if (he.partner < x) continue;
        int p = he.partner;
        const auto& pe = g.half_edges[p];
        if (he.vertex == kFree || pe.vertex == kFree) {
            int at = he.vertex == kFree ? p : x;
            out.w.add_stub(g.half_edges[at].vertex, {SymKind::Pendant, he.color, ty, 0});
            out.half_edges.push_back({at, at == x ? p : x});
        } else if (he.vertex == pe.vertex) {
            int first = he.type == EdgeType::DirHead ? p : x;
            out.w.add_stub(he.vertex, {SymKind::Loop, he.color, ty, 0});
            out.half_edges.push_back({first, first == x ? p : x});
        } else {
            std::int8_t o = he.type == EdgeType::DirTail ? 1 : he.type == EdgeType::DirHead ? -1 : 0;
            out.w.add_link(he.vertex, pe.vertex, {SymKind::Link, he.color, ty, o});
            out.half_edges.push_back({x, p});
        }
    }
    return out;
}

Flattened to_multigraph(const WGraph& w, const std::function<int(const Sym&)>& code) {
    Flattened f;
    auto& g = f.g;
    f.vertex_id.assign(w.num_vertices(), -1);
    f.half_edges.assign(w.num_elems(), {});
    for (int u : w.live_vertices()) {
        f.vertex_id[u] = g.add_vertex(w.vcolor[u]);
        f.vertex_of.push_back(u);
    }
    const auto& id = f.vertex_id;
    for (int e : w.live_elems()) {
        const auto& el = w.elems[e];
        const Sym& s = el.sym();
        int c = code ? code(s) : s.color;
        EdgeType t = s.ty == Ty::Undirected ? EdgeType::Undirected : EdgeType::Halvable;
        int x;
        if (el.is_link()) {
            if (s.ty == Ty::Directed)
                x = s.orient >= 0 ? g.add_arc(id[el.a], id[el.b], c) : g.add_arc(id[el.b], id[el.a], c);
            else
                x = g.add_edge(id[el.a], id[el.b], c, t);
            int y = g.half_edges[x].partner;
            f.half_edges[e] = g.half_edges[x].vertex == id[el.a] ? std::vector<int>{x, y}
                                                                 : std::vector<int>{y, x};
        } else if (s.kind == SymKind::Pendant) {
            x = g.add_pendant(id[el.a], c, t);
            f.half_edges[e] = {x, g.half_edges[x].partner};
        } else if (s.kind == SymKind::Half) {
            x = g.add_half_edge(id[el.a], c);
            f.half_edges[e] = {x};
        } else {
            x = s.ty == Ty::Directed ? g.add_arc(id[el.a], id[el.a], c)
                                     : g.add_edge(id[el.a], id[el.a], c, t);
            f.half_edges[e] = {x, g.half_edges[x].partner};
        }
    }
    f.elem_of.assign(g.h(), -1);
    for (int e = 0; e < w.num_elems(); ++e)
        for (int x : f.half_edges[e]) f.elem_of[x] = e;
    return f;
}

WGraph extract(const WGraph& w, const std::vector<int>& verts, const std::vector<int>& elems,
               std::vector<int>* elem_map) {
    WGraph out;
    std::map<int, int> id;
    for (int u : verts) id[u] = out.add_vertex(w.vcolor[u]);
    for (int e : elems) {
        Elem el = w.elems[e];
        el.a = id.at(el.a);
        if (el.is_link()) el.b = id.at(el.b);
        el.alive = true;
        out.elems.push_back(std::move(el));
        if (elem_map) elem_map->push_back(e);
    }
    return out;
}

// ---------------------------------------------------------------- block tree

namespace {

void link_blocks(const WGraph& w, BlockTree& t) {
    int n = w.num_vertices();
    t.blocks_at.assign(n, {});
    t.stubs_at.assign(n, {});
    std::vector<std::vector<std::pair<int, int>>> adj(n);
    for (int e = 0; e < w.num_elems(); ++e) {
        const auto& el = w.elems[e];
        if (!el.alive) continue;
        if (el.is_link()) {
            adj[el.a].push_back({el.b, e});
            adj[el.b].push_back({el.a, e});
        } else {
            t.stubs_at[el.a].push_back(e);
        }
    }
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<int> estack;
    int timer = 0;
    struct Frame {
        int u, via, idx;
    };
    for (int s = 0; s < n; ++s) {
        if (!w.valive[s] || disc[s] >= 0) continue;
        std::vector<Frame> st{{s, -1, 0}};
        disc[s] = low[s] = timer++;
        while (!st.empty()) {
            auto& f = st.back();
            if (f.idx < static_cast<int>(adj[f.u].size())) {
                auto [v, e] = adj[f.u][f.idx++];
                if (e == f.via) continue;
                if (disc[v] < 0) {
                    estack.push_back(e);
                    disc[v] = low[v] = timer++;
                    st.push_back({v, e, 0});
                } else if (disc[v] < disc[f.u]) {
                    estack.push_back(e);
                    low[f.u] = std::min(low[f.u], disc[v]);
                }
            } else {
                int u = f.u, via = f.via;
                st.pop_back();
                if (st.empty()) break;
                int p = st.back().u;
                low[p] = std::min(low[p], low[u]);
                if (low[u] >= disc[p]) {
                    std::vector<int> links;
                    std::set<int> vs;
                    while (true) {
                        int e = estack.back();
                        estack.pop_back();
                        links.push_back(e);
                        vs.insert(w.elems[e].a);
                        vs.insert(w.elems[e].b);
                        if (e == via) break;
                    }
                    std::sort(links.begin(), links.end());
                    int id = static_cast<int>(t.block_links.size());
                    t.block_links.push_back(links);
                    t.block_vertices.emplace_back(vs.begin(), vs.end());
                    for (int v : vs) t.blocks_at[v].push_back(id);
                }
            }
        }
    }
}

int node_degree(const BlockTree& t, int u) {
    return static_cast<int>(t.blocks_at[u].size() + t.stubs_at[u].size());
}

void root_tree(const WGraph& w, BlockTree& t) {
    int nb = static_cast<int>(t.block_vertices.size());
    t.parent_vertex.assign(nb, -1);
    t.parent_block.assign(w.num_vertices(), -1);
    std::vector<char> seen_block(nb, 0), seen_vertex(w.num_vertices(), 0);
    // BFS over blocks and vertices
    std::vector<std::pair<int, int>> queue;  // (is_block, id)
    if (t.center.kind == Center::Block) {
        seen_block[t.center_block] = 1;
        queue.push_back({1, t.center_block});
    } else {
        seen_vertex[t.center.vertices[0]] = 1;
        queue.push_back({0, t.center.vertices[0]});
    }
    for (size_t i = 0; i < queue.size(); ++i) {
        auto [isb, id] = queue[i];
        if (isb) {
            for (int v : t.block_vertices[id]) {
                if (seen_vertex[v]) continue;
                seen_vertex[v] = 1;
                t.parent_block[v] = id;
                queue.push_back({0, v});
            }
        } else {
            for (int b : t.blocks_at[id]) {
                if (seen_block[b]) continue;
                seen_block[b] = 1;
                t.parent_vertex[b] = id;
                queue.push_back({1, b});
            }
        }
    }
}

}  // namespace

BlockTree build_block_tree(const WGraph& w) {
    BlockTree t;
    link_blocks(w, t);
    int nb = static_cast<int>(t.block_vertices.size());
    auto live = w.live_vertices();
    if (live.empty()) throw GraphError("empty graph");
    if (nb == 0) {
        if (live.size() != 1) throw GraphError("disconnected graph");
        t.center = {Center::Vertex, {live[0]}};
        root_tree(w, t);
        return t;
    }
    // tree nodes: blocks [0,nb), stubs, articulation vertices
    std::vector<int> stub_ids;
    for (int u : live)
        for (int s : t.stubs_at[u]) stub_ids.push_back(s);
    int ns = static_cast<int>(stub_ids.size());
    std::vector<int> vnode(w.num_vertices(), -1);
    int total = nb + ns;
    std::vector<int> node_vertex;
    for (int u : live)
        if (node_degree(t, u) >= 2) {
            vnode[u] = total++;
            node_vertex.push_back(u);
        }
    std::vector<std::vector<int>> adj(total);
    auto connect = [&](int a, int b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int b = 0; b < nb; ++b)
        for (int v : t.block_vertices[b])
            if (vnode[v] >= 0) connect(b, vnode[v]);
    for (int i = 0; i < ns; ++i) {
        int v = w.elems[stub_ids[i]].a;
        if (vnode[v] >= 0) connect(nb + i, vnode[v]);
    }
    // connectivity check
    {
        std::vector<char> seen(total, 0);
        std::vector<int> st{0};
        seen[0] = 1;
        int cnt = 1;
        while (!st.empty()) {
            int x = st.back();
            st.pop_back();
            for (int y : adj[x])
                if (!seen[y]) seen[y] = 1, ++cnt, st.push_back(y);
        }
        std::set<int> covered;
        for (auto& bv : t.block_vertices) covered.insert(bv.begin(), bv.end());
        if (cnt != total || covered.size() != live.size()) throw GraphError("disconnected graph");
    }
    std::vector<int> deg(total);
    std::vector<char> gone(total, 0);
    int remaining = total;
    for (int x = 0; x < total; ++x) deg[x] = static_cast<int>(adj[x].size());
    std::vector<int> layer;
    for (int x = 0; x < total; ++x)
        if (deg[x] <= 1) layer.push_back(x);
    while (remaining > 1) {
        std::vector<int> next;
        if (static_cast<int>(layer.size()) >= remaining) break;
        for (int x : layer) {
            gone[x] = 1;
            --remaining;
        }
        for (int x : layer)
            for (int y : adj[x])
                if (!gone[y] && --deg[y] == 1) next.push_back(y);
        layer.swap(next);
    }
    int c = -1;
    for (int x = 0; x < total; ++x)
        if (!gone[x]) {
            c = x;
            break;
        }
    if (remaining != 1) throw GraphError("block tree has no unique center");
    if (c < nb) {
        t.center = {Center::Block, t.block_vertices[c]};
        t.center_block = c;
    } else if (c < nb + ns) {
        t.center = {Center::Vertex, {w.elems[stub_ids[c - nb]].a}};
    } else {
        t.center = {Center::Vertex, {node_vertex[c - nb - ns]}};
    }
    root_tree(w, t);
    return t;
}

BlockTree build_block_tree(const WGraph& w, const Center& c) {
    BlockTree t;
    link_blocks(w, t);
    t.center = c;
    if (c.kind == Center::Block) {
        int a = c.vertices.at(0), b = c.vertices.at(1);
        for (int bl : t.blocks_at[a])
            if (std::binary_search(t.block_vertices[bl].begin(), t.block_vertices[bl].end(), b))
                t.center_block = bl;
        if (t.center_block < 0 || t.block_vertices[t.center_block] != c.vertices)
            throw GraphError("designated center block not found");
    } else if (!w.valive.at(c.vertices.at(0))) {
        throw GraphError("designated center vertex not alive");
    }
    root_tree(w, t);
    return t;
}

std::string dump_block_tree(const BlockTree& t) {
    std::ostringstream out;
    int nb = static_cast<int>(t.block_vertices.size());
    std::vector<std::vector<int>> kids(nb);
    std::vector<int> roots;
    for (int b = 0; b < nb; ++b) {
        if (b == t.center_block) continue;
        int p = t.parent_vertex[b];
        if (p < 0) continue;
        int pb = t.parent_block[p];
        if (pb >= 0)
            kids[pb].push_back(b);
        else
            roots.push_back(b);
    }
    std::function<void(int, int)> rec = [&](int b, int depth) {
        out << std::string(2 * depth, ' ') << "block {";
        for (size_t i = 0; i < t.block_vertices[b].size(); ++i)
            out << (i ? " " : "") << t.block_vertices[b][i];
        out << "}";
        if (t.parent_vertex[b] >= 0) out << " at " << t.parent_vertex[b];
        out << "\n";
        for (int k : kids[b]) rec(k, depth + 1);
    };
    if (t.center.kind == Center::Vertex) {
        out << "articulation " << t.center.vertices[0] << " (center)\n";
        for (int b : roots) rec(b, 1);
    } else {
        out << "(center) ";
        rec(t.center_block, 0);
    }
    return out.str();
}

// ---------------------------------------------------------------- atoms

namespace {

struct Part {
    AtomKind kind;
    std::vector<int> boundary, interior, elems;
};

struct Ctx {
    const WGraph& w;
    const BlockTree& t;
    const AtomOptions& o;
    int center_vertex;

    bool attached_outside(int u, int block) const {
        if (u == o.root) return true;
        return node_degree(t, u) - (block >= 0 ? 1 : 0) > 0;
    }
    // blocks hanging below u other than `except`
    std::vector<int> child_blocks(int u, int except) const {
        std::vector<int> out;
        for (int b : t.blocks_at[u])
            if (b != except && b != t.parent_block[u]) out.push_back(b);
        return out;
    }
    // everything strictly below vertex u away from block `from`
    void collect_below(int u, int from, std::vector<int>& vs, std::vector<int>& es) const {
        for (int s : t.stubs_at[u]) es.push_back(s);
        for (int b : t.blocks_at[u]) {
            if (b == from || b == t.parent_block[u]) continue;
            for (int e : t.block_links[b]) es.push_back(e);
            for (int v : t.block_vertices[b]) {
                if (v == u) continue;
                vs.push_back(v);
                collect_below(v, b, vs, es);
            }
        }
    }
};

}  // namespace

std::vector<Atom> find_atoms(const WGraph& w, const BlockTree& t, const AtomOptions& o) {
    Ctx cx{w, t, o, t.center.kind == Center::Vertex ? t.center.vertices[0] : -1};
    std::vector<Part> parts;
    int nb = static_cast<int>(t.block_vertices.size());
    // star parts
    for (int y : w.live_vertices()) {
        int up = -1;
        if (t.parent_block[y] < 0 && y != cx.center_vertex) up = t.center_block;
        if (!cx.child_blocks(y, up).empty() || t.stubs_at[y].size() < 2) continue;
        parts.push_back({AtomKind::Star, {y}, {}, t.stubs_at[y]});
    }
    for (int b = 0; b < nb; ++b) {
        const auto& bv = t.block_vertices[b];
        const auto& bl = t.block_links[b];
        int p = t.parent_vertex[b];
        // pendant block part whose non-root vertices carry at most one stub each
        if (b != t.center_block && p >= 0) {
            bool ok = true;
            std::vector<int> es = bl, interior;
            for (int z : bv) {
                if (z == p) continue;
                interior.push_back(z);
                if (!cx.child_blocks(z, b).empty() || t.stubs_at[z].size() > 1) ok = false;
                for (int s : t.stubs_at[z]) es.push_back(s);
            }
            if (ok) {
                std::sort(es.begin(), es.end());
                parts.push_back({AtomKind::NonStar, {p}, interior, es});
            }
        }
        // 2-cuts need three links inside the block; dipole ends may count outside attachment
        std::map<int, int> degb, degp;
        for (int e : bl) ++degb[w.elems[e].a], ++degb[w.elems[e].b];
        degp = degb;
        for (auto& [u, d] : degp)
            if (cx.attached_outside(u, b)) ++d;
        // dipoles
        std::map<std::pair<int, int>, std::vector<int>> par;
        for (int e : bl) {
            int a = w.elems[e].a, c = w.elems[e].b;
            par[{std::min(a, c), std::max(a, c)}].push_back(e);
        }
        for (auto& [uv, es] : par)
            if (es.size() >= 2 && degp[uv.first] >= 3 && degp[uv.second] >= 3)
                parts.push_back({AtomKind::Dipole, {uv.first, uv.second}, {}, es});
        // proper parts from non-trivial 2-cuts
        if (bv.size() < 4) continue;
        std::map<int, std::vector<std::pair<int, int>>> adj;
        for (int e : bl) {
            adj[w.elems[e].a].push_back({w.elems[e].b, e});
            adj[w.elems[e].b].push_back({w.elems[e].a, e});
        }
        for (size_t i = 0; i < bv.size(); ++i) {
            int u = bv[i];
            if (degb[u] < 3) continue;
            for (size_t j = i + 1; j < bv.size(); ++j) {
                int v = bv[j];
                if (degb[v] < 3) continue;
                std::map<int, int> comp;
                int nc = 0;
                for (int s : bv) {
                    if (s == u || s == v || comp.count(s)) continue;
                    std::vector<int> st{s};
                    comp[s] = nc;
                    while (!st.empty()) {
                        int x = st.back();
                        st.pop_back();
                        for (auto [y, e] : adj[x])
                            if (y != u && y != v && !comp.count(y)) comp[y] = nc, st.push_back(y);
                    }
                    ++nc;
                }
                if (nc < 2) continue;
                for (int c = 0; c < nc; ++c) {
                    std::vector<int> K;
                    for (auto& [x, cc] : comp)
                        if (cc == c) K.push_back(x);
                    bool bad = false;
                    for (int x : K)
                        if (x == p || x == o.root || x == cx.center_vertex) bad = true;
                    if (bad) continue;
                    std::vector<int> vs = K, es;
                    for (int e : bl) {
                        const auto& el = w.elems[e];
                        if (comp.count(el.a) && comp[el.a] == c) es.push_back(e);
                        else if (comp.count(el.b) && comp[el.b] == c) es.push_back(e);
                    }
                    for (int x : K) cx.collect_below(x, b, vs, es);
                    std::sort(vs.begin(), vs.end());
                    std::sort(es.begin(), es.end());
                    parts.push_back({AtomKind::Proper, {u, v}, vs, es});
                }
            }
        }
    }
    // inclusion-minimal parts
    std::sort(parts.begin(), parts.end(), [](const Part& a, const Part& b) {
        if (a.elems.size() != b.elems.size()) return a.elems.size() < b.elems.size();
        return std::tie(a.boundary, a.interior, a.elems) < std::tie(b.boundary, b.interior, b.elems);
    });
    std::vector<Atom> atoms;
    std::vector<char> used(w.num_elems(), 0);
    for (size_t i = 0; i < parts.size(); ++i) {
        const auto& P = parts[i];
        bool minimal = true;
        for (size_t j = 0; j < parts.size() && minimal; ++j) {
            if (j == i) continue;
            const auto& Q = parts[j];
            if (Q.elems.size() > P.elems.size()) break;
            if (Q.elems == P.elems) {
                if (j < i) minimal = false;  // duplicate
                continue;
            }
            if (std::includes(P.elems.begin(), P.elems.end(), Q.elems.begin(), Q.elems.end()))
                minimal = false;
        }
        if (!minimal) continue;
        for (int e : P.elems) {
            assert(!used[e]);
            used[e] = 1;
        }
        auto bnd = P.boundary;
        atoms.push_back({P.kind, bnd, P.interior, P.elems});
    }
    std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
        auto ka = a.boundary, kb = b.boundary;
        std::sort(ka.begin(), ka.end());
        std::sort(kb.begin(), kb.end());
        return std::tie(ka, a.interior, a.elems) < std::tie(kb, b.interior, b.elems);
    });
    return atoms;
}

Primitive is_primitive(const WGraph& w, const BlockTree& t, const AtomOptions& o) {
    if (!find_atoms(w, t, o).empty()) return Primitive::NotPrimitive;
    if (t.block_vertices.empty()) return Primitive::K1;
    if (t.block_vertices.size() > 1) return Primitive::NotPrimitive;
    const auto& bl = t.block_links[0];
    const auto& bv = t.block_vertices[0];
    if (bl.size() == 1) return Primitive::K2;
    std::map<int, int> d;
    for (int e : bl) ++d[w.elems[e].a], ++d[w.elems[e].b];
    bool cyc = true;
    for (int v : bv) cyc &= d[v] == 2;
    return cyc ? Primitive::Cycle : Primitive::ThreeConnected;
}

const char* to_string(Primitive p) {
    switch (p) {
        case Primitive::ThreeConnected: return "essentially-3-connected";
        case Primitive::Cycle: return "essentially-cycle";
        case Primitive::K2: return "K2-variant";
        case Primitive::K1: return "K1-variant";
        default: return "not-primitive";
    }
}

SymType dipole_symmetry_type(const std::vector<Sym>& links) {
    // per (color, type) class: directed links must balance, undirected ones pair up
    std::map<std::pair<int, Ty>, std::pair<int, int>> cls;
    for (const auto& s : links) {
        auto& c = cls[{s.color, s.ty}];
        if (s.ty == Ty::Directed)
            (s.orient > 0 ? c.first : c.second)++;
        else
            c.first++;
    }
    bool odd_undirected = false;
    for (auto& [k, c] : cls) {
        if (k.second == Ty::Directed && c.first != c.second) return SymType::Asymmetric;
        if (k.second == Ty::Undirected && c.first % 2) odd_undirected = true;
    }
    return odd_undirected ? SymType::Symmetric : SymType::Halvable;
}

}  // namespace rcover

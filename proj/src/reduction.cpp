#include "rcover/reduction.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "rcover/groups.hpp"
#include "rcover/planar.hpp"

namespace rcover {

// ---------------------------------------------------------------- automorphisms

WAut identity_of(const WGraph& w) {
    WAut a;
    a.v.assign(w.num_vertices(), -1);
    a.e.assign(w.num_elems(), -1);
    a.flip.assign(w.num_elems(), 0);
    for (int u : w.live_vertices()) a.v[u] = u;
    for (int e : w.live_elems()) a.e[e] = e;
    return a;
}

WAut compose(const WAut& a, const WAut& b) {
    WAut c;
    c.v.assign(b.v.size(), -1);
    c.e.assign(b.e.size(), -1);
    c.flip.assign(b.e.size(), 0);
    for (size_t i = 0; i < b.v.size(); ++i)
        if (b.v[i] >= 0) c.v[i] = a.v[b.v[i]];
    for (size_t i = 0; i < b.e.size(); ++i)
        if (b.e[i] >= 0) {
            c.e[i] = a.e[b.e[i]];
            c.flip[i] = b.flip[i] ^ a.flip[b.e[i]];
        }
    return c;
}

bool is_identity(const WGraph& w, const WAut& a) {
    for (int u : w.live_vertices())
        if (a.v[u] != u) return false;
    for (int e : w.live_elems())
        if (a.e[e] != e || a.flip[e]) return false;
    return true;
}

bool semiregular(const WGraph& w, const WAut& a) {
    if (is_identity(w, a)) return true;
    for (int u : w.live_vertices())
        if (a.v[u] == u) return false;
    for (int e : w.live_elems()) {
        if (a.e[e] != e) continue;
        const Elem& el = w.elems[e];
        if (!el.is_link() || !a.flip[e] || el.sym().ty != Ty::Halvable) return false;
    }
    return true;
}

namespace {

WAut from_match(const WGraph& w, const Pattern& s, const Pattern& t, const MatchResult& r) {
    WAut a;
    a.v.assign(w.num_vertices(), -1);
    a.e.assign(w.num_elems(), -1);
    a.flip.assign(w.num_elems(), 0);
    for (size_t i = 0; i < s.verts.size(); ++i) a.v[s.verts[i]] = t.verts[r.vmap[i]];
    for (size_t i = 0; i < s.elems.size(); ++i) {
        int e = s.elems[i], f = t.elems[r.emap[i]];
        a.e[e] = f;
        if (w.elems[e].is_link()) a.flip[e] = w.elems[f].a != a.v[w.elems[e].a];
    }
    return a;
}

int sym_code(const Sym& s) {
    return s.color * 16 + static_cast<int>(s.kind) * 4 + static_cast<int>(s.ty);
}

// the angle method applies: simple, 3-connected, planar, at most one stub per vertex
std::optional<std::vector<WAut>> planar_automorphisms(const WGraph& w) {
    auto live = w.live_vertices();
    if (live.size() < 4) return std::nullopt;
    std::map<int, int> stubs;
    std::set<std::pair<int, int>> pairs;
    for (int e : w.live_elems()) {
        const Elem& el = w.elems[e];
        if (!el.is_link()) {
            if (++stubs[el.a] > 1) return std::nullopt;
        } else if (!pairs.insert({std::min(el.a, el.b), std::max(el.a, el.b)}).second) {
            return std::nullopt;
        }
    }
    auto f = to_multigraph(w, sym_code);
    if (!is_3connected(f.g) || !is_planar(f.g)) return std::nullopt;
    std::set<std::vector<int>> seen;
    std::vector<WAut> out;
    std::map<std::pair<int, int>, int> link_at;
    std::map<int, int> stub_at;
    for (int e : w.live_elems()) {
        const Elem& el = w.elems[e];
        if (el.is_link())
            link_at[{std::min(el.a, el.b), std::max(el.a, el.b)}] = e;
        else
            stub_at[el.a] = e;
    }
    for (const auto& m : aut_3conn_planar(f.g)) {
        if (!seen.insert(m.vmap).second) continue;
        WAut a;
        a.v.assign(w.num_vertices(), -1);
        a.e.assign(w.num_elems(), -1);
        a.flip.assign(w.num_elems(), 0);
        for (int i = 0; i < f.g.v(); ++i) a.v[f.vertex_of[i]] = f.vertex_of[m.vmap[i]];
        for (int e : w.live_elems()) {
            const Elem& el = w.elems[e];
            if (!el.is_link()) {
                a.e[e] = stub_at.at(a.v[el.a]);
                continue;
            }
            int x = a.v[el.a], y = a.v[el.b];
            int g = link_at.at({std::min(x, y), std::max(x, y)});
            a.e[e] = g;
            a.flip[e] = w.elems[g].a != x;
        }
        out.push_back(std::move(a));
    }
    return out;
}

}  // namespace

std::vector<WAut> automorphisms(const WGraph& w) {
    if (auto p = planar_automorphisms(w)) return *p;
    std::vector<WAut> out;
    auto s = pattern_whole(w);
    MatchOptions o;
    o.all_element_maps = true;
    match_patterns(s, s, o, [&](const MatchResult& r) {
        out.push_back(from_match(w, s, s, r));
        return true;
    });
    return out;
}

std::vector<std::vector<WAut>> semiregular_subgroups(const WGraph& w, int order) {
    auto aut = automorphisms(w);
    int id = -1;
    for (int i = 0; i < static_cast<int>(aut.size()) && id < 0; ++i)
        if (is_identity(w, aut[i])) id = i;
    if (id < 0) throw std::logic_error("identity missing from automorphism list");
    auto key = [](const WAut& a) {
        std::vector<int> k = a.v;
        k.insert(k.end(), a.e.begin(), a.e.end());
        k.insert(k.end(), a.flip.begin(), a.flip.end());
        return k;
    };
    auto t = make_table(aut, id, key, [](const WAut& a, const WAut& b) { return compose(a, b); });
    std::vector<char> ok(aut.size());
    for (size_t i = 0; i < aut.size(); ++i) ok[i] = semiregular(w, aut[i]);
    std::vector<std::vector<WAut>> out;
    for (auto& s : ok_subgroups(t, ok)) {
        if (order > 0 && static_cast<int>(s.size()) != order) continue;
        std::vector<WAut> grp;
        grp.push_back(aut[id]);
        for (int i : s)
            if (i != id) grp.push_back(aut[i]);
        out.push_back(std::move(grp));
    }
    return out;
}

WQuotient quotient_w(const WGraph& w, const std::vector<WAut>& group) {
    WQuotient q;
    q.vertex_orbit.assign(w.num_vertices(), -1);
    q.elem_orbit.assign(w.num_elems(), -1);
    for (int u : w.live_vertices()) {
        if (q.vertex_orbit[u] >= 0) continue;
        int id = q.g.add_vertex(w.vcolor[u]);
        for (const auto& g : group) q.vertex_orbit[g.v[u]] = id;
    }
    const auto& vo = q.vertex_orbit;
    for (int e : w.live_elems()) {
        if (q.elem_orbit[e] >= 0) continue;
        const Elem& el = w.elems[e];
        const Sym& s = el.sym();
        bool stabilized = false;
        for (const auto& g : group)
            if (g.e[e] == e && g.flip[e]) stabilized = true;
        int id;
        if (!el.is_link())
            id = q.g.add_stub(vo[el.a], s, el.hv2, el.he2);
        else if (stabilized)
            id = q.g.add_stub(vo[el.a], {SymKind::Half, s.color, s.ty, 0}, el.hv2 / 2, el.he2 / 2);
        else if (vo[el.a] == vo[el.b])
            id = q.g.add_stub(vo[el.a], {SymKind::Loop, s.color, s.ty, 0}, el.hv2, el.he2);
        else
            id = q.g.add_link(vo[el.a], vo[el.b], s, el.hv2, el.he2);
        for (const auto& g : group) q.elem_orbit[g.e[e]] = id;
    }
    return q;
}

WGraph loop_quotient(const WGraph& rep) {
    WGraph q = rep;
    for (auto& el : q.elems) {
        if (el.a == 1) el.a = 0;
        if (el.b == 1) el.b = 0;
        if (el.is_link() && el.a == el.b) throw std::logic_error("boundary vertices are adjacent");
    }
    q.kill_vertex(1);
    return compact(q, {0});
}

WGraph compact(const WGraph& w, const std::vector<int>& first, std::vector<int>* vmap) {
    std::vector<int> verts = first;
    for (int u : w.live_vertices())
        if (std::find(first.begin(), first.end(), u) == first.end()) verts.push_back(u);
    if (vmap) {
        vmap->assign(w.num_vertices(), -1);
        for (size_t i = 0; i < verts.size(); ++i) (*vmap)[verts[i]] = static_cast<int>(i);
    }
    return extract(w, verts, w.live_elems());
}

// ---------------------------------------------------------------- dipole quotients

namespace {

struct DipoleClasses {
    std::vector<std::pair<Sym, int>> halvable;  // link symbol, count
    std::vector<Sym> forced;                    // loops present in every half-quotient
    bool ok = true;
};

DipoleClasses dipole_classes(const std::vector<Sym>& links) {
    std::map<std::pair<int, Ty>, std::pair<int, int>> cls;
    for (const auto& s : links) {
        auto& c = cls[{s.color, s.ty}];
        if (s.ty == Ty::Directed)
            (s.orient > 0 ? c.first : c.second)++;
        else
            c.first++;
    }
    DipoleClasses d;
    for (auto& [k, c] : cls) {
        Sym loop{SymKind::Loop, k.first, k.second, 0};
        if (k.second == Ty::Directed) {
            if (c.first != c.second) d.ok = false;
            for (int i = 0; i < c.first; ++i) d.forced.push_back(loop);
        } else if (k.second == Ty::Undirected) {
            if (c.first % 2) d.ok = false;
            for (int i = 0; i < c.first / 2; ++i) d.forced.push_back(loop);
        } else {
            d.halvable.push_back({{SymKind::Link, k.first, k.second, 0}, c.first});
        }
    }
    return d;
}

}  // namespace

std::vector<std::vector<Sym>> dipole_half_patterns(const std::vector<Sym>& links) {
    auto d = dipole_classes(links);
    if (!d.ok) return {};
    std::vector<std::vector<Sym>> out{d.forced};
    for (auto& [s, m] : d.halvable) {
        std::vector<std::vector<Sym>> next;
        Sym half{SymKind::Half, s.color, s.ty, 0}, loop{SymKind::Loop, s.color, s.ty, 0};
        for (auto& p : out)
            for (int l = 0; 2 * l <= m; ++l) {
                auto q = p;
                q.insert(q.end(), m - 2 * l, half);
                q.insert(q.end(), l, loop);
                next.push_back(std::move(q));
            }
        out.swap(next);
    }
    for (auto& p : out) std::sort(p.begin(), p.end());
    return out;
}

long dipole_half_count(const std::vector<Sym>& links) {
    auto d = dipole_classes(links);
    if (!d.ok) return 0;
    long n = 1;
    for (auto& [s, m] : d.halvable) n *= m / 2 + 1;
    return n;
}

std::vector<Sym> dipole_loop_pattern(const std::vector<Sym>& links) {
    std::vector<Sym> out;
    for (const auto& s : links) out.push_back({SymKind::Loop, s.color, s.ty, 0});
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------- catalog

Sym Entry::symbol(int orient) const {
    if (!two_boundary()) return {SymKind::Pendant, color, ty, 0};
    return {SymKind::Link, color, ty, static_cast<std::int8_t>(ty == Ty::Directed ? orient : 0)};
}

Sizes Catalog::sizes(const Sym& s) const {
    Sizes z{0, 2};
    if (has(s.color)) {
        const auto& E = entry(s.color);
        z = {E.hv2, E.he2};
    }
    if (s.kind == SymKind::Half) z = {z.hv2 / 2, z.he2 / 2};
    return z;
}

std::vector<Sym> Catalog::flatten_stubs(const std::vector<Sym>& stubs) const {
    std::vector<Sym> out;
    for (const auto& s : stubs) {
        if (has(s.color)) {
            const auto& E = entry(s.color);
            if (E.kind == AtomKind::Star && s.kind == SymKind::Pendant) {
                out.insert(out.end(), E.flat.begin(), E.flat.end());
                continue;
            }
            if (E.kind == AtomKind::Dipole && s.kind == SymKind::Loop) {
                auto l = dipole_loop_pattern(E.flat);
                out.insert(out.end(), l.begin(), l.end());
                continue;
            }
        }
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Sym> Catalog::flatten_links(const std::vector<Sym>& links) const {
    std::vector<Sym> out;
    for (const auto& s : links) {
        if (has(s.color) && entry(s.color).kind == AtomKind::Dipole) {
            for (const auto& l : entry(s.color).flat) out.push_back(s.orient < 0 ? l.reversed() : l);
            continue;
        }
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

std::vector<Sym> reversed_sorted(std::vector<Sym> v) {
    for (auto& s : v) s = s.reversed();
    std::sort(v.begin(), v.end());
    return v;
}

Sizes atom_sizes(const WGraph& w, const Atom& a) {
    Sizes z{2L * static_cast<long>(a.interior.size()), 0};
    for (int e : a.elems) z.hv2 += w.elems[e].hv2, z.he2 += w.elems[e].he2;
    return z;
}

// flat symbols of a concrete atom
std::vector<Sym> atom_syms(const WGraph& w, const Atom& a) {
    std::vector<Sym> out;
    for (int e : a.elems) {
        const Elem& el = w.elems[e];
        Sym s = el.sym();
        if (el.is_link() && el.a != a.boundary[0]) s = s.reversed();
        out.push_back(s);
    }
    return out;
}

bool has_boundary_swap(const WGraph& rep);

}  // namespace

std::vector<WAut> boundary_involutions(const WGraph& rep) {
    std::vector<WAut> out;
    auto p = pattern_whole(rep, {0, 1});
    MatchOptions o;
    o.pin_swap = true;
    o.all_element_maps = true;
    match_patterns(p, p, o, [&](const MatchResult& r) {
        WAut a = from_match(rep, p, p, r);
        if (is_identity(rep, compose(a, a)) && semiregular(rep, a)) out.push_back(std::move(a));
        return true;
    });
    return out;
}

namespace {

bool has_boundary_swap(const WGraph& rep) {
    auto p = pattern_whole(rep, {0, 1});
    MatchOptions o;
    o.pin_swap = true;
    return match_one(p, p, o).has_value();
}

}  // namespace

std::optional<std::pair<int, int>> Catalog::find(const WGraph& w, const Atom& a,
                                                 const std::vector<Sym>& flat, int level) const {
    Sizes z = atom_sizes(w, a);
    for (int i = 0; i < size(); ++i) {
        const Entry& E = entries_[i];
        if (E.kind != a.kind || E.hv2 != z.hv2 || E.he2 != z.he2) continue;
        // within G a colour belongs to one level, so automorphisms of a reduced graph extend
        if (level >= 0 && E.realized && E.level != level) continue;
        if (a.kind == AtomKind::Star) {
            if (E.flat == flat) return std::pair{i, 1};
            continue;
        }
        if (a.kind == AtomKind::Dipole) {
            if (E.flat == flat) return std::pair{i, 1};
            if (E.flat == reversed_sorted(flat)) return std::pair{i, -1};
            continue;
        }
        if (E.rep.num_vertices() != static_cast<int>(a.boundary.size() + a.interior.size()) ||
            E.rep.num_elems() != static_cast<int>(a.elems.size()))
            continue;
        auto src = pattern_of(w, a);
        auto tgt = pattern_whole(E.rep, a.kind == AtomKind::Proper ? std::vector<int>{0, 1}
                                                                   : std::vector<int>{0});
        if (match_one(src, tgt)) return std::pair{i, 1};
        if (a.kind == AtomKind::Proper) {
            MatchOptions o;
            o.pin_swap = true;
            if (match_one(src, tgt, o)) return std::pair{i, -1};
        }
    }
    return std::nullopt;
}

Sym Catalog::add(const WGraph& w, const Atom& a, Origin origin, int level) {
    std::vector<Sym> flat;
    if (a.kind == AtomKind::Star) flat = flatten_stubs(atom_syms(w, a));
    if (a.kind == AtomKind::Dipole) flat = flatten_links(atom_syms(w, a));
    if (auto hit = find(w, a, flat, origin == Origin::Graph ? level : -1)) {
        if (origin == Origin::Graph && !entries_[hit->first].realized) {
            entries_[hit->first].level = level;
            realize(hit->first);
        }
        return entries_[hit->first].symbol(hit->second);
    }
    Entry E;
    E.color = kCatalogBase + size();
    E.kind = a.kind;
    E.origin = origin;
    E.level = level;
    std::vector<int> verts = a.boundary;
    verts.insert(verts.end(), a.interior.begin(), a.interior.end());
    E.rep = extract(w, verts, a.elems);
    E.flat = flat;
    Sizes z = atom_sizes(w, a);
    E.hv2 = z.hv2;
    E.he2 = z.he2;
    switch (a.kind) {
        case AtomKind::Star:
        case AtomKind::NonStar: E.sym = SymType::Symmetric; break;
        case AtomKind::Dipole: E.sym = dipole_symmetry_type(flat); break;
        case AtomKind::Proper:
            E.sym = !has_boundary_swap(E.rep)               ? SymType::Asymmetric
                    : boundary_involutions(E.rep).empty() ? SymType::Symmetric
                                                          : SymType::Halvable;
            break;
    }
    E.ty = E.sym == SymType::Halvable ? Ty::Halvable
           : E.sym == SymType::Symmetric ? Ty::Undirected
                                         : Ty::Directed;
    if (!E.two_boundary()) E.ty = Ty::Undirected;
    entries_.push_back(std::move(E));
    int idx = size() - 1;
    if (origin == Origin::Graph) realize(idx);
    return entries_[idx].symbol(1);
}

namespace {

Form make_form(Form::Kind kind, const WGraph& raw, Catalog& cat) {
    Form f;
    f.kind = kind;
    f.raw = raw;
    ReduceOptions o;
    o.root = 0;
    o.origin = Origin::Form;
    auto S = reduce(raw, cat, o);
    f.reduced = compact(S.w, {0});
    auto c = rooted_center(f.reduced, 0);
    f.block_shaped = c.kind == Center::Block;
    if (!f.block_shaped) {
        auto live = f.reduced.live_elems();
        if (live.size() == 1 && f.reduced.num_vertices() == 1) f.single = f.reduced.elems[live[0]].sym();
    }
    return f;
}

}  // namespace

void Catalog::realize(int idx) {
    entries_[idx].realized = true;
    if (entries_[idx].kind != AtomKind::Proper) return;
    WGraph rep = entries_[idx].rep;
    bool halvable = entries_[idx].sym == SymType::Halvable;
    std::vector<Form> forms;
    forms.push_back(make_form(Form::Loop, loop_quotient(rep), *this));
    if (halvable) {
        auto id = identity_of(rep);
        for (const auto& t : boundary_involutions(rep)) {
            auto q = quotient_w(rep, {id, t});
            auto raw = compact(q.g, {q.vertex_orbit[0]});
            Form f = make_form(Form::Half, raw, *this);
            bool dup = false;
            for (size_t i = 1; i < forms.size() && !dup; ++i)
                dup = match_one(pattern_whole(f.reduced, {0}), pattern_whole(forms[i].reduced, {0}))
                          .has_value();
            if (!dup) forms.push_back(std::move(f));
        }
    }
    entries_[idx].forms = std::move(forms);
}

std::vector<std::pair<Sym, Sym>> Catalog::closure_rules() const {
    std::vector<std::pair<Sym, Sym>> out;
    for (const auto& E : entries_) {
        if (!E.realized) continue;
        if (E.kind == AtomKind::Proper)
            for (const auto& f : E.forms)
                if (f.single)
                    out.push_back({*f.single, {f.kind == Form::Loop ? SymKind::Loop : SymKind::Half,
                                               E.color, E.ty, 0}});
        if (E.kind == AtomKind::Dipole && E.sym == SymType::Halvable)
            for (const auto& p : dipole_half_patterns(E.flat))
                if (p.size() == 1) out.push_back({p[0], {SymKind::Half, E.color, E.ty, 0}});
    }
    return out;
}

std::string Catalog::dump() const {
    static const char* kinds[] = {"star", "nonstar", "proper", "dipole"};
    static const char* syms[] = {"halvable", "symmetric", "asymmetric"};
    static const char* origins[] = {"graph", "form", "quotient"};
    std::ostringstream out;
    for (const auto& E : entries_) {
        int halves = 0, loops = 0;
        for (const auto& f : E.forms) (f.kind == Form::Half ? halves : loops)++;
        if (E.kind == AtomKind::Dipole && E.realized) {
            loops = 1;
            halves = static_cast<int>(dipole_half_count(E.flat));
        }
        out << "c" << E.color - kCatalogBase << " " << kinds[static_cast<int>(E.kind)] << " "
            << syms[static_cast<int>(E.sym)] << " " << origins[static_cast<int>(E.origin)]
            << " level=" << E.level << " v=" << E.rep.num_vertices() << " e=" << E.rep.num_elems()
            << " hv2=" << E.hv2 << " he2=" << E.he2 << " loop-quotients=" << loops
            << " half-quotients=" << halves << "\n";
    }
    return out.str();
}

// ---------------------------------------------------------------- series

Center rooted_center(const WGraph& w, int root) {
    auto t = build_block_tree(w, Center{Center::Vertex, {root}});
    if (t.blocks_at[root].size() == 1) return {Center::Block, t.block_vertices[t.blocks_at[root][0]]};
    return {Center::Vertex, {root}};
}

ReductionSeries reduce(const WGraph& w0, Catalog& cat, const ReduceOptions& o) {
    ReductionSeries S;
    S.w = w0;
    S.root = o.root;
    auto& w = S.w;
    S.elem_born.assign(w.num_elems(), 0);
    S.elem_died.assign(w.num_elems(), 1 << 30);
    S.vert_died.assign(w.num_vertices(), 1 << 30);
    if (o.center)
        S.center = *o.center;
    else if (o.root >= 0)
        S.center = rooted_center(w, o.root);
    else
        S.center = build_block_tree(w).center;
    auto totals = [&]() {
        Sizes z{0, 0};
        z.hv2 += 2L * static_cast<long>(w.live_vertices().size());
        for (int e : w.live_elems()) z.hv2 += w.elems[e].hv2, z.he2 += w.elems[e].he2;
        return z;
    };
    const Sizes start = totals();
    AtomOptions ao;
    ao.root = o.root;
    for (int level = 0;; ++level) {
        auto t = build_block_tree(w, S.center);
        auto atoms = find_atoms(w, t, ao);
        if (atoms.empty()) break;
        std::vector<ReductionStep> steps;
        for (auto& a : atoms) steps.push_back({a, -1, cat.add(w, a, o.origin, level)});
        for (auto& st : steps) {
            const Atom& a = st.atom;
            Sizes z = atom_sizes(w, a);
            for (int e : a.elems) w.kill_elem(e), S.elem_died[e] = level + 1;
            for (int u : a.interior) w.kill_vertex(u), S.vert_died[u] = level + 1;
            st.elem = a.boundary.size() == 2 ? w.add_link(a.boundary[0], a.boundary[1], st.sym, z.hv2, z.he2)
                                             : w.add_stub(a.boundary[0], st.sym, z.hv2, z.he2);
            S.elem_born.push_back(level + 1);
            S.elem_died.push_back(1 << 30);
        }
        if (S.center.kind == Center::Block) {
            std::vector<int> keep;
            for (int u : S.center.vertices)
                if (w.valive[u]) keep.push_back(u);
            S.center.vertices = keep;
        }
        if (!(totals() == start)) throw std::logic_error("size annotations drifted");
        S.levels.push_back(std::move(steps));
    }
    return S;
}

ReductionSeries reduction_series(const Multigraph& g, Catalog& cat) {
    return reduce(to_wgraph(g).w, cat);
}

std::string ReductionSeries::describe() const {
    static const char* kinds[] = {"star", "nonstar", "proper", "dipole"};
    std::ostringstream out;
    out << "center: " << (center.kind == Center::Block ? "block {" : "vertex {");
    for (size_t i = 0; i < center.vertices.size(); ++i) out << (i ? " " : "") << center.vertices[i];
    out << "}\n";
    for (int i = 0; i < r(); ++i) {
        out << "level " << i << ":\n";
        for (const auto& st : levels[i]) {
            out << "  " << kinds[static_cast<int>(st.atom.kind)] << " at";
            for (int b : st.atom.boundary) out << " " << b;
            out << " (" << st.atom.interior.size() << " inner vertices, " << st.atom.elems.size()
                << " elements) -> " << to_string(st.sym) << "\n";
        }
    }
    auto live = w.live_vertices();
    out << "primitive: " << live.size() << " vertices, " << w.live_elems().size() << " elements\n";
    return out.str();
}

}  // namespace rcover

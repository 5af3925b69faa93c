#include "rcover/expansion.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

#include "rcover/planar.hpp"

namespace rcover {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::Refused: return "refused";
        case Verdict::NotApplicable: return "not-applicable";
    }
    return "?";
}

// ---------------------------------------------------------------- matching

namespace {

struct Kuhn {
    const std::vector<std::vector<char>>& ok;
    std::vector<int> match_r;
    std::vector<char> seen;

    bool augment(int l) {
        for (size_t r = 0; r < ok[l].size(); ++r) {
            if (!ok[l][r] || seen[r]) continue;
            seen[r] = 1;
            if (match_r[r] < 0 || augment(match_r[r])) {
                match_r[r] = l;
                return true;
            }
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<int>> bipartite_perfect_matching(const std::vector<std::vector<char>>& ok) {
    size_t n = ok.size();
    for (const auto& row : ok)
        if (row.size() != n) return std::nullopt;
    Kuhn k{ok, std::vector<int>(n, -1), {}};
    for (size_t l = 0; l < n; ++l) {
        k.seen.assign(n, 0);
        if (!k.augment(static_cast<int>(l))) return std::nullopt;
    }
    std::vector<int> out(n);
    for (size_t r = 0; r < n; ++r) out[k.match_r[r]] = static_cast<int>(r);
    return out;
}

// ---------------------------------------------------------------- lists

namespace {

Sizes sizes_of(const WGraph& w, const Atom& a) {
    Sizes z{2L * static_cast<long>(a.interior.size()), 0};
    for (int e : a.elems) z.hv2 += w.elems[e].hv2, z.he2 += w.elems[e].he2;
    return z;
}

void add_unique(std::vector<Sym>& v, const Sym& s) {
    if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

std::vector<Sym> reversed_all(std::vector<Sym> v) {
    for (auto& s : v) s = s.reversed();
    std::sort(v.begin(), v.end());
    return v;
}

bool same_counts(const WGraph& rep, const Atom& a) {
    return rep.num_vertices() == static_cast<int>(a.boundary.size() + a.interior.size());
}

}  // namespace

ListReducer::ListReducer(const Catalog& cat, ExpansionStats& stats, long budget)
    : cat_(cat), stats_(stats), budget_(budget), rules_(cat.closure_rules()) {}

void ListReducer::close(std::vector<Sym>& list) const {
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto& [x, y] : rules_)
            if (std::find(list.begin(), list.end(), x) != list.end() &&
                std::find(list.begin(), list.end(), y) == list.end()) {
                list.push_back(y);
                grew = true;
            }
    }
    std::sort(list.begin(), list.end());
}

WGraph ListReducer::with_lists(const Multigraph& normalized) const {
    WGraph w = to_wgraph(normalized).w;
    for (auto& el : w.elems)
        if (!el.is_link()) close(el.list);
    return w;
}

// every way a stub symbol opens up into stubs that no reduction merges
std::vector<std::vector<Sym>> ListReducer::expand(const Sym& s) const {
    if (cat_.has(s.color)) {
        const Entry& E = cat_.entry(s.color);
        if (E.kind == AtomKind::Star && s.kind == SymKind::Pendant) {
            std::vector<std::vector<Sym>> out{{}};
            for (const auto& item : E.flat) {
                auto alts = expand(item);
                std::vector<std::vector<Sym>> next;
                for (const auto& p : out)
                    for (const auto& q : alts) {
                        auto r = p;
                        r.insert(r.end(), q.begin(), q.end());
                        next.push_back(std::move(r));
                    }
                out.swap(next);
                if (static_cast<long>(out.size()) > budget_)
                    throw BudgetExceeded("star combinations exceed the budget (" +
                                         std::to_string(out.size()) + " frontier)");
            }
            for (auto& p : out) std::sort(p.begin(), p.end());
            std::sort(out.begin(), out.end());
            out.erase(std::unique(out.begin(), out.end()), out.end());
            return out;
        }
        if (E.kind == AtomKind::Dipole && s.kind == SymKind::Loop) return {dipole_loop_pattern(E.flat)};
        if (E.kind == AtomKind::Dipole && s.kind == SymKind::Half) return dipole_half_patterns(E.flat);
    }
    return {{s}};
}

bool ListReducer::decompose(const std::vector<std::vector<std::vector<Sym>>>& items,
                            const std::vector<Sym>& target) {
    bool singletons = true;
    for (const auto& alts : items)
        for (const auto& a : alts)
            if (a.size() != 1) singletons = false;
    if (singletons) {
        if (items.size() != target.size()) return false;
        std::vector<std::vector<char>> ok(items.size(), std::vector<char>(target.size(), 0));
        for (size_t i = 0; i < items.size(); ++i)
            for (size_t j = 0; j < target.size(); ++j)
                for (const auto& a : items[i])
                    if (a[0] == target[j]) ok[i][j] = 1;
        return bipartite_perfect_matching(ok).has_value();
    }
    std::map<Sym, int> left;
    for (const auto& s : target) ++left[s];
    size_t lo = 0, hi = 0;
    for (const auto& alts : items) {
        size_t mn = SIZE_MAX, mx = 0;
        for (const auto& a : alts) mn = std::min(mn, a.size()), mx = std::max(mx, a.size());
        if (alts.empty()) return false;
        lo += mn;
        hi += mx;
    }
    if (target.size() < lo || target.size() > hi) return false;
    std::vector<size_t> order(items.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](size_t a, size_t b) { return items[a].size() < items[b].size(); });
    long steps = 0;
    std::function<bool(size_t, size_t)> rec = [&](size_t d, size_t remaining) -> bool {
        if (d == order.size()) return remaining == 0;
        if (++steps > budget_) throw BudgetExceeded("stub decomposition exceeds the budget");
        for (const auto& a : items[order[d]]) {
            bool fits = true;
            for (const auto& s : a)
                if (--left[s] < 0) fits = false;
            if (fits && a.size() <= remaining && rec(d + 1, remaining - a.size())) return true;
            for (const auto& s : a) ++left[s];
        }
        return false;
    };
    return rec(0, target.size());
}

// parallel links and stubs compared through their flattened contents
bool ListReducer::group_test(bool links, const std::vector<std::vector<Sym>>& src,
                             const std::vector<Sym>& tgt) {
    std::vector<std::vector<std::vector<Sym>>> items;
    for (const auto& list : src) {
        std::vector<std::vector<Sym>> alts;
        for (const auto& m : list) {
            if (links) {
                alts.push_back(cat_.flatten_links({m}));
                continue;
            }
            for (auto& p : expand(m))
                if (std::find(alts.begin(), alts.end(), p) == alts.end()) alts.push_back(std::move(p));
        }
        items.push_back(std::move(alts));
    }
    if (links) return decompose(items, cat_.flatten_links(tgt));
    std::vector<std::vector<Sym>> combos{{}};
    for (const auto& t : tgt) {
        auto alts = expand(t);
        std::vector<std::vector<Sym>> next;
        for (const auto& p : combos)
            for (const auto& q : alts) {
                auto r = p;
                r.insert(r.end(), q.begin(), q.end());
                next.push_back(std::move(r));
            }
        combos.swap(next);
        if (static_cast<long>(combos.size()) > budget_) throw BudgetExceeded("stub combinations exceed the budget");
    }
    for (auto& c : combos) {
        std::sort(c.begin(), c.end());
        if (decompose(items, c)) return true;
    }
    return false;
}

MatchOptions ListReducer::flat_options() {
    MatchOptions o;
    o.group = [this](bool links, const std::vector<std::vector<Sym>>& src, const std::vector<Sym>& tgt) {
        return group_test(links, src, tgt);
    };
    return o;
}

std::vector<Sym> ListReducer::link_members(const WGraph& w, const Atom& a) const {
    std::vector<Sym> out;
    Sizes z = sizes_of(w, a);
    for (const auto& E : cat_.entries()) {
        if (E.kind != a.kind || E.hv2 != z.hv2 || E.he2 != z.he2) continue;
        if (E.kind == AtomKind::Proper) {
            if (!same_counts(E.rep, a)) continue;
            auto src = pattern_of(w, a);
            auto tgt = pattern_whole(E.rep, {0, 1});
            auto o = const_cast<ListReducer&>(*this).flat_options();
            if (match_one(src, tgt, o)) add_unique(out, E.symbol(1));
            o.pin_swap = true;
            if (match_one(src, tgt, o)) add_unique(out, E.symbol(-1));
            continue;
        }
        if (E.kind != AtomKind::Dipole) continue;
        std::vector<std::vector<std::vector<Sym>>> items;
        for (int x : a.elems) {
            const Elem& el = w.elems[x];
            bool rev = el.a != a.boundary[0];
            std::vector<std::vector<Sym>> alts;
            for (Sym m : el.list) {
                if (rev) m = m.reversed();
                if (cat_.has(m.color) && cat_.entry(m.color).kind == AtomKind::Dipole) {
                    auto f = cat_.entry(m.color).flat;
                    alts.push_back(m.orient < 0 ? reversed_all(f) : f);
                } else {
                    alts.push_back({m});
                }
            }
            items.push_back(std::move(alts));
        }
        auto& self = const_cast<ListReducer&>(*this);
        if (self.decompose(items, E.flat)) add_unique(out, E.symbol(1));
        if (E.ty == Ty::Directed && self.decompose(items, reversed_all(E.flat))) add_unique(out, E.symbol(-1));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Sym> ListReducer::list_nonstar(const WGraph& w, const Atom& a) const {
    std::vector<Sym> out;
    Sizes z = sizes_of(w, a);
    auto src = pattern_of(w, a);
    auto o = const_cast<ListReducer&>(*this).flat_options();
    for (const auto& E : cat_.entries()) {
        if (E.kind == AtomKind::NonStar && E.hv2 == z.hv2 && E.he2 == z.he2 && same_counts(E.rep, a) &&
            match_one(src, pattern_whole(E.rep, {0}), o))
            add_unique(out, E.symbol());
        if (E.kind != AtomKind::Proper || !E.realized) continue;
        for (const auto& f : E.forms) {
            if (!f.block_shaped) continue;
            Sym s{f.kind == Form::Loop ? SymKind::Loop : SymKind::Half, E.color, E.ty, 0};
            if (!(cat_.sizes(s) == z) || !same_counts(f.reduced, a)) continue;
            if (match_one(src, pattern_whole(f.reduced, {0}), o)) add_unique(out, s);
        }
    }
    return out;
}

std::vector<Sym> ListReducer::list_star(const WGraph& w, const Atom& a) {
    ++stats_.list_star_calls;
    std::vector<Sym> out;
    Sizes z = sizes_of(w, a);
    std::vector<std::vector<std::vector<Sym>>> items;
    for (int x : a.elems) {
        std::vector<std::vector<Sym>> alts;
        for (const auto& m : w.elems[x].list)
            for (auto& p : expand(m))
                if (std::find(alts.begin(), alts.end(), p) == alts.end()) alts.push_back(std::move(p));
        items.push_back(std::move(alts));
    }
    auto tick = [&](long n) {
        stats_.star_combinations += n;
        if (stats_.star_combinations > budget_)
            throw BudgetExceeded("star atom combinations exceed the budget (" +
                                 std::to_string(stats_.star_combinations) + " tried)");
    };
    for (const auto& E : cat_.entries()) {
        if (E.kind == AtomKind::Star) {
            Sym s = E.symbol();
            if (!(cat_.sizes(s) == z)) continue;
            auto combos = expand(s);
            tick(static_cast<long>(combos.size()));
            bool admitted = false;
            for (const auto& t : combos)
                if (decompose(items, t)) {
                    add_unique(out, s);
                    admitted = true;
                    break;
                }
            if (observer) {
                StarQuery q{items, {}, {}, admitted};
                for (const auto& item : E.flat) {
                    bool dip = item.kind == SymKind::Half && cat_.has(item.color) &&
                               cat_.entry(item.color).kind == AtomKind::Dipole;
                    if (dip) q.dipoles.push_back(cat_.entry(item.color).flat);
                    else q.fixed.push_back(item);
                }
                if (!q.dipoles.empty()) observer(q);
            }
        }
        if (E.kind != AtomKind::Dipole) continue;
        Sym loop{SymKind::Loop, E.color, E.ty, 0};
        if (cat_.sizes(loop) == z) {
            tick(1);
            if (decompose(items, dipole_loop_pattern(E.flat))) add_unique(out, loop);
        }
        Sym half{SymKind::Half, E.color, E.ty, 0};
        if (E.sym == SymType::Halvable && cat_.sizes(half) == z) {
            auto patterns = dipole_half_patterns(E.flat);
            tick(static_cast<long>(patterns.size()));
            bool admitted = false;
            for (const auto& p : patterns)
                if (decompose(items, p)) {
                    add_unique(out, half);
                    admitted = true;
                    break;
                }
            if (observer) observer(StarQuery{items, {}, {E.flat}, admitted});
        }
    }
    return out;
}

ListReducer::Result ListReducer::reduce_with_lists(const WGraph& h, const Center& core) {
    ++stats_.list_reductions;
    Result R{h, core, 0};
    auto& w = R.w;
    for (;;) {
        auto t = build_block_tree(w, R.center);
        auto atoms = find_atoms(w, t);
        struct Rep {
            const Atom* a;
            std::vector<Sym> list;
        };
        std::vector<Rep> reps;
        for (const auto& a : atoms) {
            std::vector<Sym> list;
            switch (a.kind) {
                case AtomKind::Proper:
                case AtomKind::Dipole: list = link_members(w, a); break;
                case AtomKind::NonStar: list = list_nonstar(w, a); break;
                case AtomKind::Star: list = list_star(w, a); break;
            }
            // an atom nothing in the catalog explains stays; a later, larger atom may cover it
            if (list.empty()) continue;
            if (a.boundary.size() == 1) close(list);
            std::sort(list.begin(), list.end());
            reps.push_back({&a, std::move(list)});
        }
        if (reps.empty()) break;
        for (auto& r : reps) {
            const Atom& a = *r.a;
            Sizes z = sizes_of(w, a);
            for (int e : a.elems) w.kill_elem(e);
            for (int u : a.interior) w.kill_vertex(u);
            int e = a.boundary.size() == 2 ? w.add_link(a.boundary[0], a.boundary[1], r.list[0], z.hv2, z.he2)
                                           : w.add_stub(a.boundary[0], r.list[0], z.hv2, z.he2);
            w.elems[e].list = std::move(r.list);
        }
        if (R.center.kind == Center::Block) {
            std::vector<int> keep;
            for (int u : R.center.vertices)
                if (w.valive[u]) keep.push_back(u);
            R.center.vertices = keep;
        }
        ++R.levels;
    }
    return R;
}

std::vector<Center> ListReducer::cores(const WGraph& h) const {
    std::vector<Center> out;
    auto t = build_block_tree(h);
    for (const auto& bv : t.block_vertices) out.push_back({Center::Block, bv});
    for (int u : h.live_vertices()) out.push_back({Center::Vertex, {u}});
    return out;
}

bool ListReducer::test_expandable(const WGraph& h_s, const WGraph& h) {
    rules_ = cat_.closure_rules();
    bool block = h_s.live_vertices().size() > 1;
    auto tgt = pattern_whole(h_s);
    for (const auto& core : cores(h)) {
        if ((core.kind == Center::Block) != block) continue;
        auto R = reduce_with_lists(h, core);
        auto src = pattern_whole(R.w);
        if (src.verts.size() != tgt.verts.size()) continue;
        if (match_one(src, tgt, flat_options())) return true;
    }
    return false;
}

// ---------------------------------------------------------------- extending group actions

namespace {

// vertex and element maps between two atoms of the series graph
struct AtomMap {
    std::unordered_map<int, int> v, e;
    AtomMap inverse() const {
        AtomMap m;
        for (auto [x, y] : v) m.v[y] = x;
        for (auto [x, y] : e) m.e[y] = x;
        return m;
    }
};

AtomMap identity_map(const Atom& a) {
    AtomMap m;
    for (int u : a.boundary) m.v[u] = u;
    for (int u : a.interior) m.v[u] = u;
    for (int e : a.elems) m.e[e] = e;
    return m;
}

std::optional<AtomMap> transport(const WGraph& w, const Atom& from, const Atom& to, bool swap) {
    auto s = pattern_of(w, from), t = pattern_of(w, to);
    MatchOptions o;
    o.pin_swap = swap;
    auto r = match_one(s, t, o);
    if (!r) return std::nullopt;
    AtomMap m;
    for (size_t i = 0; i < s.verts.size(); ++i) m.v[s.verts[i]] = t.verts[r->vmap[i]];
    for (size_t i = 0; i < s.elems.size(); ++i) m.e[s.elems[i]] = t.elems[r->emap[i]];
    return m;
}

// half-quotient involutions of a parallel class, one per pattern
std::vector<AtomMap> dipole_involutions(const WGraph& w, const Atom& a) {
    std::map<std::pair<int, Ty>, std::pair<std::vector<int>, std::vector<int>>> cls;
    for (int e : a.elems) {
        const Elem& el = w.elems[e];
        Sym s = el.sym();
        if (el.a != a.boundary[0]) s = s.reversed();
        auto& c = cls[{s.color, s.ty}];
        (s.ty == Ty::Directed && s.orient < 0 ? c.second : c.first).push_back(e);
    }
    AtomMap base;
    base.v[a.boundary[0]] = a.boundary[1];
    base.v[a.boundary[1]] = a.boundary[0];
    std::vector<std::vector<int>> halvable;
    for (auto& [k, c] : cls) {
        if (k.second == Ty::Directed) {
            if (c.first.size() != c.second.size()) return {};
            for (size_t i = 0; i < c.first.size(); ++i) {
                base.e[c.first[i]] = c.second[i];
                base.e[c.second[i]] = c.first[i];
            }
        } else if (k.second == Ty::Undirected) {
            if (c.first.size() % 2) return {};
            for (size_t i = 0; i + 1 < c.first.size(); i += 2) {
                base.e[c.first[i]] = c.first[i + 1];
                base.e[c.first[i + 1]] = c.first[i];
            }
        } else {
            halvable.push_back(c.first);
        }
    }
    std::vector<AtomMap> out{base};
    for (const auto& es : halvable) {
        std::vector<AtomMap> next;
        int m = static_cast<int>(es.size());
        for (const auto& p : out)
            for (int l = 0; 2 * l <= m; ++l) {
                AtomMap q = p;
                int h = m - 2 * l;
                for (int i = 0; i < h; ++i) q.e[es[i]] = es[i];
                for (int i = h; i + 1 < m; i += 2) {
                    q.e[es[i]] = es[i + 1];
                    q.e[es[i + 1]] = es[i];
                }
                next.push_back(std::move(q));
            }
        out.swap(next);
    }
    return out;
}

// involutions of a proper atom exchanging its boundary, one per distinct half-quotient
std::vector<AtomMap> proper_involutions(const WGraph& w, const Atom& a) {
    std::vector<int> verts = a.boundary;
    verts.insert(verts.end(), a.interior.begin(), a.interior.end());
    std::vector<int> eback;  // representative element -> series element
    WGraph rep = extract(w, verts, a.elems, &eback);
    std::vector<AtomMap> out;
    std::vector<WGraph> seen;
    auto id = identity_of(rep);
    for (const auto& t : boundary_involutions(rep)) {
        auto q = quotient_w(rep, {id, t});
        WGraph form = compact(q.g, {q.vertex_orbit[0]});
        bool dup = false;
        for (const auto& f : seen)
            if (match_one(pattern_whole(form, {0}), pattern_whole(f, {0}))) dup = true;
        if (dup) continue;
        seen.push_back(form);
        AtomMap m;
        for (size_t i = 0; i < verts.size(); ++i) m.v[verts[i]] = verts[t.v[i]];
        for (int x = 0; x < rep.num_elems(); ++x) m.e[eback[x]] = eback[t.e[x]];
        out.push_back(std::move(m));
    }
    return out;
}

struct OrbitPlan {
    int e0 = -1;
    const Atom* a0 = nullptr;
    std::vector<int> members;
    std::unordered_map<int, int> via;  // member -> index of a group element taking e0 there
    std::unordered_map<int, AtomMap> to, from;
    std::vector<AtomMap> options;
};

class Extender {
   public:
    Extender(const ReductionSeries& S, long budget, ExpansionStats& stats)
        : S(S), budget(budget), stats(stats) {}

    // visits complete actions on the level-0 graph; returns false when stopped
    bool descend(int level, const std::vector<WAut>& grp,
                 const std::function<bool(const std::vector<WAut>&)>& visit) {
        if (level == 0) {
            if (++stats.certificate_leaves > budget)
                throw BudgetExceeded("certificate search exceeds the budget");
            return visit(grp);
        }
        auto plans = plan(level - 1, grp);
        if (!plans) return true;
        std::vector<size_t> pick(plans->size(), 0);
        for (;;) {
            auto next = apply(*plans, pick, grp);
            if (!descend(level - 1, next, visit)) return false;
            size_t i = 0;
            while (i < pick.size() && ++pick[i] == (*plans)[i].options.size()) pick[i++] = 0;
            if (i == pick.size()) break;
        }
        return true;
    }

    bool branching = false;  // some orbit offered a choice

   private:
    const ReductionSeries& S;
    long budget;
    ExpansionStats& stats;

    std::optional<std::vector<OrbitPlan>> plan(int i, const std::vector<WAut>& grp) {
        const auto& steps = S.levels[i];
        std::unordered_map<int, int> step_of;
        for (size_t j = 0; j < steps.size(); ++j) step_of[steps[j].elem] = static_cast<int>(j);
        std::unordered_map<int, int> done;
        std::vector<OrbitPlan> plans;
        for (const auto& st : steps) {
            if (done.count(st.elem)) continue;
            OrbitPlan p;
            p.e0 = st.elem;
            p.a0 = &st.atom;
            bool stabilized = false;
            for (size_t gi = 0; gi < grp.size(); ++gi) {
                int e = grp[gi].e[p.e0];
                if (!step_of.count(e)) return std::nullopt;  // colours are level-bound; cannot happen
                if (e == p.e0 && grp[gi].flip[p.e0]) stabilized = true;
                if (p.via.count(e)) continue;
                p.via[e] = static_cast<int>(gi);
                p.members.push_back(e);
                done[e] = 1;
            }
            for (int e : p.members) {
                const Atom& a = steps[step_of[e]].atom;
                bool swap = a.boundary.size() == 2 && grp[p.via[e]].flip[p.e0];
                auto m = e == p.e0 ? std::optional<AtomMap>(identity_map(a)) : transport(S.w, *p.a0, a, swap);
                if (!m) return std::nullopt;
                p.from[e] = m->inverse();
                p.to[e] = std::move(*m);
            }
            if (stabilized) {
                p.options = p.a0->kind == AtomKind::Dipole ? dipole_involutions(S.w, *p.a0)
                                                           : proper_involutions(S.w, *p.a0);
                if (p.options.empty()) return std::nullopt;
                if (p.options.size() > 1) branching = true;
            } else {
                p.options.push_back(identity_map(*p.a0));
            }
            plans.push_back(std::move(p));
        }
        return plans;
    }

    std::vector<WAut> apply(const std::vector<OrbitPlan>& plans, const std::vector<size_t>& pick,
                            const std::vector<WAut>& grp) {
        std::vector<WAut> out = grp;
        for (size_t gi = 0; gi < grp.size(); ++gi) {
            const WAut& g = grp[gi];
            WAut& h = out[gi];
            for (size_t pi = 0; pi < plans.size(); ++pi) {
                const auto& p = plans[pi];
                const AtomMap& tau = p.options[pick[pi]];
                for (int e : p.members) {
                    int f = g.e[e];
                    bool t = grp[p.via.at(e)].flip[p.e0] ^ g.flip[e] ^ grp[p.via.at(f)].flip[p.e0];
                    const AtomMap& back = p.from.at(e);
                    const AtomMap& fwd = p.to.at(f);
                    for (auto [x, y] : back.v) {
                        int y2 = t ? tau.v.at(y) : y;
                        h.v[x] = fwd.v.at(y2);
                    }
                    for (auto [x, y] : back.e) {
                        int y2 = t ? tau.e.at(y) : y;
                        h.e[x] = fwd.e.at(y2);
                    }
                }
            }
            for (const auto& p : plans)
                for (int e : p.members)
                    for (auto [x, y] : p.from.at(e).e) {
                        const Elem& el = S.w.elems[x];
                        h.flip[x] = el.is_link() && S.w.elems[h.e[x]].a != h.v[el.a];
                    }
        }
        return out;
    }
};

Automorphism to_raw(const Normalized& N, const Lifted& L, const Multigraph& raw, const WAut& g) {
    const Multigraph& ng = N.graph;
    Automorphism n;
    n.vmap.assign(ng.v(), -1);
    n.hmap.assign(ng.h(), -1);
    for (int u = 0; u < ng.v(); ++u) n.vmap[u] = g.v[u];
    for (size_t e = 0; e < L.half_edges.size(); ++e) {
        const auto& hs = L.half_edges[e];
        const auto& ht = L.half_edges[g.e[e]];
        if (hs.size() == 2 && g.flip[e]) {
            n.hmap[hs[0]] = ht[1];
            n.hmap[hs[1]] = ht[0];
        } else {
            for (size_t j = 0; j < hs.size(); ++j) n.hmap[hs[j]] = ht[j];
        }
    }
    Automorphism r;
    r.vmap.assign(raw.v(), -1);
    r.hmap.assign(raw.h(), -1);
    for (int u = 0; u < ng.v(); ++u) r.vmap[N.vertex_of[u]] = N.vertex_of[n.vmap[u]];
    for (int x = 0; x < ng.h(); ++x) {
        r.hmap[N.half_edge_of[x]] = N.half_edge_of[n.hmap[x]];
        if (N.leaf_of[x] >= 0) r.vmap[N.leaf_of[x]] = N.leaf_of[n.hmap[x]];
    }
    return r;
}

// cheap isomorphism invariant
std::vector<long> signature(const Multigraph& g) {
    std::vector<long> per;
    auto inc = g.incidence();
    for (int u = 0; u < g.v(); ++u) {
        long loops = 0, halves = 0, pend = 0;
        for (int x : inc[u]) {
            if (g.is_standalone(x)) ++halves;
            else if (g.is_loop(x)) ++loops;
            else if (g.is_pendant(x)) ++pend;
        }
        per.push_back(((static_cast<long>(g.vertex_color[u]) * 64 + static_cast<long>(inc[u].size())) * 64 +
                       loops) * 4096 + halves * 64 + pend);
    }
    std::sort(per.begin(), per.end());
    per.insert(per.begin(), {g.v(), g.h()});
    return per;
}

struct Prepared {
    Multigraph g, h;
    Normalized ng, nh;
    int k = 0;
};

// common validation; fills r and returns nullopt when the verdict is already known
std::optional<Prepared> prepare(const Multigraph& g, const Multigraph& h, const CoverOptions& o,
                                CoverResult& r) {
    validate(g);
    validate(h);
    if (!g.connected() || !h.connected()) {
        r.verdict = Verdict::Refused;
        r.why = "both graphs must be connected";
        return std::nullopt;
    }
    if (h.v() == 0 || g.v() % h.v() != 0) {
        r.verdict = Verdict::No;
        r.why = "vertex counts are not divisible";
        return std::nullopt;
    }
    r.k = g.v() / h.v();
    if (g.h() != r.k * h.h()) {
        r.verdict = Verdict::No;
        r.why = "half-edge counts do not match k";
        return std::nullopt;
    }
    if (!is_planar(g) && g.v() > o.max_nonplanar_vertices) {
        r.verdict = Verdict::Refused;
        r.why = "G is not planar and too large for the backtracking fallback";
        return std::nullopt;
    }
    return Prepared{g, h, normalize(g), normalize(h), r.k};
}

// tries to finish a candidate group: quotient of raw G isomorphic to raw H
bool finish(const Prepared& P, const Lifted& L, const std::vector<WAut>& grp, CoverResult& r) {
    PermutationGroup group;
    for (const auto& a : grp) group.push_back(to_raw(P.ng, L, P.g, a));
    Quotient q;
    try {
        q = quotient(P.g, group);
    } catch (const NotSemiregular&) {
        throw std::logic_error("extended group is not semiregular");
    }
    if (signature(q.graph) != signature(P.h)) return false;
    IsoOptions io;
    io.max_vertices = 0;
    auto iso = backtrack_list_iso(q.graph, P.h, io);
    if (!iso) return false;
    auto check = certificate_check(P.g, P.h, group, *iso);
    if (!check) throw std::logic_error("certificate rejected: " + check.why);
    r.verdict = Verdict::Yes;
    r.group = std::move(group);
    r.iso = *iso;
    return true;
}

struct QuotientClass {
    WGraph h_r;
    std::vector<std::vector<WAut>> groups;
};

std::vector<QuotientClass> quotient_classes(const ReductionSeries& S, int order, bool dedup) {
    std::vector<QuotientClass> out;
    for (auto& grp : semiregular_subgroups(S.w, order)) {
        WGraph q = quotient_w(S.w, grp).g;
        bool placed = false;
        if (dedup)
            for (auto& c : out) {
                auto a = pattern_whole(q), b = pattern_whole(c.h_r);
                if (a.verts.size() == b.verts.size() && a.elems.size() == b.elems.size() && match_one(a, b)) {
                    c.groups.push_back(std::move(grp));
                    placed = true;
                    break;
                }
            }
        if (!placed) out.push_back({std::move(q), {std::move(grp)}});
    }
    return out;
}

// k = 1: reduce both graphs against one catalog and compare the primitive graphs
void isomorphism_route(const Prepared& P, CoverResult& r) {
    r.route = "isomorphism";
    Catalog cat;
    auto sg = reduce(to_wgraph(P.ng.graph).w, cat);
    auto sh = reduce(to_wgraph(P.nh.graph).w, cat);
    auto a = pattern_whole(sg.w), b = pattern_whole(sh.w);
    bool same = sg.center.kind == sh.center.kind && a.verts.size() == b.verts.size() &&
                a.elems.size() == b.elems.size() && match_one(a, b).has_value();
    if (!same) {
        r.verdict = Verdict::No;
        r.why = "reduced graphs differ";
        return;
    }
    Automorphism id;
    for (int u = 0; u < P.g.v(); ++u) id.vmap.push_back(u);
    for (int x = 0; x < P.g.h(); ++x) id.hmap.push_back(x);
    PermutationGroup group{id};
    auto q = quotient(P.g, group);
    IsoOptions io;
    io.max_vertices = 0;
    auto iso = backtrack_list_iso(q.graph, P.h, io);
    if (!iso) throw std::logic_error("equal reductions but no isomorphism");
    auto check = certificate_check(P.g, P.h, group, *iso);
    if (!check) throw std::logic_error("certificate rejected: " + check.why);
    r.verdict = Verdict::Yes;
    r.group = group;
    r.iso = *iso;
}

void general_route(const Prepared& P, const CoverOptions& o, CoverResult& r) {
    r.route = "general";
    Catalog cat;
    auto S = reduction_series(P.ng.graph, cat);
    if (S.center.kind == Center::Vertex) {
        r.verdict = Verdict::No;
        r.why = "the reduced graph has a central vertex fixed by every automorphism";
        return;
    }
    auto classes = quotient_classes(S, P.k, true);
    for (const auto& c : classes) r.stats.subgroups += static_cast<long>(c.groups.size());
    r.stats.quotient_classes = static_cast<long>(classes.size());
    Lifted L = to_wgraph(P.ng.graph);
    ListReducer lr(cat, r.stats, o.budget);
    lr.observer = o.star_observer;
    WGraph hw = lr.with_lists(P.nh.graph);
    // classes passing the list test first; the rest are still searched since the list
    // test can miss proper parts whose opposite side folds onto a parallel bundle
    std::vector<const QuotientClass*> pass, rest;
    for (const auto& c : classes) {
        ReduceOptions ro;
        ro.origin = Origin::Quotient;
        auto hs = reduce(c.h_r, cat, ro);
        (lr.test_expandable(hs.w, hw) ? pass : rest).push_back(&c);
    }
    r.stats.expandable = static_cast<long>(pass.size());
    auto search = [&](const QuotientClass& c) {
        for (const auto& grp : c.groups) {
            Extender ex(S, o.budget, r.stats);
            bool found = false;
            ex.descend(S.r(), grp, [&](const std::vector<WAut>& g0) {
                found = finish(P, L, g0, r);
                return !found;
            });
            if (found) return true;
        }
        return false;
    };
    for (const auto* c : pass) {
        if (search(*c)) return;
        ++r.stats.unconfirmed;
    }
    for (const auto* c : rest)
        if (search(*c)) {
            ++r.stats.list_misses;
            return;
        }
    if (r.stats.unconfirmed) {
        r.verdict = Verdict::Refused;
        r.why = "internal error: a quotient passed the list test but no certificate was found";
        return;
    }
    r.verdict = Verdict::No;
    r.why = r.stats.quotient_classes ? "no quotient of the reduced graph expands to H"
                                     : "no semiregular subgroup of order k on the reduced graph";
}

}  // namespace

CoverResult regular_cover(const Multigraph& g, const Multigraph& h, const CoverOptions& o) {
    CoverResult r;
    auto P = prepare(g, h, o, r);
    if (!P) return r;
    try {
        if (P->k == 1)
            isomorphism_route(*P, r);
        else
            general_route(*P, o, r);
    } catch (const BudgetExceeded& e) {
        r.verdict = Verdict::Refused;
        r.why = e.what();
    }
    return r;
}

CoverResult fast_paths(const Multigraph& g, const Multigraph& h, const CoverOptions& o) {
    CoverResult r;
    auto P = prepare(g, h, o, r);
    if (!P) return r;
    const Multigraph& ng = P->ng.graph;
    Lifted L = to_wgraph(ng);
    bool three = ng.v() >= 4 && is_simple_core(ng) && is_3connected(ng);
    WGraph hw = to_wgraph(P->nh.graph).w;
    auto ht = build_block_tree(hw);
    bool two = ht.block_vertices.size() == 1 && hw.live_elems().size() == ht.block_links[0].size();
    try {
        if (three) {
            r.route = "3-connected G";
            for (const auto& grp : semiregular_subgroups(L.w, P->k)) {
                ++r.stats.subgroups;
                if (finish(*P, L, grp, r)) return r;
            }
            r.verdict = Verdict::No;
            r.why = "no quotient of G is isomorphic to H";
            return r;
        }
        if (two) {
            if (P->k == 1)
                isomorphism_route(*P, r);
            else
                general_route(*P, o, r);
            if (r.stats.list_star_calls != 0)
                throw std::logic_error("star atoms met while reducing a 2-connected H");
            r.route = "2-connected H";
            return r;
        }
        if (P->k % 2 == 1) {
            r.route = "odd k";
            Catalog cat;
            auto S = reduction_series(ng, cat);
            for (const auto& c : quotient_classes(S, P->k, true)) {
                ++r.stats.quotient_classes;
                Extender ex(S, o.budget, r.stats);
                bool found = false;
                ex.descend(S.r(), c.groups[0], [&](const std::vector<WAut>& g0) {
                    found = finish(*P, L, g0, r);
                    return !found;
                });
                if (ex.branching) throw std::logic_error("odd order group met a half-quotient choice");
                if (found) return r;
            }
            r.verdict = Verdict::No;
            r.why = "the unique expansions differ from H";
            return r;
        }
    } catch (const BudgetExceeded& e) {
        r.verdict = Verdict::Refused;
        r.why = e.what();
        return r;
    }
    r.verdict = Verdict::NotApplicable;
    r.why = "G is not 3-connected, H is not 2-connected and k is even";
    return r;
}

void enumerate_quotients(const Multigraph& g, bool dedup,
                         const std::function<bool(const QuotientItem&)>& visit, const CoverOptions& o) {
    validate(g);
    if (!g.connected()) throw std::invalid_argument("G must be connected");
    if (!is_planar(g) && g.v() > o.max_nonplanar_vertices) throw Refused("G is not planar and too large");
    Normalized N = normalize(g);
    Lifted L = to_wgraph(N.graph);
    Catalog cat;
    auto S = reduction_series(N.graph, cat);
    ExpansionStats stats;
    std::vector<std::pair<std::vector<long>, Multigraph>> seen;
    for (const auto& c : quotient_classes(S, 0, dedup)) {
        Extender ex(S, o.budget, stats);
        bool go = ex.descend(S.r(), c.groups[0], [&](const std::vector<WAut>& g0) {
            QuotientItem item;
            for (const auto& a : g0) item.group.push_back(to_raw(N, L, g, a));
            item.h = quotient(g, item.group).graph;
            if (dedup) {
                auto sig = signature(item.h);
                for (const auto& [s, q] : seen)
                    if (s == sig && isomorphic(item.h, q, 0)) return true;
                seen.push_back({sig, item.h});
            }
            return visit(item);
        });
        if (!go) return;
    }
}

}  // namespace rcover

#include "rcover/ivmatch.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "rcover/expansion.hpp"

namespace rcover::iv {

int Instance::vertices() const { return std::accumulate(cluster_size.begin(), cluster_size.end(), 0); }

int Instance::add_level() {
    odd.push_back(odd.size() % 2 == 0);
    return levels() - 1;
}

int Instance::add_cluster(int level, int size) {
    cluster_level.push_back(level);
    cluster_size.push_back(size);
    return clusters() - 1;
}

int first_vertex(const Instance& inst, int cluster) {
    return std::accumulate(inst.cluster_size.begin(), inst.cluster_size.begin() + cluster, 0);
}

int cluster_of(const Instance& inst, int vertex) {
    for (int c = 0; c < inst.clusters(); ++c) {
        if (vertex < inst.cluster_size[c]) return c;
        vertex -= inst.cluster_size[c];
    }
    return -1;
}

namespace {

std::set<std::pair<int, int>> adjacency(const Instance& inst) {
    std::set<std::pair<int, int>> s;
    for (auto [a, b] : inst.adj) s.insert({a, b}), s.insert({b, a});
    return s;
}

std::vector<std::vector<int>> by_level(const Instance& inst) {
    std::vector<std::vector<int>> out(inst.levels());
    for (int c = 0; c < inst.clusters(); ++c) out[inst.cluster_level[c]].push_back(c);
    return out;
}

}  // namespace

void validate(const Instance& inst) {
    auto fail = [](const std::string& m) { throw std::invalid_argument("ivmatch instance: " + m); };
    for (int i = 0; i < inst.levels(); ++i)
        if (static_cast<bool>(inst.odd[i]) != (i % 2 == 0)) fail("levels must alternate, starting odd");
    if (inst.cluster_level.size() != inst.cluster_size.size()) fail("cluster arrays differ in length");
    for (int c = 0; c < inst.clusters(); ++c) {
        if (inst.cluster_level[c] < 0 || inst.cluster_level[c] >= inst.levels()) fail("cluster without a level");
        if (inst.cluster_size[c] < 1) fail("empty cluster");
    }
    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : inst.adj) {
        if (a < 0 || b < 0 || a >= inst.clusters() || b >= inst.clusters()) fail("adjacency to a missing cluster");
        if (std::abs(inst.cluster_level[a] - inst.cluster_level[b]) != 1) fail("adjacency between non-consecutive levels");
        if (!seen.insert({std::min(a, b), std::max(a, b)}).second) fail("repeated adjacency");
    }
    // an even cluster sees at most one cluster of the next odd level
    std::map<int, int> next;
    for (auto [a, b] : inst.adj)
        for (auto [e, o] : {std::pair{a, b}, std::pair{b, a}})
            if (!inst.odd[inst.cluster_level[e]] && inst.cluster_level[o] == inst.cluster_level[e] + 1)
                if (++next[e] > 1) fail("even cluster " + std::to_string(e) + " meets two clusters of the next level");
}

Instance parse_instance(const std::string& text) {
    Instance inst;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        auto bad = [&]() { throw std::invalid_argument("ivmatch line " + std::to_string(lineno) + ": " + line); };
        if (key == "level") {
            std::string kind;
            if (!(ls >> kind) || (kind != "odd" && kind != "even")) bad();
            int l = inst.add_level();
            if (static_cast<bool>(inst.odd[l]) != (kind == "odd")) bad();
        } else if (key == "cluster") {
            int size;
            if (!(ls >> size) || inst.levels() == 0) bad();
            inst.add_cluster(inst.levels() - 1, size);
        } else if (key == "adj") {
            int a, b;
            if (!(ls >> a >> b)) bad();
            inst.adj.push_back({a, b});
        } else {
            bad();
        }
    }
    validate(inst);
    return inst;
}

std::string write_instance(const Instance& inst) {
    std::ostringstream out;
    auto lv = by_level(inst);
    std::vector<int> id(inst.clusters(), -1);
    int next = 0;
    for (int l = 0; l < inst.levels(); ++l) {
        out << "level " << (inst.odd[l] ? "odd" : "even") << "\n";
        for (int c : lv[l]) {
            id[c] = next++;
            out << "cluster " << inst.cluster_size[c] << "\n";
        }
    }
    for (auto [a, b] : inst.adj) out << "adj " << id[a] << " " << id[b] << "\n";
    return out.str();
}

FlowCounts flow_feasibility(const Instance& inst) {
    FlowCounts f;
    int pairs = (inst.levels() + 1) / 2;
    f.a.assign(pairs, 0);
    f.s.assign(pairs, 0);
    for (int c = 0; c < inst.clusters(); ++c) {
        int l = inst.cluster_level[c];
        (l % 2 == 0 ? f.a : f.s)[l / 2] += inst.cluster_size[c];
    }
    f.feasible = true;
    for (int i = 0; i < pairs; ++i) {
        long prev = i ? f.bp[i - 1] : 0;
        if (prev % 2) {
            f.feasible = false;
            f.why = "b'_" + std::to_string(i - 1) + " = " + std::to_string(prev) + " is odd";
            return f;
        }
        f.b.push_back(f.a[i] - prev / 2);
        f.bp.push_back(f.s[i] - f.b[i]);
        if (f.b[i] < 0 || f.bp[i] < 0) {
            f.feasible = false;
            f.why = "negative edge count at level pair " + std::to_string(i);
            return f;
        }
    }
    if (!f.bp.empty() && f.bp.back() != 0) {
        f.feasible = false;
        f.why = "vertices of the last even level are left over";
    }
    return f;
}

std::string check_subgraph(const Instance& inst, const Subgraph& sub) {
    int n = inst.vertices();
    auto adj = adjacency(inst);
    std::vector<int> level(n), cl(n);
    for (int c = 0, v = 0; c < inst.clusters(); ++c)
        for (int i = 0; i < inst.cluster_size[c]; ++i, ++v) level[v] = inst.cluster_level[c], cl[v] = c;
    std::vector<std::vector<int>> nb(n);
    std::set<std::pair<int, int>> seen;
    for (auto [u, v] : sub.edges) {
        if (u < 0 || v < 0 || u >= n || v >= n) return "edge to a missing vertex";
        if (!inst.odd[level[u]] || inst.odd[level[v]]) return "edge must go from an odd to an even level";
        if (!adj.count({cl[u], cl[v]})) return "edge between non-adjacent clusters";
        if (!seen.insert({u, v}).second) return "repeated edge";
        nb[u].push_back(v);
        nb[v].push_back(u);
    }
    for (int v = 0; v < n; ++v) {
        if (inst.odd[level[v]]) {
            const auto& e = nb[v];
            bool i_path = e.size() == 1 && level[e[0]] == level[v] + 1;
            bool v_shape = e.size() == 2 && level[e[0]] == level[v] - 1 && level[e[1]] == level[v] - 1 &&
                           cl[e[0]] == cl[e[1]];
            if (!i_path && !v_shape) return "odd vertex " + std::to_string(v) + " is neither an I nor a V centre";
        } else if (nb[v].size() != 1) {
            return "even vertex " + std::to_string(v) + " must have exactly one neighbour";
        }
    }
    return {};
}

// ---------------------------------------------------------------- exact solver

namespace {

class Solver {
   public:
    Solver(const Instance& inst, SolveStats& stats, long cap)
        : I(inst), st(stats), cap(cap), adj(adjacency(inst)), lv(by_level(inst)) {
        ell.assign(I.clusters(), 0);
        vin.assign(I.clusters(), 0);
        next.assign(I.clusters(), -1);
        first.resize(I.clusters());
        for (int c = 0; c < I.clusters(); ++c) first[c] = first_vertex(I, c);
        for (auto [a, b] : I.adj)
            for (auto [e, o] : {std::pair{a, b}, std::pair{b, a}})
                if (!I.odd[I.cluster_level[e]] && I.cluster_level[o] == I.cluster_level[e] + 1) next[e] = o;
        for (int l = 1; l < I.levels(); l += 2) {
            auto cs = lv[l];
            std::stable_sort(cs.begin(), cs.end(),
                             [&](int a, int b) { return I.cluster_size[a] > I.cluster_size[b]; });
            even_order.push_back(cs);
        }
        matched.resize(I.levels());
    }

    std::optional<Subgraph> run() {
        if (!level(0)) return std::nullopt;
        Subgraph out;
        for (int c = 0; c < I.clusters(); ++c) {
            if (next[c] < 0 || ell[c] == 0) continue;
            int o = next[c];
            for (int t = 0; t < ell[c]; ++t) {
                int centre = first[o] + used_v[o]++;
                out.edges.push_back({centre, first[c] + 2 * t});
                out.edges.push_back({centre, first[c] + 2 * t + 1});
            }
        }
        for (const auto& m : matched) out.edges.insert(out.edges.end(), m.begin(), m.end());
        std::sort(out.edges.begin(), out.edges.end());
        return out;
    }

   private:
    const Instance& I;
    SolveStats& st;
    long cap;
    std::set<std::pair<int, int>> adj;
    std::vector<std::vector<int>> lv, even_order;
    std::vector<int> ell, vin, next, first;
    std::vector<std::vector<std::pair<int, int>>> matched;  // I-edges per odd level
    std::map<int, int> used_v;

    // even level index t covers levels 2t (odd) and 2t+1 (even)
    bool level(size_t t) {
        if (t == even_order.size()) {
            // a trailing odd level can only hold V centres
            if (I.levels() % 2 == 1)
                for (int o : lv[I.levels() - 1])
                    if (vin[o] != I.cluster_size[o]) return false;
            return true;
        }
        return branch(t, 0);
    }

    bool branch(size_t t, size_t i) {
        const auto& cs = even_order[t];
        if (i == cs.size()) return pair_ok(static_cast<int>(2 * t)) && level(t + 1);
        int e = cs[i];
        int o = next[e];
        int hi = o < 0 ? 0 : std::min(I.cluster_size[e] / 2, I.cluster_size[o] - vin[o]);
        for (int l = hi; l >= 0; --l) {
            if (++st.nodes > cap)
                throw BudgetExceeded("IV-Matching search exceeds the node cap (" + std::to_string(cap) + ")");
            ell[e] = l;
            if (o >= 0) vin[o] += l;
            bool ok = branch(t, i + 1);
            if (o >= 0) vin[o] -= l;
            if (ok) return true;
        }
        ell[e] = 0;
        return false;
    }

    // I-edges between odd level l and even level l+1 for the current V counts
    bool pair_ok(int l) {
        std::vector<std::pair<int, int>> left, right;  // (vertex, cluster)
        for (int o : lv[l])
            for (int i = vin[o]; i < I.cluster_size[o]; ++i) left.push_back({first[o] + i, o});
        if (l + 1 < I.levels())
            for (int e : lv[l + 1])
                for (int i = 2 * ell[e]; i < I.cluster_size[e]; ++i) right.push_back({first[e] + i, e});
        if (left.size() != right.size()) return false;
        ++st.matchings;
        std::vector<std::vector<char>> ok(left.size(), std::vector<char>(right.size(), 0));
        for (size_t i = 0; i < left.size(); ++i)
            for (size_t j = 0; j < right.size(); ++j) ok[i][j] = adj.count({left[i].second, right[j].second});
        auto m = bipartite_perfect_matching(ok);
        if (!m) return false;
        matched[l].clear();
        for (size_t i = 0; i < left.size(); ++i) matched[l].push_back({left[i].first, right[(*m)[i]].first});
        return true;
    }
};

}  // namespace

std::optional<Subgraph> solve(const Instance& inst, SolveStats* stats, long node_cap) {
    validate(inst);
    SolveStats local;
    SolveStats& st = stats ? *stats : local;
    if (!flow_feasibility(inst).feasible) return std::nullopt;
    Solver s(inst, st, node_cap);
    auto out = s.run();
    if (out) {
        auto why = check_subgraph(inst, *out);
        if (!why.empty()) throw std::logic_error("IV-Matching solver produced an invalid subgraph: " + why);
    }
    return out;
}

std::optional<Subgraph> brute_force(const Instance& inst, int max_vertices) {
    validate(inst);
    int n = inst.vertices();
    if (n > max_vertices)
        throw std::invalid_argument("brute force refuses " + std::to_string(n) + " vertices (bound " +
                                    std::to_string(max_vertices) + ")");
    auto adj = adjacency(inst);
    std::vector<int> level(n), cl(n);
    for (int c = 0, v = 0; c < inst.clusters(); ++c)
        for (int i = 0; i < inst.cluster_size[c]; ++i, ++v) level[v] = inst.cluster_level[c], cl[v] = c;
    std::vector<int> odd, even;
    for (int v = 0; v < n; ++v) (inst.odd[level[v]] ? odd : even).push_back(v);
    std::vector<char> used(n, 0);
    Subgraph cur;
    std::function<bool(size_t)> rec = [&](size_t i) -> bool {
        if (i == odd.size()) {
            for (int v : even)
                if (!used[v]) return false;
            return true;
        }
        int u = odd[i];
        for (int v : even) {
            if (used[v] || level[v] != level[u] + 1 || !adj.count({cl[u], cl[v]})) continue;
            used[v] = 1;
            cur.edges.push_back({u, v});
            if (rec(i + 1)) return true;
            cur.edges.pop_back();
            used[v] = 0;
        }
        for (size_t x = 0; x < even.size(); ++x) {
            int v = even[x];
            if (used[v] || level[v] != level[u] - 1 || !adj.count({cl[u], cl[v]})) continue;
            for (size_t y = x + 1; y < even.size(); ++y) {
                int w = even[y];
                if (used[w] || cl[w] != cl[v]) continue;
                used[v] = used[w] = 1;
                cur.edges.push_back({u, v});
                cur.edges.push_back({u, w});
                if (rec(i + 1)) return true;
                cur.edges.resize(cur.edges.size() - 2);
                used[v] = used[w] = 0;
            }
        }
        return false;
    };
    if (!rec(0)) return std::nullopt;
    std::sort(cur.edges.begin(), cur.edges.end());
    return cur;
}

// ---------------------------------------------------------------- star atoms

std::optional<StarProblem> star_problem(const StarQuery& q) {
    std::map<std::pair<int, Ty>, int> ids;
    auto id = [&](const Sym& s) { return ids.emplace(std::pair{s.color, s.ty}, static_cast<int>(ids.size())).first->second; };
    auto member = [&](const Sym& s) -> std::optional<Member> {
        switch (s.kind) {
            case SymKind::Pendant: return Member{Member::Edge, id(s)};
            case SymKind::Loop: return Member{Member::Loop, id(s)};
            case SymKind::Half: return Member{Member::Half, id(s)};
            default: return std::nullopt;
        }
    };
    StarProblem p;
    for (const auto& alts : q.items) {
        std::vector<Member> l;
        for (const auto& a : alts) {
            if (a.size() != 1) return std::nullopt;
            auto m = member(a[0]);
            if (!m) return std::nullopt;
            l.push_back(*m);
        }
        p.lists.push_back(std::move(l));
    }
    for (const auto& s : q.fixed) {
        auto m = member(s);
        if (!m) return std::nullopt;
        p.fixed.push_back(*m);
    }
    for (const auto& links : q.dipoles) {
        std::map<std::pair<int, Ty>, std::pair<int, int>> cls;
        for (const auto& s : links) {
            auto& c = cls[{s.color, s.ty}];
            (s.ty == Ty::Directed && s.orient < 0 ? c.second : c.first)++;
        }
        for (auto& [k, c] : cls) {
            Sym loop{SymKind::Loop, k.first, k.second, 0};
            int forced = 0;
            if (k.second == Ty::Directed) {
                if (c.first != c.second) p.impossible = true;
                forced = c.first;
            } else if (k.second == Ty::Undirected) {
                if (c.first % 2) p.impossible = true;
                forced = c.first / 2;
            } else {
                p.dipole.push_back({id(loop), c.first});
            }
            p.fixed.insert(p.fixed.end(), forced, Member{Member::Loop, id(loop)});
        }
    }
    return p;
}

bool star_direct(const StarProblem& p, long budget) {
    if (p.impossible) return false;
    std::vector<std::vector<Member>> targets{p.fixed};
    for (const auto& d : p.dipole) {
        std::vector<std::vector<Member>> next;
        for (const auto& t : targets)
            for (int l = 0; 2 * l <= d.count; ++l) {
                auto u = t;
                u.insert(u.end(), l, Member{Member::Loop, d.color});
                u.insert(u.end(), d.count - 2 * l, Member{Member::Half, d.color});
                next.push_back(std::move(u));
            }
        targets.swap(next);
        if (static_cast<long>(targets.size()) > budget)
            throw BudgetExceeded("star enumeration exceeds the budget");
    }
    for (const auto& t : targets) {
        if (t.size() != p.lists.size()) continue;
        std::vector<std::vector<char>> ok(t.size(), std::vector<char>(t.size(), 0));
        for (size_t i = 0; i < t.size(); ++i)
            for (size_t j = 0; j < t.size(); ++j)
                ok[i][j] = std::find(p.lists[i].begin(), p.lists[i].end(), t[j]) != p.lists[i].end();
        if (bipartite_perfect_matching(ok)) return true;
    }
    return false;
}

namespace {

bool has(const std::vector<Member>& l, Member::Kind k, int c) {
    return std::find(l.begin(), l.end(), Member{k, c}) != l.end();
}

}  // namespace

Derived derive_instance(const StarProblem& p) {
    Derived d;
    auto contradiction = [&](const std::string& why) {
        d.contradiction = true;
        d.why = why;
        d.chains.clear();
        return d;
    };
    if (p.impossible) return contradiction("the dipole has no half-quotient");
    // pendant edges and loops of S each fit one isomorphism class of pendant elements
    std::vector<char> alive(p.lists.size(), 1);
    struct SNode {
        bool dipole;
        int color, size;
    };
    std::vector<SNode> snodes;
    std::map<int, int> halves, edges;
    for (const auto& m : p.fixed) {
        if (m.kind == Member::Half) {
            ++halves[m.color];
            continue;
        }
        size_t x = 0;
        while (x < p.lists.size() && !(alive[x] && has(p.lists[x], m.kind, m.color))) ++x;
        if (x == p.lists.size())
            return contradiction(std::string("no pendant element takes the fixed ") +
                                 (m.kind == Member::Edge ? "edge" : "loop") + " of colour " + std::to_string(m.color));
        alive[x] = 0;
    }
    // an odd class always leaves one half-edge; the rest unify into one dipole
    for (const auto& c : p.dipole) {
        if (c.count % 2) ++halves[c.color];
        edges[c.color] += c.count - c.count % 2;
    }
    for (auto [c, n] : edges)
        if (n) snodes.push_back({true, c, n});
    for (auto [c, n] : halves) snodes.push_back({false, c, n});

    std::vector<int> as;
    for (size_t x = 0; x < p.lists.size(); ++x)
        if (alive[x]) as.push_back(static_cast<int>(x));
    int na = static_cast<int>(as.size()), ns = static_cast<int>(snodes.size());
    // potentials: A level m -> 2m, S level m -> 2m+1
    std::vector<std::vector<std::pair<int, int>>> g(na + ns);  // (node, potential difference)
    std::vector<std::vector<std::pair<int, bool>>> inc(na);    // (s node, loop?)
    for (int i = 0; i < na; ++i) {
        const auto& l = p.lists[as[i]];
        for (int j = 0; j < ns; ++j) {
            bool half = has(l, Member::Half, snodes[j].color);
            bool loop = snodes[j].dipole && has(l, Member::Loop, snodes[j].color);
            if (half && loop) {
                d.unsupported = true;
                d.why = "a list holds both the loop and the half-edge of one colour";
                return d;
            }
            if (!half && !loop) continue;
            inc[i].push_back({j, loop});
            g[i].push_back({na + j, loop ? -1 : 1});
            g[na + j].push_back({i, loop ? 1 : -1});
        }
    }
    for (int v = 0; v < na + ns; ++v)
        if (g[v].empty())
            return contradiction(v < na ? "a pendant element fits nothing of the candidate"
                                        : "a dipole edge or half-edge fits no pendant element");
    std::vector<int> pot(na + ns, 0), comp(na + ns, -1);
    int nc = 0;
    for (int s = 0; s < na + ns; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = nc;
        std::vector<int> st{s};
        while (!st.empty()) {
            int v = st.back();
            st.pop_back();
            for (auto [y, dlt] : g[v]) {
                if (comp[y] < 0) {
                    comp[y] = nc;
                    pot[y] = pot[v] + dlt;
                    st.push_back(y);
                } else if (pot[y] != pot[v] + dlt) {
                    d.unsupported = true;
                    d.why = "pendant element sizes do not form consistent levels";
                    return d;
                }
            }
        }
        ++nc;
    }
    for (int c = 0; c < nc; ++c) {
        int lo = INT32_MAX, hi = INT32_MIN;
        for (int v = 0; v < na + ns; ++v)
            if (comp[v] == c) lo = std::min(lo, pot[v]), hi = std::max(hi, pot[v]);
        int base = lo - (((lo % 2) + 2) % 2);
        Instance inst;
        for (int l = 0; l <= hi - base; ++l) inst.add_level();
        // A clusters: equal lists on one level
        std::map<std::pair<int, std::vector<Member>>, int> acl;
        std::vector<int> a_cluster(na, -1), s_cluster(ns, -1);
        for (int i = 0; i < na; ++i) {
            if (comp[i] != c) continue;
            auto l = p.lists[as[i]];
            std::sort(l.begin(), l.end());
            auto key = std::make_pair(pot[i] - base, l);
            auto it = acl.find(key);
            if (it == acl.end()) {
                it = acl.emplace(key, inst.add_cluster(pot[i] - base, 0)).first;
            }
            ++inst.cluster_size[it->second];
            a_cluster[i] = it->second;
        }
        for (int j = 0; j < ns; ++j)
            if (comp[na + j] == c) s_cluster[j] = inst.add_cluster(pot[na + j] - base, snodes[j].size);
        std::set<std::pair<int, int>> seen;
        for (int i = 0; i < na; ++i)
            if (comp[i] == c)
                for (auto [j, loop] : inc[i])
                    if (seen.insert({a_cluster[i], s_cluster[j]}).second) inst.adj.push_back({a_cluster[i], s_cluster[j]});
        try {
            validate(inst);
        } catch (const std::invalid_argument& e) {
            d.unsupported = true;
            d.why = e.what();
            d.chains.clear();
            return d;
        }
        d.chains.push_back(std::move(inst));
    }
    return d;
}

std::optional<bool> star_via_ivmatch(const StarProblem& p, long node_cap) {
    auto d = derive_instance(p);
    if (d.contradiction) return false;
    if (d.unsupported) return std::nullopt;
    for (const auto& inst : d.chains)
        if (!solve(inst, nullptr, node_cap)) return false;
    return true;
}

}  // namespace rcover::iv

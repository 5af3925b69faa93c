#include <algorithm>
#include <map>

#include "rcover/decomposition.hpp"

namespace rcover {

Pattern pattern_of(const WGraph& w, const Atom& a) {
    Pattern p;
    p.g = &w;
    p.verts = a.boundary;
    p.verts.insert(p.verts.end(), a.interior.begin(), a.interior.end());
    p.pinned = static_cast<int>(a.boundary.size());
    p.elems = a.elems;
    return p;
}

Pattern pattern_whole(const WGraph& w, const std::vector<int>& pinned) {
    Pattern p;
    p.g = &w;
    p.verts = pinned;
    for (int u : w.live_vertices())
        if (std::find(pinned.begin(), pinned.end(), u) == pinned.end()) p.verts.push_back(u);
    p.pinned = static_cast<int>(pinned.size());
    p.elems = w.live_elems();
    return p;
}

bool member_compatible(const Elem& src, const Elem& tgt, bool reversed, bool check_sizes) {
    if (check_sizes && (src.hv2 != tgt.hv2 || src.he2 != tgt.he2)) return false;
    Sym want = reversed ? tgt.sym().reversed() : tgt.sym();
    return std::find(src.list.begin(), src.list.end(), want) != src.list.end();
}

namespace {

// Kuhn's augmenting paths on a small dense bipartite graph
struct Bip {
    int n;
    std::vector<std::vector<char>> ok;
    std::vector<int> match_r;  // right -> left

    bool augment(int l, std::vector<char>& seen) {
        for (int r = 0; r < n; ++r) {
            if (!ok[l][r] || seen[r]) continue;
            seen[r] = 1;
            if (match_r[r] < 0 || augment(match_r[r], seen)) {
                match_r[r] = l;
                return true;
            }
        }
        return false;
    }
    bool perfect() {
        match_r.assign(n, -1);
        for (int l = 0; l < n; ++l) {
            std::vector<char> seen(n, 0);
            if (!augment(l, seen)) return false;
        }
        return true;
    }
    // every perfect matching as left -> right
    bool all(int l, std::vector<int>& cur, std::vector<char>& used,
             const std::function<bool(const std::vector<int>&)>& f) {
        if (l == n) return f(cur);
        for (int r = 0; r < n; ++r) {
            if (!ok[l][r] || used[r]) continue;
            used[r] = 1;
            cur[l] = r;
            bool go = all(l + 1, cur, used, f);
            used[r] = 0;
            if (!go) return false;
        }
        return true;
    }
};

struct Side {
    const Pattern& p;
    std::map<int, int> local;                                    // global vertex -> local
    std::vector<std::vector<int>> stubs;                         // per local vertex: elem indices
    std::vector<std::map<int, std::vector<int>>> links;          // local -> (nbr local -> elem idx)
    std::vector<int> nlinks;

    explicit Side(const Pattern& pat) : p(pat) {
        int n = static_cast<int>(p.verts.size());
        for (int i = 0; i < n; ++i) local[p.verts[i]] = i;
        stubs.assign(n, {});
        links.assign(n, {});
        nlinks.assign(n, 0);
        for (int i = 0; i < static_cast<int>(p.elems.size()); ++i) {
            const Elem& el = p.g->elems[p.elems[i]];
            int a = local.at(el.a);
            if (!el.is_link()) {
                stubs[a].push_back(i);
                continue;
            }
            int b = local.at(el.b);
            links[a][b].push_back(i);
            links[b][a].push_back(i);
            ++nlinks[a];
            ++nlinks[b];
        }
    }
    const Elem& el(int i) const { return p.g->elems[p.elems[i]]; }
    int lv(int global) const { return local.at(global); }
};

class Matcher {
   public:
    Matcher(const Pattern& s, const Pattern& t, const MatchOptions& o,
            const std::function<bool(const MatchResult&)>& visit)
        : S(s), T(t), o(o), visit(visit) {}

    void run() {
        int n = static_cast<int>(S.p.verts.size());
        if (n != static_cast<int>(T.p.verts.size()) || S.p.pinned != T.p.pinned) return;
        if (!o.group && S.p.elems.size() != T.p.elems.size()) return;
        f.assign(n, -1);
        finv.assign(n, -1);
        // pinned first, then BFS order over links
        std::vector<char> placed(n, 0);
        for (int i = 0; i < S.p.pinned; ++i) {
            order.push_back(i);
            placed[i] = 1;
        }
        for (size_t h = 0;; ++h) {
            if (h == order.size()) {
                int next = -1;
                for (int i = 0; i < n && next < 0; ++i)
                    if (!placed[i]) next = i;
                if (next < 0) break;
                order.push_back(next);
                placed[next] = 1;
            }
            for (auto& [y, es] : S.links[order[h]])
                if (!placed[y]) placed[y] = 1, order.push_back(y);
        }
        search(0);
    }

   private:
    Side S, T;
    const MatchOptions& o;
    const std::function<bool(const MatchResult&)>& visit;
    std::vector<int> f, finv, order;
    bool stop = false;
    std::size_t found = 0;

    bool elem_ok(int si, int ti, bool rev) const {
        const Elem& se = S.el(si);
        const Elem& te = T.el(ti);
        if (se.is_link() != te.is_link()) return false;
        return member_compatible(se, te, rev, o.check_sizes);
    }
    bool reversed(int si, int ti) const {
        const Elem& se = S.el(si);
        const Elem& te = T.el(ti);
        if (!se.is_link()) return false;
        return f[S.lv(se.a)] != T.lv(te.a);
    }
    Bip bip(const std::vector<int>& ss, const std::vector<int>& ts, bool links) const {
        Bip b;
        b.n = static_cast<int>(ss.size());
        b.ok.assign(b.n, std::vector<char>(b.n, 0));
        for (int i = 0; i < b.n; ++i)
            for (int j = 0; j < b.n; ++j)
                b.ok[i][j] = elem_ok(ss[i], ts[j], links && reversed(ss[i], ts[j]));
        return b;
    }
    bool group_ok(const std::vector<int>& ss, const std::vector<int>& ts, bool links) const {
        if (o.group) return hook_ok(ss, ts, links);
        if (ss.size() != ts.size()) return false;
        if (ss.empty()) return true;
        return bip(ss, ts, links).perfect();
    }
    // links are oriented from the vertex being placed towards its mapped neighbour
    bool hook_ok(const std::vector<int>& ss, const std::vector<int>& ts, bool links) const {
        if (ss.empty() || ts.empty()) return ss.empty() && ts.empty();
        long sv = 0, se = 0, tv = 0, te = 0;
        std::vector<std::vector<Sym>> src;
        std::vector<Sym> tgt;
        int from = links ? S.lv(S.el(ss[0]).a) : -1;
        for (int i : ss) {
            const Elem& el = S.el(i);
            sv += el.hv2, se += el.he2;
            bool rev = links && S.lv(el.a) != from;
            std::vector<Sym> l;
            for (const auto& m : el.list) l.push_back(rev ? m.reversed() : m);
            src.push_back(std::move(l));
        }
        int img = links ? f[from] : -1;
        for (int i : ts) {
            const Elem& el = T.el(i);
            tv += el.hv2, te += el.he2;
            bool rev = links && T.lv(el.a) != img;
            tgt.push_back(rev ? el.sym().reversed() : el.sym());
        }
        if (o.check_sizes && (sv != tv || se != te)) return false;
        return o.group(links, src, tgt);
    }

    bool feasible(int y, int t) const {
        if (S.p.g->vcolor[S.p.verts[y]] != T.p.g->vcolor[T.p.verts[t]]) return false;
        if (S.links[y].size() != T.links[t].size()) return false;
        if (!o.group && (S.nlinks[y] != T.nlinks[t] || S.stubs[y].size() != T.stubs[t].size())) return false;
        if (!group_ok(S.stubs[y], T.stubs[t], false)) return false;
        // links to already mapped vertices
        int sc = 0, tc = 0;
        for (auto& [x, es] : S.links[y]) {
            if (f[x] < 0) continue;
            ++sc;
            auto it = T.links[t].find(f[x]);
            if (it == T.links[t].end()) return false;
            if (!group_ok(es, it->second, true)) return false;
        }
        for (auto& [z, es] : T.links[t])
            if (finv[z] >= 0) ++tc;
        return sc == tc;
    }

    void search(size_t depth) {
        if (stop) return;
        if (depth == order.size()) {
            emit();
            return;
        }
        int y = order[depth];
        auto attempt = [&](int t) {
            if (finv[t] >= 0) return;
            f[y] = t;
            finv[t] = y;
            if (feasible(y, t)) search(depth + 1);
            f[y] = -1;
            finv[t] = -1;
        };
        if (y < S.p.pinned) {
            int t = y;
            if (o.pin_swap && S.p.pinned == 2) t = 1 - y;
            attempt(t);
            return;
        }
        // candidates: neighbours of the image of a mapped neighbour, else all
        int anchor = -1;
        for (auto& [x, es] : S.links[y])
            if (f[x] >= 0) {
                anchor = f[x];
                break;
            }
        if (anchor >= 0) {
            std::vector<int> cand;
            for (auto& [z, es] : T.links[anchor]) cand.push_back(z);
            for (int t : cand) {
                if (stop) return;
                if (t >= T.p.pinned) attempt(t);
            }
        } else {
            for (int t = T.p.pinned; t < static_cast<int>(T.p.verts.size()) && !stop; ++t) attempt(t);
        }
    }

    void emit() {
        // element groups: stubs per vertex, links per unordered source pair
        std::vector<std::pair<std::vector<int>, std::vector<int>>> groups;
        int n = static_cast<int>(S.p.verts.size());
        for (int y = 0; y < n; ++y) {
            if (!S.stubs[y].empty()) groups.push_back({S.stubs[y], T.stubs[f[y]]});
            for (auto& [x, es] : S.links[y])
                if (x >= y) groups.push_back({es, T.links[f[y]].at(f[x])});
        }
        MatchResult r;
        r.vmap = f;
        r.emap.assign(S.p.elems.size(), -1);
        if (o.group) {
            deliver(r);  // every group was tested while placing vertices
            return;
        }
        if (!o.all_element_maps) {
            for (auto& [ss, ts] : groups) {
                bool links = S.el(ss[0]).is_link();
                Bip b = bip(ss, ts, links);
                if (!b.perfect()) return;
                for (int j = 0; j < b.n; ++j) r.emap[ss[b.match_r[j]]] = ts[j];
            }
            deliver(r);
            return;
        }
        std::function<void(size_t)> rec = [&](size_t gi) {
            if (stop) return;
            if (gi == groups.size()) {
                deliver(r);
                return;
            }
            auto& [ss, ts] = groups[gi];
            bool links = S.el(ss[0]).is_link();
            Bip b = bip(ss, ts, links);
            std::vector<int> cur(b.n, -1);
            std::vector<char> used(b.n, 0);
            b.all(0, cur, used, [&](const std::vector<int>& m) {
                for (int i = 0; i < b.n; ++i) r.emap[ss[i]] = ts[m[i]];
                rec(gi + 1);
                return !stop;
            });
        };
        rec(0);
    }

    void deliver(const MatchResult& r) {
        ++found;
        if (!visit(r)) stop = true;
        if (o.limit && found >= o.limit) stop = true;
    }
};

}  // namespace

void match_patterns(const Pattern& src, const Pattern& tgt, const MatchOptions& o,
                    const std::function<bool(const MatchResult&)>& visit) {
    Matcher m(src, tgt, o, visit);
    m.run();
}

std::optional<MatchResult> match_one(const Pattern& src, const Pattern& tgt, const MatchOptions& o) {
    std::optional<MatchResult> out;
    match_patterns(src, tgt, o, [&](const MatchResult& r) {
        out = r;
        return false;
    });
    return out;
}

}  // namespace rcover

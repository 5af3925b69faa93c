#include "rcover/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace rcover::oracle {

namespace {

Automorphism identity(const Multigraph& g) {
    Automorphism a;
    a.vmap.resize(g.v());
    a.hmap.resize(g.h());
    std::iota(a.vmap.begin(), a.vmap.end(), 0);
    std::iota(a.hmap.begin(), a.hmap.end(), 0);
    return a;
}

Automorphism compose(const Automorphism& a, const Automorphism& b) {  // a after b
    Automorphism c;
    c.vmap.resize(b.vmap.size());
    c.hmap.resize(b.hmap.size());
    for (size_t i = 0; i < b.vmap.size(); ++i) c.vmap[i] = a.vmap[b.vmap[i]];
    for (size_t i = 0; i < b.hmap.size(); ++i) c.hmap[i] = a.hmap[b.hmap[i]];
    return c;
}

struct Table {
    std::vector<Automorphism> elems;
    std::map<std::vector<int>, int> index;

    int find(const Automorphism& a) const {
        std::vector<int> k = a.vmap;
        k.insert(k.end(), a.hmap.begin(), a.hmap.end());
        auto it = index.find(k);
        return it == index.end() ? -1 : it->second;
    }
    void add(const Automorphism& a) {
        std::vector<int> k = a.vmap;
        k.insert(k.end(), a.hmap.begin(), a.hmap.end());
        index[k] = static_cast<int>(elems.size());
        elems.push_back(a);
    }
};

// closure of a generating set inside the table, or empty when it leaves `allowed`
// or grows beyond `cap`
std::vector<int> closure(const Table& t, const std::vector<int>& gens, const std::vector<char>& allowed,
                         int id, size_t cap) {
    std::set<int> seen{id};
    std::vector<int> todo{id};
    while (!todo.empty()) {
        int x = todo.back();
        todo.pop_back();
        for (int gi : gens) {
            int y = t.find(compose(t.elems[gi], t.elems[x]));
            if (y < 0 || !allowed[y]) return {};
            if (seen.insert(y).second) {
                if (seen.size() > cap) return {};
                todo.push_back(y);
            }
        }
    }
    return {seen.begin(), seen.end()};
}

}  // namespace

PermutationGroup aut_bruteforce(const Multigraph& g, const Limits& lim) {
    PermutationGroup out;
    IsoOptions opt;
    opt.max_vertices = lim.max_vertices;
    backtrack_all_isos(g, g, opt, [&](const std::vector<int>& vm) {
        bool more = true;
        lift_vertex_map(g, g, vm, [&](const std::vector<int>& hm) {
            out.push_back({vm, hm});
            if (out.size() > lim.max_elements) more = false;
            return more;
        });
        return more;
    });
    if (out.size() > lim.max_elements) throw Refused("refused: automorphism group too large");
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.vmap, a.hmap) < std::tie(b.vmap, b.hmap);
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

std::vector<PermutationGroup> semiregular_subgroups_bruteforce(const Multigraph& g,
                                                               const Limits& lim) {
    auto aut = aut_bruteforce(g, lim);
    Table t;
    for (auto& a : aut) t.add(a);
    int id = t.find(identity(g));
    std::vector<char> ok(t.elems.size());
    for (size_t i = 0; i < t.elems.size(); ++i)
        ok[i] = (static_cast<int>(i) == id) || semiregular_element(g, t.elems[i]);
    size_t cap = std::max(1, g.v());
    std::set<std::vector<int>> groups;
    groups.insert({id});
    for (size_t i = 0; i < t.elems.size(); ++i) {
        if (!ok[i] || static_cast<int>(i) == id) continue;
        auto c = closure(t, {static_cast<int>(i)}, ok, id, cap);
        if (!c.empty()) groups.insert(c);
    }
    // joins until nothing new appears
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<std::vector<int>> cur(groups.begin(), groups.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                std::vector<int> gens;
                std::set_union(cur[i].begin(), cur[i].end(), cur[j].begin(), cur[j].end(),
                               std::back_inserter(gens));
                if (gens.size() > cap) continue;
                auto c = closure(t, gens, ok, id, cap);
                if (!c.empty() && groups.insert(c).second) grew = true;
            }
    }
    std::vector<PermutationGroup> out;
    for (auto& s : groups) {
        PermutationGroup pg;
        for (int i : s) pg.push_back(t.elems[i]);
        out.push_back(std::move(pg));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

Multigraph quotient(const Multigraph& g, const PermutationGroup& group) {
    std::vector<int> vorb(g.v(), -1), horb(g.h(), -1);
    int nv = 0, nh = 0;
    for (int u = 0; u < g.v(); ++u) {
        if (vorb[u] >= 0) continue;
        for (auto& a : group) vorb[a.vmap[u]] = nv;
        ++nv;
    }
    std::vector<int> rep;
    for (int x = 0; x < g.h(); ++x) {
        if (horb[x] >= 0) continue;
        for (auto& a : group) horb[a.hmap[x]] = nh;
        rep.push_back(x);
        ++nh;
    }
    Multigraph q;
    q.vertex_color.resize(nv);
    for (int u = 0; u < g.v(); ++u) q.vertex_color[vorb[u]] = g.vertex_color[u];
    q.half_edges.resize(nh);
    for (int o = 0; o < nh; ++o) {
        const auto& he = g.half_edges[rep[o]];
        auto& qe = q.half_edges[o];
        qe.vertex = he.vertex == kFree ? kFree : vorb[he.vertex];
        qe.color = he.color;
        qe.type = he.type;
        if (he.partner == kNone) {
            qe.partner = kNone;
        } else {
            int po = horb[he.partner];
            qe.partner = po == o ? kNone : po;
        }
    }
    return q;
}

std::optional<Certificate> regular_cover_bruteforce(const Multigraph& g, const Multigraph& h,
                                                    const Limits& lim) {
    if (h.v() == 0 || g.v() % h.v() != 0) return std::nullopt;
    size_t k = g.v() / h.v();
    if (g.h() != static_cast<int>(k) * h.h()) return std::nullopt;
    for (auto& grp : semiregular_subgroups_bruteforce(g, lim)) {
        if (grp.size() != k) continue;
        auto q = quotient(g, grp);
        IsoOptions o;
        o.max_vertices = 0;
        if (auto iso = backtrack_list_iso(q, h, o)) return Certificate{grp, *iso};
    }
    return std::nullopt;
}

std::vector<Multigraph> quotient_set_bruteforce(const Multigraph& g, const Limits& lim) {
    std::vector<Multigraph> out;
    for (auto& grp : semiregular_subgroups_bruteforce(g, lim)) {
        auto q = quotient(g, grp);
        bool dup = false;
        for (auto& o : out)
            if (isomorphic(o, q)) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(std::move(q));
    }
    return out;
}

int dipole_involution_quotients(const std::vector<int>& class_sizes) {
    // every fixed-point-free action on the two ends is the swap; on the edges it is
    // an involution preserving classes; a fixed edge becomes a half-edge, a swapped
    // pair a loop. Quotients are one vertex with loops and half-edges per class.
    std::set<std::vector<int>> shapes;
    int m = std::accumulate(class_sizes.begin(), class_sizes.end(), 0);
    std::vector<int> cls;
    for (size_t c = 0; c < class_sizes.size(); ++c)
        for (int i = 0; i < class_sizes[c]; ++i) cls.push_back(static_cast<int>(c));
    std::vector<int> inv(m, -1);
    std::function<void(int)> rec = [&](int i) {
        while (i < m && inv[i] >= 0) ++i;
        if (i == m) {
            std::vector<int> loops(class_sizes.size(), 0);
            for (int x = 0; x < m; ++x)
                if (inv[x] > x) ++loops[cls[x]];
            shapes.insert(loops);
            return;
        }
        inv[i] = i;
        rec(i + 1);
        for (int j = i + 1; j < m; ++j)
            if (inv[j] < 0 && cls[j] == cls[i]) {
                inv[i] = j, inv[j] = i;
                rec(i + 1);
                inv[j] = -1;
            }
        inv[i] = -1;
    };
    rec(0);
    return static_cast<int>(shapes.size());
}

}  // namespace rcover::oracle

#pragma once

#include <functional>
#include <random>
#include <vector>

#include "rcover/ivmatch.hpp"

namespace fx {

using rcover::iv::Instance;

// every instance with up to max_levels levels, up to two clusters per level and at most
// max_vertices vertices; visit sees each one once
inline void all_instances(int max_levels, int max_vertices, const std::function<void(const Instance&)>& visit) {
    // cluster sizes per level, then adjacency subsets
    std::function<void(Instance&, int)> shape = [&](Instance& inst, int left) {
        // candidate pairs between consecutive levels
        std::vector<std::pair<int, int>> pairs;
        for (int a = 0; a < inst.clusters(); ++a)
            for (int b = a + 1; b < inst.clusters(); ++b)
                if (std::abs(inst.cluster_level[a] - inst.cluster_level[b]) == 1) pairs.push_back({a, b});
        if (pairs.size() <= 12)
            for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
                Instance x = inst;
                for (size_t i = 0; i < pairs.size(); ++i)
                    if (mask >> i & 1) x.adj.push_back(pairs[i]);
                try {
                    rcover::iv::validate(x);
                } catch (const std::invalid_argument&) {
                    continue;
                }
                visit(x);
            }
        if (inst.levels() == max_levels) return;
        int l = inst.add_level();
        // zero, one or two clusters on the new level
        for (int a = 1; a <= left; ++a) {
            Instance one = inst;
            one.add_cluster(l, a);
            shape(one, left - a);
            for (int b = a; a + b <= left; ++b) {
                Instance two = one;
                two.add_cluster(l, b);
                shape(two, left - a - b);
            }
        }
        if (l > 0 && l + 1 < max_levels) {
            Instance empty = inst;
            shape(empty, left);
        }
        inst.odd.pop_back();
    };
    Instance root;
    shape(root, max_vertices);
}

inline Instance random_instance(std::mt19937& rng, int max_vertices) {
    Instance inst;
    int levels = 1 + static_cast<int>(rng() % 5);
    for (int l = 0; l < levels; ++l) inst.add_level();
    int budget = max_vertices;
    for (int l = 0; l < levels && budget > 0; ++l) {
        int k = static_cast<int>(rng() % 3);
        for (int i = 0; i < k && budget > 0; ++i) {
            int s = 1 + static_cast<int>(rng() % std::min(4, budget));
            inst.add_cluster(l, s);
            budget -= s;
        }
    }
    std::vector<int> taken(inst.clusters(), 0);
    for (int a = 0; a < inst.clusters(); ++a)
        for (int b = a + 1; b < inst.clusters(); ++b) {
            int la = inst.cluster_level[a], lb = inst.cluster_level[b];
            if (std::abs(la - lb) != 1 || rng() % 3 == 0) continue;
            int e = la < lb ? a : b, o = la < lb ? b : a;
            if (!inst.odd[inst.cluster_level[e]]) {
                if (taken[e]) continue;
                taken[e] = 1;
            }
            (void)o;
            inst.adj.push_back({a, b});
        }
    return inst;
}

}  // namespace fx

#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace rcover {

// A finite group given by its multiplication table, mul[a][b] = a after b.
struct GroupTable {
    int id = 0;
    std::vector<std::vector<int>> mul;
    int size() const { return static_cast<int>(mul.size()); }
    int inverse(int a) const;
    int order(int a) const;
};

// Elements are identified by a key; compose(a, b) is a after b.
template <class T, class KeyFn, class ComposeFn>
GroupTable make_table(const std::vector<T>& elems, int id, KeyFn key, ComposeFn compose) {
    GroupTable t;
    t.id = id;
    std::map<decltype(key(elems[0])), int> index;
    for (int i = 0; i < static_cast<int>(elems.size()); ++i) index[key(elems[i])] = i;
    int n = static_cast<int>(elems.size());
    t.mul.assign(n, std::vector<int>(n, -1));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            auto it = index.find(key(compose(elems[a], elems[b])));
            if (it == index.end()) throw std::logic_error("element set is not closed");
            t.mul[a][b] = it->second;
        }
    return t;
}

// subgroup generated by gens, or empty if it contains an element outside `ok`
std::vector<int> generated(const GroupTable& t, const std::vector<int>& gens,
                           const std::vector<char>& ok);

// every subgroup whose non-identity elements all satisfy ok, as sorted index sets:
// cyclic subgroups first, then pairwise joins until nothing new appears
std::vector<std::vector<int>> ok_subgroups(const GroupTable& t, const std::vector<char>& ok);

}  // namespace rcover

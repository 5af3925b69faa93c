#include "rcover/groups.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace rcover {

int GroupTable::inverse(int a) const {
    for (int b = 0; b < size(); ++b)
        if (mul[a][b] == id) return b;
    throw std::logic_error("no inverse");
}

int GroupTable::order(int a) const {
    int k = 1;
    for (int x = a; x != id; x = mul[a][x]) ++k;
    return k;
}

std::vector<int> generated(const GroupTable& t, const std::vector<int>& gens,
                           const std::vector<char>& ok) {
    std::vector<char> in(t.size(), 0);
    std::vector<int> todo{t.id};
    in[t.id] = 1;
    while (!todo.empty()) {
        int x = todo.back();
        todo.pop_back();
        for (int g : gens) {
            int y = t.mul[g][x];
            if (in[y]) continue;
            if (!ok[y]) return {};
            in[y] = 1;
            todo.push_back(y);
        }
    }
    std::vector<int> out;
    for (int i = 0; i < t.size(); ++i)
        if (in[i]) out.push_back(i);
    return out;
}

std::vector<std::vector<int>> ok_subgroups(const GroupTable& t, const std::vector<char>& ok) {
    std::set<std::vector<int>> found{{t.id}};
    for (int a = 0; a < t.size(); ++a) {
        if (a == t.id || !ok[a]) continue;
        auto c = generated(t, {a}, ok);
        if (!c.empty()) found.insert(c);
    }
    std::vector<std::vector<int>> frontier(found.begin(), found.end());
    while (!frontier.empty()) {
        std::vector<std::vector<int>> all(found.begin(), found.end()), next;
        for (auto& a : frontier)
            for (auto& b : all) {
                if (std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
                    std::includes(b.begin(), b.end(), a.begin(), a.end()))
                    continue;
                std::vector<int> gens;
                std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(gens));
                auto c = generated(t, gens, ok);
                if (!c.empty() && found.insert(c).second) next.push_back(c);
            }
        frontier.swap(next);
    }
    return {found.begin(), found.end()};
}

}  // namespace rcover

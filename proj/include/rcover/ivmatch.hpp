#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rcover/expansion.hpp"

// IV-Matching: leveled, clustered bipartite graphs whose spanning subgraphs are made of
// I-paths (odd vertex to one vertex of the next even level) and V-shapes (odd vertex to
// two vertices of one cluster of the previous even level).
namespace rcover::iv {

struct Instance {
    std::vector<char> odd;                  // per level; levels alternate, starting odd
    std::vector<int> cluster_level;         // per cluster
    std::vector<int> cluster_size;          // per cluster
    std::vector<std::pair<int, int>> adj;   // cluster pairs on consecutive levels

    int levels() const { return static_cast<int>(odd.size()); }
    int clusters() const { return static_cast<int>(cluster_size.size()); }
    int vertices() const;
    int add_level();
    int add_cluster(int level, int size);
};

// throws std::invalid_argument
void validate(const Instance& inst);

// text format: `level odd|even`, `cluster <size>` (in the latest level), `adj <c> <c>`
Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);

// vertices are numbered cluster by cluster
int first_vertex(const Instance& inst, int cluster);
int cluster_of(const Instance& inst, int vertex);

struct FlowCounts {
    bool feasible = false;
    std::vector<long> a, s, b, bp;  // per odd/even level pair; bp = b'
    std::string why;
};
FlowCounts flow_feasibility(const Instance& inst);

struct Subgraph {
    std::vector<std::pair<int, int>> edges;  // (odd-level vertex, even-level vertex)
};

// empty when sub is an IV-subgraph of inst
std::string check_subgraph(const Instance& inst, const Subgraph& sub);

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolveStats {
    long nodes = 0;
    long matchings = 0;
};

std::optional<Subgraph> solve(const Instance& inst, SolveStats* stats = nullptr, long node_cap = 1L << 22);

// role assignment per odd vertex; refuses above max_vertices
std::optional<Subgraph> brute_force(const Instance& inst, int max_vertices = 20);

// ---- star atoms

struct Member {
    enum Kind { Edge, Loop, Half } kind = Edge;
    int color = 0;
    auto operator<=>(const Member&) const = default;
};

struct DipoleClass {
    int color = 0;
    int count = 0;  // halvable parallel edges of this colour
};

// A star atom of H (pendant elements with lists) against a candidate star of the catalog:
// its fixed pendant edges/loops/half-edges plus the classes of its dipole half-edges.
struct StarProblem {
    std::vector<std::vector<Member>> lists;
    std::vector<Member> fixed;
    std::vector<DipoleClass> dipole;  // the same colour may repeat (several dipoles)
    bool impossible = false;          // a dipole without any half-quotient
};

// the problem behind a list test reported by ListReducer; none when some list member
// opens into several stubs
std::optional<StarProblem> star_problem(const StarQuery& q);

// every loop/half split of the dipole classes tested by perfect matching
bool star_direct(const StarProblem& p, long budget = 1L << 22);

struct Derived {
    bool contradiction = false;  // preprocessing already shows there is no expansion
    bool unsupported = false;    // lists violate the structure the derivation relies on
    std::string why;
    std::vector<Instance> chains;
};

Derived derive_instance(const StarProblem& p);

// derive_instance, then solve every chain
std::optional<bool> star_via_ivmatch(const StarProblem& p, long node_cap = 1L << 22);

}  // namespace rcover::iv

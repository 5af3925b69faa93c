#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rcover {

enum class EdgeType : std::uint8_t { Halvable, Undirected, DirTail, DirHead };

constexpr int kFree = -1;  // attachment of the dangling end of a pendant edge
constexpr int kNone = -1;  // partner of a standalone half-edge

struct HalfEdge {
    int vertex = kFree;
    int partner = kNone;
    int color = 0;
    EdgeType type = EdgeType::Halvable;
};

struct Multigraph {
    std::vector<int> vertex_color;  // 0 = uncolored
    std::vector<HalfEdge> half_edges;

    int v() const { return static_cast<int>(vertex_color.size()); }
    int h() const { return static_cast<int>(half_edges.size()); }
    // edges, loops and pendant edges count once, standalone half-edges count once
    int e() const;

    int add_vertex(int color = 0);
    // returns the half-edge at a; its partner sits at b
    int add_edge(int a, int b, int color = 0, EdgeType t = EdgeType::Halvable);
    int add_arc(int tail, int head, int color = 0);
    int add_half_edge(int a, int color = 0);
    // returns the attached half-edge; the partner is free
    int add_pendant(int a, int color = 0, EdgeType t = EdgeType::Halvable);

    bool is_loop(int x) const;
    bool is_pendant(int x) const;  // either end of a pendant edge
    bool is_standalone(int x) const { return half_edges[x].partner == kNone; }

    std::vector<std::vector<int>> incidence() const;  // attached half-edges per vertex
    std::vector<int> degrees() const;
    bool connected() const;
};

struct GraphError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Multigraph parse_graph(const std::string& text);
Multigraph read_graph_file(const std::string& path);
std::string serialize_graph(const Multigraph& g);

// throws GraphError on a broken invariant
void validate(const Multigraph& g);

struct Normalized {
    Multigraph graph;
    std::vector<int> vertex_of;     // normalized vertex -> raw vertex
    std::vector<int> half_edge_of;  // normalized half-edge -> raw half-edge
    // for a pendant end that replaced a removed leaf: the leaf vertex, else -1
    std::vector<int> leaf_of;
};

// drops uncolored degree-1 vertices and keeps their edge as a pendant edge
Normalized normalize(const Multigraph& g);

struct VertexMapping {
    std::vector<int> image;
    std::vector<int> half_edge_image;
};

struct Refused : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IsoOptions {
    int max_vertices = 12;  // Refused above this; <= 0 disables the guard
    const std::vector<std::vector<int>>* lists = nullptr;
};

// color/type/orientation preserving isomorphism with optional vertex lists
std::optional<VertexMapping> backtrack_list_iso(const Multigraph& g, const Multigraph& h,
                                                const IsoOptions& opt = {});

// visits every vertex bijection that extends to an isomorphism; return false to stop
void backtrack_all_isos(const Multigraph& g, const Multigraph& h, const IsoOptions& opt,
                        const std::function<bool(const std::vector<int>&)>& visit);

// every half-edge bijection over a vertex bijection; return false to stop
void lift_vertex_map(const Multigraph& g, const Multigraph& h, const std::vector<int>& vmap,
                     const std::function<bool(const std::vector<int>&)>& visit);

std::optional<std::vector<int>> lift_one(const Multigraph& g, const Multigraph& h,
                                         const std::vector<int>& vmap);

bool isomorphic(const Multigraph& g, const Multigraph& h, int max_vertices = 0);

// a group element acting on one graph
struct Automorphism {
    std::vector<int> vmap, hmap;
    bool operator==(const Automorphism&) const = default;
};
using PermutationGroup = std::vector<Automorphism>;

}  // namespace rcover

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "rcover/multigraph.hpp"

namespace rcover {

// Rotation system of the underlying simple graph (loops, parallel copies and stubs
// dropped): per vertex the neighbours in clockwise order.
struct RotationSystem {
    std::vector<std::vector<int>> rot;
    int faces = 0;
};

std::optional<RotationSystem> planar_embedding(const Multigraph& g);
bool is_planar(const Multigraph& g);
// underlying simple graph, at least 4 vertices
bool is_3connected(const Multigraph& g);
// no parallel edges between distinct vertices
bool is_simple_core(const Multigraph& g);

struct Misuse : std::logic_error {
    using std::logic_error::logic_error;
};

// Every automorphism of a 3-connected planar graph; stubs (pendant edges, loops,
// half-edges) act as vertex labels. Throws Misuse otherwise.
PermutationGroup aut_3conn_planar(const Multigraph& g);

// lists: per vertex of g the allowed images in h (absent = no restriction)
std::optional<VertexMapping> list_iso_3conn_planar(
    const Multigraph& g, const Multigraph& h,
    const std::vector<std::vector<int>>* lists = nullptr);

// Aut by the angle method when g is 3-connected planar and simple, else by
// bounded backtracking.
PermutationGroup automorphisms(const Multigraph& g, int max_vertices = 64);

bool semiregular_element(const Multigraph& g, const Automorphism& a);
std::vector<PermutationGroup> semiregular_subgroups(const Multigraph& g);

// quotients of a halvable proper atom by its semiregular involutions swapping u and v,
// pairwise non-isomorphic
std::vector<Multigraph> proper_atom_half_quotients(const Multigraph& a, int u, int v);

}  // namespace rcover

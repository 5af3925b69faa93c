#pragma once

#include <optional>
#include <vector>

#include "rcover/multigraph.hpp"

// Brute-force reference implementations. Independent of the reduction pipeline:
// only the Multigraph model and backtrack_list_iso are shared.
namespace rcover::oracle {

struct Limits {
    int max_vertices = 12;
    std::size_t max_elements = 200000;  // automorphisms listed before refusing
};

PermutationGroup aut_bruteforce(const Multigraph& g, const Limits& lim = {});

// the predicate on a single non-identity element
bool semiregular_element(const Multigraph& g, const Automorphism& a);

std::vector<PermutationGroup> semiregular_subgroups_bruteforce(const Multigraph& g,
                                                               const Limits& lim = {});

Multigraph quotient(const Multigraph& g, const PermutationGroup& group);

struct Certificate {
    PermutationGroup group;
    VertexMapping iso;  // quotient(g, group) -> h
};

std::optional<Certificate> regular_cover_bruteforce(const Multigraph& g, const Multigraph& h,
                                                    const Limits& lim = {});

std::vector<Multigraph> quotient_set_bruteforce(const Multigraph& g, const Limits& lim = {});

// Number of pairwise non-isomorphic quotients of a dipole (two vertices joined by
// parallel halvable edges, class sizes given) by involutions swapping its ends.
// Enumerates the involutions on the edges explicitly.
int dipole_involution_quotients(const std::vector<int>& class_sizes);

}  // namespace rcover::oracle

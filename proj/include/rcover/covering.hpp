#pragma once

#include <string>
#include <vector>

#include "rcover/multigraph.hpp"

namespace rcover {

struct CoveringProjection {
    std::vector<int> half_edge_map;  // H(G) -> H(H)
    std::vector<int> vertex_map;     // V(G) -> V(H)
};

struct NotSemiregular : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// empty string when semiregular, otherwise a description of a violating stabilizer
std::string semiregularity_violation(const Multigraph& g, const PermutationGroup& group);

struct Quotient {
    Multigraph graph;
    CoveringProjection projection;
};

// throws NotSemiregular
Quotient quotient(const Multigraph& g, const PermutationGroup& group);

enum class CoverKind { NotCovering, Covering, RegularCovering };

struct CoverReport {
    CoverKind kind = CoverKind::NotCovering;
    int k = 0;
    std::size_t theta_order = 0;  // capped at k + 1
    std::string why;
};

// projection given by its half-edge map; the vertex map is derived
CoverReport verify_covering(const Multigraph& g, const Multigraph& h,
                            const std::vector<int>& half_edge_map);

struct CheckResult {
    bool ok = false;
    std::string why;
    explicit operator bool() const { return ok; }
};

// Γ closed, made of automorphisms, semiregular, and iso : G/Γ -> H an isomorphism
CheckResult certificate_check(const Multigraph& g, const Multigraph& h,
                              const PermutationGroup& group, const VertexMapping& iso);

// composite G -> G/Γ -> H
std::vector<int> certificate_projection(const Multigraph& g, const PermutationGroup& group,
                                        const VertexMapping& iso);

bool is_automorphism(const Multigraph& g, const Automorphism& a);
bool is_isomorphism(const Multigraph& g, const Multigraph& h, const VertexMapping& m);

// file formats
std::string write_mapping(const std::vector<int>& half_edge_map);
std::vector<int> parse_mapping(const std::string& text);
std::string write_certificate(const PermutationGroup& group, const VertexMapping& iso);
void parse_certificate(const std::string& text, const Multigraph& g, PermutationGroup& group,
                       VertexMapping& iso);

}  // namespace rcover

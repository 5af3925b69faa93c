#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcover/covering.hpp"
#include "rcover/reduction.hpp"

namespace rcover {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ExpansionStats {
    long list_star_calls = 0;
    long star_combinations = 0;
    long list_reductions = 0;
    long subgroups = 0;           // semiregular subgroups of the primitive graph tried
    long quotient_classes = 0;    // non-isomorphic reduced quotients among them
    long expandable = 0;          // classes passing the list test
    long certificate_leaves = 0;  // complete extensions built
    long unconfirmed = 0;         // expandable classes without a certificate
    long list_misses = 0;         // certificates found for classes failing the list test
};

// left i may take right j when ok[i][j]; returns left -> right
std::optional<std::vector<int>> bipartite_perfect_matching(const std::vector<std::vector<char>>& ok);

// a star-atom list test that involves dipole half-quotients, reported after it ran
struct StarQuery {
    const std::vector<std::vector<std::vector<Sym>>>& items;  // per pendant element: its expansions
    std::vector<Sym> fixed;                                     // stubs of the candidate besides dipoles
    std::vector<std::vector<Sym>> dipoles;                      // flattened links of each dipole half
    bool admitted = false;
};
using StarObserver = std::function<void(const StarQuery&)>;

// Reductions of H with lists against a catalog filled from G.
class ListReducer {
   public:
    ListReducer(const Catalog& cat, ExpansionStats& stats, long budget);

    // H as a concrete graph with singleton lists (closure applied)
    WGraph with_lists(const Multigraph& normalized) const;

    // possible link symbols (oriented along a.boundary) of a 2-boundary atom
    std::vector<Sym> link_members(const WGraph& w, const Atom& a) const;
    std::vector<Sym> list_nonstar(const WGraph& w, const Atom& a) const;
    std::vector<Sym> list_star(const WGraph& w, const Atom& a);

    struct Result {
        WGraph w;
        Center center;
        int levels = 0;
    };
    Result reduce_with_lists(const WGraph& h, const Center& core);

    // every core position of H, blocks first
    std::vector<Center> cores(const WGraph& h) const;
    // R_t ⋉ H_s for some core
    bool test_expandable(const WGraph& h_s, const WGraph& h);

    StarObserver observer;

   private:
    const Catalog& cat_;
    ExpansionStats& stats_;
    long budget_;
    std::vector<std::pair<Sym, Sym>> rules_;

    void close(std::vector<Sym>& list) const;
    bool group_test(bool links, const std::vector<std::vector<Sym>>& src, const std::vector<Sym>& tgt);
    MatchOptions flat_options();
    std::vector<std::vector<Sym>> expand(const Sym& s) const;
    bool decompose(const std::vector<std::vector<std::vector<Sym>>>& items, const std::vector<Sym>& target);
};

enum class Verdict { Yes, No, Refused, NotApplicable };
const char* to_string(Verdict v);

struct CoverOptions {
    long budget = 1L << 22;           // star combinations and certificate leaves
    int max_nonplanar_vertices = 16;  // non-planar G above this is refused
    StarObserver star_observer;
};

struct CoverResult {
    Verdict verdict = Verdict::No;
    int k = 0;
    PermutationGroup group;  // on G
    VertexMapping iso;       // G/group -> H
    std::string why;
    std::string route;
    ExpansionStats stats;
};

CoverResult regular_cover(const Multigraph& g, const Multigraph& h, const CoverOptions& o = {});

// polynomial special cases: 3-connected G, 2-connected H, odd k
CoverResult fast_paths(const Multigraph& g, const Multigraph& h, const CoverOptions& o = {});

struct QuotientItem {
    Multigraph h;
    PermutationGroup group;
};

// every regular quotient; with dedup only one per isomorphism class. visit returns false to stop
void enumerate_quotients(const Multigraph& g, bool dedup,
                         const std::function<bool(const QuotientItem&)>& visit,
                         const CoverOptions& o = {});

}  // namespace rcover

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rcover/decomposition.hpp"

namespace rcover {

// catalog colours start here; input edge colours stay below
constexpr int kCatalogBase = 1 << 20;

enum class Origin : std::uint8_t { Graph, Form, Quotient };

// automorphism of a WGraph over global ids (-1 where dead); flip: a link goes to its
// image with a and b exchanged
struct WAut {
    std::vector<int> v, e;
    std::vector<char> flip;
    bool operator==(const WAut&) const = default;
};

WAut identity_of(const WGraph& w);
WAut compose(const WAut& a, const WAut& b);  // a after b
bool is_identity(const WGraph& w, const WAut& a);
// no live vertex fixed, fixed links only flipped and halvable
bool semiregular(const WGraph& w, const WAut& a);

// every automorphism of the live graph; the angle method is used for simple
// 3-connected planar graphs
std::vector<WAut> automorphisms(const WGraph& w);
std::vector<std::vector<WAut>> semiregular_subgroups(const WGraph& w, int order = 0);

struct WQuotient {
    WGraph g;
    std::vector<int> vertex_orbit, elem_orbit;  // global id -> quotient id (-1 dead)
};
// semiregular involutions of an atom representative exchanging boundary vertices 0 and 1
std::vector<WAut> boundary_involutions(const WGraph& rep);

// orbit graph of a semiregular group given element-wise
WQuotient quotient_w(const WGraph& w, const std::vector<WAut>& group);

// u and v identified (boundary 0 and 1 of an atom representative)
WGraph loop_quotient(const WGraph& rep);

// a pendant piece rooted at vertex 0 reduced as far as possible
struct Form {
    enum Kind { Loop, Half } kind = Loop;
    WGraph raw;
    WGraph reduced;  // compact, root = vertex 0
    bool block_shaped = false;
    std::optional<Sym> single;  // flat form: K1 with exactly this stub
};

struct Entry {
    int color = 0;
    AtomKind kind = AtomKind::Star;
    SymType sym = SymType::Asymmetric;
    Ty ty = Ty::Undirected;
    Origin origin = Origin::Graph;
    bool realized = false;  // met in a reduction of G
    int level = -1;
    WGraph rep;              // boundary first
    std::vector<Sym> flat;   // stars: stubs, dipoles: links oriented 0 -> 1 (sorted)
    long hv2 = 0, he2 = 0;
    std::vector<Form> forms;  // realized proper atoms: loop form, then half forms

    bool two_boundary() const { return kind == AtomKind::Proper || kind == AtomKind::Dipole; }
    Sym symbol(int orient = 1) const;
};

struct Sizes {
    long hv2 = 0, he2 = 0;
    bool operator==(const Sizes&) const = default;
};

class Catalog {
   public:
    // symbol of the element replacing a concrete atom, oriented along a.boundary
    Sym add(const WGraph& w, const Atom& a, Origin origin, int level = -1);
    bool has(int color) const { return color >= kCatalogBase && color - kCatalogBase < size(); }
    const Entry& entry(int color) const { return entries_.at(color - kCatalogBase); }
    int size() const { return static_cast<int>(entries_.size()); }
    const std::vector<Entry>& entries() const { return entries_; }

    Sizes sizes(const Sym& s) const;
    // stars inside stars and loops of dipoles opened up
    std::vector<Sym> flatten_stubs(const std::vector<Sym>& stubs) const;
    // dipole links opened up; links oriented along the same pair
    std::vector<Sym> flatten_links(const std::vector<Sym>& links) const;
    // rules "x in a list implies y": flat forms with a single stub
    std::vector<std::pair<Sym, Sym>> closure_rules() const;

    std::string dump() const;

   private:
    std::vector<Entry> entries_;
    std::optional<std::pair<int, int>> find(const WGraph& w, const Atom& a,
                                            const std::vector<Sym>& flat, int level) const;
    void realize(int idx);
};

// half-quotients of a dipole with the given links (oriented 0 -> 1) as stub multisets;
// empty when the dipole is not halvable
std::vector<std::vector<Sym>> dipole_half_patterns(const std::vector<Sym>& links);
long dipole_half_count(const std::vector<Sym>& links);
std::vector<Sym> dipole_loop_pattern(const std::vector<Sym>& links);

struct ReductionStep {
    Atom atom;
    int elem = -1;  // replacing element
    Sym sym;
};

struct ReductionSeries {
    WGraph w;  // every level; replaced pieces stay as dead entries
    Center center;
    int root = -1;
    std::vector<std::vector<ReductionStep>> levels;
    std::vector<int> elem_born, elem_died, vert_died;  // level ranges
    int r() const { return static_cast<int>(levels.size()); }
    bool alive_at(int elem, int level) const {
        return elem_born[elem] <= level && level < elem_died[elem];
    }
    bool vertex_alive_at(int u, int level) const { return level < vert_died[u]; }
    std::string describe() const;
};

struct ReduceOptions {
    std::optional<Center> center;  // default: tree center, or around the root
    int root = -1;
    Origin origin = Origin::Graph;
};

// centre around a root: its block if it lies in exactly one, else the root itself
Center rooted_center(const WGraph& w, int root);

ReductionSeries reduce(const WGraph& w, Catalog& cat, const ReduceOptions& o = {});
ReductionSeries reduction_series(const Multigraph& normalized, Catalog& cat);

// compact copy of the live part with the given vertices first
WGraph compact(const WGraph& w, const std::vector<int>& first = {}, std::vector<int>* vmap = nullptr);

}  // namespace rcover

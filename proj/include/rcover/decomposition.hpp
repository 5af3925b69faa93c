#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rcover/multigraph.hpp"

namespace rcover {

// ---------------------------------------------------------------- reduced graphs
//
// Reductions work on a "weighted" graph: vertices plus elements. An element is a
// link between two vertices or a stub at one vertex (pendant edge, loop, standalone
// half-edge, or a reduced pendant block). Each element carries a label list; on the
// G side every list has exactly one member.

enum class SymKind : std::uint8_t { Link, Pendant, Loop, Half };
enum class Ty : std::uint8_t { Halvable, Undirected, Directed };

struct Sym {
    SymKind kind = SymKind::Link;
    int color = 0;
    Ty ty = Ty::Halvable;
    std::int8_t orient = 0;  // links only: +1 a->b, -1 b->a
    auto operator<=>(const Sym&) const = default;
    Sym reversed() const {
        Sym s = *this;
        s.orient = static_cast<std::int8_t>(-orient);
        return s;
    }
};

std::string to_string(const Sym& s);

struct Elem {
    int a = -1, b = -1;  // b < 0: stub at a
    std::vector<Sym> list;  // candidate symbols; concrete elements hold one
    long hv2 = 0, he2 = 2;  // doubled expanded interior vertex / edge counts
    bool alive = true;
    bool is_link() const { return b >= 0; }
    const Sym& sym() const { return list.front(); }
};

struct WGraph {
    std::vector<int> vcolor;
    std::vector<char> valive;
    std::vector<Elem> elems;

    int add_vertex(int color = 0);
    int add_link(int a, int b, const Sym& s, long hv2 = 0, long he2 = 2);
    int add_stub(int a, const Sym& s, long hv2 = 0, long he2 = 2);
    int num_vertices() const { return static_cast<int>(vcolor.size()); }
    int num_elems() const { return static_cast<int>(elems.size()); }
    std::vector<int> live_vertices() const;
    std::vector<int> live_elems() const;
    // per vertex: live element ids (loops/stubs once, links once at each end)
    std::vector<std::vector<int>> incidence() const;
    void kill_vertex(int u) { valive[u] = 0; }
    void kill_elem(int e) { elems[e].alive = false; }
};

struct Lifted {
    WGraph w;
    // element -> half-edges of the source graph: links (at a, at b), loops (two),
    // pendants (attached, free), halves (one)
    std::vector<std::vector<int>> half_edges;
};

Ty ty_of(EdgeType t);
Lifted to_wgraph(const Multigraph& g);
// concrete graph back to a multigraph (stubs of any symbol become edges/loops/halves);
// symbols are encoded as edge colors via `code` when given
struct Flattened {
    Multigraph g;
    std::vector<int> vertex_of;               // multigraph vertex -> WGraph vertex
    std::vector<int> vertex_id;               // WGraph vertex -> multigraph vertex (-1 dead)
    std::vector<int> elem_of;                 // multigraph half-edge -> WGraph element
    std::vector<std::vector<int>> half_edges; // WGraph element -> half-edges (as in Lifted)
};
Flattened to_multigraph(const WGraph& w, const std::function<int(const Sym&)>& code = nullptr);

// standalone copy of a piece: verts in the given order, the listed elements
WGraph extract(const WGraph& w, const std::vector<int>& verts, const std::vector<int>& elems,
               std::vector<int>* elem_map = nullptr);

// ---------------------------------------------------------------- block tree

struct Center {
    enum Kind { Block, Vertex } kind = Vertex;
    std::vector<int> vertices;  // Block: its vertex set; Vertex: {x}
    bool operator==(const Center&) const = default;
};

struct BlockTree {
    // link blocks (2-connected components over links, bridges included)
    std::vector<std::vector<int>> block_vertices, block_links;
    std::vector<std::vector<int>> blocks_at;  // per vertex
    std::vector<std::vector<int>> stubs_at;   // per vertex
    Center center;
    int center_block = -1;  // index when center.kind == Block
    // rooted at the center
    std::vector<int> parent_vertex;  // per block: articulation towards the center, -1 at the center
    std::vector<int> parent_block;   // per vertex: block towards the center, -1 if none
};

// tree center of the block tree with stubs as leaf blocks
BlockTree build_block_tree(const WGraph& w);
// the same with a designated center (block containing the given vertex set, or a vertex)
BlockTree build_block_tree(const WGraph& w, const Center& c);
std::string dump_block_tree(const BlockTree& t);

// ---------------------------------------------------------------- atoms

enum class AtomKind : std::uint8_t { Star, NonStar, Proper, Dipole };
enum class SymType : std::uint8_t { Halvable, Symmetric, Asymmetric };

struct Atom {
    AtomKind kind = AtomKind::Star;
    std::vector<int> boundary;  // 1 vertex (block atoms) or 2 (proper, dipole)
    std::vector<int> interior;  // sorted vertex ids
    std::vector<int> elems;     // sorted element ids
};

struct AtomOptions {
    int root = -1;  // rooted mode: this vertex counts as attached outside and is never interior
};

std::vector<Atom> find_atoms(const WGraph& w, const BlockTree& t, const AtomOptions& o = {});

enum class Primitive { ThreeConnected, Cycle, K2, K1, NotPrimitive };
Primitive is_primitive(const WGraph& w, const BlockTree& t, const AtomOptions& o = {});
const char* to_string(Primitive p);

// ---------------------------------------------------------------- matching
//
// A pattern is a piece of a WGraph: local vertices (boundary first, pinned), and the
// elements among them. Matching a source pattern (lists allowed) onto a concrete target
// finds a vertex bijection and element bijection under which each source list holds
// the target's symbol (orientation-adjusted) and sizes agree.

struct Pattern {
    const WGraph* g = nullptr;
    std::vector<int> verts;  // local -> global vertex
    int pinned = 0;          // verts[0..pinned) map to the target's verts[0..pinned)
    std::vector<int> elems;  // global element ids; links among verts, stubs at verts
};

Pattern pattern_of(const WGraph& w, const Atom& a);
Pattern pattern_whole(const WGraph& w, const std::vector<int>& pinned = {});

struct MatchResult {
    std::vector<int> vmap;  // local source vertex -> local target vertex
    std::vector<int> emap;  // index in source.elems -> index in target.elems
};

// Compares a whole group of source elements (the stubs at one vertex, or the links
// between one vertex pair) against the corresponding target group. Source lists and
// target symbols arrive oriented along the mapped pair. Used when groups need not
// correspond element by element; results then carry no element map.
using GroupTest = std::function<bool(bool links, const std::vector<std::vector<Sym>>& src,
                                     const std::vector<Sym>& tgt)>;

struct MatchOptions {
    bool check_sizes = true;
    bool all_element_maps = false;  // enumerate every element bijection per vertex map
    bool pin_swap = false;          // map pinned 0,1 to target 1,0
    std::size_t limit = 0;          // stop after this many results (0 = unlimited)
    GroupTest group;                // optional; group sizes are then compared as sums
};

// visit returns false to stop
void match_patterns(const Pattern& src, const Pattern& tgt, const MatchOptions& o,
                    const std::function<bool(const MatchResult&)>& visit);
std::optional<MatchResult> match_one(const Pattern& src, const Pattern& tgt,
                                     const MatchOptions& o = {});

// the source list holds the target's symbol (links: as seen through the map)
bool member_compatible(const Elem& src, const Elem& tgt, bool reversed, bool check_sizes = true);

SymType dipole_symmetry_type(const std::vector<Sym>& links);  // oriented 0 -> 1

}  // namespace rcover

#pragma once

#include "pearl/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pearl {

// Combinatorial types of stable treed strips and treed disks.  A type is a
// labeled metric forest: vertices are components, finite edges are nodes
// (boundary nodes carry a length in [0,inf], interior nodes carry none),
// semi-infinite edges are markings.

enum class VKind { strip, disk, sphere };
enum class NKind { boundary, interior };
enum class DTag { none, D, D0, D1 };
enum class BRole { incoming, outgoing, ordered };  // z-, z+, x_i

struct Vertex {
    int id = 0;
    VKind kind = VKind::disk;
};

struct Edge {
    int id = 0;
    int a = 0, b = 0;
    NKind node = NKind::boundary;
    std::optional<Length> len;  // present iff node == boundary
    // Which boundary arc of the strip the node sits on (0 or 1).  Present
    // on boundary edges off the chain in strip types, absent otherwise.
    std::optional<int> side;
};

struct Marking {
    int id = 0;
    int vertex = 0;
    bool interior = true;
    // interior markings: label in 1..n plus a divisor tag;
    // boundary markings: a role, and for x_i an order index in 1..k.
    int label = 0;
    DTag tag = DTag::none;
    BRole role = BRole::ordered;
    std::optional<int> side;  // ordered boundary markings on strip vertices
};

// Overall kind of a connected type.
enum class TKind { strip, disk, sphere };

struct CombType {
    std::vector<Vertex> vertices;
    std::vector<Edge> edges;
    std::vector<Marking> markings;
    // Strip chains ordered z- to z+, one per strip component.  Connected
    // strip types have exactly one; forests produced by cutting edges may
    // carry several.
    std::vector<std::vector<int>> chains;

    TKind kind() const;

    const Vertex* find_vertex(int id) const;
    const Edge* find_edge(int id) const;
    const Marking* find_marking(int id) const;
    Vertex* find_vertex(int id);
    Edge* find_edge(int id);
    Marking* find_marking(int id);

    int fresh_vertex_id() const;
    int fresh_edge_id() const;
    int fresh_marking_id() const;

    std::vector<const Edge*> edges_at(int vertex) const;
    std::vector<const Marking*> markings_at(int vertex) const;

    int interior_marking_count() const;

    // (chain index, position) for a strip vertex on some chain.
    std::optional<std::pair<int, int>> chain_position(int vertex) const;

    bool is_chain_edge(const Edge& e) const;

    // Connected components as lists of vertex ids.
    std::vector<std::vector<int>> components() const;

    // For a vertex on a bubble tree in a strip type, the side b of the
    // boundary arc the tree hangs on; nullopt for chain vertices and for
    // sphere trees attached at strip interior points.
    std::optional<int> tree_side(int vertex) const;
};

// Structural validation; every violation is named.  An empty result means
// the type is well-formed.
std::vector<std::string> validate(const CombType& t);

bool vertex_is_stable(const CombType& t, int vertex);

// Stability of the whole type.  Throws on invalid input.
bool is_stable(const CombType& t);

// Bare strip: single strip vertex carrying only z- and z+ (the minimal
// trajectory domain, which is itself unstable as a marked disk).
bool is_bare_strip(const CombType& t);

// Forgets the marking with the given id and iteratively collapses the
// components that become unstable, summing or forgetting edge metrics.
// Forgetting z- or z+ is an error.
CombType forget_tail(const CombType& t, int marking_id);

// Canonical byte string: equal iff the types are isomorphic as labeled
// metric forests (respecting marking labels, vertex kinds, edge kinds,
// sides and exact lengths).
std::string canonical_form(const CombType& t);

// All stable connected types up to isomorphism with at most max_vertices
// vertices and n labeled interior markings, lengths abstracted to the
// class representatives {0, 1, inf}.
std::vector<CombType> enumerate_types(int n, int max_vertices, TKind kind);

// Replaces every finite positive length by 1 (the class representative).
CombType abstract_lengths(const CombType& t);

// Splits a forest into its connected pieces, each a standalone type.
std::vector<CombType> split_components(const CombType& t);

namespace detail {
int special_count(const CombType& t, int vertex);
// Renumbers interior labels (1..n) and ordered boundary indices (1..k)
// preserving order, independently in each connected component.
void renumber_markings(CombType& t);
}  // namespace detail

}  // namespace pearl

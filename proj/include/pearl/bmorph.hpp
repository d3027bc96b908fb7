#pragma once

#include "pearl/combtype.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pearl {

// The four elementary morphisms on combinatorial types, the stratification
// partial order, stratum and gluing-parameter dimensions, and the
// orientation sign conventions for chain-adjacent degenerations.

enum class MorphKind { cut_edge, collapse_edge, make_finite, make_nonzero, forget_tail };

struct BMorphism {
    MorphKind kind;
    CombType source;
    CombType target;
    int witness = 0;  // edge or marking id acted on
};

// Cuts an interior-node edge, or a boundary edge of infinite length, into a
// pair of semi-infinite edges.  The result is a two-component forest; each
// piece is renumbered as a standalone type.
CombType cut_edge(const CombType& t, int edge_id);

// Merges the endpoints of a zero-length boundary edge.
CombType collapse_edge(const CombType& t, int edge_id);

// Moves a length between the classes {0}, (0,inf), {inf}; the finite class
// representative is 1.
CombType make_finite(const CombType& t, int edge_id);
CombType make_nonzero(const CombType& t, int edge_id);

// Inverse of cut_edge: identifies two semi-infinite edges, rebuilding the
// node.  Boundary tails glue to a boundary node of the given length,
// interior tails to an interior node.
CombType glue_at(const CombType& t1, int marking1, const CombType& t2, int marking2,
                 std::optional<Length> len);

// True iff a is obtainable from b by a finite sequence of collapse_edge /
// make_finite / make_nonzero, up to isomorphism (lengths abstracted to
// their classes).  Reflexive; "a <= b" orders less degenerate strata first.
bool stratum_leq(const CombType& a, const CombType& b);

// Dimension of the stratum: per-vertex configuration dimensions plus one
// parameter per boundary edge of finite positive length.
int dim_stratum(const CombType& t);

// Real dimension of the gluing parameter space: one per boundary node, two
// per interior node.
int gluing_dim(const CombType& t);

// Orientation sign of the chain-adjacent degeneration at edge e:
// +1 for strip breaking and for disk bubbles on the b=0 boundary,
// -1 for disk bubbles on the b=1 boundary.  Restricted to the cases with
// at most two strip components and at most one finite positive length.
int collapse_sign(const CombType& t, int edge_id);

// One codimension-one degeneration of t: the boundary stratum type, the
// elementary morphism recovering t, and the sign where defined.
struct Degeneration {
    BMorphism morphism;
    std::optional<int> sign;
};

// All codimension-one boundary strata of the closure of the stratum of t:
// every finite positive length pushed to 0 or to infinity, and every way of
// splitting a vertex along a new zero-length boundary node.  Deduplicated
// up to isomorphism.
std::vector<Degeneration> codim_one_degenerations(const CombType& t);

// Reconstructs target from (kind, source, witness) and checks it matches.
bool morphism_is_consistent(const BMorphism& m);

}  // namespace pearl

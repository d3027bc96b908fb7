#pragma once

#include "pearl/combtype.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace pearl {

// Combinatorial types labeled with homotopy-class, energy, index and
// tangency data, the adaptedness and uncrowdedness predicates, and the
// classification of index-two boundary types.

// Homotopy classes are modeled as a finitely generated free abelian group;
// only additivity and pairings are ever used.
using ClassVector = std::vector<long long>;

ClassVector class_add(const ClassVector& x, const ClassVector& y);
bool class_is_zero(const ClassVector& x);

struct VertexLabel {
    ClassVector class_id;
    Rational energy = 0;   // symplectic area, >= 0
    int index_contrib = 0; // Fredholm contribution, additive over components
    bool in_divisor = false;

    bool ghost() const { return energy == 0; }
};

// Tangency orders at contact edges: a single order at a marking, a pair of
// orders on the two sides of a node.
struct Contact {
    int d_plus = 1;
    int d_minus = 0;  // 0 for markings
    bool is_node() const { return d_minus > 0; }
};

struct LabeledType {
    CombType base;
    std::map<int, VertexLabel> labels;         // vertex id -> label
    std::map<int, Contact> marking_contacts;   // marking id -> tangency
    std::map<int, Contact> node_contacts;      // edge id -> tangency pair
    std::string x_plus, x_minus;               // endpoint ids for strip types

    Rational total_energy() const;
    ClassVector total_class() const;
};

// Structural checks for the label layer (every vertex labeled, ghosts carry
// the zero class, energies nonnegative).
std::vector<std::string> validate_labels(const LabeledType& t);

// Fredholm index of the type: sum of the per-vertex contributions.
int index(const LabeledType& t);

// Each maximal connected ghost subforest carries at most one interior
// marking.
bool is_uncrowded(const LabeledType& t);

// The adaptedness axioms, checked combinatorially: stable base, no
// non-constant sphere inside the divisor, every interior marking tagged and
// with a contact degree, every divisor-touching vertex has a contact
// marking.
std::vector<std::string> is_adapted(const LabeledType& t);

// Per-part energy quota n(part)/C(k) with C(k) = c0 + c1 k; parts are the
// components after cutting boundary edges of positive length.
struct QuotaViolation {
    std::vector<int> part_vertices;
    Rational energy;
    Rational quota;
};
std::vector<QuotaViolation> energy_quota_check(const LabeledType& t, long long k,
                                               const Rational& c0, const Rational& c1);

// Classification of an index-two type as a boundary stratum.
enum class BoundaryClass { fake, true_strip_breaking, true_disk_bubble, not_boundary };
struct Index2Class {
    BoundaryClass cls;
    int bubble_side = -1;  // for true_disk_bubble
};
Index2Class classify_index2_boundary(const LabeledType& t);

// Label-aware collapse/cut: the base morphism plus induced labels.
LabeledType collapse_edge(const LabeledType& t, int edge_id);
LabeledType cut_edge(const LabeledType& t, int edge_id);

}  // namespace pearl

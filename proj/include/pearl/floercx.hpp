#pragma once

#include "pearl/adapted.hpp"
#include "pearl/novikov.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pearl {

// The Floer cochain complex over the Novikov field: the coboundary operator
// built from trajectory datasets, one-dimensional cell complexes with
// rational fundamental classes, the fake-boundary and involution
// cancellations, the d^2 = 0 verification and open-disk counts.

struct IntersectionPoint {
    std::string id;
    int degree = 0;  // in Z_N
};

struct TrajectoryRecord {
    LabeledType type;
    std::string x_plus, x_minus;
    Rational energy = 0;
    int sign = 1;                     // eps in {-1,+1}
    std::array<int, 3> marks{0, 0, 0};  // (n, n0, n1)
};

// sigma = 1/(n! n0! n1!)
Rational sigma_weight(const std::array<int, 3>& marks);
Int marks_factorial(const std::array<int, 3>& marks);

struct ZeroCell {
    std::string id;
    LabeledType type;  // index two
    int sign = 1;
    std::array<int, 3> marks{0, 0, 0};
    Rational energy = 0;
    std::string x_plus, x_minus;
    std::optional<std::string> via;  // middle point of a broken trajectory
    std::optional<std::string> fake_partner;
    std::optional<Int> fiber_order;  // tagged n_b! on the forgetful cover
    std::optional<std::string> involution_partner;
    bool isolated = false;
};

struct OneCell {
    std::string id;
    std::array<int, 3> marks{0, 0, 0};  // weight (|Gamma|!)^-1
    // Either empty (circle component) or two (cell id, +-1) endpoints.
    std::vector<std::pair<std::string, int>> endpoints;
};

struct CellComplex1D {
    std::vector<ZeroCell> zero;
    std::vector<OneCell> one;
};

std::vector<std::string> validate_cells(const CellComplex1D& cc);

// Sparse matrix of the coboundary operator; entry (x_minus, x_plus).
class CoboundaryMatrix {
public:
    CoboundaryMatrix() = default;
    CoboundaryMatrix(std::vector<std::string> points, std::optional<Rational> cutoff)
        : points_(std::move(points)), cutoff_(std::move(cutoff))
    {
    }

    void add(const std::string& x_minus, const std::string& x_plus, const Novikov& v);
    Novikov entry(const std::string& x_minus, const std::string& x_plus) const;
    const std::map<std::pair<std::string, std::string>, Novikov>& entries() const
    {
        return entries_;
    }
    const std::vector<std::string>& points() const { return points_; }
    const std::optional<Rational>& cutoff() const { return cutoff_; }

    CoboundaryMatrix compose(const CoboundaryMatrix& inner) const;

private:
    std::vector<std::string> points_;
    std::optional<Rational> cutoff_;
    std::map<std::pair<std::string, std::string>, Novikov> entries_;
};

// Coboundary from an index-one trajectory dataset; every entry carries the
// cutoff.  Errors on wrong index, unknown endpoints, energy >= cutoff, or a
// record energy disagreeing with its type.
CoboundaryMatrix coboundary(const std::vector<IntersectionPoint>& points,
                            const std::vector<TrajectoryRecord>& records,
                            std::optional<Rational> cutoff);

// Entries must shift the degree by `shift` mod N.
std::vector<std::string> degree_check(const CoboundaryMatrix& m,
                                      const std::vector<IntersectionPoint>& points,
                                      int grading_n, int shift);

struct Concatenation {
    TrajectoryRecord record;
    Int multiplicity;  // (|G1|+|G2|)! / |G1|!|G2|! per mark slot
};
Concatenation concatenate(const TrajectoryRecord& u1, const TrajectoryRecord& u2);

// Signed rational 0-chain on the 0-skeleton.
using Chain = std::map<std::string, Rational>;

// delta of the rational fundamental class: weighted signed endpoints of all
// one-cells collected per zero-cell.
Chain fundamental_class(const CellComplex1D& cc);

struct CancelResidue {
    std::string cell, partner;
    Rational residue;
    std::string reason;
};

struct CancelResult {
    Chain chain;
    std::vector<CancelResidue> residues;
};

// Removes the fake-boundary pairs, verifying (|G+|!)^-1 fiber = (|G-|!)^-1
// and that the chain coefficients cancel.  Unpaired fake cells are errors.
CancelResult cancel_fake(const Chain& chain, const CellComplex1D& cc);

// Removes involution-paired disk-bubble cells, verifying opposite signs and
// equal weights and energies.  A fixed point of the pairing is an error.
CancelResult involution_cancel(const Chain& chain, const CellComplex1D& cc);

struct D2Report {
    bool d_squared_zero = false;
    std::vector<std::string> nonzero_entries;
    std::vector<std::string> degree_violations;
    std::vector<std::string> cell_violations;
    std::vector<CancelResidue> fake_residues;
    std::vector<CancelResidue> involution_residues;
    std::vector<std::string> concat_mismatches;
    bool ok() const
    {
        return d_squared_zero && degree_violations.empty() && cell_violations.empty() &&
               fake_residues.empty() && involution_residues.empty() &&
               concat_mismatches.empty();
    }
};

// Full verification: d^2 = 0 over Novikov, and the surviving strip-breaking
// chain matches the multiset of concatenations u1 # u2 with weights
// eps sigma q^E, up to the concatenation multiplicity.
D2Report verify_d_squared(const std::vector<IntersectionPoint>& points,
                          const std::vector<TrajectoryRecord>& records,
                          const CellComplex1D& cells, int grading_n, int shift,
                          std::optional<Rational> cutoff);

struct DiskCountRecord {
    LabeledType type;  // disk type, k = 0, index three
    Rational count;    // signed point count of the stratum
};

// N = (1/n(beta)!) sum of counts over types in class beta.
Rational open_gw_count(const std::vector<DiskCountRecord>& data, bool boundary_nonzero);

}  // namespace pearl

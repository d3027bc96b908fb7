#pragma once

#include "pearl/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pearl {

// Exact arithmetic behind the stabilizing-divisor degree bounds: the k_m
// multiplier in the rational and irrational cases, holonomy-class
// normalization, the weak-stabilization constants, intersection-number
// identities and sufficient-degree checks.

// Presentation of H_1(L) = Z^N + torsion with the boundary-image data.
// The basis e_1..e_N of the free part is chosen so that {n_i e_i, i <= M}
// spans the image of the boundary map; area_i is the symplectic area of a
// class with boundary n_i e_i, written p + m*e with e the distinguished
// (possibly irrational) period.
struct BoundaryClassDatum {
    Int n = 1;           // n_i >= 1
    Rational area_p = 0; // rational part
    Rational area_m = 0; // coefficient of the irrational unit e
};

struct LatticePresentation {
    int rank_n = 0;  // N
    Int torsion = 1; // t_0 = |Tor H_1(L)|
    std::vector<BoundaryClassDatum> boundary; // entries 1..M
    Int m0 = 1;      // minimal integer with m0 [omega] integral
    std::vector<Rational> alpha;  // values of [alpha_tau] on e_1..e_N
    bool irrational_mode = false; // e rational vs e irrational

    std::vector<std::string> check() const;
};

struct KmRational {
    Int k_prime;
    Int k_second;
    Int k_m;
    std::vector<Rational> residues;       // r_i in [0,1)
    std::vector<Rational> adjusted_alpha; // zero on e_1..e_M
    std::vector<Rational> shift;          // the applied integer class
};
KmRational km_rational(const LatticePresentation& p);

// f = t0 k e - ceil(t0 k e), with the ceiling kept symbolic unless a
// rational isolating interval for e resolves it.
struct CeilSymbol {
    Rational e_coefficient;       // t0 k
    std::optional<Int> resolved;  // ceil(t0 k e) when known
};

struct KmIrrational {
    Int k_m;
    std::vector<Int> l;  // l_i = k_m m_i / n_i
    CeilSymbol f_ceiling;
    // [n_i e_i] . [D] = m_i k_m ceil(t0 k e); coefficients of the symbol.
    std::vector<Int> intersection_coeff;
};
KmIrrational km_irrational(const LatticePresentation& p, const Int& k,
                           std::optional<std::pair<Rational, Rational>> e_interval =
                               std::nullopt);

struct WeakBound {
    Rational c_beta;      // C_{beta,theta'}
    Rational rhs;         // C_alpha * |d| * C_{beta,theta'}
    Int threshold_k;      // least k with t0 k > rhs
    bool holds;           // at the supplied k
};
WeakBound weak_bound(const Int& t0, const Int& k, const Rational& c_alpha,
                     const Rational& norm_boundary, const Rational& theta_prime,
                     const std::vector<Rational>& beta_norms);

enum class IntersectionMode { exact, twisted };
// exact:   m0 * area;  twisted:  t0k * area - alpha([boundary u]).
Rational intersection_from_area(IntersectionMode mode, const Rational& factor,
                                const Rational& area, const Rational& alpha_value = 0);

// Pairings of a single sphere or disk class.
struct ClassPairing {
    bool sphere = true;   // sphere class alpha vs disk class beta
    Int pair_d = 0;       // <[D]~, .>
    Int pair_c1 = 0;      // <c_1(X), .>
    Rational omega = 0;   // symplectic area
    int dim_x = 2;        // dim X, even
    std::string name;
};

// Sufficient-degree test: spheres need <D> >= 2<c1> + dim X + 1, disks need
// <D> >= 1.  Returns the failing classes.
std::vector<ClassPairing> sufficient_degree(const std::vector<ClassPairing>& classes);

struct SphereDimReport {
    Int expdim;        // dim X + 2<c1> - 2<D> - 5
    Int max_tangency;  // dim X / 2 - 2 + <c1>
    bool at_least_three_intersections;  // <D> > 2 mu and sufficiency holds
};
SphereDimReport divisor_sphere_dim(const ClassPairing& c);

// An N-fold Maslov cover exists iff N divides twice the minimal Chern
// number.
bool maslov_cover_check(const Int& n, const Int& min_chern);

}  // namespace pearl

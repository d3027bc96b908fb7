#include "pearl/divisor.hpp"

#include <algorithm>

namespace pearl {

std::vector<std::string> LatticePresentation::check() const
{
    std::vector<std::string> bad;
    if (rank_n < 0)
        bad.push_back("rank N must be nonnegative");
    if (torsion < 1)
        bad.push_back("torsion order t0 must be positive");
    if (m0 < 1)
        bad.push_back("m0 must be positive");
    if ((int)boundary.size() > rank_n)
        bad.push_back("boundary basis larger than the lattice rank");
    if ((int)alpha.size() != rank_n)
        bad.push_back("alpha must have one value per basis vector");
    for (const auto& b : boundary) {
        if (b.n < 1)
            bad.push_back("boundary multiplier n_i must be >= 1");
        if (irrational_mode) {
            if (b.area_p != 0)
                bad.push_back("irrational mode: areas must be pure multiples of e");
            if (b.area_m <= 0 || !is_integer(b.area_m))
                bad.push_back("irrational mode: areas must be m_i e with m_i a positive integer");
        } else if (b.area_m != 0) {
            bad.push_back("rational mode: areas must not involve e");
        }
    }
    return bad;
}

namespace {

void require_ok(const LatticePresentation& p)
{
    auto bad = p.check();
    if (!bad.empty())
        throw error("bad lattice presentation: " + bad.front());
}

Int lcm_int(const Int& a, const Int& b)
{
    if (a == 0 || b == 0)
        return 0;
    return a / gcd(a, b) * b;
}

}  // namespace

KmRational km_rational(const LatticePresentation& p)
{
    require_ok(p);
    if (p.irrational_mode)
        throw error("non-rational area in rational mode");

    // k' clears the denominators of t0 w_i, making all holonomies trivial.
    Int kp = 1;
    for (const auto& b : p.boundary) {
        Rational h = Rational(p.torsion) * b.area_p;
        kp = lcm_int(kp, rat_den(h));
    }
    // r_i = (t0 k' / n_i) w_i mod Z; k'' clears the residues.
    std::vector<Rational> residues;
    Int ks = 1;
    for (const auto& b : p.boundary) {
        Rational r = rat_frac(Rational(p.torsion * kp) * b.area_p / Rational(b.n));
        residues.push_back(r);
        ks = lcm_int(ks, rat_den(r));
    }
    KmRational out;
    out.k_prime = kp;
    out.k_second = ks;
    out.k_m = kp * ks;
    out.residues = residues;

    // Shift alpha by the integer class zeroing the values on e_1..e_M.
    out.adjusted_alpha = p.alpha;
    out.shift.assign(p.alpha.size(), 0);
    for (size_t i = 0; i < p.boundary.size() && i < p.alpha.size(); ++i) {
        out.shift[i] = -p.alpha[i];
        out.adjusted_alpha[i] = 0;
    }
    return out;
}

KmIrrational km_irrational(const LatticePresentation& p, const Int& k,
                           std::optional<std::pair<Rational, Rational>> e_interval)
{
    require_ok(p);
    if (!p.irrational_mode)
        throw error("km_irrational needs the e-not-in-Q mode");
    if (k < 1)
        throw error("k must be positive");
    for (const auto& b : p.boundary)
        if (b.area_m <= 0)
            throw error("areas must be positive");

    KmIrrational out;
    out.k_m = 1;
    for (const auto& b : p.boundary) {
        Int m = rat_num(b.area_m);
        out.k_m = lcm_int(out.k_m, b.n / gcd(b.n, m));
    }
    for (const auto& b : p.boundary) {
        Int m = rat_num(b.area_m);
        out.l.push_back(out.k_m * m / b.n);
        out.intersection_coeff.push_back(m * out.k_m);
    }
    out.f_ceiling.e_coefficient = Rational(p.torsion * k);
    if (e_interval) {
        auto [lo, hi] = *e_interval;
        if (!(0 < lo && lo < hi))
            throw error("e interval must satisfy 0 < lo < hi");
        Int clo = rat_ceil(Rational(p.torsion * k) * lo);
        Int chi = rat_ceil(Rational(p.torsion * k) * hi);
        if (clo == chi)
            out.f_ceiling.resolved = clo;
        // otherwise the ceiling stays symbolic
    }
    return out;
}

WeakBound weak_bound(const Int& t0, const Int& k, const Rational& c_alpha,
                     const Rational& norm_boundary, const Rational& theta_prime,
                     const std::vector<Rational>& beta_norms)
{
    if (theta_prime >= 1)
        throw error("theta' must be < 1");
    if (theta_prime < 0 || c_alpha < 0 || norm_boundary < 0 || t0 < 1 || k < 1)
        throw error("weak_bound inputs must be nonnegative, t0,k >= 1");
    Rational maxnorm = 0;
    for (const auto& b : beta_norms) {
        if (b < 0)
            throw error("class norms must be nonnegative");
        maxnorm = std::max(maxnorm, b);
    }
    WeakBound out;
    out.c_beta = (1 + theta_prime) / (1 - theta_prime) * maxnorm;
    out.rhs = c_alpha * norm_boundary * out.c_beta;
    out.holds = Rational(t0 * k) > out.rhs;
    // least integer k0 with t0 k0 > rhs
    out.threshold_k = rat_floor(out.rhs / Rational(t0)) + 1;
    if (out.threshold_k < 1)
        out.threshold_k = 1;
    return out;
}

Rational intersection_from_area(IntersectionMode mode, const Rational& factor,
                                const Rational& area, const Rational& alpha_value)
{
    if (mode == IntersectionMode::exact)
        return factor * area;
    return factor * area - alpha_value;
}

std::vector<ClassPairing> sufficient_degree(const std::vector<ClassPairing>& classes)
{
    std::vector<ClassPairing> failing;
    for (const auto& c : classes) {
        bool ok = c.sphere ? Rational(c.pair_d) >= Rational(2 * c.pair_c1 + c.dim_x + 1)
                           : c.pair_d >= 1;
        if (!ok)
            failing.push_back(c);
    }
    return failing;
}

SphereDimReport divisor_sphere_dim(const ClassPairing& c)
{
    if (c.dim_x % 2 != 0 || c.dim_x < 2)
        throw error("dim X must be even and >= 2");
    SphereDimReport r;
    r.expdim = Int(c.dim_x) + 2 * c.pair_c1 - 2 * c.pair_d - 5;
    r.max_tangency = Int(c.dim_x / 2 - 2) + c.pair_c1;
    bool sufficient = Rational(c.pair_d) >= Rational(2 * c.pair_c1 + c.dim_x + 1);
    r.at_least_three_intersections = sufficient && c.pair_d > 2 * r.max_tangency;
    return r;
}

bool maslov_cover_check(const Int& n, const Int& min_chern)
{
    if (n < 1)
        throw error("N must be >= 1");
    return (2 * min_chern) % n == 0;
}

}  // namespace pearl

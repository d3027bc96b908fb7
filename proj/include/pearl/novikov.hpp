#pragma once

#include "pearl/rational.hpp"

#include <map>
#include <optional>

namespace pearl {

// Element of the universal Novikov field with rational coefficients and
// rational exponents: a finite sum  sum_rho a(rho) q^rho.  An element may
// carry an energy cutoff E, meaning terms with exponent >= E are unknown
// and have been discarded.  Values are immutable after construction.
class Novikov {
public:
    Novikov() = default;

    static Novikov monomial(const Rational& coeff, const Rational& exponent);
    static Novikov scalar(const Rational& coeff) { return monomial(coeff, 0); }
    static Novikov with_cutoff(Novikov x, const Rational& cutoff);

    const std::map<Rational, Rational>& terms() const { return terms_; }
    const std::optional<Rational>& cutoff() const { return cutoff_; }

    bool is_zero() const { return terms_.empty(); }

    // Minimum exponent; nullopt encodes +infinity (the zero element).
    std::optional<Rational> valuation() const;

    Rational coefficient(const Rational& exponent) const;

    friend Novikov operator+(const Novikov& x, const Novikov& y);
    friend Novikov operator-(const Novikov& x, const Novikov& y);
    friend Novikov operator*(const Novikov& x, const Novikov& y);
    Novikov operator-() const;

    // Truncated multiplicative inverse: y with x*y = q^0 modulo terms of
    // exponent >= E relative to the leading exponent of x.  The result
    // carries cutoff E - val(x).
    Novikov invert_truncated(const Rational& E) const;

    friend bool operator==(const Novikov& x, const Novikov& y)
    {
        return x.terms_ == y.terms_ && x.cutoff_ == y.cutoff_;
    }

    // Equality of the known parts below the smaller cutoff.
    bool agrees_below_cutoff(const Novikov& y) const;

    std::string str() const;

private:
    std::map<Rational, Rational> terms_;
    std::optional<Rational> cutoff_;

    void prune();
};

}  // namespace pearl

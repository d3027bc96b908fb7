#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>

namespace pearl {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline Int rat_num(const Rational& q) { return numerator(q); }
inline Int rat_den(const Rational& q) { return denominator(q); }

// Largest integer <= q.
inline Int rat_floor(const Rational& q)
{
    Int n = numerator(q), d = denominator(q);
    Int t = n / d;
    if (n < 0 && n % d != 0)
        --t;
    return t;
}

// Smallest integer >= q.
inline Int rat_ceil(const Rational& q) { return -rat_floor(-q); }

// Fractional part in [0,1).
inline Rational rat_frac(const Rational& q) { return q - Rational(rat_floor(q)); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Int factorial(int n)
{
    if (n < 0)
        throw error("factorial of negative integer");
    Int f = 1;
    for (int i = 2; i <= n; ++i)
        f *= i;
    return f;
}

inline Int binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    Int b = 1;
    for (int i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1);
    }
    return b;
}

inline std::string rat_str(const Rational& q)
{
    if (denominator(q) == 1)
        return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "p", "p/q" or "-p/q"; exact, no floats.
inline Rational rat_parse(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rational(Int(s));
        Int n(s.substr(0, slash)), d(s.substr(slash + 1));
        if (d == 0)
            throw error("rational with zero denominator: " + s);
        return Rational(n, d);
    } catch (const std::runtime_error&) {
        throw error("malformed rational: " + s);
    }
}

// Edge length in [0, infinity]; the three stratum classes are
// zero / finite positive / infinite.
struct Length {
    bool infinite = false;
    Rational value = 0;  // ignored when infinite

    static Length zero() { return Length{false, 0}; }
    static Length finite(const Rational& v) { return Length{false, v}; }
    static Length inf() { return Length{true, 0}; }

    bool is_zero() const { return !infinite && value == 0; }
    bool is_positive_finite() const { return !infinite && value > 0; }

    // 0, 1 or 2 for the classes {0}, (0,inf), {inf}.
    int length_class() const { return infinite ? 2 : (value == 0 ? 0 : 1); }

    friend bool operator==(const Length& a, const Length& b)
    {
        if (a.infinite != b.infinite)
            return false;
        return a.infinite || a.value == b.value;
    }
};

inline std::string length_str(const Length& l)
{
    return l.infinite ? std::string("inf") : rat_str(l.value);
}

}  // namespace pearl

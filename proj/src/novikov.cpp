#include "pearl/novikov.hpp"

#include <sstream>

namespace pearl {

namespace {

std::optional<Rational> min_cutoff(const std::optional<Rational>& a,
                                   const std::optional<Rational>& b)
{
    if (!a)
        return b;
    if (!b)
        return a;
    return std::min(*a, *b);
}

}  // namespace

void Novikov::prune()
{
    for (auto it = terms_.begin(); it != terms_.end();) {
        bool dead = it->second == 0 || (cutoff_ && it->first >= *cutoff_);
        it = dead ? terms_.erase(it) : std::next(it);
    }
}

Novikov Novikov::monomial(const Rational& coeff, const Rational& exponent)
{
    Novikov x;
    if (coeff != 0)
        x.terms_[exponent] = coeff;
    return x;
}

Novikov Novikov::with_cutoff(Novikov x, const Rational& cutoff)
{
    x.cutoff_ = min_cutoff(x.cutoff_, cutoff);
    x.prune();
    return x;
}

std::optional<Rational> Novikov::valuation() const
{
    if (terms_.empty())
        return std::nullopt;
    return terms_.begin()->first;
}

Rational Novikov::coefficient(const Rational& exponent) const
{
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

Novikov operator+(const Novikov& x, const Novikov& y)
{
    Novikov r;
    r.terms_ = x.terms_;
    for (const auto& [e, c] : y.terms_) {
        auto [it, fresh] = r.terms_.emplace(e, c);
        if (!fresh)
            it->second += c;
    }
    r.cutoff_ = min_cutoff(x.cutoff_, y.cutoff_);
    r.prune();
    return r;
}

Novikov Novikov::operator-() const
{
    Novikov r = *this;
    for (auto& [e, c] : r.terms_)
        c = -c;
    return r;
}

Novikov operator-(const Novikov& x, const Novikov& y) { return x + (-y); }

Novikov operator*(const Novikov& x, const Novikov& y)
{
    Novikov r;
    // cutoff(x*y) = min(cutoff_x + val_y, cutoff_y + val_x); a factor with
    // empty support contributes no bound (its valuation is +infinity).
    std::optional<Rational> c;
    if (x.cutoff_ && !y.terms_.empty())
        c = min_cutoff(c, *x.cutoff_ + y.terms_.begin()->first);
    if (y.cutoff_ && !x.terms_.empty())
        c = min_cutoff(c, *y.cutoff_ + x.terms_.begin()->first);
    r.cutoff_ = c;
    for (const auto& [ex, cx] : x.terms_)
        for (const auto& [ey, cy] : y.terms_) {
            Rational e = ex + ey;
            if (r.cutoff_ && e >= *r.cutoff_)
                continue;
            auto [it, fresh] = r.terms_.emplace(e, cx * cy);
            if (!fresh)
                it->second += cx * cy;
        }
    r.prune();
    return r;
}

Novikov Novikov::invert_truncated(const Rational& E) const
{
    if (terms_.empty())
        throw error("zero has no inverse");
    const Rational v = terms_.begin()->first;
    const Rational lead = terms_.begin()->second;

    // Write x = lead q^v (1 + r) with val(r) > 0, then invert the unit by
    // the geometric series truncated at exponent E.
    Novikov rest;
    for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
        rest.terms_[it->first - v] = it->second / lead;

    Novikov series = Novikov::scalar(1);
    Novikov power = Novikov::scalar(1);
    while (!power.is_zero()) {
        power = power * (-rest);
        for (auto it = power.terms_.begin(); it != power.terms_.end();)
            it = (it->first >= E) ? power.terms_.erase(it) : std::next(it);
        series = series + power;
    }

    Novikov r;
    for (const auto& [e, c] : series.terms_)
        r.terms_[e - v] = c / lead;
    r.cutoff_ = E - v;
    r.prune();
    return r;
}

bool Novikov::agrees_below_cutoff(const Novikov& y) const
{
    auto bound = min_cutoff(cutoff_, y.cutoff_);
    auto known = [&](const Rational& e) { return !bound || e < *bound; };
    for (const auto& [e, c] : terms_)
        if (known(e) && y.coefficient(e) != c)
            return false;
    for (const auto& [e, c] : y.terms_)
        if (known(e) && coefficient(e) != c)
            return false;
    return true;
}

std::string Novikov::str() const
{
    std::ostringstream os;
    if (terms_.empty())
        os << "0";
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first)
            os << " + ";
        first = false;
        os << rat_str(c) << "*q^" << rat_str(e);
    }
    if (cutoff_)
        os << " [O(q^" << rat_str(*cutoff_) << ")]";
    return os.str();
}

}  // namespace pearl

#pragma once

#include "weilval/common.hpp"

namespace weilval {

/// Extended p-adic valuation of a nonzero element of Z[zeta_p], stored exactly
/// as numer/(p-1): numer is the valuation in units of the ramified prime
/// pi = 1 - zeta_p. The zero element has infinite valuation. Never a float.
struct Valuation {
    bool infinite = false;
    i64 numer = 0;
    i64 denom = 1; // always p-1 for finite values

    static Valuation finite(i64 numer, i64 p) { return Valuation{false, numer, p - 1}; }
    static Valuation inf() { return Valuation{true, 0, 1}; }

    Rational as_rational() const {
        if (infinite) throw UsageError("infinite valuation has no rational value");
        return Rational(numer, denom);
    }

    bool operator==(const Valuation& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return static_cast<i128>(numer) * o.denom == static_cast<i128>(o.numer) * denom;
    }
    bool operator!=(const Valuation& o) const { return !(*this == o); }

    /// Finite values compare as exact rationals; infinity is larger than
    /// every finite value.
    bool operator<(const Valuation& o) const {
        if (infinite) return false;
        if (o.infinite) return true;
        return static_cast<i128>(numer) * o.denom < static_cast<i128>(o.numer) * denom;
    }
    bool operator<=(const Valuation& o) const { return *this < o || *this == o; }

    bool leq(const Rational& r) const {
        if (infinite) return false;
        return static_cast<i128>(numer) * r.den <= static_cast<i128>(r.num) * denom;
    }
    bool eq(const Rational& r) const {
        if (infinite) return false;
        return static_cast<i128>(numer) * r.den == static_cast<i128>(r.num) * denom;
    }

    std::string str() const {
        if (infinite) return "inf";
        return Rational(numer, denom).str();
    }
};

} // namespace weilval

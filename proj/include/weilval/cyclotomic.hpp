#pragma once

#include <gmpxx.h>

#include <vector>

#include "weilval/common.hpp"
#include "weilval/valuation.hpp"

namespace weilval {

/// An element of Z[zeta_p] in the power basis 1, zeta, ..., zeta^{p-2}
/// (zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2})). The basis representation is
/// canonical, so equality is coefficient equality. For p = 2 this is an
/// ordinary integer in a length-1 vector.
class CyclotomicInteger {
public:
    explicit CyclotomicInteger(i64 p) : p_(p), coeffs_(static_cast<size_t>(p - 1), 0) {
        if (p < 2 || !is_prime(p)) throw UsageError("cyclotomic order must be prime");
    }
    CyclotomicInteger(i64 p, std::vector<mpz_class> coeffs) : p_(p), coeffs_(std::move(coeffs)) {
        if (p < 2 || !is_prime(p)) throw UsageError("cyclotomic order must be prime");
        if (coeffs_.size() != static_cast<size_t>(p - 1))
            throw UsageError("coefficient vector must have length p-1");
    }

    static CyclotomicInteger from_integer(i64 p, const mpz_class& v) {
        CyclotomicInteger z(p);
        z.coeffs_[0] = v;
        return z;
    }

    i64 p() const { return p_; }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    const mpz_class& coeff(size_t i) const { return coeffs_[i]; }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (c != 0) return false;
        return true;
    }
    /// True when the value lies in Z (all non-constant coefficients vanish).
    bool is_integer() const {
        for (size_t i = 1; i < coeffs_.size(); ++i)
            if (coeffs_[i] != 0) return false;
        return true;
    }

    bool operator==(const CyclotomicInteger& o) const {
        return p_ == o.p_ && coeffs_ == o.coeffs_;
    }
    bool operator!=(const CyclotomicInteger& o) const { return !(*this == o); }

    std::string str() const;

private:
    i64 p_;
    std::vector<mpz_class> coeffs_;
};

CyclotomicInteger add(const CyclotomicInteger& a, const CyclotomicInteger& b);
CyclotomicInteger sub(const CyclotomicInteger& a, const CyclotomicInteger& b);
CyclotomicInteger neg(const CyclotomicInteger& a);
CyclotomicInteger mul(const CyclotomicInteger& a, const CyclotomicInteger& b);

/// sum_j counts[j] * zeta^j for counts of length p, reduced to the power
/// basis: coefficient i becomes counts[i] - counts[p-1].
CyclotomicInteger from_trace_counts(i64 p, const std::vector<i64>& counts);

/// Exact valuation at the prime above p, normalized so that
/// val(1 - zeta_p) = 1/(p-1); equivalently numer = pi-adic valuation.
/// Infinite exactly for the zero element.
///
/// Two independent exact routes are implemented. The norm route computes
/// val_p of the absolute norm (resultant of the coefficient polynomial with
/// the p-th cyclotomic polynomial), which equals the pi-adic valuation
/// because p is totally ramified. The division route repeatedly divides by
/// pi = 1 - zeta after lifting to Z[x]/(x^p - 1). The default dispatches on p
/// (the norm route's resultant degree is p-1); both stay available to be
/// cross-checked against each other.
Valuation pi_valuation(const CyclotomicInteger& z);
i64 pi_valuation_numer_by_norm(const CyclotomicInteger& z);     // z != 0
i64 pi_valuation_numer_by_division(const CyclotomicInteger& z); // z != 0

/// Largest p for which pi_valuation defaults to the norm route.
inline constexpr i64 kNormRouteMaxP = 31;

/// Absolute norm N(z) = Res(Phi_p, f_z), computed by a subresultant PRS.
mpz_class absolute_norm(const CyclotomicInteger& z);

} // namespace weilval

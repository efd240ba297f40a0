#pragma once

#include <optional>
#include <vector>

#include "weilval/common.hpp"
#include "weilval/field.hpp"
#include "weilval/valuation.hpp"

namespace weilval {

/// Sum of the n standard base-t digits of a mod t^n - 1, with the all-zero
/// expansion for a = 0. Accepts any representative; reduces first.
i64 weight(i64 t, int n, i64 a);

/// A residue d coprime to q-1 together with its canonical representative
/// under d -> p*d, its multiplicative inverse, and its degeneracy profile:
/// for每 divisor m of n, whether d is congruent to a power of p mod p^m - 1.
struct ExponentClass {
    FieldSpec spec;
    i64 d = 1;
    i64 canonical = 1;   // min over the Frobenius orbit {d * p^k mod q-1}
    i64 inverse = 1;     // e with d*e = 1 mod q-1
    std::vector<std::pair<int, bool>> degeneracy_profile; // (m, degenerate over F_{p^m})

    bool degenerate_over_level(int m) const;
    bool degenerate_over_field() const { return degenerate_over_level(spec.n); }
    bool degenerate_over_prime() const { return degenerate_over_level(1); }
    std::vector<int> degenerate_levels() const;
};

/// True when d is congruent to a power of p modulo p^m - 1.
bool degenerate_over(i64 p, int m, i64 d);

ExponentClass classify_exponent(const FieldSpec& spec, i64 d);

/// One representative per orbit of the group generated by d -> p*d and
/// d -> d^{-1} on residues coprime to q-1, in ascending order of the orbit
/// minimum (which is the representative).
std::vector<ExponentClass> enumerate_exponent_classes(const FieldSpec& spec);

/// Reusable per-field state for the digit-weight minimum: a weight table
/// (popcount for p = 2, identity for n = 1), shared across many exponents.
class StickelbergerScanner {
public:
    explicit StickelbergerScanner(const FieldSpec& spec);

    const FieldSpec& spec() const { return spec_; }

    /// min over nonzero a of wt(a) + wt(-d*a), i.e. (p-1) * V_{F,d}.
    /// Early-exits at the proven floor of 2. Requires q > 2, gcd(d, q-1) = 1.
    i64 min_weight_sum(i64 d) const;

    Valuation v(i64 d) const { return Valuation::finite(min_weight_sum(d), spec_.p); }

    i64 weight_of(i64 r) const; // r in [0, q-1)

private:
    FieldSpec spec_;
    i64 u_; // q - 1
    std::vector<uint16_t> wt_; // empty when popcount / identity applies
};

/// Exact V_{F,d} by the digit-weight formula. Requires q > 2 and
/// gcd(d, q-1) = 1; the q = 2 case is handled by valuation_of_field.
Valuation v_stickelberger(const FieldSpec& spec, i64 d);

/// V_{F,d} for any q >= 2 (q = 2 has every d degenerate and V = 1).
Valuation valuation_of_field(const FieldSpec& spec, i64 d);

} // namespace weilval

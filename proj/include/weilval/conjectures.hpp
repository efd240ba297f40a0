#pragma once

#include <string>
#include <vector>

#include "weilval/families.hpp"
#include "weilval/field.hpp"
#include "weilval/stickelberger.hpp"
#include "weilval/valuation.hpp"

namespace weilval {

/// Outcome of the per-class valuation bound check. The case labels form a
/// total, mutually exclusive classification of (spec, d), computed from the
/// degeneracy profile and congruences only (never inferred from v itself):
///   degenerate        -> bound n (and equality expected)
///   degFp_pow2        -> nondegenerate over F, degenerate over F_p, n = 2^s; bound n/2
///   degFp_other       -> same but n not a power of 2; bound 2n/3
///   nondegFp_half     -> nondegenerate over F_p, d = (p+1)/2 mod p-1, n odd; bound n/2
///   nondegFp_general  -> remaining nondegenerate-over-F_p cases;
///                        bound ceil((p-1)/3) * n/(p-1)
struct BoundReport {
    FieldSpec spec;
    i64 d_canonical = 1;
    Valuation v;
    std::string case_label;
    Rational bound{0, 1};
    bool satisfied = false;
    bool tight = false;
    std::vector<int> degenerate_levels;
};

/// Classify one exponent class and check its bound.
BoundReport bound_report_for(const FieldSpec& spec, const StickelbergerScanner& scanner,
                             const ExponentClass& cls);

/// One report per exponent class of the field, ascending class representative.
/// Violations are reported in the records, not thrown.
std::vector<BoundReport> cecilia_check(const FieldSpec& spec);

struct UbcReport {
    FieldSpec spec;
    Rational bound{0, 1};           // (l+1) n / (2l)
    Valuation max_v = Valuation::inf();
    std::vector<i64> attaining;     // class representatives reaching max_v
    bool gerald_attains = false;    // a gerald exponent class reaches max_v
    i64 classes_checked = 0;
    std::vector<i64> violations;    // class representatives exceeding the bound
    bool ok = true;
};

/// Check v <= (l+1)n/(2l) over every nondegenerate class; requires n not a
/// power of 2.
UbcReport upper_bound_scan(const FieldSpec& spec);

struct DorothyWitness {
    i64 u = 0;       // coefficient making x -> v(x+1)^d - u x^d non-injective
    i64 x1 = 0, x2 = 0; // collision pair, x1 != x2
};

/// For v != 0 and d nondegenerate over F, find the smallest u != v for which
/// x -> v(x+1)^d - u x^d is not a permutation, certified by a collision pair.
/// Exhaustion without a witness is a defect-level event.
DorothyWitness dorothy_witness(const FieldTable& f, i64 d, i64 v);

} // namespace weilval

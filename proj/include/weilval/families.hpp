#pragma once

#include <optional>
#include <string>
#include <vector>

#include "weilval/common.hpp"
#include "weilval/field.hpp"
#include "weilval/stickelberger.hpp"

namespace weilval {

enum class Family {
    gerald_gold,
    gerald_kasami,
    nora_case1,
    nora_case2,
    nora_case3,
    nancy_quadratic,
    peter_cubic,
    paul_cubic,
    raphael_cube,
    raphael_cube_inverse,
};

const char* family_name(Family f);

/// One named extremal exponent with its predicted exact valuation and the
/// degeneracy facts its construction guarantees. Inapplicable rows keep the
/// failed condition in `reason` so scan reports can distinguish
/// "inapplicable" from "failed verification".
struct FamilyPrediction {
    Family family;
    FieldSpec spec;
    i64 d = 0;
    bool applicable = false;
    std::string reason;                     // failed condition when inapplicable
    Rational predicted_v{0, 1};
    std::vector<std::pair<int, bool>> degeneracy_claims; // (level m, expected flag)
    std::string note;                       // informational, e.g. variant comparison
};

/// Exponents 2^{n/l}+1 and 2^{2n/l}-2^{n/l}+1 (odd p: (p^{2n/l}+1)/2 and
/// p^{2n/l}-p^{n/l}+1) for l the least odd prime divisor of n; predicted
/// valuation n(l+1)/(2l). Throws when n is a power of 2.
std::vector<FamilyPrediction> gerald_family(const FieldSpec& spec);

/// Exponents degenerate over the index-2 subfield for n = 2^s, q > 4;
/// predicted valuation n/2. Throws when n is not a power of 2 or q <= 4.
std::vector<FamilyPrediction> nora_family(const FieldSpec& spec);

/// The prime-level families for odd p: (q+1)/2, (q+2)/3, (2q+1)/3, 3 and
/// (2q-1)/3, each with its congruence applicability conditions. Throws for
/// p = 2.
std::vector<FamilyPrediction> prime_level_families(const FieldSpec& spec);

/// Every family whose hypothesis shape matches the spec, applicable or not.
std::vector<FamilyPrediction> all_families(const FieldSpec& spec);

struct FamilyVerification {
    FamilyPrediction prediction;
    bool gcd_ok = false;
    bool degeneracy_ok = false;
    Valuation measured = Valuation::inf();
    bool match = false; // all of the above and measured == predicted
};

/// Check an applicable prediction against the digit-weight computation and
/// the exponent classifier.
FamilyVerification verify_family(const FamilyPrediction& pred);

} // namespace weilval

#pragma once

#include "weilval/cyclotomic.hpp"
#include "weilval/field.hpp"

namespace weilval {

struct SpectrumEntry {
    i64 a;
    CyclotomicInteger sum;
    Valuation val;
};

/// All Weil sums of x^d - a*x over one field, with their exact valuations and
/// the minimum finite valuation. Entries cover every a exactly once, in
/// element-index order.
struct WeilSpectrum {
    FieldSpec spec;
    i64 d;
    std::vector<SpectrumEntry> entries;
    Valuation v_direct;
};

/// Exact W(a) = sum over x of zeta^{Tr(x^d - a x)}, as a tally of trace
/// values. Requires gcd(d, q-1) = 1.
CyclotomicInteger weil_sum(const FieldTable& f, i64 d, i64 a);

/// Two-coefficient variant: sum over x of zeta^{Tr(u x^d - a x)}.
/// For u != 0 this equals W(b) at a scaled coefficient; u = 0 collapses to a
/// point mass at a = 0.
CyclotomicInteger walsh_sum(const FieldTable& f, i64 d, i64 u, i64 a);

/// Full spectrum; O(q^2) trace tallies with x -> x^d walked in the log
/// domain. The minimum is guaranteed finite (it is at most n).
WeilSpectrum weil_spectrum(const FieldTable& f, i64 d);

/// #{x in F : v*(x+1)^d - u*x^d = w}.
i64 count_N(const FieldTable& f, i64 d, i64 u, i64 v, i64 w);

} // namespace weilval

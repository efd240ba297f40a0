#include "weilval/weil.hpp"

#include <numeric>

namespace weilval {

namespace {

void require_coprime(const FieldTable& f, i64 d) {
    if (d < 1) throw UsageError("exponent d must be >= 1");
    if (f.q() > 2 && std::gcd(mod_reduce(d, f.q() - 1), f.q() - 1) != 1)
        throw UsageError("d is not coprime to q-1");
}

// Tally of Tr(u x^d - a x) over x in F, by trace linearity:
// Tr(u x^d) - Tr(a x), both read from the trace table in the log domain.
std::vector<i64> trace_counts(const FieldTable& f, i64 d, i64 u, i64 a) {
    const i64 p = f.p(), q = f.q(), m = q - 1;
    const auto& exp = f.exp_table();
    const auto& tr = f.trace_table();
    std::vector<i64> counts(static_cast<size_t>(p), 0);
    ++counts[0]; // x = 0 contributes Tr(0) = 0
    if (u == 0 && a == 0) {
        counts[0] += m;
        return counts;
    }
    const i64 dmod = mod_reduce(d, m);
    if (u == 0) {
        const i64 la = f.log(a);
        for (i64 k = 0; k < m; ++k) {
            i64 t = -tr[exp[(la + k) % m]];
            counts[t < 0 ? t + p : t]++;
        }
        return counts;
    }
    if (a == 0) {
        const i64 lu = f.log(u);
        i64 lx = lu; // log(u * x^d) at k = 0
        for (i64 k = 0; k < m; ++k) {
            counts[tr[exp[lx]]]++;
            lx += dmod;
            if (lx >= m) lx -= m;
        }
        return counts;
    }
    const i64 lu = f.log(u), la = f.log(a);
    i64 lx = lu, ly = la;
    for (i64 k = 0; k < m; ++k) {
        i64 t = tr[exp[lx]] - tr[exp[ly]];
        counts[t < 0 ? t + p : t]++;
        lx += dmod;
        if (lx >= m) lx -= m;
        ++ly;
        if (ly >= m) ly -= m;
    }
    return counts;
}

} // namespace

CyclotomicInteger weil_sum(const FieldTable& f, i64 d, i64 a) {
    require_coprime(f, d);
    return from_trace_counts(f.p(), trace_counts(f, d, 1, a));
}

CyclotomicInteger walsh_sum(const FieldTable& f, i64 d, i64 u, i64 a) {
    require_coprime(f, d);
    return from_trace_counts(f.p(), trace_counts(f, d, u, a));
}

WeilSpectrum weil_spectrum(const FieldTable& f, i64 d) {
    require_coprime(f, d);
    WeilSpectrum s{f.spec(), d, {}, Valuation::inf()};
    s.entries.reserve(static_cast<size_t>(f.q()));
    CyclotomicInteger total(f.p());
    for (i64 a = 0; a < f.q(); ++a) {
        CyclotomicInteger w = from_trace_counts(f.p(), trace_counts(f, d, 1, a));
        Valuation v = pi_valuation(w);
        total = add(total, w);
        if (v < s.v_direct) s.v_direct = v;
        s.entries.push_back(SpectrumEntry{a, std::move(w), v});
    }
    if (s.entries[0].sum != CyclotomicInteger(f.p()) || !s.entries[0].val.infinite)
        throw DefectError("W(0) must vanish");
    if (total != CyclotomicInteger::from_integer(f.p(), f.q()))
        throw DefectError("first power moment of the spectrum is not q");
    if (s.v_direct.infinite)
        throw DefectError("spectrum has no finite valuation");
    return s;
}

i64 count_N(const FieldTable& f, i64 d, i64 u, i64 v, i64 w) {
    require_coprime(f, d);
    i64 count = 0;
    for (i64 x = 0; x < f.q(); ++x) {
        i64 lhs = f.sub(f.mul(v, f.pow(f.add(x, 1), d)), f.mul(u, f.pow(x, d)));
        if (lhs == w) ++count;
    }
    return count;
}

} // namespace weilval

#include "weilval/conjectures.hpp"

#include <algorithm>
#include <numeric>

namespace weilval {

BoundReport bound_report_for(const FieldSpec& spec, const StickelbergerScanner& scanner,
                             const ExponentClass& cls) {
    BoundReport r;
    r.spec = spec;
    r.d_canonical = cls.d;
    r.degenerate_levels = cls.degenerate_levels();
    r.v = scanner.v(cls.d);

    const i64 p = spec.p;
    const int n = spec.n;
    if (cls.degenerate_over_field()) {
        r.case_label = "degenerate";
        r.bound = Rational(n, 1);
    } else if (cls.degenerate_over_prime()) {
        if (is_power_of_two(n)) {
            r.case_label = "degFp_pow2";
            r.bound = Rational(n, 2);
        } else {
            r.case_label = "degFp_other";
            r.bound = Rational(i64(2) * n, 3);
        }
    } else {
        // nondegenerate over F_p forces p >= 5
        if (p < 5) throw DefectError("nondegenerate over F_p with p < 5");
        const bool half_case = (n % 2 == 1) && (p % 4 == 1) &&
                               mod_reduce(cls.d, p - 1) == (p + 1) / 2;
        if (half_case) {
            r.case_label = "nondegFp_half";
            r.bound = Rational(n, 2);
        } else {
            r.case_label = "nondegFp_general";
            r.bound = Rational(((p - 1) / 3 + ((p - 1) % 3 ? 1 : 0)) * static_cast<i64>(n), p - 1);
        }
    }
    r.satisfied = r.v.leq(r.bound);
    r.tight = r.v.eq(r.bound);
    return r;
}

std::vector<BoundReport> cecilia_check(const FieldSpec& spec) {
    if (spec.q < 3) throw UsageError("bound check needs q >= 3");
    StickelbergerScanner scanner(spec);
    std::vector<BoundReport> out;
    for (const ExponentClass& cls : enumerate_exponent_classes(spec))
        out.push_back(bound_report_for(spec, scanner, cls));
    return out;
}

UbcReport upper_bound_scan(const FieldSpec& spec) {
    const int l = least_odd_prime_divisor(spec.n);
    if (l == 0) throw UsageError("upper bound conjecture needs n not a power of 2");
    UbcReport rep;
    rep.spec = spec;
    rep.bound = Rational(static_cast<i64>(spec.n) * (l + 1), 2LL * l);

    StickelbergerScanner scanner(spec);
    for (const ExponentClass& cls : enumerate_exponent_classes(spec)) {
        if (cls.degenerate_over_field()) continue;
        Valuation v = scanner.v(cls.d);
        ++rep.classes_checked;
        if (!v.leq(rep.bound)) {
            rep.violations.push_back(cls.d);
            rep.ok = false;
        }
        if (rep.max_v.infinite || rep.max_v < v) {
            rep.max_v = v;
            rep.attaining.clear();
        }
        if (v == rep.max_v) rep.attaining.push_back(cls.d);
    }

    for (const FamilyPrediction& g : gerald_family(spec)) {
        i64 rep_d = classify_exponent(spec, mod_reduce(g.d, spec.q - 1)).canonical;
        i64 inv = inv_mod(rep_d, spec.q - 1);
        i64 full_rep = std::min(rep_d, classify_exponent(spec, inv).canonical);
        if (std::find(rep.attaining.begin(), rep.attaining.end(), full_rep) != rep.attaining.end())
            rep.gerald_attains = true;
    }
    return rep;
}

DorothyWitness dorothy_witness(const FieldTable& f, i64 d, i64 v) {
    const i64 q = f.q();
    if (v == 0 || v >= q) throw UsageError("v must be a nonzero field element");
    i64 dm = mod_reduce(d, q - 1);
    if (std::gcd(dm, q - 1) != 1) throw UsageError("d is not coprime to q-1");
    if (degenerate_over(f.p(), f.n(), dm))
        throw UsageError("d is degenerate over F; every candidate map is a permutation");

    std::vector<i64> first_preimage(static_cast<size_t>(q));
    for (i64 u = 0; u < q; ++u) {
        if (u == v) continue;
        std::fill(first_preimage.begin(), first_preimage.end(), -1);
        for (i64 x = 0; x < q; ++x) {
            i64 y = f.sub(f.mul(v, f.pow(f.add(x, 1), dm)), f.mul(u, f.pow(x, dm)));
            if (first_preimage[y] >= 0) {
                DorothyWitness w;
                w.u = u;
                w.x1 = first_preimage[y];
                w.x2 = x;
                return w;
            }
            first_preimage[y] = x;
        }
    }
    throw DefectError("no non-permutation coefficient found; this falsifies a proven statement");
}

} // namespace weilval

#include "weilval/stickelberger.hpp"

#include <algorithm>
#include <numeric>

namespace weilval {

i64 weight(i64 t, int n, i64 a) {
    if (t < 2 || n < 1) throw UsageError("weight needs t >= 2, n >= 1");
    i64 m = 1;
    for (int i = 0; i < n; ++i) m *= t;
    m -= 1;
    a = mod_reduce(a, m);
    i64 s = 0;
    for (int i = 0; i < n; ++i) {
        s += a % t;
        a /= t;
    }
    return s;
}

bool degenerate_over(i64 p, int m, i64 d) {
    i64 um = 1;
    for (int i = 0; i < m; ++i) um *= p;
    um -= 1;
    if (um == 1) return true; // modulus 1: every d is a power of p
    i64 r = mod_reduce(d, um);
    i64 pw = 1 % um;
    for (int k = 0; k < m; ++k) {
        if (r == pw) return true;
        pw = mulmod(pw, p, um);
    }
    return false;
}

bool ExponentClass::degenerate_over_level(int m) const {
    for (const auto& [lvl, flag] : degeneracy_profile)
        if (lvl == m) return flag;
    throw UsageError("level is not a divisor of n");
}

std::vector<int> ExponentClass::degenerate_levels() const {
    std::vector<int> out;
    for (const auto& [lvl, flag] : degeneracy_profile)
        if (flag) out.push_back(lvl);
    return out;
}

ExponentClass classify_exponent(const FieldSpec& spec, i64 d) {
    const i64 u = spec.q - 1;
    ExponentClass c;
    c.spec = spec;
    if (u == 1) {
        c.d = 1;
        c.canonical = 1;
        c.inverse = 1;
        c.degeneracy_profile = {{1, true}};
        return c;
    }
    c.d = mod_reduce(d, u);
    if (std::gcd(c.d, u) != 1) throw UsageError("d is not coprime to q-1");
    c.canonical = c.d;
    i64 r = c.d;
    for (int k = 1; k < spec.n; ++k) {
        r = mulmod(r, spec.p, u);
        c.canonical = std::min(c.canonical, r);
    }
    c.inverse = inv_mod(c.d, u);
    for (int m : divisors_of(spec.n))
        c.degeneracy_profile.emplace_back(m, degenerate_over(spec.p, m, c.d));
    return c;
}

std::vector<ExponentClass> enumerate_exponent_classes(const FieldSpec& spec) {
    if (spec.q < 3) throw UsageError("class enumeration needs q >= 3");
    const i64 u = spec.q - 1;
    std::vector<bool> seen(static_cast<size_t>(u), false);
    std::vector<ExponentClass> out;
    for (i64 d = 1; d < u; ++d) {
        if (seen[d] || std::gcd(d, u) != 1) continue;
        // orbit of <multiply by p, invert>: both suborbits are Frobenius orbits
        i64 e = inv_mod(d, u);
        for (i64 start : {d, e}) {
            i64 r = start;
            for (int k = 0; k < spec.n; ++k) {
                seen[r] = true;
                r = mulmod(r, spec.p, u);
            }
        }
        out.push_back(classify_exponent(spec, d));
    }
    return out;
}

StickelbergerScanner::StickelbergerScanner(const FieldSpec& spec)
    : spec_(spec), u_(spec.q - 1) {
    if (spec_.q < 3) throw UsageError("digit-weight scan needs q > 2");
    if (spec_.p != 2 && spec_.n != 1) {
        wt_.resize(static_cast<size_t>(u_));
        wt_[0] = 0;
        for (i64 r = 1; r < u_; ++r)
            wt_[r] = static_cast<uint16_t>(wt_[r / spec_.p] + r % spec_.p);
    }
}

i64 StickelbergerScanner::weight_of(i64 r) const {
    if (spec_.p == 2) return __builtin_popcountll(static_cast<u64>(r));
    if (spec_.n == 1) return r;
    return wt_[r];
}

i64 StickelbergerScanner::min_weight_sum(i64 d) const {
    const i64 u = u_;
    i64 dm = mod_reduce(d, u);
    if (std::gcd(dm, u) != 1) throw UsageError("d is not coprime to q-1");
    i64 best = spec_.n * (spec_.p - 1) + 1;
    i64 b = 0; // d*a mod u, updated incrementally
    if (spec_.p == 2) {
        for (i64 a = 1; a < u; ++a) {
            b += dm;
            if (b >= u) b -= u;
            i64 cand = __builtin_popcountll(static_cast<u64>(a)) +
                       __builtin_popcountll(static_cast<u64>(u - b));
            if (cand < best) {
                best = cand;
                if (best == 2) break;
            }
        }
        return best;
    }
    if (spec_.n == 1) {
        for (i64 a = 1; a < u; ++a) {
            b += dm;
            if (b >= u) b -= u;
            i64 cand = a + (u - b);
            if (cand < best) {
                best = cand;
                if (best == 2) break;
            }
        }
        return best;
    }
    const uint16_t* wt = wt_.data();
    for (i64 a = 1; a < u; ++a) {
        b += dm;
        if (b >= u) b -= u;
        i64 cand = static_cast<i64>(wt[a]) + wt[u - b];
        if (cand < best) {
            best = cand;
            if (best == 2) break;
        }
    }
    return best;
}

Valuation v_stickelberger(const FieldSpec& spec, i64 d) {
    StickelbergerScanner s(spec);
    return s.v(d);
}

Valuation valuation_of_field(const FieldSpec& spec, i64 d) {
    if (spec.q == 2) return Valuation::finite(1, 2);
    return v_stickelberger(spec, d);
}

} // namespace weilval

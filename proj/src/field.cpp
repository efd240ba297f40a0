#include "weilval/field.hpp"

#include <algorithm>

namespace weilval {

namespace {

// Dense polynomials over F_p, coefficient i of x^i, no trailing zeros.
using Poly = std::vector<int>;

void trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, i64 p) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int>((r[i + j] + static_cast<i64>(a[i]) * b[j]) % p);
    }
    // reduce modulo monic f
    int deg_f = static_cast<int>(f.size()) - 1;
    for (int i = static_cast<int>(r.size()) - 1; i >= deg_f; --i) {
        int c = r[i];
        if (c == 0) continue;
        r[i] = 0;
        for (int j = 0; j < deg_f; ++j)
            r[i - deg_f + j] = static_cast<int>(mod_reduce(r[i - deg_f + j] - static_cast<i64>(c) * f[j], p));
    }
    trim(r);
    return r;
}

Poly poly_powmod(Poly base, i64 e, const Poly& f, i64 p) {
    Poly r = {1};
    while (e > 0) {
        if (e & 1) r = poly_mulmod(r, base, f, p);
        base = poly_mulmod(base, base, f, p);
        e >>= 1;
    }
    return r;
}

Poly poly_gcd(Poly a, Poly b, i64 p) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        // a mod b, with b made monic on the fly
        i64 lead_inv = inv_mod(b.back(), p);
        Poly r = a;
        int deg_b = static_cast<int>(b.size()) - 1;
        for (int i = static_cast<int>(r.size()) - 1; i >= deg_b; --i) {
            if (r[i] == 0) continue;
            i64 c = mulmod(r[i], lead_inv, p);
            for (int j = 0; j <= deg_b; ++j)
                r[i - deg_b + j] = static_cast<int>(mod_reduce(r[i - deg_b + j] - c * b[j], p));
        }
        trim(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

i64 ipow(i64 b, int e) {
    i64 r = 1;
    while (e-- > 0) r *= b;
    return r;
}

} // namespace

FieldSpec make_field_spec(i64 p, int n, i64 q_max) {
    if (!is_prime(p)) throw UsageError("p = " + std::to_string(p) + " is not prime");
    if (n < 1) throw UsageError("n must be >= 1");
    i64 q = 1;
    for (int i = 0; i < n; ++i) {
        if (q > q_max / p) throw UsageError("q = p^n exceeds the configured field cap");
        q *= p;
    }
    return FieldSpec{p, n, q};
}

bool poly_is_irreducible(i64 p, const std::vector<int>& f) {
    int n = static_cast<int>(f.size()) - 1;
    if (n < 1 || f[n] != 1) return false;
    if (n == 1) return true;
    Poly x = {0, 1};
    // x^{p^n} == x (mod f)
    Poly xq = poly_powmod(x, ipow(p, n), f, p);
    Poly diff = xq;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = static_cast<int>(mod_reduce(diff[1] - 1, p));
    trim(diff);
    if (!diff.empty()) return false;
    for (i64 r : prime_factors(n)) {
        Poly xr = poly_powmod(x, ipow(p, static_cast<int>(n / r)), f, p);
        Poly d = xr;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = static_cast<int>(mod_reduce(d[1] - 1, p));
        trim(d);
        Poly g = poly_gcd(f, d, p);
        if (g.size() != 1) return false; // shares a root with a proper subfield
    }
    return true;
}

std::vector<int> find_irreducible(const FieldSpec& spec, int skip) {
    // Scan coefficient vectors in ascending order of their base-p integer
    // encoding (constant term least significant); first irreducible wins.
    for (i64 k = 0; k < spec.q; ++k) {
        std::vector<int> f(spec.n + 1, 0);
        i64 v = k;
        for (int i = 0; i < spec.n; ++i) {
            f[i] = static_cast<int>(v % spec.p);
            v /= spec.p;
        }
        f[spec.n] = 1;
        if (poly_is_irreducible(spec.p, f)) {
            if (skip == 0) return f;
            --skip;
        }
    }
    throw DefectError("no irreducible polynomial found; invalid field spec slipped through");
}

FieldTable::FieldTable(FieldSpec spec, std::vector<int> modulus)
    : spec_(spec), modulus_(std::move(modulus)) {
    if (static_cast<int>(modulus_.size()) != spec_.n + 1 || modulus_[spec_.n] != 1)
        throw UsageError("modulus must be monic of degree n");
    for (int c : modulus_)
        if (c < 0 || c >= spec_.p) throw UsageError("modulus coefficients must lie in [0, p)");
    if (!poly_is_irreducible(spec_.p, modulus_))
        throw UsageError("modulus is not irreducible over F_p");
    build_tables();
    check_tables();
}

i64 FieldTable::log(i64 x) const {
    if (x <= 0 || x >= spec_.q) throw UsageError("log of zero or out-of-range element");
    return log_[x];
}

i64 FieldTable::add(i64 a, i64 b) const {
    if (spec_.p == 2) return a ^ b;
    i64 r = 0, pw = 1;
    for (int i = 0; i < spec_.n; ++i) {
        i64 da = a % spec_.p, db = b % spec_.p;
        a /= spec_.p;
        b /= spec_.p;
        i64 s = da + db;
        if (s >= spec_.p) s -= spec_.p;
        r += s * pw;
        pw *= spec_.p;
    }
    return r;
}

i64 FieldTable::neg(i64 a) const {
    if (spec_.p == 2) return a;
    i64 r = 0, pw = 1;
    for (int i = 0; i < spec_.n; ++i) {
        i64 da = a % spec_.p;
        a /= spec_.p;
        r += (da == 0 ? 0 : spec_.p - da) * pw;
        pw *= spec_.p;
    }
    return r;
}

i64 FieldTable::sub(i64 a, i64 b) const { return add(a, neg(b)); }

i64 FieldTable::mul(i64 a, i64 b) const {
    if (a == 0 || b == 0) return 0;
    i64 k = log_[a] + log_[b];
    i64 u = spec_.q - 1;
    if (k >= u) k -= u;
    return exp_[k];
}

i64 FieldTable::pow(i64 x, i64 d) const {
    if (d < 0) throw UsageError("pow expects d >= 0");
    if (x == 0) return d == 0 ? 1 : 0;
    if (spec_.q == 2) return 1;
    i64 k = mulmod(log_[x], mod_reduce(d, spec_.q - 1), spec_.q - 1);
    return exp_[k];
}

void FieldTable::build_tables() {
    const i64 p = spec_.p, q = spec_.q, u = q - 1;
    const int n = spec_.n;

    auto index_of = [&](const Poly& f) {
        i64 idx = 0, pw = 1;
        for (int i = 0; i < n; ++i) {
            idx += (i < static_cast<int>(f.size()) ? f[i] : 0) * pw;
            pw *= p;
        }
        return idx;
    };
    auto poly_of = [&](i64 idx) {
        Poly f(n, 0);
        for (int i = 0; i < n; ++i) {
            f[i] = static_cast<int>(idx % p);
            idx /= p;
        }
        trim(f);
        return f;
    };

    // Generator: smallest index of multiplicative order q-1.
    std::vector<i64> ufactors = prime_factors(u);
    generator_ = 0;
    for (i64 cand = 1; cand < q; ++cand) {
        Poly c = poly_of(cand);
        bool ok = true;
        for (i64 r : ufactors) {
            Poly t = poly_powmod(c, u / r, modulus_, p);
            if (t.size() == 1 && t[0] == 1) { ok = false; break; }
        }
        // order divides u; it equals u iff no proper-divisor power is 1
        if (ok && u > 1) {
            Poly t = poly_powmod(c, u, modulus_, p);
            if (!(t.size() == 1 && t[0] == 1)) ok = false;
        }
        if (u == 1) ok = (cand == 1);
        if (ok) { generator_ = cand; break; }
    }
    if (generator_ == 0) throw DefectError("no primitive element found");

    exp_.assign(u, 0);
    log_.assign(q, -1);
    Poly g = poly_of(generator_);
    Poly acc = {1};
    for (i64 k = 0; k < u; ++k) {
        i64 idx = index_of(acc);
        exp_[k] = static_cast<int32_t>(idx);
        if (log_[idx] != -1) throw DefectError("generator order too small");
        log_[idx] = static_cast<int32_t>(k);
        acc = poly_mulmod(acc, g, modulus_, p);
    }
    if (!(acc.size() == 1 && acc[0] == 1)) throw DefectError("generator does not close the cycle");

    // Traces of the power basis, then extend F_p-linearly.
    std::vector<int> basis_tr(n, 0);
    for (int i = 0; i < n; ++i) {
        Poly b(i + 1, 0);
        b[i] = 1;
        Poly s = {};
        Poly frob = b;
        for (int j = 0; j < n; ++j) {
            // s += frob
            if (frob.size() > s.size()) s.resize(frob.size(), 0);
            for (size_t k = 0; k < frob.size(); ++k)
                s[k] = static_cast<int>(mod_reduce(s[k] + frob[k], p));
            trim(s);
            frob = poly_powmod(frob, p, modulus_, p);
        }
        if (s.size() > 1) throw DefectError("trace of basis element is not in F_p");
        basis_tr[i] = s.empty() ? 0 : s[0];
    }
    trace_.assign(q, 0);
    for (i64 x = 0; x < q; ++x) {
        i64 v = x, t = 0;
        for (int i = 0; i < n; ++i) {
            t += (v % p) * basis_tr[i];
            v /= p;
        }
        trace_[x] = static_cast<int32_t>(t % p);
    }
}

void FieldTable::check_tables() const {
    const i64 p = spec_.p, q = spec_.q, u = q - 1;
    // exp/log mutually inverse bijections
    for (i64 k = 0; k < u; ++k)
        if (log_[exp_[k]] != k) throw DefectError("exp/log tables are not mutually inverse");
    if (log_[0] != -1) throw DefectError("zero must have no logarithm");

    // Independent trace check: Frobenius iteration through the exp/log tables.
    std::vector<i64> count(p, 0);
    for (i64 x = 0; x < q; ++x) {
        i64 s = 0;
        i64 y = x;
        for (int j = 0; j < spec_.n; ++j) {
            s = add(s, y);
            y = pow(y, p);
        }
        i64 d0 = s % p; // Tr(x) lies in F_p: index of a constant
        if (s != d0) throw DefectError("Frobenius trace sum left the prime field");
        if (d0 != trace_[x]) throw DefectError("trace table disagrees with Frobenius iteration");
        ++count[d0];
    }
    for (i64 j = 0; j < p; ++j)
        if (count[j] != q / p) throw DefectError("trace is not balanced onto F_p");
}

FieldTable build_field(const FieldSpec& spec) {
    return FieldTable(spec, find_irreducible(spec, 0));
}

FieldTable build_field_with_modulus(const FieldSpec& spec, const std::vector<int>& modulus) {
    return FieldTable(spec, modulus);
}

} // namespace weilval

#include "weilval/cyclotomic.hpp"

#include <algorithm>
#include <sstream>

namespace weilval {

namespace {

void require_same_p(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    if (a.p() != b.p()) throw UsageError("cyclotomic operands have different p");
}

int degree(const std::vector<mpz_class>& f) {
    for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
        if (f[i] != 0) return i;
    return -1;
}

mpz_class pow_mpz(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

mpz_class divexact_checked(const mpz_class& a, const mpz_class& b) {
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    if (r != 0) throw DefectError("inexact division inside subresultant chain");
    return q;
}

/// Resultant of A and B over Z by the subresultant PRS. A, B nonzero.
mpz_class resultant(std::vector<mpz_class> A, std::vector<mpz_class> B) {
    int da = degree(A), db = degree(B);
    if (da < 0 || db < 0) throw UsageError("resultant of zero polynomial");
    int sign = 1;
    if (da < db) {
        std::swap(A, B);
        std::swap(da, db);
        if ((da & 1) && (db & 1)) sign = -sign;
    }
    A.resize(da + 1);
    B.resize(db + 1);
    if (db == 0) return sign * pow_mpz(B[0], da);

    mpz_class g = 1, h = 1;
    while (true) {
        da = degree(A);
        db = degree(B);
        int delta = da - db;
        if ((da & 1) && (db & 1)) sign = -sign;

        // pseudo-remainder: lc(B)^{delta+1} * A reduced by B
        mpz_class c = B[db];
        std::vector<mpz_class> R = A;
        int e = delta + 1;
        int dr = degree(R);
        while (dr >= db) {
            mpz_class lead = R[dr];
            for (auto& x : R) x *= c;
            for (int i = 0; i <= db; ++i) R[dr - db + i] -= lead * B[i];
            --e;
            dr = degree(R);
        }
        if (e > 0) {
            mpz_class ce = pow_mpz(c, e);
            for (auto& x : R) x *= ce;
        }

        A = std::move(B);
        dr = degree(R);
        if (dr < 0) throw DefectError("polynomials share a factor; resultant would be zero");
        mpz_class divisor = g * pow_mpz(h, delta);
        B.assign(R.begin(), R.begin() + dr + 1);
        for (auto& x : B) x = divexact_checked(x, divisor);

        g = A[degree(A)];
        if (delta >= 1) h = divexact_checked(pow_mpz(g, delta), pow_mpz(h, delta - 1));

        if (degree(B) == 0) {
            int dA = degree(A);
            mpz_class res = divexact_checked(pow_mpz(B[0], dA), pow_mpz(h, dA - 1));
            return sign * res;
        }
    }
}

} // namespace

std::string CyclotomicInteger::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << (coeffs_[i] < 0 ? " - " : " + ");
        else if (coeffs_[i] < 0) os << "-";
        mpz_class a = abs(coeffs_[i]);
        if (a != 1 || i == 0) os << a.get_str();
        if (i >= 1) {
            if (a != 1) os << "*";
            os << "z";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

CyclotomicInteger add(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    require_same_p(a, b);
    std::vector<mpz_class> c = a.coeffs();
    for (size_t i = 0; i < c.size(); ++i) c[i] += b.coeff(i);
    return CyclotomicInteger(a.p(), std::move(c));
}

CyclotomicInteger sub(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    require_same_p(a, b);
    std::vector<mpz_class> c = a.coeffs();
    for (size_t i = 0; i < c.size(); ++i) c[i] -= b.coeff(i);
    return CyclotomicInteger(a.p(), std::move(c));
}

CyclotomicInteger neg(const CyclotomicInteger& a) {
    std::vector<mpz_class> c = a.coeffs();
    for (auto& x : c) x = -x;
    return CyclotomicInteger(a.p(), std::move(c));
}

CyclotomicInteger mul(const CyclotomicInteger& a, const CyclotomicInteger& b) {
    require_same_p(a, b);
    const i64 p = a.p();
    const size_t len = static_cast<size_t>(p - 1);
    // fold the raw product through zeta^p = 1, then drop zeta^{p-1}
    std::vector<mpz_class> v(static_cast<size_t>(p), 0);
    for (size_t i = 0; i < len; ++i) {
        if (a.coeff(i) == 0) continue;
        for (size_t j = 0; j < len; ++j) {
            if (b.coeff(j) == 0) continue;
            size_t e = i + j;
            if (e >= static_cast<size_t>(p)) e -= static_cast<size_t>(p);
            v[e] += a.coeff(i) * b.coeff(j);
        }
    }
    std::vector<mpz_class> c(len);
    for (size_t i = 0; i < len; ++i) c[i] = v[i] - v[len];
    return CyclotomicInteger(p, std::move(c));
}

CyclotomicInteger from_trace_counts(i64 p, const std::vector<i64>& counts) {
    if (counts.size() != static_cast<size_t>(p))
        throw UsageError("trace count vector must have length p");
    std::vector<mpz_class> c(static_cast<size_t>(p - 1));
    for (size_t i = 0; i + 1 < static_cast<size_t>(p); ++i)
        c[i] = counts[i] - counts[static_cast<size_t>(p - 1)];
    return CyclotomicInteger(p, std::move(c));
}

mpz_class absolute_norm(const CyclotomicInteger& z) {
    if (z.is_zero()) return 0;
    const i64 p = z.p();
    if (p == 2) return z.coeff(0);
    std::vector<mpz_class> phi(static_cast<size_t>(p), 1); // 1 + x + ... + x^{p-1}
    return resultant(std::move(phi), z.coeffs());
}

i64 pi_valuation_numer_by_norm(const CyclotomicInteger& z) {
    if (z.is_zero()) throw UsageError("valuation route called on zero");
    mpz_class norm = absolute_norm(z);
    if (norm == 0) throw DefectError("nonzero element has zero norm");
    mpz_class pp = z.p();
    i64 v = 0;
    while (mpz_divisible_p(norm.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(norm.get_mpz_t(), norm.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    return v;
}

namespace {

// Machine-word kernel for the pi-division loop. The valuation of a nonzero z
// is below `cap`, and the divisibility decision at step j only depends on the
// value modulo pi^{K(p-1)-j}, so coefficients may be re-centered modulo p^K
// (a ring multiple) after every step once K(p-1) > cap. All values then stay
// below p^{K+1}.
i64 division_loop_small(const CyclotomicInteger& z, i64 cap, i64 pK) {
    const i64 p = z.p();
    const size_t lp = static_cast<size_t>(p);
    const i64 half = pK / 2;
    auto recenter = [&](i64 v) {
        i64 r = v % pK;
        if (r > half) r -= pK;
        if (r < -half) r += pK;
        return r;
    };
    std::vector<i64> g(lp, 0);
    for (size_t i = 0; i + 1 < lp; ++i) g[i] = recenter(z.coeff(i).get_si());

    i64 numer = 0;
    while (true) {
        i64 s = 0;
        for (i64 x : g) s += x;
        if (mod_reduce(s, p) != 0) break;
        i64 k = -(s / p);
        i64 run = 0;
        for (size_t i = 0; i + 1 < lp; ++i) {
            run += g[i] + k;
            g[i] = recenter(run);
        }
        g[lp - 1] = 0;
        ++numer;
        if (numer > cap) throw DefectError("pi-division did not terminate within its bound");
    }
    return numer;
}

i64 division_loop_exact(const CyclotomicInteger& z, i64 cap) {
    const i64 p = z.p();
    const size_t lp = static_cast<size_t>(p);
    std::vector<mpz_class> g(lp, 0);
    for (size_t i = 0; i + 1 < lp; ++i) g[i] = z.coeff(i);

    i64 numer = 0;
    while (true) {
        mpz_class s = 0;
        for (const auto& x : g) s += x;
        if (!mpz_divisible_ui_p(s.get_mpz_t(), static_cast<unsigned long>(p))) break;
        // shift by the right multiple of 1 + x + ... + x^{p-1} so g(1) = 0,
        // then divide by 1 - x: quotient coefficients are the prefix sums
        mpz_class k;
        mpz_divexact_ui(k.get_mpz_t(), s.get_mpz_t(), static_cast<unsigned long>(p));
        k = -k;
        mpz_class run = 0;
        for (size_t i = 0; i + 1 < lp; ++i) {
            run += g[i] + k;
            g[i] = run;
        }
        g[lp - 1] = 0;
        ++numer;
        if (numer > cap) throw DefectError("pi-division did not terminate within its bound");
    }
    return numer;
}

} // namespace

i64 pi_valuation_numer_by_division(const CyclotomicInteger& z) {
    if (z.is_zero()) throw UsageError("valuation route called on zero");
    const i64 p = z.p();

    // |N(z)| <= (sum |c_i|)^{p-1} caps the valuation at (p-1) log_p(sum)
    mpz_class abs_sum = 0;
    for (const auto& c : z.coeffs()) abs_sum += abs(c);
    i64 bits = static_cast<i64>(mpz_sizeinbase(abs_sum.get_mpz_t(), 2));
    i64 log2p = static_cast<i64>(mpz_sizeinbase(mpz_class(p).get_mpz_t(), 2)) - 1;
    i64 cap = (p - 1) * ((bits + 2) / std::max<i64>(1, log2p) + 1) + p;

    // coefficients fit machine words when p^{K+1} does, K(p-1) > cap
    i64 K = cap / (p - 1) + 2;
    bool fits = true;
    i64 pK = 1;
    for (i64 i = 0; i < K + 1 && fits; ++i) {
        if (pK > (i64(1) << 61) / p) fits = false;
        else pK *= p;
    }
    if (fits) {
        for (const auto& c : z.coeffs())
            if (!c.fits_slong_p()) { fits = false; break; }
    }
    if (fits) return division_loop_small(z, cap, pK / p);
    return division_loop_exact(z, cap);
}

Valuation pi_valuation(const CyclotomicInteger& z) {
    const i64 p = z.p();
    if (z.is_zero()) return Valuation::inf();
    if (p == 2) {
        i64 v = static_cast<i64>(mpz_scan1(z.coeff(0).get_mpz_t(), 0));
        return Valuation::finite(v, p);
    }
    if (z.is_integer()) {
        mpz_class c = z.coeff(0);
        mpz_class pp = p;
        i64 v = 0;
        while (mpz_divisible_p(c.get_mpz_t(), pp.get_mpz_t())) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pp.get_mpz_t());
            ++v;
        }
        return Valuation::finite(v * (p - 1), p);
    }
    i64 numer = (p <= kNormRouteMaxP) ? pi_valuation_numer_by_norm(z)
                                      : pi_valuation_numer_by_division(z);
    return Valuation::finite(numer, p);
}

} // namespace weilval

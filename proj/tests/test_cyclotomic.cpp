#include <doctest.h>

#include <random>

#include "weilval/cyclotomic.hpp"

using namespace weilval;

namespace {

CyclotomicInteger make(i64 p, std::vector<long> cs) {
    std::vector<mpz_class> v;
    for (long c : cs) v.emplace_back(c);
    v.resize(static_cast<size_t>(p - 1), 0);
    return CyclotomicInteger(p, std::move(v));
}

CyclotomicInteger random_elt(i64 p, std::mt19937& rng, int spread) {
    std::uniform_int_distribution<long> dist(-spread, spread);
    std::vector<mpz_class> v(static_cast<size_t>(p - 1));
    for (auto& c : v) c = dist(rng);
    return CyclotomicInteger(p, std::move(v));
}

// Test-only oracle: resultant of the coefficient polynomial with
// 1 + x + ... + x^{p-1} as a fraction-free (Bareiss) determinant of the
// Sylvester matrix.
mpz_class sylvester_norm(const CyclotomicInteger& z) {
    const i64 p = z.p();
    std::vector<mpz_class> a(static_cast<size_t>(p), 1); // phi_p, degree p-1
    std::vector<mpz_class> b = z.coeffs();
    int db = static_cast<int>(b.size()) - 1;
    while (db >= 0 && b[db] == 0) --db;
    REQUIRE(db >= 0);
    int da = static_cast<int>(p) - 1;
    int n = da + db;
    std::vector<std::vector<mpz_class>> m(n, std::vector<mpz_class>(n, 0));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j <= da; ++j) m[i][i + j] = a[da - j];
    for (int i = 0; i < da; ++i)
        for (int j = 0; j <= db; ++j) m[db + i][i + j] = b[db - j];
    // Bareiss elimination
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) { swap_row = r; break; }
            if (swap_row < 0) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                mpz_class q, r;
                mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
                REQUIRE(r == 0);
                m[i][j] = q;
            }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

} // namespace

TEST_SUITE("cyclotomic") {

TEST_CASE("additive identities") {
    CyclotomicInteger z = make(3, {1, 1});
    CHECK(add(z, CyclotomicInteger(3)) == z);
    CHECK(add(z, neg(z)).is_zero());
    CHECK(add(z, z) == make(3, {2, 2}));
}

TEST_CASE("multiplication reduces through the power basis") {
    CyclotomicInteger one = make(3, {1, 0});
    CyclotomicInteger zeta = make(3, {0, 1});
    CHECK(mul(make(3, {5, -2}), one) == make(3, {5, -2}));
    CHECK(mul(zeta, zeta) == make(3, {-1, -1})); // zeta^2 = -1 - zeta
    // p = 2 multiplies as plain integers
    CHECK(mul(make(2, {-7}), make(2, {3})) == make(2, {-21}));
}

TEST_CASE("trace count reduction") {
    CHECK(from_trace_counts(3, {3, 3, 3}).is_zero());
    CHECK(from_trace_counts(2, {6, 2}) == make(2, {4}));
    CHECK(from_trace_counts(3, {5, 2, 2}) == make(3, {3, 0}));
}

TEST_CASE("pi valuation on frozen examples") {
    CHECK(pi_valuation(CyclotomicInteger(3)).infinite);

    Valuation v = pi_valuation(make(3, {1, -1})); // 1 - zeta
    CHECK(!v.infinite);
    CHECK(v.numer == 1);
    CHECK(v.denom == 2);

    Valuation v9 = pi_valuation(make(3, {9, 0}));
    CHECK(v9.numer == 4); // val_3(9) = 2, in pi units 4

    Valuation v12 = pi_valuation(make(2, {-12}));
    CHECK(v12.numer == 2);
    CHECK(v12.denom == 1);
}

TEST_CASE("fourth power of 1 - zeta_5") {
    CyclotomicInteger pi = make(5, {1, -1, 0, 0});
    CyclotomicInteger z = mul(mul(pi, pi), mul(pi, pi));
    CHECK(absolute_norm(z) == 625); // norm of pi is 5
    CHECK(pi_valuation_numer_by_norm(z) == 4);
    CHECK(pi_valuation_numer_by_division(z) == 4);
    CHECK(pi_valuation(z).numer == 4);
}

TEST_CASE("norm route matches a Sylvester determinant oracle") {
    std::mt19937 rng(20240811);
    for (i64 p : {3, 5, 7, 11, 13}) {
        for (int rep = 0; rep < 20; ++rep) {
            CyclotomicInteger z = random_elt(p, rng, 9);
            if (z.is_zero()) continue;
            CHECK(absolute_norm(z) == sylvester_norm(z));
        }
    }
}

TEST_CASE("norm and division valuations agree on random inputs") {
    std::mt19937 rng(7);
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
        for (int rep = 0; rep < 40; ++rep) {
            CyclotomicInteger z = random_elt(p, rng, 20);
            if (z.is_zero()) continue;
            // bias toward divisible elements so valuations are interesting
            if (rep % 3 == 0) z = mul(z, z);
            CHECK(pi_valuation_numer_by_norm(z) == pi_valuation_numer_by_division(z));
        }
    }
}

TEST_CASE("valuation is multiplicative and ultrametric") {
    std::mt19937 rng(99);
    for (i64 p : {2, 3, 5, 7, 11, 13}) {
        for (int rep = 0; rep < 25; ++rep) {
            CyclotomicInteger z1 = random_elt(p, rng, 12);
            CyclotomicInteger z2 = random_elt(p, rng, 12);
            if (z1.is_zero() || z2.is_zero()) continue;
            i64 v1 = pi_valuation(z1).numer;
            i64 v2 = pi_valuation(z2).numer;
            CHECK(pi_valuation(mul(z1, z2)).numer == v1 + v2);
            CyclotomicInteger s = add(z1, z2);
            if (!s.is_zero()) CHECK(pi_valuation(s).numer >= std::min(v1, v2));
        }
    }
}

TEST_CASE("integer values give the ordinary p-adic valuation") {
    for (i64 p : {3, 5, 7}) {
        CyclotomicInteger z = CyclotomicInteger::from_integer(p, mpz_class(p) * p * 4);
        Valuation v = pi_valuation(z);
        CHECK(v.numer == 2 * (p - 1));
        CHECK(v.denom == p - 1);
    }
}

TEST_CASE("operand checks") {
    CHECK_THROWS_AS(add(make(3, {1, 0}), make(5, {1, 0, 0, 0})), UsageError);
    CHECK_THROWS_AS(from_trace_counts(3, {1, 2}), UsageError);
    CHECK_THROWS_AS(CyclotomicInteger(4), UsageError);
}

} // TEST_SUITE

TEST_SUITE("cyclotomic") {

TEST_CASE("division route survives huge coefficients") {
    // large inputs overflow the machine-word kernel and take the exact path
    std::mt19937 rng(314);
    for (i64 p : {3, 5, 7}) {
        std::vector<mpz_class> v(static_cast<size_t>(p - 1));
        for (auto& c : v) {
            mpz_class big = 1;
            mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), 45);
            c = big * static_cast<long>(rng() % 1000) - big / 2;
        }
        CyclotomicInteger z(p, std::move(v));
        if (z.is_zero()) continue;
        CHECK(pi_valuation_numer_by_division(z) == pi_valuation_numer_by_norm(z));
        CyclotomicInteger zp = mul(z, CyclotomicInteger::from_integer(p, p));
        CHECK(pi_valuation_numer_by_division(zp) ==
              pi_valuation_numer_by_division(z) + (p - 1));
    }
}

} // TEST_SUITE

#include <doctest.h>

#include <numeric>
#include <random>

#include "weilval/covering.hpp"

using namespace weilval;

namespace {

// Test-only oracle: exhaustive witness existence by trying every (b, a).
bool brute_witness_exists(i64 t, int n, i64 d) {
    i64 M = 1;
    for (int i = 0; i < n; ++i) M *= t;
    M -= 1;
    d = mod_reduce(d, M);
    for (i64 b = 1; b < M; ++b)
        for (i64 a = 1; a < M; ++a) {
            if (a == b || !covers(t, n, a, b)) continue;
            i64 da = mulmod(d, a, M), db = mulmod(d, b, M);
            if (db != da && covers(t, n, db, da)) return true;
        }
    return false;
}

} // namespace

TEST_SUITE("covering") {

TEST_CASE("digit covering on frozen examples") {
    CHECK(covers(2, 3, 1, 5));        // 001 <= 101
    CHECK(covers(2, 3, 0, 5));
    CHECK(covers(7, 4, 0, 123));
    CHECK(!covers(2, 3, 3, 5));       // 011 vs 101
    CHECK(covers_strictly(2, 3, 1, 5));
    CHECK(!covers_strictly(2, 3, 5, 5));
}

TEST_CASE("witness for the smallest binary instance") {
    CoveringWitness w = covering_witness(2, 3, 3);
    CHECK(w.method == WitnessMethod::colin_inverse);
    CHECK(w.a == 1); // first digit pair (j, k) = (0, 0)
    CHECK(w.b == 5); // inverse of 3 modulo 7
    // the alternate pair from the same construction also certifies
    CoveringWitness alt = make_covering_witness(2, 3, 3, 4, 5, WitnessMethod::colin_inverse);
    CHECK(alt.a == 4);
    // and the example witness (1, 5): 3*5 = 1 covered by 3*1 = 3
    CHECK(covers_strictly(2, 3, mulmod(3, 5, 7), mulmod(3, 1, 7)));
}

TEST_CASE("gcd construction handles every shared factor") {
    CoveringWitness w = covering_witness(2, 4, 3); // gcd(3, 15) = 3
    CHECK(w.method == WitnessMethod::vincent_gcd);
    CHECK(w.b == 5); // 15 / 3

    std::mt19937 rng(17);
    for (int rep = 0; rep < 60; ++rep) {
        i64 t = std::uniform_int_distribution<i64>(2, 12)(rng);
        int n = std::uniform_int_distribution<int>(1, 4)(rng);
        i64 M = 1;
        for (int i = 0; i < n; ++i) M *= t;
        M -= 1;
        if (M < 3) continue;
        i64 d = std::uniform_int_distribution<i64>(2, M - 1)(rng);
        i64 g = std::gcd(d, M);
        if (g <= 1 || g >= M) continue;
        CoveringWitness w2 = covering_witness(t, n, d);
        CHECK(w2.method == WitnessMethod::vincent_gcd);
    }
}

TEST_CASE("cascade certifies everything in a small exhaustive box") {
    std::array<i64, 4> seen{0, 0, 0, 0};
    for (i64 t = 2; t <= 12; ++t) {
        for (int n = 1; n <= 4; ++n) {
            i64 M = 1;
            for (int i = 0; i < n; ++i) M *= t;
            M -= 1;
            if (M < 3) continue;
            if (M > 3000) break;
            for (i64 d = 2; d < M; ++d) {
                bool power = false;
                i64 pw = 1;
                for (int k = 0; k < n; ++k) {
                    if (d == pw) power = true;
                    pw = mulmod(pw, t, M);
                }
                if (power) continue;
                CoveringWitness w = covering_witness(t, n, d); // certifies on construction
                ++seen[static_cast<int>(w.method)];
            }
        }
    }
    CHECK(seen[0] > 0);
    CHECK(seen[1] > 0);
    // the box is small enough that the lift/brute fallbacks may or may not
    // fire; the point is zero failures above
}

TEST_CASE("cascade witnesses imply brute witnesses on small instances") {
    std::mt19937 rng(23);
    for (int rep = 0; rep < 25; ++rep) {
        i64 t = std::uniform_int_distribution<i64>(2, 9)(rng);
        int n = std::uniform_int_distribution<int>(1, 3)(rng);
        i64 M = 1;
        for (int i = 0; i < n; ++i) M *= t;
        M -= 1;
        if (M < 3 || M > 800) continue;
        i64 d = std::uniform_int_distribution<i64>(2, M - 1)(rng);
        bool power = false;
        i64 pw = 1;
        for (int k = 0; k < n; ++k) {
            if (d == pw) power = true;
            pw = mulmod(pw, t, M);
        }
        if (power) continue;
        covering_witness(t, n, d);
        CHECK(brute_witness_exists(t, n, d));
    }
}

TEST_CASE("scan block matches per-exponent cascade counts") {
    std::mt19937 rng(31);
    for (int rep = 0; rep < 12; ++rep) {
        i64 t = std::uniform_int_distribution<i64>(4, 300)(rng);
        if (is_perfect_power(t)) continue;
        CoveringBlockStats st = covering_scan_block(t, t, 1, 1LL << 40, false);
        std::array<i64, 4> expect{0, 0, 0, 0};
        i64 coprime = 0;
        for (i64 d = 2; d < t - 1; ++d) {
            CoveringWitness w = covering_witness(t, 1, d);
            ++expect[static_cast<int>(w.method)];
            if (std::gcd(d, t - 1) == 1) ++coprime;
        }
        CHECK(st.by_method == expect);
        CHECK(st.coprime == coprime);
        CHECK(st.classes == std::max<i64>(0, t - 3));
        CHECK(st.failures.empty());
    }
}

TEST_CASE("scan block dedups exponent orbits for n >= 2") {
    CoveringBlockStats st = covering_scan_block(2, 2, 4, 1LL << 20, false);
    // modulus 15: eligible d outside powers {1,2,4,8}: 10 values, orbits of
    // size 4 under doubling: {3,6,12,9}, {5,10}, {7,14,13,11}
    CHECK(st.classes == 3);
    CHECK(st.eligible == 10);
    CHECK(st.failures.empty());
}

TEST_CASE("perfect powers are skipped unless requested") {
    CHECK(is_perfect_power(4));
    CHECK(is_perfect_power(27));
    CHECK(is_perfect_power(1024));
    CHECK(!is_perfect_power(6));
    CHECK(!is_perfect_power(2));

    CoveringBlockStats skipped = covering_scan_block(4, 4, 1, 1LL << 20, false);
    CHECK(skipped.classes == 0);
    CoveringBlockStats forced = covering_scan_block(4, 4, 1, 1LL << 20, true);
    CHECK(forced.classes == 1); // d = 2 mod 3
    CHECK(forced.failures.empty());
}

TEST_CASE("preconditions reject trivial exponents") {
    CHECK_THROWS_AS(covering_witness(2, 3, 7), UsageError);  // d = 0 mod 7
    CHECK_THROWS_AS(covering_witness(2, 3, 2), UsageError);  // a power of 2
    CHECK_THROWS_AS(covering_witness(3, 2, 3), UsageError);  // 3 = power of 3
    CHECK_THROWS_AS(covering_witness(1, 3, 2), UsageError);
}

TEST_CASE("lift construction fires where the digit test cannot") {
    // scan upward until a leonard_lift or brute_force case is found, then
    // make sure the construction certified (they are rare but must work)
    int hits = 0;
    for (i64 t = 2; t <= 6 && hits == 0; ++t) {
        for (int n = 4; n <= 8 && hits == 0; n += 2) {
            i64 M = 1;
            bool over = false;
            for (int i = 0; i < n; ++i) {
                if (M > (3000000 / t)) { over = true; break; }
                M *= t;
            }
            if (over) continue;
            M -= 1;
            for (i64 d = 2; d < M; ++d) {
                bool power = false;
                i64 pw = 1;
                for (int k = 0; k < n; ++k) {
                    if (d == pw) power = true;
                    pw = mulmod(pw, t, M);
                }
                if (power) continue;
                CoveringWitness w = covering_witness(t, n, d);
                if (w.method == WitnessMethod::leonard_lift ||
                    w.method == WitnessMethod::brute_force) {
                    ++hits;
                    break;
                }
            }
        }
    }
    // Informational: absence is not a failure, certification is already
    // covered; presence exercises the lift path end to end.
    MESSAGE("lift/brute hits in the sample box: ", hits);
}

} // TEST_SUITE

#include <doctest.h>

#include "weilval/families.hpp"

using namespace weilval;

namespace {

const FamilyPrediction& find_family(const std::vector<FamilyPrediction>& preds, Family fam) {
    for (const auto& p : preds)
        if (p.family == fam) return p;
    REQUIRE(false);
    return preds.front();
}

} // namespace

TEST_SUITE("families") {

TEST_CASE("gold and kasami exponents coincide for the smallest case") {
    auto preds = gerald_family(make_field_spec(2, 3));
    REQUIRE(preds.size() == 2);
    CHECK(preds[0].d == 3);
    CHECK(preds[1].d == 3);
    for (const auto& p : preds) {
        CHECK(p.applicable);
        CHECK(p.predicted_v == Rational(2, 1));
        CHECK(verify_family(p).match);
    }
}

TEST_CASE("odd characteristic split exponents") {
    auto preds = gerald_family(make_field_spec(3, 3));
    CHECK(find_family(preds, Family::gerald_gold).d == 5); // (3^2+1)/2
    CHECK(find_family(preds, Family::gerald_kasami).d == 7);
    for (const auto& p : preds) CHECK(verify_family(p).match);

    preds = gerald_family(make_field_spec(5, 3));
    CHECK(find_family(preds, Family::gerald_gold).d == 13);
    CHECK(find_family(preds, Family::gerald_kasami).d == 21);
    for (const auto& p : preds) {
        CHECK(p.predicted_v == Rational(2, 1));
        CHECK(verify_family(p).match);
    }
}

TEST_CASE("gerald at n = 6 over F_2") {
    auto preds = gerald_family(make_field_spec(2, 6));
    CHECK(find_family(preds, Family::gerald_gold).d == 5);
    CHECK(find_family(preds, Family::gerald_gold).predicted_v == Rational(4, 1));
    for (const auto& p : preds) CHECK(verify_family(p).match);
}

TEST_CASE("subfield-degenerate exponents for quadratic towers") {
    auto preds = nora_family(make_field_spec(3, 2)); // q = 9, sqrt q = 3
    const auto& c1 = find_family(preds, Family::nora_case1);
    CHECK(c1.applicable);
    CHECK(c1.d == 7);
    CHECK(c1.predicted_v == Rational(1, 1));
    CHECK(verify_family(c1).match);
    CHECK(!find_family(preds, Family::nora_case2).applicable);
    CHECK(!find_family(preds, Family::nora_case3).applicable);

    preds = nora_family(make_field_spec(5, 2)); // q = 25, sqrt q = 5
    const auto& c3 = find_family(preds, Family::nora_case3);
    CHECK(c3.applicable);
    CHECK(c3.d == 17);
    CHECK(verify_family(c3).match);
    CHECK(!find_family(preds, Family::nora_case1).applicable);

    preds = nora_family(make_field_spec(2, 4)); // q = 16, sqrt q = 4
    const auto& c16 = find_family(preds, Family::nora_case1);
    CHECK(c16.applicable);
    CHECK(c16.d == 13);
    CHECK(verify_family(c16).match);
}

TEST_CASE("the cube-root congruence cases") {
    // sqrt(q) = 11 = 2 mod 9 turns on the (q+2)/3 case
    auto preds = nora_family(make_field_spec(11, 2));
    const auto& c2 = find_family(preds, Family::nora_case2);
    REQUIRE(c2.applicable);
    CHECK(c2.d == 41);
    CHECK(c2.predicted_v == Rational(1, 1));
    CHECK(verify_family(c2).match);
    CHECK(!find_family(preds, Family::nora_case3).applicable); // 11 mod 9 = 2

    // sqrt(q) = 17 = 8 mod 9 turns on both congruence cases at once
    preds = nora_family(make_field_spec(17, 2));
    const auto& b2 = find_family(preds, Family::nora_case2);
    const auto& b3 = find_family(preds, Family::nora_case3);
    REQUIRE(b2.applicable);
    REQUIRE(b3.applicable);
    CHECK(b2.d == 97);
    CHECK(b3.d == 193);
    CHECK(verify_family(b2).match);
    CHECK(verify_family(b3).match);

    // n = 6 is not a power of two, whatever q's congruences say
    CHECK_THROWS_AS(nora_family(make_field_spec(2, 6)), UsageError);
}

TEST_CASE("prime-level families on frozen examples") {
    // p = 5: the quadratic and cube families agree on d = 3
    auto preds = prime_level_families(make_field_spec(5, 1));
    const auto& nancy = find_family(preds, Family::nancy_quadratic);
    const auto& cube = find_family(preds, Family::raphael_cube);
    const auto& cubeinv = find_family(preds, Family::raphael_cube_inverse);
    CHECK(nancy.applicable);
    CHECK(nancy.d == 3);
    CHECK(nancy.predicted_v == Rational(1, 2));
    CHECK(cube.applicable);
    CHECK(cube.d == 3);
    CHECK(cube.predicted_v == Rational(1, 2));
    CHECK(cubeinv.d == 3); // (2*5-1)/3
    for (const auto& p : {nancy, cube, cubeinv}) CHECK(verify_family(p).match);

    // p = 13: (q+2)/3 hits, (2q+1)/3 has a shared factor of 3
    preds = prime_level_families(make_field_spec(13, 1));
    const auto& peter = find_family(preds, Family::peter_cubic);
    CHECK(peter.applicable); // 13 mod 9 = 4
    CHECK(peter.d == 5);
    CHECK(peter.predicted_v == Rational(1, 3));
    CHECK(verify_family(peter).match);
    CHECK(!find_family(preds, Family::paul_cubic).applicable);

    // p = 7: (2q+1)/3 hits instead
    preds = prime_level_families(make_field_spec(7, 1));
    const auto& paul = find_family(preds, Family::paul_cubic);
    CHECK(paul.applicable); // 7 mod 9 = 7
    CHECK(paul.d == 5);
    CHECK(paul.predicted_v == Rational(1, 3));
    CHECK(verify_family(paul).match);
    CHECK(!find_family(preds, Family::peter_cubic).applicable);
    CHECK(!find_family(preds, Family::nancy_quadratic).applicable); // 7 mod 4 = 3
}

TEST_CASE("quadratic family across its smallest fields") {
    for (i64 q : {5, 9, 13, 25, 29, 49}) {
        FieldSpec spec = q == 9  ? make_field_spec(3, 2)
                       : q == 25 ? make_field_spec(5, 2)
                       : q == 49 ? make_field_spec(7, 2)
                                 : make_field_spec(q, 1);
        auto preds = prime_level_families(spec);
        const auto& nancy = find_family(preds, Family::nancy_quadratic);
        REQUIRE(nancy.applicable);
        CHECK(nancy.d == (q + 1) / 2);
        CHECK(nancy.predicted_v == Rational(spec.n, 2));
        CHECK(verify_family(nancy).match);
    }
}

TEST_CASE("every applicable family verifies across a field sweep") {
    for (auto [p, n] : {std::pair<i64, int>{2, 3}, {2, 4}, {2, 5}, {2, 6}, {3, 2},
                        {3, 3}, {3, 4}, {5, 1}, {5, 2}, {5, 3}, {7, 1}, {7, 2},
                        {11, 1}, {13, 1}, {17, 1}, {19, 1}, {23, 1}, {7, 3}, {11, 2}}) {
        FieldSpec spec = make_field_spec(p, n);
        for (const auto& pred : all_families(spec)) {
            if (!pred.applicable) continue;
            FamilyVerification v = verify_family(pred);
            CAPTURE(family_name(pred.family));
            CAPTURE(spec.q);
            CAPTURE(pred.d);
            CHECK(v.gcd_ok);
            CHECK(v.degeneracy_ok);
            CHECK(v.match);
        }
    }
}

TEST_CASE("hypothesis-shape violations throw") {
    CHECK_THROWS_AS(gerald_family(make_field_spec(2, 4)), UsageError);
    CHECK_THROWS_AS(nora_family(make_field_spec(3, 3)), UsageError);
    CHECK_THROWS_AS(nora_family(make_field_spec(2, 2)), UsageError); // q = 4
    CHECK_THROWS_AS(nora_family(make_field_spec(7, 1)), UsageError); // n = 1
    CHECK_THROWS_AS(prime_level_families(make_field_spec(2, 5)), UsageError);
}

TEST_CASE("the statement variant of the first tower case is surfaced") {
    auto preds = nora_family(make_field_spec(3, 2));
    const auto& c1 = find_family(preds, Family::nora_case1);
    CHECK(c1.note.find("q-sqrt(q)-1") != std::string::npos);
}

} // TEST_SUITE

#include <doctest.h>

#include <random>

#include "pseries/rational.hpp"
#include "pseries/series.hpp"
#include "test_support.hpp"

using namespace pseries;

TEST_CASE("rational arithmetic is exact and canonical") {
    CHECK(field_add(Rational(1, 2), Rational(1, 3)) == Rational(5, 6));
    CHECK(field_mul(Rational(7), Rational(0)) == Rational(0));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(2, 4).str() == "1/2");
    CHECK(Rational(-3, -6).str() == "1/2");
    CHECK(Rational(3, -6).str() == "-1/2");
    CHECK(field_div(Rational(1), Rational(4, 3)) == Rational(3, 4));
    CHECK_THROWS_AS(field_div(Rational(1), Rational(0)), DivisionByZeroError);
    CHECK_THROWS_AS(Rational(1, 0), DivisionByZeroError);
}

TEST_CASE("rational parse") {
    CHECK(*Rational::parse("5/6") == Rational(5, 6));
    CHECK(*Rational::parse("-12") == Rational(-12));
    CHECK(*Rational::parse("4/6") == Rational(2, 3));
    CHECK(!Rational::parse("a/b"));
    CHECK(!Rational::parse("1/0"));
    CHECK(!Rational::parse(""));
}

TEST_CASE("field laws hold exactly on random rationals") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        Rational a = testing::random_rational(rng);
        Rational b = testing::random_rational(rng);
        Rational c = testing::random_rational(rng);
        CHECK(field_add(field_add(a, b), c) == field_add(a, field_add(b, c)));
        CHECK(field_mul(field_mul(a, b), c) == field_mul(a, field_mul(b, c)));
        CHECK(field_add(a, b) == field_add(b, a));
        CHECK(field_mul(a, field_add(b, c)) == field_add(field_mul(a, b), field_mul(a, c)));
    }
}

TEST_CASE("operation counter") {
    ops::reset();
    ops::enable();
    (void)field_add(Rational(1), Rational(2));
    (void)field_add(Rational(1), Rational(2));
    (void)field_mul(Rational(1), Rational(2));
    (void)field_mul(Rational(1), Rational(2));
    (void)field_mul(Rational(1), Rational(2));
    OpCounter snap = ops::snapshot();
    ops::disable();
    CHECK(snap.additions == 2);
    CHECK(snap.multiplications == 3);
    CHECK(snap.divisions == 0);

    ops::reset();
    CHECK(ops::snapshot() == OpCounter{});

    // disabled: nothing is recorded
    (void)field_mul(Rational(2), Rational(3));
    CHECK(ops::snapshot() == OpCounter{});
}

TEST_CASE("homogeneous product update costs over a univariate coefficient ring") {
    auto ctx = make_context(1);
    // dense operands: both constant terms nonzero
    PowerSeries g = testing::dense_series(ctx, 40);
    PowerSeries h = testing::dense_series(ctx, 40);
    PowerSeries p = ps_mul(g, h);
    const int k = 17;
    p.update_to(k - 1);
    ops::CountingScope scope;
    p.update_to(k);
    OpCounter snap = ops::snapshot();
    // k+1 products and k additions for a dense product
    CHECK(snap.multiplications == static_cast<std::uint64_t>(k + 1));
    CHECK(snap.additions == static_cast<std::uint64_t>(k));

    // with one operand of order >= 1 the degree-k update is 2k-1 operations
    std::vector<HomogeneousPart> shifted;
    shifted.push_back(HomogeneousPart::zero(0));
    for (int d = 1; d <= 40; ++d) {
        Monomial m;
        m.exp = {static_cast<std::uint32_t>(d)};
        shifted.push_back(HomogeneousPart::monomial_term(std::move(m), Rational(1)));
    }
    PowerSeries gm = ps_explicit(ctx, std::move(shifted));
    PowerSeries pm = ps_mul(gm, h);
    pm.update_to(k - 1);
    ops::reset();
    pm.update_to(k);
    snap = ops::snapshot();
    CHECK(snap.multiplications == static_cast<std::uint64_t>(k));
    CHECK(snap.additions == static_cast<std::uint64_t>(k - 1));
    CHECK(snap.total() == static_cast<std::uint64_t>(2 * k - 1));
}

#include <doctest.h>

#include <random>

#include "pseries/series.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace pseries;

namespace {

HomogeneousPart x1_power(int d, long coeff = 1) {
    Monomial m;
    m.exp = {static_cast<std::uint32_t>(d)};
    return HomogeneousPart::monomial_term(std::move(m), Rational(coeff));
}

} // namespace

TEST_CASE("constants and variables") {
    auto ctx = make_context(2);
    PowerSeries c3 = ps_constant(ctx, Rational(3));
    c3.update_to(5);
    CHECK(c3.part(0) == HomogeneousPart::constant(2, Rational(3)));
    CHECK(c3.part(5).is_zero());
    CHECK(c3.complete());

    PowerSeries x1 = ps_variable(ctx, 1);
    x1.update_to(2);
    CHECK(x1.part(1) == HomogeneousPart::monomial_term(Monomial{{1, 0}}, Rational(1)));
    CHECK(x1.part(2).is_zero());
    CHECK_THROWS_AS(ps_variable(ctx, 3), BadIndexError);
    CHECK_THROWS_AS(ps_variable(ctx, 0), BadIndexError);

    // the zero series has order >= any probe
    PowerSeries z = ps_constant(ctx, Rational(0));
    CHECK(!z.order(10).has_value());
    CHECK(c3.order(10) == 0);
}

TEST_CASE("construction is lazy: no field operations, no parts") {
    auto ctx = make_context(1);
    PowerSeries g = testing::dense_series(ctx, 30);
    PowerSeries h = testing::dense_series(ctx, 30);
    ops::CountingScope scope;
    PowerSeries s = ps_add(g, h);
    PowerSeries p = ps_mul(s, h);
    PowerSeries q = ps_sub(p, g);
    CHECK(ops::snapshot() == OpCounter{});
    CHECK(q.precision() == -1);
    CHECK(p.precision() == -1);
}

TEST_CASE("product update of geometric series") {
    auto ctx = make_context(1);
    PowerSeries g = testing::dense_series(ctx, 30); // sum X1^i
    PowerSeries p = ps_mul(g, g);
    p.update_to(3);
    CHECK(p.part(3) == x1_power(3, 4)); // convolution of ones: k+1

    PowerSeries one = ps_constant(ctx, Rational(1));
    PowerSeries idp = ps_mul(one, g);
    idp.update_to(7);
    for (int d = 0; d <= 7; ++d)
        CHECK(idp.part(d) == g.part(d));
}

TEST_CASE("(X1+X2)(X1-X2) through the lazy path") {
    auto ctx = make_context(2);
    PowerSeries x1 = ps_variable(ctx, 1);
    PowerSeries x2 = ps_variable(ctx, 2);
    PowerSeries p = ps_mul(ps_add(x1, x2), ps_sub(x1, x2));
    p.update_to(2);
    CHECK(p.part(1).is_zero());
    HomogeneousPart expect = hp_sub(HomogeneousPart::monomial_term(Monomial{{2, 0}}, Rational(1)),
                                    HomogeneousPart::monomial_term(Monomial{{0, 2}}, Rational(1)));
    CHECK(p.part(2) == expect);
}

TEST_CASE("updates recurse into ancestors and are idempotent") {
    auto ctx = make_context(1);
    PowerSeries g = testing::dense_series(ctx, 30);
    PowerSeries h = testing::dense_series(ctx, 30);
    PowerSeries s = ps_add(g, h);
    s.update_to(4);
    CHECK(g.precision() >= 4);
    CHECK(h.precision() >= 4);

    PowerSeries p = ps_mul(s, h);
    p.update_to(10);
    ops::CountingScope scope;
    p.update_to(10);
    p.update_to(7);
    CHECK(ops::snapshot() == OpCounter{}); // already computed: no work
}

TEST_CASE("resuming an update equals a fresh run") {
    auto build = [](const std::shared_ptr<SeriesContext>& ctx) {
        PowerSeries g = testing::dense_series(ctx, 60);
        PowerSeries h = testing::dense_series(ctx, 60);
        return ps_mul(ps_add(g, h), ps_mul(g, h));
    };
    auto ctx1 = make_context(1);
    PowerSeries resumed = build(ctx1);
    resumed.update_to(20);
    resumed.update_to(40);
    auto ctx2 = make_context(1);
    PowerSeries fresh = build(ctx2);
    fresh.update_to(40);
    for (int d = 0; d <= 40; ++d)
        CHECK(resumed.part(d) == fresh.part(d));
}

TEST_CASE("order probes") {
    auto ctx = make_context(2);
    PowerSeries x1 = ps_variable(ctx, 1);
    PowerSeries x2 = ps_variable(ctx, 2);
    PowerSeries f = ps_add(ps_mul(x1, x1), ps_mul(x1, x2)); // X1^2 + X1 X2
    CHECK(f.order(10) == 2);
    CHECK(ps_constant(ctx, Rational(5)).order(10) == 0);
    CHECK(!ps_constant(ctx, Rational(0)).order(10).has_value());
}

TEST_CASE("context mismatch is rejected") {
    auto ctx1 = make_context(1);
    auto ctx2 = make_context(1);
    CHECK_THROWS_AS(ps_add(ps_constant(ctx1, Rational(1)), ps_constant(ctx2, Rational(1))),
                    ContextMismatchError);
}

TEST_CASE("lazy product agrees with the eager polynomial oracle") {
    std::mt19937 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        unsigned n = 1 + trial % 2;
        auto ctx = make_context(n);
        Polynomial pa = testing::random_polynomial(rng, n, 5);
        Polynomial pb = testing::random_polynomial(rng, n, 5);
        PowerSeries a = ps_from_polynomial(ctx, pa);
        PowerSeries b = ps_from_polynomial(ctx, pb);
        PowerSeries prod = ps_mul(a, b);
        int k = 7;
        Polynomial expect = (pa * pb).truncated(k);
        CHECK(oracles::truncate_series(prod, k) == expect);
    }
}

TEST_CASE("reading beyond precision fails loudly") {
    auto ctx = make_context(1);
    PowerSeries g = testing::dense_series(ctx, 5);
    PowerSeries p = ps_mul(g, g);
    p.update_to(2);
    CHECK_THROWS_AS((void)p.part(3), Error);
}

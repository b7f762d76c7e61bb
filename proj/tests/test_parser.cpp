#include <doctest.h>

#include <random>

#include "pseries/families.hpp"
#include "pseries/parser.hpp"
#include "pseries/weierstrass.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace pseries;

TEST_CASE("expression parsing") {
    UPoPS f = parse_upops_expr("Y^2 + Y + X1", 1);
    CHECK(f.degree() == 2);
    CHECK(oracles::truncate_series(f.coeff(0), 4) == Polynomial::variable(1, 1));
    CHECK(oracles::truncate_series(f.coeff(1), 4) == Polynomial::constant(1, Rational(1)));
    CHECK(oracles::truncate_series(f.coeff(2), 4) == Polynomial::constant(1, Rational(1)));

    UPoPS g = parse_upops_expr("(X1^2 + X1*X2 + X2^2)", 2);
    CHECK(g.degree() == 0);
    Polynomial x1 = Polynomial::variable(2, 1);
    Polynomial x2 = Polynomial::variable(2, 2);
    CHECK(oracles::truncate_series(g.coeff(0), 4) == x1 * x1 + x1 * x2 + x2 * x2);

    // precedence: ^ binds before unary minus, * before +
    UPoPS h = parse_upops_expr("-X1^2 + 2*X1*X2", 2);
    CHECK(oracles::truncate_series(h.coeff(0), 4) == x1 * x2.scaled(Rational(2)) - x1 * x1);

    // rational literals via constant division
    UPoPS q = parse_upops_expr("1/2*Y + 3/4", 1);
    CHECK(oracles::truncate_series(q.coeff(1), 2) == Polynomial::constant(1, Rational(1, 2)));
    CHECK(oracles::truncate_series(q.coeff(0), 2) == Polynomial::constant(1, Rational(3, 4)));
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_upops_expr("Y / X1", 1), ParseError);
    CHECK_THROWS_AS(parse_upops_expr("Y / 0", 1), ParseError);
    CHECK_THROWS_AS(parse_upops_expr("X3 + 1", 2), ParseError);
    CHECK_THROWS_AS(parse_upops_expr("Y^-2", 1), ParseError);
    CHECK_THROWS_AS(parse_upops_expr("Y +", 1), ParseError);
    CHECK_THROWS_AS(parse_upops_expr("(Y + 1", 1), ParseError);
    CHECK_THROWS_AS(parse_upops_expr("Y $ 2", 1), ParseError);
    try {
        parse_upops_expr("Y ? 2", 1);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.line == 1);
        CHECK(e.column == 3);
    }
}

TEST_CASE("file parsing") {
    std::string text = "# sample input\n"
                       "vars 2\n"
                       "upops Y^2 + (X1^2 + X2)*Y + X1^2   # trailing comment\n"
                       "ops weierstrass k=12 threads=3\n";
    ParsedInput in = parse_upops_file(text);
    CHECK(in.n_vars == 2);
    CHECK(in.upops.degree() == 2);
    REQUIRE(in.ops.has_value());
    CHECK(in.ops->command == "weierstrass");
    CHECK(in.ops->params.at("k") == 12);
    CHECK(in.ops->params.at("threads") == 3);

    CHECK_THROWS_AS(parse_upops_file("upops Y\n"), ParseError);
    CHECK_THROWS_AS(parse_upops_file("vars 1\n"), ParseError);
    CHECK_THROWS_AS(parse_upops_file("vars 1\nnonsense Y\n"), ParseError);
}

TEST_CASE("rendering") {
    UPoPS f = parse_upops_expr("Y^2 + X1", 1);
    CHECK(render_parts(f, 3) == "Y^2 + (X1)");

    UPoPS g = parse_upops_expr("Y^2 + Y + X1", 1);
    WeierstrassPair pair = weierstrass_prepare(g);
    pair.update_to(3);
    CHECK(render_series(pair.b(0), 3) == "X1 + X1^2 + 2*X1^3");

    auto ctx = make_context(1);
    CHECK(render_series(ps_constant(ctx, Rational(0)), 4) == "0");
    UPoPS z({ps_constant(ctx, Rational(0))});
    CHECK(render_parts(z, 4) == "0");
}

TEST_CASE("parse-render round trip on random inputs") {
    std::mt19937 rng(97);
    std::uniform_int_distribution<unsigned> nv(1, 3);
    std::uniform_int_distribution<int> yd(0, 8);
    const int k = 6;
    for (int trial = 0; trial < 200; ++trial) {
        unsigned n = nv(rng);
        auto ctx = make_context(n);
        int d = yd(rng);
        std::vector<PowerSeries> coeffs;
        for (int i = 0; i <= d; ++i)
            coeffs.push_back(ps_from_polynomial(ctx, testing::random_polynomial(rng, n, 6)));
        UPoPS f(coeffs);
        std::string text = render_parts(f, k);
        UPoPS back = parse_upops_expr(text, n);
        REQUIRE(back.degree() <= f.degree());
        for (int i = 0; i <= f.degree(); ++i) {
            Polynomial expect = f.coeff_truncated(i, k);
            Polynomial got = i <= back.degree() ? back.coeff_truncated(i, k) : Polynomial(n);
            CHECK(got == expect);
        }
    }
}

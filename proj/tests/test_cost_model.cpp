#include <doctest.h>

#include <random>

#include "pseries/cost_model.hpp"
#include "pseries/families.hpp"
#include "pseries/hensel.hpp"
#include "pseries/parallel.hpp"

using namespace pseries;

TEST_CASE("phase-2 term work") {
    CHECK(phase2_term_work(3, 5, true).units == 2);
    CHECK(phase2_term_work(7, 5, true).units == 5);
    CHECK(phase2_term_work(7, 5, false).units == 5);
    CHECK(phase2_term_work(1, 5, true).units == 0);
    CHECK(phase2_term_work(1, 5, false).units == 1);
}

TEST_CASE("per-stage work of the factorization families") {
    UPoPS x4 = gen_family(Family::X, 4);
    HenselFactorization hx = hensel_factorize(x4);
    std::vector<std::uint64_t> wx;
    int d = 4;
    for (int i = 0; i + 1 < hx.factor_count(); ++i) {
        int di = hx.factor(i).degree();
        wx.push_back(hensel_stage_work(di, d - di).units);
        d -= di;
    }
    wx.push_back(0);
    CHECK(wx == std::vector<std::uint64_t>{3, 2, 1, 0});

    UPoPS y4 = gen_family(Family::Y, 4);
    HenselFactorization hy = hensel_factorize(y4);
    std::vector<std::uint64_t> wy;
    d = 10;
    for (int i = 0; i + 1 < hy.factor_count(); ++i) {
        int di = hy.factor(i).degree();
        wy.push_back(hensel_stage_work(di, d - di).units);
        d -= di;
    }
    wy.push_back(0);
    CHECK(wy == std::vector<std::uint64_t>{9, 14, 12, 0});
}

TEST_CASE("preparation cost closed forms") {
    CHECK(weierstrass_total_cost(1, 1, 10, false).units == 210);
    CHECK(weierstrass_total_cost(2, 3, 5, true).units == 180);
    CHECK(weierstrass_total_cost(3, 2, 0, false).units == 0);

    for (int d = 1; d <= 4; ++d)
        for (int m = 1; m <= 4; ++m)
            for (int k = 1; k <= 6; ++k)
                CHECK(weierstrass_total_cost(d, m, k, true).units <
                      weierstrass_total_cost(d, m, k, false).units);
}

TEST_CASE("stage work sums stay below the squared degree") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> count(1, 8);
    std::uniform_int_distribution<int> deg(1, 6);
    for (int trial = 0; trial < 200; ++trial) {
        int r = count(rng);
        std::vector<int> degrees;
        std::uint64_t d = 0;
        for (int i = 0; i < r; ++i) {
            degrees.push_back(deg(rng));
            d += static_cast<std::uint64_t>(degrees.back());
        }
        std::uint64_t sum = 0;
        std::uint64_t rest = d;
        for (int i = 0; i + 1 < r; ++i) {
            sum += hensel_stage_work(degrees[static_cast<size_t>(i)],
                                     static_cast<int>(rest) - degrees[static_cast<size_t>(i)])
                       .units;
            rest -= static_cast<std::uint64_t>(degrees[static_cast<size_t>(i)]);
        }
        CHECK(sum < d * d);
    }
}

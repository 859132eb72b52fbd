// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fpsprec/oracle.hpp"
#include "test_helpers.hpp"

using namespace fpsprec;

TEST_CASE("brute force: frozen enumeration result for [3, 2, -1]") {
    // Enumerating all 8 configurations by hand: the best is s = [1,1,0] with
    // alpha = (3+2)/2 = 2.5 and f = 0.25 + 0.25 + 1 = 1.5.
    const arma::vec x{3.0, 2.0, -1.0};
    const auto res = brute_force_alpha_s(x, {});
    CHECK(res.f == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(res.alpha == doctest::Approx(2.5).epsilon(1e-12));
    REQUIRE(res.s.n_elem == 3);
    CHECK(res.s[0] == 1);
    CHECK(res.s[1] == 1);
    CHECK(res.s[2] == 0);
}

TEST_CASE("brute force: zero vector keeps everything off") {
    const arma::vec x{0.0, 0.0};
    const auto res = brute_force_alpha_s(x, {});
    CHECK(res.f == 0.0);
    CHECK(res.s[0] == 0);
    CHECK(res.s[1] == 0);
}

TEST_CASE("brute force: exactly representable negative target") {
    const arma::vec x{-4.0, -4.0};
    const auto res = brute_force_alpha_s(x, {});
    CHECK(res.f == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(res.alpha == doctest::Approx(-4.0));
}

TEST_CASE("brute force: budget cap raises") {
    OracleBudget tight;
    tight.max_n = 4;
    CHECK_THROWS_AS(brute_force_alpha_s(arma::vec(5, arma::fill::ones), tight),
                    std::invalid_argument);
    // The hard cap holds even when the budget asks for more.
    OracleBudget loose;
    loose.max_n = 64;
    CHECK_THROWS_AS(brute_force_alpha_s(arma::vec(25, arma::fill::ones), loose),
                    std::invalid_argument);
}

TEST_CASE("grid scan: exact representation case lands near zero") {
    const arma::vec x{1.0, 1.0, 0.0};
    const auto res = grid_alpha_scan(x, {});
    CHECK(res.f == doctest::Approx(0.0).epsilon(1e-6));
    CHECK(res.alpha == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("grid scan: matches the enumeration oracle on [3, 2, -1]") {
    const arma::vec x{3.0, 2.0, -1.0};
    const auto res = grid_alpha_scan(x, {});
    CHECK(res.f == doctest::Approx(1.5).epsilon(1e-6));
}

TEST_CASE("grid scan: never beats the enumeration oracle") {
    Rng rng(77);
    OracleBudget budget;
    budget.grid_points = 20001;  // keep this case fast
    for (int c = 0; c < 25; ++c) {
        const arma::vec x = test::random_vec(rng, 12);
        const auto grid = grid_alpha_scan(x, budget);
        const auto brute = brute_force_alpha_s(x, budget);
        CHECK(grid.f >= brute.f - 1e-9);
    }
}

TEST_CASE("eigen rate: identity channel with two equal-power streams") {
    const arma::cx_mat h(2, 2, arma::fill::eye);
    CHECK(eigen_rate_oracle(h, 1.0, 2) ==
          doctest::Approx(2.0 * std::log2(1.5)).epsilon(1e-12));
}

TEST_CASE("eigen rate: single dominant mode") {
    arma::cx_mat h(2, 2, arma::fill::zeros);
    h(0, 0) = 2.0;
    CHECK(eigen_rate_oracle(h, 1.0, 1) == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
}

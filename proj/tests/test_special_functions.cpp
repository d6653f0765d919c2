#include "zonal/special_functions.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>

#include "oracles.hpp"

using zonal::gamma0;
using zonal::gegenbauer_eval;
using zonal::gen_binomial;
using zonal::gen_binomial_exact;
using zonal::Lambda;

TEST_CASE("Lambda ties dimension and order") {
    CHECK(Lambda(2).lambda == 0.5);
    CHECK(Lambda(3).lambda == 1.0);
    CHECK(Lambda(6).lambda == 2.5);
    CHECK_THROWS_AS(Lambda(1), std::domain_error);
    CHECK_THROWS_AS(Lambda(0), std::domain_error);
}

TEST_CASE("Gegenbauer base cases") {
    for (int n : {2, 3, 4, 5, 6}) {
        CHECK(gegenbauer_eval(0, Lambda(n), 0.3) == 1.0);
    }
    // C_1 = 2*lambda*t; lambda = 1/2 gives the Legendre P_1
    CHECK(gegenbauer_eval(1, Lambda(2), 0.5) == Catch::Approx(0.5).epsilon(1e-15));
    // value at t=1 equals the generalized binomial: binom(2,2) = 1
    CHECK(gegenbauer_eval(2, Lambda(2), 1.0) == Catch::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("Gegenbauer against the explicit-sum reference") {
    // frozen from a 50-digit evaluation of the explicit sum
    CHECK(gegenbauer_eval(5, Lambda(4), 0.7) == Catch::Approx(-3.26468625).epsilon(1e-13));

    for (int n : {2, 3, 4, 5, 6}) {
        const double lambda = (n - 1) / 2.0;
        for (int l = 0; l <= 12; ++l) {
            for (double t : {-1.0, -0.73, -0.2, 0.0, 0.31, 0.5, 0.99, 1.0}) {
                const double expected = static_cast<double>(
                    oracles::gegenbauer_explicit(l, lambda, t));
                const double got = gegenbauer_eval(l, Lambda(n), t);
                CHECK(got == Catch::Approx(expected).margin(1e-12).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("Gegenbauer precondition violations") {
    CHECK_THROWS_AS(gegenbauer_eval(3, Lambda(2), 1.0001), std::domain_error);
    CHECK_THROWS_AS(gegenbauer_eval(3, Lambda(2), -2.0), std::domain_error);
    CHECK_THROWS_AS(gegenbauer_eval(-1, Lambda(2), 0.5), std::domain_error);
}

TEST_CASE("Value at t=1 equals the generalized binomial up to l=200") {
    for (int n : {2, 3, 4, 5, 6}) {
        const Lambda lam(n);
        for (std::int64_t l = 0; l <= 200; ++l) {
            const double binom = gen_binomial(l, lam);
            const double poly = gegenbauer_eval(l, lam, 1.0);
            CHECK(poly == Catch::Approx(binom).epsilon(1e-10));
        }
    }
}

TEST_CASE("Generalized binomial spot values") {
    CHECK(gen_binomial(0, Lambda(3)) == 1.0);
    // lambda = 1: binom(4,3) = 4
    CHECK(gen_binomial(3, Lambda(3)) == Catch::Approx(4.0).epsilon(1e-13));
    // 2*lambda = 1 collapses every binom(l, l) to 1
    CHECK(gen_binomial(4, Lambda(2)) == Catch::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(gen_binomial(-1, Lambda(2)), std::domain_error);
}

TEST_CASE("Integer path agrees with the log-gamma path") {
    for (int n : {2, 3, 4, 5, 6, 7}) {
        const Lambda lam(n);
        for (std::int64_t l = 0; l <= 500; ++l) {
            const double exact = gen_binomial_exact(l, lam);
            const double lg = gen_binomial(l, lam);
            CHECK(lg == Catch::Approx(exact).epsilon(1e-12));
        }
    }
}

TEST_CASE("Incomplete gamma spot values") {
    // frozen from a 50-digit series evaluation of E_1
    CHECK(gamma0(1.0) == Catch::Approx(0.21938393439552027).epsilon(1e-12));
    CHECK(gamma0(1.5) == Catch::Approx(0.10001958240663265).epsilon(1e-12));
    CHECK(gamma0(2.0) == Catch::Approx(0.048900510708061120).epsilon(1e-12));

    // leading asymptotic order e^{-x}/x at x = 50 is off by under 2%
    const double lead = static_cast<double>(oracles::e1_asymptotic_leading(50.0L));
    CHECK(std::abs(gamma0(50.0) - lead) / gamma0(50.0) < 0.02);
    CHECK(std::abs(gamma0(50.0) - lead) / gamma0(50.0) > 0.001);

    // small-x expansion -euler_gamma - ln(x) + O(x)
    CHECK(gamma0(1e-8) == Catch::Approx(17.843465089050833).epsilon(1e-12));
    const double log_form = 17.843465079050833; // -euler_gamma - ln(1e-8)
    CHECK(std::abs(gamma0(1e-8) - log_form) < 1.5e-8);

    CHECK_THROWS_AS(gamma0(0.0), std::domain_error);
    CHECK_THROWS_AS(gamma0(-1.0), std::domain_error);
}

TEST_CASE("Incomplete gamma branches agree across the overlap window") {
    for (double x = 1.0; x <= 2.0; x += 0.03125) {
        const double series = zonal::detail::gamma0_series(x);
        const double cf = zonal::detail::gamma0_continued_fraction(x);
        CHECK(series == Catch::Approx(cf).epsilon(1e-12));
        const double reference = static_cast<double>(oracles::e1_series(
            static_cast<long double>(x)));
        CHECK(gamma0(x) == Catch::Approx(reference).epsilon(1e-12));
    }
}

TEST_CASE("Incomplete gamma is positive and strictly decreasing") {
    double prev = std::numeric_limits<double>::infinity();
    for (double lx = std::log(1e-6); lx <= std::log(50.0); lx += 0.05) {
        const double x = std::exp(lx);
        const double g = gamma0(x);
        CHECK(g > 0.0);
        CHECK(g < prev);
        prev = g;
    }
}

namespace {

// Exact integer form of the sandwich
//   l + 1/2 - 1/(8l) <= sqrt(l(l+1)) <= l + 1/2 - 1/(8l) + 1/(16 l^2):
// denominators cleared and both sides squared.
bool sandwich_holds_exact(std::int64_t l) {
    using u128 = unsigned __int128;
    const u128 L = static_cast<u128>(l);
    const u128 lower = 8 * L * L + 4 * L - 1;
    if (lower * lower > 64 * L * L * L * L + 64 * L * L * L) return false;
    const u128 upper = 16 * L * L * L + 8 * L * L - 2 * L + 1;
    return 256 * L * L * L * L * L * L + 256 * L * L * L * L * L <= upper * upper;
}

} // namespace

TEST_CASE("sqrt(l(l+1)) sandwich holds for every l up to 1e6") {
    for (std::int64_t l = 1; l <= 1'000'000; ++l) {
        if (!sandwich_holds_exact(l)) {
            FAIL("sandwich fails at l=" << l);
        }
    }
    SUCCEED();
}

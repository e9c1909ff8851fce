#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <random>

#include "doctest.h"
#include "lbj/log_gamma.hpp"

using lbj::log_gamma;
using lbj::log_gamma_difference;
using lbj::log_gamma_ratio;

TEST_CASE("gamma ratio: small exact cases")
{
    CHECK(log_gamma_ratio(5.0, 3.0) == doctest::Approx(12.0).epsilon(1e-14));
    CHECK(log_gamma_ratio(1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(log_gamma_ratio(0.5, 1.5) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("gamma ratio: matches boost tgamma_ratio to 1e-13")
{
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> arg(1e-3, 500.0);
    double worst = 0;
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        const double a = arg(rng);
        const double b = std::uniform_real_distribution<double>(std::max(1e-3, a - 60), a + 60)(rng);
        if (b <= 0 || b > 500)
            continue;
        const double ref = boost::math::tgamma_ratio(a, b);
        if (!std::isfinite(ref) || ref == 0)
            continue;
        worst = std::max(worst, std::abs(log_gamma_ratio(a, b) / ref - 1));
        ++checked;
    }
    CHECK(checked > 1000);
    CHECK(worst <= 1e-13);
}

TEST_CASE("gamma ratio: no overflow where the gammas themselves overflow")
{
    // G(400.5)/G(400) ~ sqrt(400)
    const double r = log_gamma_ratio(400.5, 400.0);
    CHECK(std::isfinite(r));
    CHECK(r == doctest::Approx(1.0 / boost::math::tgamma_delta_ratio(400.0, 0.5)).epsilon(1e-13));
}

TEST_CASE("log gamma difference is antisymmetric and agrees with lgamma at moderate size")
{
    for (double a : {0.1, 0.5, 1.0, 3.7, 12.25, 80.0})
        for (double b : {0.3, 2.0, 9.9, 45.5}) {
            CHECK(log_gamma_difference(a, b) == doctest::Approx(-log_gamma_difference(b, a)).epsilon(1e-15));
            CHECK(log_gamma_difference(a, b) ==
                  doctest::Approx(std::lgamma(a) - std::lgamma(b)).epsilon(1e-12).scale(1.0));
        }
    CHECK(log_gamma(1.0) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-15));
}

TEST_CASE("long double instantiation")
{
    const long double r = log_gamma_ratio(7.0L, 2.5L);
    const long double ref = std::tgamma(7.0L) / std::tgamma(2.5L);
    // Tighter than anything a double evaluation can reach.
    CHECK(std::abs(r / ref - 1.0L) <= 1e-16L);
}

TEST_CASE("non-positive arguments are rejected")
{
    CHECK_THROWS_AS(log_gamma_ratio(0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma_ratio(1.0, -2.0), std::domain_error);
    CHECK_THROWS_AS(log_gamma(-0.5), std::domain_error);
}

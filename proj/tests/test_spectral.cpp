#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "fd_order.hpp"
#include "fixtures/frozen_values.hpp"
#include "lbj/log_gamma.hpp"
#include "lbj/orthopoly.hpp"
#include "lbj/spectral.hpp"

using namespace lbj;

namespace {

// At nu = 1/2 the integrand is sqrt(2/(pi mu)) e^{-x/2} sin(mu x) L_n^1(x).
// Expanding L_n^1 in powers of x and using
//   int_0^inf x^k e^{-x/2} sin(mu x) dx = Im k! / (1/2 - i mu)^{k+1}
// gives an evaluation that shares nothing with the Gegenbauer form.
double half_order_oracle(int n, double mu)
{
    const std::complex<double> z(0.5, -mu);
    double sum = 0;
    for (int k = 0; k <= n; ++k) {
        const double binom = std::tgamma(n + 2.0) / (std::tgamma(n - k + 1.0) * std::tgamma(k + 2.0));
        sum += ((k % 2) ? -1.0 : 1.0) * binom * std::imag(1.0 / std::pow(z, k + 1));
    }
    return std::sqrt(2 / (std::numbers::pi * mu)) * sum;
}

}  // namespace

TEST_CASE("angle map: sample points")
{
    const auto a = angle_map(0.5);
    CHECK(a.cos_theta == doctest::Approx(0.0).scale(1.0).epsilon(1e-16));
    CHECK(a.sin_theta == doctest::Approx(1.0).epsilon(1e-16));
    const auto b = angle_map(1.0);
    CHECK(b.cos_theta == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(b.sin_theta == doctest::Approx(0.8).epsilon(1e-15));
    const auto c = angle_map(2.0);
    CHECK(c.cos_theta == doctest::Approx(15.0 / 17).epsilon(1e-15));
    CHECK(c.sin_theta == doctest::Approx(8.0 / 17).epsilon(1e-15));
    const auto z = angle_map(0.0);
    CHECK(z.cos_theta == -1.0);
    CHECK(z.sin_theta == 0.0);
}

TEST_CASE("angle map: Pythagorean identity, sign and monotonicity on a log grid")
{
    double prev_cos = -1.0;
    for (double e = -6.0; e <= 6.0; e += 0.01) {
        const double mu = std::pow(10.0, e);
        const auto a = angle_map(mu);
        CAPTURE(mu);
        CHECK(std::abs(a.cos_theta * a.cos_theta + a.sin_theta * a.sin_theta - 1) <= 1e-14);
        CHECK(a.sin_theta >= 0);
        CHECK(a.cos_theta >= prev_cos);
        prev_cos = a.cos_theta;
    }
    // Strict increase where the grid resolves it.
    CHECK(angle_map(0.3).cos_theta < angle_map(0.31).cos_theta);
    CHECK(angle_map(40.0).cos_theta < angle_map(41.0).cos_theta);
}

TEST_CASE("amplitude constant")
{
    CHECK(amplitude_constant(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(amplitude_constant(0.5) == doctest::Approx(std::sqrt(2 / std::numbers::pi)).epsilon(1e-15));
    CHECK(amplitude_constant(1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("envelope")
{
    CHECK(envelope(0.0, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(envelope(0.0, 1.0) == doctest::Approx(std::sqrt(0.8)).epsilon(1e-15));
    CHECK(envelope(0.5, 1.0) == doctest::Approx(std::sqrt(2 / std::numbers::pi) * 0.8).epsilon(1e-15));
    CHECK(std::isfinite(envelope(2.5, 1e6)));
    CHECK(envelope(2.5, 1e6) > 0);
}

TEST_CASE("closed form: sample values")
{
    CHECK(closed_form_integral(0, 0.0, 0.5) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(closed_form_integral(1, 0.5, 1.0) == doctest::Approx(0.7659691784).epsilon(1e-10));
    CHECK(closed_form_integral(1, 0.5, 1.0) ==
          doctest::Approx(std::sqrt(2 / std::numbers::pi) * (2 * 0.8 - 0.64)).epsilon(1e-15));
}

TEST_CASE("closed form: matches frozen high-precision quadrature")
{
    for (const auto& c : fixtures::kIntegrals) {
        CAPTURE(c.n);
        CAPTURE(c.nu);
        CAPTURE(c.mu);
        CHECK(std::abs(closed_form_integral(c.n, c.nu, c.mu) - c.value) <= 1e-13 * std::max(1.0, std::abs(c.value)));
    }
}

TEST_CASE("closed form: half-order elementary evaluation")
{
    for (double mu : {0.5, 1.0, 2.0, 0.2, 7.0})
        for (int n = 0; n <= 5; ++n) {
            const double ref = half_order_oracle(n, mu);
            CAPTURE(n);
            CAPTURE(mu);
            CHECK(std::abs(closed_form_integral(n, 0.5, mu) - ref) <= 1e-10 * std::max(std::abs(ref), 1e-300) + 1e-15);
        }
}

TEST_CASE("closed form: mu = 0 limits")
{
    for (int n = 0; n <= 10; ++n) {
        const auto cell = closed_form_cell(n, 0.0, 0.0);
        CHECK(cell.limit);
        CHECK(cell.value == ((n % 2) ? -2.0 : 2.0));
        CHECK(closed_form_cell(n, 1.5, 0.0).value == 0.0);
    }
    CHECK_FALSE(closed_form_cell(3, 0.0, 0.1).limit);
    // The limit is approached continuously from the product form.
    CHECK(closed_form_integral(4, 0.0, 1e-7) == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(closed_form_integral(4, 1.0, 1e-7)) <= 1e-4);
    CHECK_THROWS_AS(closed_form_integral(0, -0.25, 0.0), std::domain_error);
}

TEST_CASE("expansion coefficient")
{
    CHECK(expansion_coefficient(0, 0.0, 1.0) == doctest::Approx(std::sqrt(0.8)).epsilon(1e-15));
    CHECK(expansion_coefficient(0, 1.0, 0.5) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
    CHECK(expansion_coefficient(1, 0.0, 1.0) == doctest::Approx(std::sqrt(0.8) * 0.6).epsilon(1e-15));
    CHECK_THROWS_AS(expansion_coefficient(0, 0.0, 0.0), std::domain_error);
}

TEST_CASE("p_value")
{
    CHECK(p_value(0, 0.0, 1.0) == doctest::Approx(0.8944272).epsilon(1e-7));
    CHECK(p_value(1, 0.0, 1.0) == doctest::Approx(0.5366563).epsilon(1e-7));
    CHECK(p_value(2, 0.0, 1.0) == doctest::Approx(0.0357771).epsilon(1e-6));
    CHECK(p_value(2, 0.0, 1.0) == doctest::Approx(std::sqrt(0.8) * 0.04).epsilon(1e-13));
}

TEST_CASE("closed form and p_value agree for positive mu")
{
    for (double nu : {-0.3, 0.0, 0.25, 1.0, 2.5, 6.0})
        for (double mu : {1e-3, 0.1, 0.5, 1.0, 3.0, 10.0, 1e3})
            for (int n : {0, 1, 2, 7, 30, 100}) {
                const double p = p_value(n, nu, mu);
                CHECK(std::abs(closed_form_integral(n, nu, mu) - p) <= 1e-13 * std::max(1.0, std::abs(p)));
            }
}

TEST_CASE("envelope ODE residual")
{
    CHECK(envelope_ode_residual(0.0, 1.0, 1e-5) <= 1e-8);
    CHECK(envelope_ode_residual(0.5, 0.5, 1e-5) <= 1e-8);
    const auto r = testing::halving_ratios([](double h) { return envelope_ode_residual(2.5, 3.0, h); }, 1e-2, 0);
    CHECK(r.ratio1 == doctest::Approx(4.0).epsilon(0.05));
    CHECK(r.ratio2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("envelope ODE residual: observed order at least 1.9")
{
    for (double nu : {0.0, 0.5, 1.0, 2.5})
        for (double mu : {0.3, 1.0, 3.0, 8.0}) {
            const auto r = testing::halving_ratios([&](double h) { return envelope_ode_residual(nu, mu, h); },
                                                   1e-2 * std::min(1.0, mu), 0);
            CAPTURE(nu);
            CAPTURE(mu);
            CHECK(std::log2(r.ratio1) >= 1.9);
            CHECK(std::log2(r.ratio2) >= 1.9);
        }
}

// (1/2)^nu / G(nu+1) = A_nu 2^{2nu+1} / G(2nu+1) * S, where S is the Cesaro
// value of sum (-1)^n L_n^{2nu}(0).
TEST_CASE("normalization identity through the Cesaro-summed generating function")
{
    for (double nu : {0.0, 0.5, 1.0}) {
        const auto s = laguerre_generating_partial(2 * nu, 0.0, -1.0, 4096);
        const double lhs = std::pow(0.5, nu) / std::tgamma(nu + 1);
        const double rhs = amplitude_constant(nu) * std::pow(2.0, 2 * nu + 1) / std::tgamma(2 * nu + 1) * s.cesaro;
        CAPTURE(nu);
        CHECK(std::abs(rhs / lhs - 1) <= 1e-6);
    }
}

TEST_CASE("long double instantiation")
{
    const long double v = closed_form_integral(0, 0.0L, 0.5L);
    CHECK(std::abs(v - std::numbers::sqrt2_v<long double>) <= 1e-16L);
}

TEST_CASE("spectral domain errors")
{
    CHECK_THROWS_AS(angle_map(-1.0), std::domain_error);
    CHECK_THROWS_AS(envelope(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(amplitude_constant(-0.5), std::domain_error);
    CHECK_THROWS_AS(closed_form_integral(-1, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(closed_form_integral(0, 0.0, -1.0), std::domain_error);
    CHECK_THROWS_AS(envelope_ode_residual(0.0, 1e-3, 1e-2), std::domain_error);
}

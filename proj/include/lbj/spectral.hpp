#pragma once

// Closed-form side of the Laguerre/Bessel projection
//
//   P_n(mu) = int_0^inf x^nu e^{-x/2} J_nu(mu x) L_n^{2nu}(x) dx
//           = f_nu(mu) C_n^{nu+1/2}(cos theta),
//
//   f_nu(mu)  = A_nu mu^{-1/2} (sin theta)^{nu+1/2},
//   A_nu      = 2^nu G(nu + 1/2) / sqrt(pi),
//   cos theta = (mu^2 - 1/4) / (mu^2 + 1/4),  sin theta = mu / (mu^2 + 1/4).

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lbj/log_gamma.hpp"
#include "lbj/orthopoly.hpp"

namespace lbj {

template <typename Scalar>
struct AngleCoordinates {
    Scalar mu;
    Scalar cos_theta;
    Scalar sin_theta;
};

namespace detail {

template <typename Scalar>
void check_order_nu(Scalar nu, const char* who)
{
    if (!(nu > Scalar(-0.5)))
        throw std::domain_error(std::string(who) + ": nu must exceed -1/2");
}

template <typename Scalar>
void check_positive_mu(Scalar mu, const char* who)
{
    if (!(mu > 0))
        throw std::domain_error(std::string(who) + ": mu must be positive");
}

}  // namespace detail

/// mu -> (cos theta, sin theta). Evaluated in 1/(4 mu^2) for mu >= 1/2 so
/// neither branch squares a huge or tiny number unnecessarily.
template <typename Scalar>
AngleCoordinates<Scalar> angle_map(Scalar mu)
{
    if (!(mu >= 0))
        throw std::domain_error("angle_map: mu must be non-negative");
    if (mu >= Scalar(0.5)) {
        const Scalar r = 1 / (4 * mu * mu);
        return {mu, (1 - r) / (1 + r), (1 / mu) / (1 + r)};
    }
    const Scalar s = 4 * mu * mu;
    return {mu, (s - 1) / (s + 1), 4 * mu / (s + 1)};
}

/// ln A_nu
template <typename Scalar>
Scalar log_amplitude_constant(Scalar nu)
{
    using std::log;
    detail::check_order_nu(nu, "amplitude_constant");
    return nu * std::numbers::ln2_v<Scalar> + log_gamma(nu + Scalar(0.5)) -
           Scalar(0.5) * log(std::numbers::pi_v<Scalar>);
}

/// A_nu = 2^nu G(nu + 1/2) / sqrt(pi)
template <typename Scalar>
Scalar amplitude_constant(Scalar nu)
{
    using std::exp;
    return exp(log_amplitude_constant(nu));
}

/// f_nu(mu) = A_nu mu^{-1/2} (sin theta)^{nu+1/2}, assembled in logs.
template <typename Scalar>
Scalar envelope(Scalar nu, Scalar mu)
{
    using std::exp;
    using std::log;
    detail::check_order_nu(nu, "envelope");
    detail::check_positive_mu(mu, "envelope");
    const auto angle = angle_map(mu);
    return exp(log_amplitude_constant(nu) - Scalar(0.5) * log(mu) +
               (nu + Scalar(0.5)) * log(angle.sin_theta));
}

/// f_nu(mu) C_n^{nu+1/2}(cos theta), the P_n normalisation of the
/// expansion coefficients.
template <typename Scalar>
Scalar p_value(int n, Scalar nu, Scalar mu)
{
    const Scalar f = envelope(nu, mu);
    const auto angle = angle_map(mu);
    return f * gegenbauer(n, nu + Scalar(0.5), angle.cos_theta);
}

template <typename Scalar>
struct ClosedFormCell {
    int n;
    Scalar nu;
    Scalar mu;
    Scalar value;
    /// mu == 0: value is the continuous extension, not a product of factors.
    bool limit = false;
};

/// int_0^inf x^nu e^{-x/2} J_nu(mu x) L_n^{2nu}(x) dx in closed form.
///
/// At mu = 0 the factor mu^{-1/2} (sin theta)^{nu+1/2} ~ 2^{2nu+1} mu^nu has
/// the limit 0 for nu > 0 and 2 for nu = 0 (with C_n^{1/2}(-1) = (-1)^n).
/// For -1/2 < nu < 0 the integral diverges at mu = 0.
template <typename Scalar>
ClosedFormCell<Scalar> closed_form_cell(int n, Scalar nu, Scalar mu)
{
    detail::check_order(n, "closed_form_integral");
    detail::check_order_nu(nu, "closed_form_integral");
    if (!(mu >= 0))
        throw std::domain_error("closed_form_integral: mu must be non-negative");
    if (mu == 0) {
        if (nu > 0)
            return {n, nu, mu, Scalar(0), true};
        if (nu == 0)
            return {n, nu, mu, (n % 2 == 0) ? Scalar(2) : Scalar(-2), true};
        throw std::domain_error("closed_form_integral: no finite mu = 0 limit for nu < 0");
    }
    return {n, nu, mu, p_value(n, nu, mu), false};
}

template <typename Scalar>
Scalar closed_form_integral(int n, Scalar nu, Scalar mu)
{
    return closed_form_cell(n, nu, mu).value;
}

/// c_n(mu) = G(n+1)/G(n+2nu+1) f_nu(mu) C_n^{nu+1/2}(cos theta).
template <typename Scalar>
Scalar expansion_coefficient(int n, Scalar nu, Scalar mu)
{
    detail::check_positive_mu(mu, "expansion_coefficient");
    return log_gamma_ratio(Scalar(n + 1), n + 2 * nu + 1) * closed_form_integral(n, nu, mu);
}

/// |mu f'(mu) + f/2 + (nu + 1/2) cos(theta) f| with f' by central difference.
template <typename Scalar>
Scalar envelope_ode_residual(Scalar nu, Scalar mu, Scalar h)
{
    using std::abs;
    if (!(h > 0) || !(mu > 2 * h))
        throw std::domain_error("envelope_ode_residual: need h > 0 and mu > 2h");
    const Scalar f = envelope(nu, mu);
    const Scalar df = (envelope(nu, mu + h) - envelope(nu, mu - h)) / (2 * h);
    const Scalar y = angle_map(mu).cos_theta;
    return abs(mu * df + f / 2 + (nu + Scalar(0.5)) * y * f);
}

}  // namespace lbj

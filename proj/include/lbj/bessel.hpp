#pragma once

// Bessel function of the first kind J_nu(x) for real order nu > -1/2 and
// x >= 0.
//
//   x <  15 : ascending power series
//   x >= 15 : Hankel asymptotic expansion, truncated at its smallest term.
//             Orders nu >= 2 take J at the fractional order and one above it
//             from the expansion and recur upward, which is stable while
//             nu < x.
//
// Absolute error is below 1e-10 for 0 <= x <= 1000 and nu in (-1/2, 12].

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>

#include "lbj/log_gamma.hpp"

namespace lbj {

inline constexpr double kBesselSeriesLimit = 15.0;

namespace detail {

template <typename Scalar>
void check_bessel_args(Scalar nu, Scalar x, const char* who)
{
    if (!(nu > Scalar(-0.5)))
        throw std::domain_error(std::string(who) + ": order must exceed -1/2");
    if (!(x >= 0))
        throw std::domain_error(std::string(who) + ": argument must be non-negative");
}

// sqrt(2/(pi x)) [P cos(w) - Q sin(w)], w = x - (nu/2 + 1/4) pi.
template <typename Scalar>
Scalar bessel_j_hankel(Scalar nu, Scalar x)
{
    using std::abs;
    using std::cos;
    using std::sin;
    using std::sqrt;
    constexpr Scalar pi = std::numbers::pi_v<Scalar>;
    constexpr Scalar eps = std::numeric_limits<Scalar>::epsilon();

    const Scalar mu = 4 * nu * nu;
    Scalar p = 1;
    Scalar q = 0;
    Scalar term = 1;
    Scalar last = std::numeric_limits<Scalar>::infinity();
    for (int k = 1; k < 200; ++k) {
        const Scalar odd = 2 * k - 1;
        const Scalar next = term * (mu - odd * odd) / (k * 8 * x);
        if (abs(next) >= abs(last) && k > 2)
            break;  // past the smallest term
        // a_k / x^k enters P with sign (-1)^(k/2) for even k and Q with
        // (-1)^((k-1)/2) for odd k.
        const int r = k % 4;
        if (r == 1)
            q += next;
        else if (r == 2)
            p -= next;
        else if (r == 3)
            q -= next;
        else
            p += next;
        last = abs(next);
        term = next;
        if (next == 0 || last < eps * (abs(p) + abs(q)) * Scalar(1e-2))
            break;
    }

    // cos(x - c) = cos x cos c + sin x sin c keeps the large argument exact.
    const Scalar c = (nu / 2 + Scalar(0.25)) * pi;
    const Scalar cw = cos(x) * cos(c) + sin(x) * sin(c);
    const Scalar sw = sin(x) * cos(c) - cos(x) * sin(c);
    return sqrt(2 / (pi * x)) * (p * cw - q * sw);
}

}  // namespace detail

/// sum_k (-1)^k (x/2)^(nu+2k) / (k! G(nu+k+1)).
///
/// Terms grow to ~e^x / sqrt(x) before cancelling, so the sum is carried in
/// long double when Scalar is narrower.
template <typename Scalar>
Scalar bessel_j_series(Scalar nu, Scalar x)
{
    using std::abs;
    using std::exp;
    using std::log;
    using Acc = std::conditional_t<(sizeof(Scalar) < sizeof(long double)), long double, Scalar>;
    detail::check_bessel_args(nu, x, "bessel_j_series");
    if (x == 0)
        return nu == 0 ? Scalar(1) : (nu > 0 ? Scalar(0) : std::numeric_limits<Scalar>::infinity());

    const Acc order = nu;
    const Acc half = Acc(x) / 2;
    Acc term = exp(order * log(half) - log_gamma(order + 1));
    Acc sum = term;
    const Acc q = -half * half;
    for (int k = 1; k < 300; ++k) {
        term *= q / (k * (order + k));
        sum += term;
        if (abs(term) < Acc(1e-17) * abs(sum))
            break;
    }
    return static_cast<Scalar>(sum);
}

/// Large-argument branch: Hankel expansion, plus upward recurrence in the
/// order for nu >= 2.
template <typename Scalar>
Scalar bessel_j_large_argument(Scalar nu, Scalar x)
{
    using std::floor;
    detail::check_bessel_args(nu, x, "bessel_j_large_argument");
    if (!(x > 0))
        throw std::domain_error("bessel_j_large_argument: argument must be positive");
    if (nu < 2)
        return detail::bessel_j_hankel(nu, x);

    const int steps = static_cast<int>(floor(nu));
    const Scalar base = nu - steps;  // in [0, 1)
    Scalar jm = detail::bessel_j_hankel(base, x);
    Scalar j = detail::bessel_j_hankel(base + 1, x);
    // J_{v+1} = (2v/x) J_v - J_{v-1}
    for (int k = 1; k < steps; ++k) {
        const Scalar v = base + k;
        const Scalar jp = (2 * v / x) * j - jm;
        jm = j;
        j = jp;
    }
    return j;
}

template <typename Scalar>
Scalar bessel_j(Scalar nu, Scalar x)
{
    detail::check_bessel_args(nu, x, "bessel_j");
    if (x < Scalar(kBesselSeriesLimit))
        return bessel_j_series(nu, x);
    return bessel_j_large_argument(nu, x);
}

/// (x/2)^nu / G(nu + 1), the leading behaviour of J_nu near the origin.
template <typename Scalar>
Scalar bessel_j_small_limit(Scalar nu, Scalar x)
{
    using std::exp;
    using std::pow;
    detail::check_bessel_args(nu, x, "bessel_j_small_limit");
    return pow(x / 2, nu) * exp(-log_gamma(nu + 1));
}

/// |D_h J + J| where D = d^2/dx^2 + (1/x) d/dx - nu^2/x^2 is applied with
/// central differences of step h.
template <typename Scalar>
Scalar bessel_ode_residual(Scalar nu, Scalar x, Scalar h)
{
    using std::abs;
    if (!(h > 0) || !(x > 2 * h))
        throw std::domain_error("bessel_ode_residual: need h > 0 and x > 2h");
    const Scalar jm = bessel_j(nu, x - h);
    const Scalar j0 = bessel_j(nu, x);
    const Scalar jp = bessel_j(nu, x + h);
    const Scalar second = (jp - 2 * j0 + jm) / (h * h);
    const Scalar first = (jp - jm) / (2 * h);
    return abs(second + first / x - nu * nu / (x * x) * j0 + j0);
}

}  // namespace lbj

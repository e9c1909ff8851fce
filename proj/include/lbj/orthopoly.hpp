#pragma once

// Associated Laguerre L_n^lambda(x) and Gegenbauer C_n^lambda(y) polynomials
// by upward three-term recurrence, plus the differential formulas, special
// values and Laguerre generating function that the integral derivation uses.
//
// Upward recurrence in double precision is forward-stable for x >= 0 and
// |y| <= 1; the supported envelope is n <= 200.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "lbj/log_gamma.hpp"

namespace lbj {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

inline void check_order(int n, const char* who)
{
    if (n < 0)
        throw std::domain_error(std::string(who) + ": polynomial order must be non-negative");
}

template <typename Scalar>
void check_laguerre_args(Scalar lambda, Scalar x, const char* who)
{
    if (!(lambda > Scalar(-1)))
        throw std::domain_error(std::string(who) + ": Laguerre parameter must exceed -1");
    if (!(x >= 0))
        throw std::domain_error(std::string(who) + ": argument must be non-negative");
}

template <typename Scalar>
void check_gegenbauer_param(Scalar lam, const char* who)
{
    if (!(lam > Scalar(-0.5)) || lam == 0)
        throw std::domain_error(std::string(who) + ": Gegenbauer parameter must be > -1/2 and nonzero");
}

template <typename Scalar>
void check_gegenbauer_args(Scalar lam, Scalar y, const char* who)
{
    check_gegenbauer_param(lam, who);
    if (!(std::abs(y) <= 1))
        throw std::domain_error(std::string(who) + ": argument must lie in [-1, 1]");
}

// (k+1) L_{k+1} = (2k+1+lambda-x) L_k - (k+lambda) L_{k-1}
template <typename Scalar>
inline Scalar laguerre_step(int k, Scalar lambda, Scalar x, Scalar lk, Scalar lkm1)
{
    return ((2 * k + 1 + lambda - x) * lk - (k + lambda) * lkm1) / (k + 1);
}

// (k+1) C_{k+1} = 2(k+lambda) y C_k - (k+2 lambda-1) C_{k-1}
template <typename Scalar>
inline Scalar gegenbauer_step(int k, Scalar lam, Scalar y, Scalar ck, Scalar ckm1)
{
    return (2 * (k + lam) * y * ck - (k + 2 * lam - 1) * ckm1) / (k + 1);
}

}  // namespace detail

// --------------------------------------------------------------------------
// Laguerre
// --------------------------------------------------------------------------

template <typename Scalar>
Scalar laguerre(int n, Scalar lambda, Scalar x)
{
    detail::check_order(n, "laguerre");
    detail::check_laguerre_args(lambda, x, "laguerre");
    Scalar prev = 1;
    if (n == 0)
        return prev;
    Scalar cur = 1 + lambda - x;
    for (int k = 1; k < n; ++k) {
        const Scalar next = detail::laguerre_step(k, lambda, x, cur, prev);
        prev = cur;
        cur = next;
    }
    return cur;
}

/// [L_0(x), ..., L_{n_max}(x)] in one pass; entry k is bit-identical to
/// laguerre(k, lambda, x).
template <typename Scalar>
Vector<Scalar> laguerre_sequence(int n_max, Scalar lambda, Scalar x)
{
    detail::check_order(n_max, "laguerre_sequence");
    detail::check_laguerre_args(lambda, x, "laguerre_sequence");
    Vector<Scalar> out(n_max + 1);
    out(0) = 1;
    if (n_max >= 1)
        out(1) = 1 + lambda - x;
    for (int k = 1; k < n_max; ++k)
        out(k + 1) = detail::laguerre_step(k, lambda, x, out(k), out(k - 1));
    return out;
}

/// x d/dx L_n^lambda(x) = n L_n - (n + lambda) L_{n-1}.
template <typename Scalar>
Scalar laguerre_x_derivative(int n, Scalar lambda, Scalar x)
{
    detail::check_order(n, "laguerre_x_derivative");
    if (n == 0) {
        detail::check_laguerre_args(lambda, x, "laguerre_x_derivative");
        return 0;
    }
    const auto seq = laguerre_sequence(n, lambda, x);
    return n * seq(n) - (n + lambda) * seq(n - 1);
}

/// (1 - t)^(-1-lambda) exp(x t / (t - 1)).
template <typename Scalar>
Scalar laguerre_generating_function(Scalar lambda, Scalar x, Scalar t)
{
    using std::exp;
    using std::log1p;
    return exp(-(1 + lambda) * log1p(-t) + x * t / (t - 1));
}

template <typename Scalar>
struct GeneratingSums {
    /// sum_{n=0}^{N} L_n(x) t^n
    Scalar partial;
    /// Cesaro (C, k) mean of the partial sums s_0..s_N, extrapolated in N.
    Scalar cesaro;
    /// k used for the Cesaro mean.
    int cesaro_order;
};

namespace detail {

// (C,k) mean of the partial sums of terms[0..N]:
//   sigma_N = sum_n [binom(N-n+k, k) / binom(N+k, k)] a_n
inline long double cesaro_mean(const std::vector<long double>& terms, int N, int k)
{
    long double acc = 0;
    for (int n = 0; n <= N; ++n) {
        long double w = 1;
        for (int j = 1; j <= k; ++j)
            w *= static_cast<long double>(N - n + j) / static_cast<long double>(N + j);
        acc += w * terms[static_cast<std::size_t>(n)];
    }
    return acc;
}

}  // namespace detail

/// Partial sum of the Laguerre generating series together with its Cesaro
/// mean. At t = -1 the raw series does not converge; the Cesaro channel does,
/// to (1 - t)^(-1-lambda) exp(x t/(t-1)).
///
/// The Cesaro order is floor(max(lambda, 0)) + 3, which exceeds the growth
/// exponent of L_n^lambda(0) ~ n^lambda. The (C,k) mean carries an error
/// expansion in powers of 1/N, so two Richardson steps over N, N/2, N/4 are
/// applied when N >= 8.
template <typename Scalar>
GeneratingSums<Scalar> laguerre_generating_partial(Scalar lambda, Scalar x, Scalar t, int N)
{
    detail::check_order(N, "laguerre_generating_partial");
    detail::check_laguerre_args(lambda, x, "laguerre_generating_partial");
    if (!(t >= -1 && t < 1))
        throw std::domain_error("laguerre_generating_partial: t must lie in [-1, 1)");

    const auto values = laguerre_sequence(N, lambda, x);
    std::vector<long double> terms(static_cast<std::size_t>(N) + 1);
    long double power = 1;
    long double partial = 0;
    for (int n = 0; n <= N; ++n) {
        terms[static_cast<std::size_t>(n)] = static_cast<long double>(values(n)) * power;
        partial += terms[static_cast<std::size_t>(n)];
        power *= static_cast<long double>(t);
    }

    const int k = static_cast<int>(std::floor(std::max(static_cast<double>(lambda), 0.0))) + 3;
    long double cesaro = detail::cesaro_mean(terms, N, k);
    if (N >= 8) {
        const long double s1 = cesaro;
        const long double s2 = detail::cesaro_mean(terms, N / 2, k);
        const long double s4 = detail::cesaro_mean(terms, N / 4, k);
        const long double r1 = 2 * s1 - s2;
        const long double r2 = 2 * s2 - s4;
        cesaro = (4 * r1 - r2) / 3;
    }
    return {static_cast<Scalar>(partial), static_cast<Scalar>(cesaro), k};
}

// --------------------------------------------------------------------------
// Gegenbauer
// --------------------------------------------------------------------------

template <typename Scalar>
Scalar gegenbauer(int n, Scalar lam, Scalar y)
{
    detail::check_order(n, "gegenbauer");
    detail::check_gegenbauer_args(lam, y, "gegenbauer");
    Scalar prev = 1;
    if (n == 0)
        return prev;
    Scalar cur = 2 * lam * y;
    for (int k = 1; k < n; ++k) {
        const Scalar next = detail::gegenbauer_step(k, lam, y, cur, prev);
        prev = cur;
        cur = next;
    }
    return cur;
}

template <typename Scalar>
Vector<Scalar> gegenbauer_sequence(int n_max, Scalar lam, Scalar y)
{
    detail::check_order(n_max, "gegenbauer_sequence");
    detail::check_gegenbauer_args(lam, y, "gegenbauer_sequence");
    Vector<Scalar> out(n_max + 1);
    out(0) = 1;
    if (n_max >= 1)
        out(1) = 2 * lam * y;
    for (int k = 1; k < n_max; ++k)
        out(k + 1) = detail::gegenbauer_step(k, lam, y, out(k), out(k - 1));
    return out;
}

/// C_n^lam(-1) = (-1)^n G(n + 2 lam) / (G(n + 1) G(2 lam)).
template <typename Scalar>
Scalar gegenbauer_at_minus_one(int n, Scalar lam)
{
    using std::exp;
    detail::check_order(n, "gegenbauer_at_minus_one");
    detail::check_gegenbauer_param(lam, "gegenbauer_at_minus_one");
    if (n == 0)
        return 1;
    const Scalar sign = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
    const Scalar two_lam = 2 * lam;
    // -1 < 2 lam < 0: G(2 lam) is negative, so peel one factor off it.
    if (two_lam < 0) {
        return sign * two_lam *
               exp(log_gamma_difference(n + two_lam, two_lam + 1) -
                   log_gamma_difference(Scalar(n + 1), Scalar(1)));
    }
    return sign * exp(log_gamma_difference(n + two_lam, two_lam) -
                      log_gamma_difference(Scalar(n + 1), Scalar(1)));
}

/// Right-hand side of
///   (1 - y^2) d/dy C_n = -n(n+1)/(2(n+lam)) C_{n+1} + (n+2lam-1)(n+2lam)/(2(n+lam)) C_{n-1}.
template <typename Scalar>
Scalar gegenbauer_derivative_relation(int n, Scalar lam, Scalar y)
{
    detail::check_order(n, "gegenbauer_derivative_relation");
    detail::check_gegenbauer_args(lam, y, "gegenbauer_derivative_relation");
    if (n == 0)
        return 0;
    const auto c = gegenbauer_sequence(n + 1, lam, y);
    const Scalar denom = 2 * (n + lam);
    return (-Scalar(n) * (n + 1) * c(n + 1) + (n + 2 * lam - 1) * (n + 2 * lam) * c(n - 1)) / denom;
}

}  // namespace lbj

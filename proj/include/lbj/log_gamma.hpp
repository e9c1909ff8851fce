#pragma once

// Ratios of gamma functions without forming either gamma value.
//
// Both arguments are shifted up to z >= 10 by the functional equation, then
// the difference of the two Stirling expansions is taken in a form where the
// large (z - 1/2) ln z pieces cancel analytically rather than numerically:
//
//   ln G(a) - ln G(b) = (a - 1/2) log1p((a - b)/b) + (a - b)(ln b - 1)
//                       + S(a) - S(b)
//
// with S the asymptotic Bernoulli tail. This keeps the ratio accurate to a few
// ulps even when ln G(a) and ln G(b) are both in the thousands.

#include <cmath>
#include <stdexcept>

namespace lbj {

namespace detail {

// sum_k B_2k / (2k (2k-1) z^(2k-1)), truncated where z >= 10 makes the next
// term < 1e-19.
template <typename Scalar>
Scalar stirling_tail(Scalar z)
{
    const Scalar w = Scalar(1) / (z * z);
    // clang-format off
    return (Scalar(1) / 12
          + w * (Scalar(-1) / 360
          + w * (Scalar(1) / 1260
          + w * (Scalar(-1) / 1680
          + w * (Scalar(1) / 1188
          + w * (Scalar(-691) / 360360
          + w * (Scalar(1) / 156))))))) / z;
    // clang-format on
}

template <typename Scalar>
constexpr Scalar kStirlingShift = Scalar(10);

}  // namespace detail

/// ln G(a) - ln G(b) for a, b > 0.
template <typename Scalar>
Scalar log_gamma_difference(Scalar a, Scalar b)
{
    using std::log;
    using std::log1p;
    if (!(a > 0) || !(b > 0))
        throw std::domain_error("log_gamma_difference: arguments must be positive");

    // G(z) = G(z + k) / (z (z+1) ... (z+k-1))
    Scalar shift_a = 1;
    while (a < detail::kStirlingShift<Scalar>) {
        shift_a *= a;
        a += 1;
    }
    Scalar shift_b = 1;
    while (b < detail::kStirlingShift<Scalar>) {
        shift_b *= b;
        b += 1;
    }

    const Scalar d = a - b;
    const Scalar core = (a - Scalar(0.5)) * log1p(d / b) + d * (log(b) - 1) +
                        (detail::stirling_tail(a) - detail::stirling_tail(b));
    return core - log(shift_a) + log(shift_b);
}

/// ln G(z) for z > 0.
template <typename Scalar>
Scalar log_gamma(Scalar z)
{
    return log_gamma_difference(z, Scalar(1));
}

/// G(a) / G(b) for a, b > 0, routed through log_gamma_difference so that
/// neither gamma value has to be representable.
template <typename Scalar>
Scalar log_gamma_ratio(Scalar a, Scalar b)
{
    using std::exp;
    return exp(log_gamma_difference(a, b));
}

}  // namespace lbj

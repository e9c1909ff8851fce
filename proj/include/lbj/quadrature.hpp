#pragma once

// Semi-infinite quadrature for exponentially damped, possibly oscillatory
// integrands, and the numerical side of the Laguerre/Bessel identity built on
// it.
//
// [0, X_max] is covered by Gauss-Legendre panels aligned to the half-period
// pi/mu of the oscillation (geometric panels when mu <= 0.05). Every panel is
// integrated with `panel_order` and `2 * panel_order` nodes; the difference is
// the panel's error estimate and the finer value is kept. The worst panel is
// bisected until the summed estimate meets the tolerance.

#include <Eigen/Core>

#include <functional>

namespace lbj {

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    int max_panels = 20000;
    /// Gauss-Legendre nodes per panel; the check rule uses twice as many.
    int panel_order = 32;
    /// Upper cutoff X_max is where the damping bound drops below tail_cut.
    double tail_cut = 1e-18;
    /// Multiplies X_max; used to probe truncation sensitivity.
    double truncation_scale = 1.0;
};

struct QuadratureResult {
    double value = 0;
    double err_estimate = 0;
    int panels_used = 0;
    double truncation_x = 0;
    bool converged = false;
};

/// |f(x)| <= C x^power e^{-rate x}; drives the choice of X_max.
struct DampingProfile {
    double power = 0;
    double rate = 0.5;
};

using Integrand = std::function<double(double)>;

struct GaussLegendreRule {
    Eigen::VectorXd nodes;    ///< on [-1, 1], ascending
    Eigen::VectorXd weights;
};

/// Golub-Welsch nodes from the Legendre Jacobi matrix, Newton-polished.
GaussLegendreRule gauss_legendre(int order);

/// Smallest X beyond the peak of x^power e^{-rate x} where the bound falls to
/// tail_cut.
double truncation_point(const DampingProfile& damping, double tail_cut);

/// Uniform panels of the given width on [a, b], no adaptivity. err_estimate
/// is the summed |Q_order - Q_2order| over panels.
QuadratureResult integrate_panels(const Integrand& f, double a, double b, double width, int order);

QuadratureResult integrate_damped_oscillatory(const Integrand& f, double mu,
                                              const QuadratureConfig& cfg = {},
                                              const DampingProfile& damping = {});

/// int_0^inf x^nu e^{-x/2} J_nu(mu x) L_n^{2nu}(x) dx by quadrature.
QuadratureResult oracle_integral(int n, double nu, double mu, const QuadratureConfig& cfg = {});

/// sum_{n=0}^{N} c_n(mu) x^nu e^{-x/2} L_n^{2nu}(x), the truncated expansion
/// of J_nu(mu x).
double reconstruct_bessel(double nu, double mu, double x, int N);

/// max over the grid of |reconstruct_bessel(nu, mu, x, N) - J_nu(mu x)|.
double reconstruction_error(double nu, double mu, const Eigen::Ref<const Eigen::VectorXd>& x_grid, int N);

}  // namespace lbj

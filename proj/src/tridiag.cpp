#include "lbj/tridiag.hpp"

#include <cmath>
#include <stdexcept>

#include "lbj/log_gamma.hpp"
#include "lbj/orthopoly.hpp"
#include "lbj/spectral.hpp"

namespace lbj {

namespace {

void check_alpha(double alpha, const char* who)
{
    if (!(alpha > 0 && alpha < 1))
        throw std::domain_error(std::string(who) + ": alpha must lie in (0, 1)");
}

// x^power e^{-rate x} L_n^lambda(x)
double weighted_laguerre(int n, double power, double rate, double lambda, double x, const char* who)
{
    if (x < 0 || (x == 0 && power < 0))
        throw std::domain_error(std::string(who) + ": x must be positive (x = 0 only for a non-negative power)");
    const double w = (x == 0) ? (power == 0 ? 1.0 : 0.0) : std::exp(power * std::log(x) - rate * x);
    return w * laguerre(n, lambda, x);
}

}  // namespace

BasisSpec::BasisSpec(double nu, double alpha, double lambda, int delta)
    : nu_(nu), alpha_(alpha), lambda_(lambda), delta_(delta)
{
    if (!(nu > -0.5))
        throw std::domain_error("BasisSpec: nu must exceed -1/2");
    check_alpha(alpha, "BasisSpec");
    if (!(lambda > -1))
        throw std::domain_error("BasisSpec: lambda must exceed -1");
    if (delta != 0 && delta != 1)
        throw std::domain_error("BasisSpec: delta must be 0 or 1");
}

BasisSpec BasisSpec::canonical(double nu, double alpha)
{
    return BasisSpec(nu, alpha, 2 * nu, 1);
}

bool BasisSpec::is_canonical() const
{
    return lambda_ == 2 * nu_ && delta_ == 1;
}

double phi(int n, const BasisSpec& spec, double x)
{
    return weighted_laguerre(n, spec.nu(), spec.alpha(), spec.lambda(), x, "phi");
}

double phi_dual(int n, const BasisSpec& spec, double x)
{
    return weighted_laguerre(n, spec.rho(), spec.beta(), spec.lambda(), x, "phi_dual");
}

double bessel_op_on_phi(int n, const BasisSpec& spec, double x)
{
    if (!(x > 0))
        throw std::domain_error("bessel_op_on_phi: x must be positive");
    const double nu = spec.nu();
    const double alpha = spec.alpha();
    const double lambda = spec.lambda();
    const double gap = 2 * nu - lambda;

    const double diag = n * gap / (x * x) - alpha * (2 * n + 2 * nu + 1) / x + alpha * alpha;
    double out = diag * phi(n, spec, x);
    if (n > 0) {
        const double lower = (gap / (x * x) + (1 - 2 * alpha) / x) * (n + lambda);
        out -= lower * phi(n - 1, spec, x);
    }
    return out;
}

double matrix_element(int n, int m, double nu, double alpha, double mu)
{
    if (n < 0 || m < 0)
        throw std::domain_error("matrix_element: indices must be non-negative");
    if (!(nu > -0.5))
        throw std::domain_error("matrix_element: nu must exceed -1/2");
    check_alpha(alpha, "matrix_element");
    if (!(mu >= 0))
        throw std::domain_error("matrix_element: mu must be non-negative");

    const double s = alpha * alpha + mu * mu;
    double bracket = 0;
    if (m == n)
        bracket = (2 * n + 2 * nu + 1) * (s - alpha);
    else if (n == m + 1)
        bracket = -n * s;
    else if (n == m - 1)
        bracket = -(n + 2 * nu + 1) * (s + 1 - 2 * alpha);
    else
        return 0.0;
    return log_gamma_ratio(n + 2 * nu + 1, double(n + 1)) * bracket;
}

QuadratureResult matrix_element_numeric(int n, int m, double nu, double alpha, double mu,
                                        const QuadratureConfig& cfg)
{
    if (n < 0 || m < 0)
        throw std::domain_error("matrix_element_numeric: indices must be non-negative");
    const BasisSpec spec = BasisSpec::canonical(nu, alpha);
    if (!(mu >= 0))
        throw std::domain_error("matrix_element_numeric: mu must be non-negative");
    const double mu2 = mu * mu;
    const Integrand f = [&](double x) {
        return phi_dual(n, spec, x) * (bessel_op_on_phi(m, spec, x) + mu2 * phi(m, spec, x));
    };
    // phi~_n phi_m ~ x^{2nu+1} e^{-x} times a degree n+m polynomial; no
    // oscillation, so geometric panels.
    return integrate_damped_oscillatory(f, 0.0, cfg, DampingProfile{2 * nu + 1 + n + m, 1.0});
}

Eigen::MatrixXd tridiagonal_matrix(int n_max, double nu, double alpha, double mu)
{
    if (n_max < 0)
        throw std::domain_error("tridiagonal_matrix: n_max must be non-negative");
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(n_max + 1, n_max + 1);
    for (int n = 0; n <= n_max; ++n)
        for (int m = std::max(0, n - 1); m <= std::min(n_max, n + 1); ++m)
            out(n, m) = matrix_element(n, m, nu, alpha, mu);
    return out;
}

RecursionRun recursion_solve(double nu, double alpha, double mu, int n_max, std::array<double, 2> seeds,
                             LowerCoefficient lower)
{
    if (!(nu > -0.5))
        throw std::domain_error("recursion_solve: nu must exceed -1/2");
    check_alpha(alpha, "recursion_solve");
    if (!(mu > 0))
        throw std::domain_error("recursion_solve: mu must be positive");
    if (n_max < 1)
        throw std::domain_error("recursion_solve: n_max must be at least 1");

    const double s = alpha * alpha + mu * mu;
    const double diag = s - alpha;
    // (1 - alpha)^2 + mu^2 > 0
    const double upper = s + 1 - 2 * alpha;
    const double shift = (lower == LowerCoefficient::shifted) ? 1.0 : 0.0;

    RecursionRun run;
    run.nu = nu;
    run.alpha = alpha;
    run.mu = mu;
    run.n_max = n_max;
    run.seeds = seeds;
    run.values.resize(n_max + 1);
    run.values(0) = seeds[0];
    run.values(1) = seeds[1];
    for (int n = 1; n < n_max; ++n) {
        run.values(n + 1) = ((2 * n + 2 * nu + 1) * diag * run.values(n) -
                             (n + 2 * nu + shift) * s * run.values(n - 1)) /
                            ((n + 1) * upper);
    }
    return run;
}

std::array<double, 2> closed_form_seeds(double nu, double mu)
{
    return {p_value(0, nu, mu), p_value(1, nu, mu)};
}

double recursion_residual(const RecursionRun& run)
{
    const double s = run.alpha * run.alpha + run.mu * run.mu;
    const double diag = s - run.alpha;
    const double upper = s + 1 - 2 * run.alpha;
    double worst = 0;
    for (int n = 1; n < run.n_max; ++n) {
        const double lhs = (2 * n + 2 * run.nu + 1) * diag * run.values(n);
        const double a = (n + 1) * upper * run.values(n + 1);
        const double b = (n + 2 * run.nu) * s * run.values(n - 1);
        const double scale = std::abs(lhs) + std::abs(a) + std::abs(b);
        if (scale > 0)
            worst = std::max(worst, std::abs(lhs - a - b) / scale);
    }
    return worst;
}

double derivative_relation_residual(int n, double nu, double mu, double h)
{
    if (n < 1)
        throw std::domain_error("derivative_relation_residual: n must be at least 1");
    if (!(h > 0) || !(mu > 2 * h))
        throw std::domain_error("derivative_relation_residual: need h > 0 and mu > 2h");
    const double dp = (p_value(n, nu, mu + h) - p_value(n, nu, mu - h)) / (2 * h);
    return std::abs(2 * mu * dp + p_value(n, nu, mu) + (n + 1) * p_value(n + 1, nu, mu) -
                    (n + 2 * nu) * p_value(n - 1, nu, mu));
}

}  // namespace lbj

#include "lbj/quadrature.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <vector>

#include "lbj/bessel.hpp"
#include "lbj/orthopoly.hpp"
#include "lbj/spectral.hpp"

namespace lbj {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Geometric panelling below this frequency; the half-period is too long to
// be a useful panel width.
constexpr double kOscillatoryThreshold = 0.05;

struct Panel {
    double a = 0;
    double b = 0;
    double value = 0;
    double err = 0;
    double noise = 0;  // round-off floor of this panel
};

struct PanelOrder {
    bool operator()(const Panel& l, const Panel& r) const { return l.err - l.noise < r.err - r.noise; }
};

// P_n(x) and P_n'(x) by the Legendre recurrence.
std::pair<double, double> legendre_with_derivative(int n, double x)
{
    double p0 = 1;
    double p1 = x;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2 * k + 1) * x * p1 - k * p0) / (k + 1);
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1);
    return {p1, dp};
}

class PanelIntegrator {
public:
    PanelIntegrator(const Integrand& f, int order)
        : f_(f), coarse_(gauss_legendre(order)), fine_(gauss_legendre(2 * order))
    {
    }

    Panel evaluate(double a, double b) const
    {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double coarse = 0;
        for (Eigen::Index i = 0; i < coarse_.nodes.size(); ++i)
            coarse += coarse_.weights(i) * f_(mid + half * coarse_.nodes(i));
        double fine = 0;
        double magnitude = 0;
        for (Eigen::Index i = 0; i < fine_.nodes.size(); ++i) {
            const double v = fine_.weights(i) * f_(mid + half * fine_.nodes(i));
            fine += v;
            magnitude += std::abs(v);
        }
        Panel p;
        p.a = a;
        p.b = b;
        p.value = half * fine;
        p.err = std::abs(half * (fine - coarse));
        p.noise = 64 * kEps * half * magnitude;
        if (!std::isfinite(p.value))
            throw std::domain_error("quadrature: integrand is not finite on [" + std::to_string(a) + ", " +
                                    std::to_string(b) + "]");
        return p;
    }

private:
    const Integrand& f_;
    GaussLegendreRule coarse_;
    GaussLegendreRule fine_;
};

std::vector<double> initial_breakpoints(double mu, double x_max, int max_panels)
{
    std::vector<double> pts{0.0};
    if (mu > kOscillatoryThreshold) {
        double width = std::numbers::pi / mu;
        const double budget = std::max(1, max_panels / 4);
        if (x_max / width > budget)
            width = x_max / budget;
        const auto count = static_cast<int>(std::ceil(x_max / width));
        for (int k = 1; k < count; ++k)
            pts.push_back(k * width);
    } else {
        for (double x = 1.0; x < x_max; x *= 2)
            pts.push_back(x);
    }
    pts.push_back(x_max);
    return pts;
}

}  // namespace

GaussLegendreRule gauss_legendre(int order)
{
    if (order < 2)
        throw std::invalid_argument("gauss_legendre: order must be at least 2");

    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        jacobi(k, k - 1) = b;
        jacobi(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
    GaussLegendreRule rule;
    rule.nodes = solver.eigenvalues();
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        double x = rule.nodes(i);
        for (int it = 0; it < 3; ++it) {
            const auto [p, dp] = legendre_with_derivative(order, x);
            x -= p / dp;
        }
        const auto [p, dp] = legendre_with_derivative(order, x);
        (void)p;
        rule.nodes(i) = x;
        rule.weights(i) = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

double truncation_point(const DampingProfile& damping, double tail_cut)
{
    if (!(damping.rate > 0) || !(tail_cut > 0) || !(tail_cut < 1))
        throw std::invalid_argument("truncation_point: need rate > 0 and 0 < tail_cut < 1");
    const double target = std::log(tail_cut);
    auto log_bound = [&](double x) { return damping.power * std::log(x) - damping.rate * x; };
    double lo = std::max(damping.power / damping.rate, 1.0);
    if (log_bound(lo) <= target)
        return lo;
    double hi = 2 * lo;
    while (log_bound(hi) > target)
        hi *= 2;
    for (int it = 0; it < 100 && hi - lo > 1e-9 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (log_bound(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

QuadratureResult integrate_panels(const Integrand& f, double a, double b, double width, int order)
{
    if (!(b > a) || !(width > 0))
        throw std::invalid_argument("integrate_panels: need b > a and width > 0");
    const PanelIntegrator integrator(f, order);
    QuadratureResult out;
    for (double lo = a; lo < b; lo += width) {
        const Panel p = integrator.evaluate(lo, std::min(lo + width, b));
        out.value += p.value;
        out.err_estimate += p.err;
        ++out.panels_used;
    }
    out.truncation_x = b;
    out.converged = true;
    return out;
}

QuadratureResult integrate_damped_oscillatory(const Integrand& f, double mu, const QuadratureConfig& cfg,
                                              const DampingProfile& damping)
{
    if (!(cfg.rel_tol > 0) || !(cfg.abs_tol > 0) || cfg.panel_order < 2 || cfg.max_panels < 1)
        throw std::invalid_argument("integrate_damped_oscillatory: invalid configuration");
    if (!(mu >= 0))
        throw std::domain_error("integrate_damped_oscillatory: mu must be non-negative");

    const double x_max = truncation_point(damping, cfg.tail_cut) * cfg.truncation_scale;
    const PanelIntegrator integrator(f, cfg.panel_order);

    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> panels;
    const auto pts = initial_breakpoints(mu, x_max, cfg.max_panels);
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        panels.push(integrator.evaluate(pts[i], pts[i + 1]));

    auto totals = [&] {
        // Re-sum from scratch to keep the running totals free of drift.
        auto copy = panels;
        double value = 0, err = 0, noise = 0;
        while (!copy.empty()) {
            value += copy.top().value;
            err += copy.top().err;
            noise += copy.top().noise;
            copy.pop();
        }
        return std::tuple{value, err, noise};
    };

    auto [value, err, noise] = totals();
    auto target = [&] { return std::max({cfg.abs_tol, cfg.rel_tol * std::abs(value), noise}); };
    int since_resum = 0;
    while (err > target() && static_cast<int>(panels.size()) < cfg.max_panels) {
        const Panel worst = panels.top();
        if (worst.err <= worst.noise)
            break;  // everything left is round-off
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = integrator.evaluate(worst.a, mid);
        const Panel right = integrator.evaluate(mid, worst.b);
        value += left.value + right.value - worst.value;
        err += left.err + right.err - worst.err;
        noise += left.noise + right.noise - worst.noise;
        panels.push(left);
        panels.push(right);
        if (++since_resum == 512) {
            std::tie(value, err, noise) = totals();
            since_resum = 0;
        }
    }
    std::tie(value, err, noise) = totals();

    QuadratureResult out;
    out.value = value;
    out.err_estimate = err;
    out.panels_used = static_cast<int>(panels.size());
    out.truncation_x = x_max;
    out.converged = err <= target();
    return out;
}

QuadratureResult oracle_integral(int n, double nu, double mu, const QuadratureConfig& cfg)
{
    if (n < 0)
        throw std::domain_error("oracle_integral: n must be non-negative");
    if (!(nu > -0.5))
        throw std::domain_error("oracle_integral: nu must exceed -1/2");
    if (!(mu >= 0))
        throw std::domain_error("oracle_integral: mu must be non-negative");
    if (mu == 0 && nu < 0)
        throw std::domain_error("oracle_integral: integrand is not integrable at mu = 0 for nu < 0");

    const double lambda = 2 * nu;
    const Integrand f = [=](double x) {
        if (x == 0)
            return nu == 0 ? 1.0 : 0.0;
        const double weight = std::exp(nu * std::log(x) - 0.5 * x);
        return weight * bessel_j(nu, mu * x) * laguerre(n, lambda, x);
    };
    return integrate_damped_oscillatory(f, mu, cfg, DampingProfile{nu + n, 0.5});
}

double reconstruct_bessel(double nu, double mu, double x, int N)
{
    if (N < 0)
        throw std::domain_error("reconstruct_bessel: N must be non-negative");
    if (!(x > 0))
        throw std::domain_error("reconstruct_bessel: x must be positive");
    detail::check_order_nu(nu, "reconstruct_bessel");
    detail::check_positive_mu(mu, "reconstruct_bessel");

    const double f = envelope(nu, mu);
    const auto gegen = gegenbauer_sequence(N, nu + 0.5, angle_map(mu).cos_theta);
    const auto lag = laguerre_sequence(N, 2 * nu, x);
    const double weight = std::exp(nu * std::log(x) - 0.5 * x);
    double sum = 0;
    for (int n = 0; n <= N; ++n) {
        const double c = log_gamma_ratio(double(n + 1), n + 2 * nu + 1) * f * gegen(n);
        sum += c * weight * lag(n);
    }
    return sum;
}

double reconstruction_error(double nu, double mu, const Eigen::Ref<const Eigen::VectorXd>& x_grid, int N)
{
    if (x_grid.size() == 0)
        throw std::invalid_argument("reconstruction_error: empty grid");
    double worst = 0;
    for (Eigen::Index i = 0; i < x_grid.size(); ++i) {
        const double x = x_grid(i);
        worst = std::max(worst, std::abs(reconstruct_bessel(nu, mu, x, N) - bessel_j(nu, mu * x)));
    }
    return worst;
}

}  // namespace lbj

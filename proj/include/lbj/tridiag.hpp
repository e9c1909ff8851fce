#pragma once

// The Laguerre basis phi_n(x) = x^nu e^{-alpha x} L_n^lambda(x), its
// conjugate phi~_n(x) = x^rho e^{-beta x} L_n^lambda(x), the action of the
// Bessel operator D = d^2/dx^2 + (1/x) d/dx - nu^2/x^2 on phi_n, and the
// three-term recursion that falls out of the tridiagonal matrix of D + mu^2.

#include <Eigen/Core>

#include <array>

#include "lbj/quadrature.hpp"

namespace lbj {

/// Basis parameters. beta = 1 - alpha and rho = -nu + lambda + delta are
/// derived; they make the overlap <phi~_n | phi_m> tridiagonal.
class BasisSpec {
public:
    BasisSpec(double nu, double alpha, double lambda, int delta);

    /// lambda = 2 nu, delta = 1: the case in which D + mu^2 is tridiagonal too.
    static BasisSpec canonical(double nu, double alpha);

    double nu() const { return nu_; }
    double alpha() const { return alpha_; }
    double lambda() const { return lambda_; }
    int delta() const { return delta_; }
    double beta() const { return 1.0 - alpha_; }
    double rho() const { return -nu_ + lambda_ + delta_; }
    bool is_canonical() const;

private:
    double nu_;
    double alpha_;
    double lambda_;
    int delta_;
};

double phi(int n, const BasisSpec& spec, double x);
double phi_dual(int n, const BasisSpec& spec, double x);

/// D phi_n in closed form:
///   (n(2nu-lambda)/x^2 - alpha(2n+2nu+1)/x + alpha^2) phi_n
///   - ((2nu-lambda)/x^2 + (1-2alpha)/x)(n+lambda) phi_{n-1}
double bessel_op_on_phi(int n, const BasisSpec& spec, double x);

/// Closed-form <phi~_n | (D + mu^2) | phi_m> for the canonical basis.
double matrix_element(int n, int m, double nu, double alpha, double mu);

/// The same element by quadrature of phi~_n (D + mu^2) phi_m.
QuadratureResult matrix_element_numeric(int n, int m, double nu, double alpha, double mu,
                                        const QuadratureConfig& cfg = {});

/// (n_max+1) x (n_max+1) block of matrix_element.
Eigen::MatrixXd tridiagonal_matrix(int n_max, double nu, double alpha, double mu);

/// Which coefficient multiplies P_{n-1} in the recursion.
enum class LowerCoefficient {
    /// (n + 2nu): follows from the matrix elements and c_n = P_n n!/G(n+2nu+1).
    consistent,
    /// (n + 2nu + 1): shifted by one. Breaks the Gegenbauer reduction at
    /// alpha = 1/2; kept for regression tests.
    shifted,
};

struct RecursionRun {
    double nu = 0;
    double alpha = 0;
    double mu = 0;
    int n_max = 0;
    std::array<double, 2> seeds{};
    Eigen::VectorXd values;
};

/// Upward solution of
///   (2n+2nu+1)(a^2+mu^2-a) P_n = (n+1)(a^2+mu^2+1-2a) P_{n+1} + (n+2nu)(a^2+mu^2) P_{n-1}
RecursionRun recursion_solve(double nu, double alpha, double mu, int n_max, std::array<double, 2> seeds,
                             LowerCoefficient lower = LowerCoefficient::consistent);

/// (P_0, P_1) taken from the closed form f_nu(mu) C_n^{nu+1/2}(cos theta).
std::array<double, 2> closed_form_seeds(double nu, double mu);

/// Largest |lhs - rhs| / (|lhs| + |rhs|) of the consistent recursion over the
/// run; zero rows count as zero.
double recursion_residual(const RecursionRun& run);

/// |2 mu dP_n/dmu + P_n + (n+1) P_{n+1} - (n+2nu) P_{n-1}|, central difference.
double derivative_relation_residual(int n, double nu, double mu, double h);

}  // namespace lbj

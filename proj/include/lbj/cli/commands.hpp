#pragma once

// Data-producing side of the command-line tool. Each run_* function computes
// a value-type result; rendering lives in report.hpp so tests can check both
// layers independently.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lbj/quadrature.hpp"

namespace lbj::cli {

// Exit codes.
inline constexpr int kExitPass = 0;
inline constexpr int kExitTolerance = 1;
inline constexpr int kExitNonConvergence = 2;
inline constexpr int kExitUsage = 64;

struct EvalResult {
    int n = 0;
    double nu = 0;
    double mu = 0;
    double value = 0;
    bool limit = false;
    // Factors, meaningful only when !limit.
    double cos_theta = 0;
    double sin_theta = 0;
    double amplitude = 0;
    double envelope = 0;
    double gegenbauer = 0;
};

EvalResult run_eval(int n, double nu, double mu);

struct IntegralComparison {
    int n = 0;
    double nu = 0;
    double mu = 0;
    double closed_form = 0;
    double oracle = 0;
    double abs_err = 0;
    /// abs_err / |closed_form|, or abs_err when the closed form is exactly 0.
    double rel_err = 0;
    double oracle_err_estimate = 0;
    bool converged = false;
    bool limit = false;
    bool pass = false;
};

struct VerificationSummary {
    std::size_t cell_count = 0;
    double max_abs_err = 0;
    double max_rel_err = 0;
    /// Index of the cell with the largest abs_err / tolerance ratio.
    std::optional<std::size_t> worst_cell;
    std::size_t failures = 0;
    std::size_t non_converged = 0;
    double wall_time = 0;
};

struct VerificationReport {
    std::vector<IntegralComparison> cells;
    VerificationSummary summary;
};

struct VerifyOptions {
    std::vector<double> nu_list{0.0, 0.25, 0.5, 1.0, 2.5};
    std::vector<double> mu_list{0.1, 0.5, 1.0, 3.0, 10.0};
    std::vector<int> n_list{0, 1, 2, 5, 10, 20, 30};
    double rel_tol = 1e-7;
    double abs_tol = 1e-8;
    int threads = 1;
    QuadratureConfig quadrature;
};

/// Closed form vs. quadrature over the nu x mu x n grid. Rows are ordered by
/// grid index (nu outermost, n innermost) whatever the thread count.
VerificationReport run_verification(const VerifyOptions& options);

/// 1 if any converged cell misses tolerance, else 2 if any cell failed to
/// converge, else 0.
int verification_exit_code(const VerificationReport& report);

struct ExpansionRow {
    int n_terms = 0;
    double sup_error = 0;
};

struct ExpandOptions {
    double nu = 0.5;
    double mu = 1.0;
    std::vector<int> n_terms{5, 10, 20, 40, 80};
    double x_min = 0.1;
    double x_max = 20.0;
    int x_points = 200;
    int threads = 1;
};

std::vector<ExpansionRow> run_expansion(const ExpandOptions& options);

enum class SeedMode { closed_form, explicit_values };

struct RecursionOptions {
    double nu = 0;
    double alpha = 0.5;
    double mu = 1;
    int n_max = 10;
    SeedMode seed_mode = SeedMode::closed_form;
    std::array<double, 2> seeds{0, 0};
};

struct RecursionTable {
    RecursionOptions options;
    std::array<double, 2> seeds{};
    std::vector<double> values;
    double max_residual = 0;
};

RecursionTable run_recursion(const RecursionOptions& options);

struct TridiagCell {
    int n = 0;
    int m = 0;
    double numeric = 0;
    double err_estimate = 0;
    double closed_form = 0;
    double abs_delta = 0;
    bool in_band = false;
    bool converged = false;
    bool pass = false;
};

struct TridiagOptions {
    double nu = 0;
    double alpha = 0.5;
    double mu = 0.5;
    int n_max = 4;
    /// Relative tolerance on in-band cells.
    double rel_tol = 1e-7;
    /// Off-band cells must satisfy |J_nm| <= off_band_tol * max(1, scale).
    double off_band_tol = 1e-8;
    int threads = 1;
    QuadratureConfig quadrature;
};

struct TridiagReport {
    TridiagOptions options;
    std::vector<TridiagCell> cells;  // row-major over (n, m)
};

TridiagReport run_tridiag(const TridiagOptions& options);
int tridiag_exit_code(const TridiagReport& report);

}  // namespace lbj::cli

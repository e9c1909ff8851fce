#include "lbj/cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "lbj/bessel.hpp"
#include "lbj/spectral.hpp"
#include "lbj/tridiag.hpp"

namespace lbj::cli {

namespace {

// Runs task(i) for i in [0, count) on up to `threads` workers. Results are
// written by index, so ordering never depends on scheduling.
template <typename Task>
void parallel_for(std::size_t count, int threads, Task&& task)
{
    const auto workers = static_cast<std::size_t>(std::clamp(threads, 1, 256));
    if (workers == 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i)
            task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, count); ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < count && !failed; i = next++) {
                try {
                    task(i);
                } catch (...) {
                    if (!failed.exchange(true))
                        failure = std::current_exception();
                }
            }
        });
    }
    pool.clear();
    if (failure)
        std::rethrow_exception(failure);
}

}  // namespace

EvalResult run_eval(int n, double nu, double mu)
{
    const auto cell = closed_form_cell(n, nu, mu);
    EvalResult out;
    out.n = n;
    out.nu = nu;
    out.mu = mu;
    out.value = cell.value;
    out.limit = cell.limit;
    if (!cell.limit) {
        const auto angle = angle_map(mu);
        out.cos_theta = angle.cos_theta;
        out.sin_theta = angle.sin_theta;
        out.amplitude = amplitude_constant(nu);
        out.envelope = envelope(nu, mu);
        out.gegenbauer = gegenbauer(n, nu + 0.5, angle.cos_theta);
    }
    return out;
}

VerificationReport run_verification(const VerifyOptions& options)
{
    if (options.nu_list.empty() || options.mu_list.empty() || options.n_list.empty())
        throw std::invalid_argument("verify: grid is empty");

    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    for (double nu : options.nu_list)
        for (double mu : options.mu_list)
            for (int n : options.n_list) {
                IntegralComparison c;
                c.n = n;
                c.nu = nu;
                c.mu = mu;
                report.cells.push_back(c);
            }

    parallel_for(report.cells.size(), options.threads, [&](std::size_t i) {
        IntegralComparison& c = report.cells[i];
        const auto closed = closed_form_cell(c.n, c.nu, c.mu);
        const auto oracle = oracle_integral(c.n, c.nu, c.mu, options.quadrature);
        c.closed_form = closed.value;
        c.limit = closed.limit;
        c.oracle = oracle.value;
        c.oracle_err_estimate = oracle.err_estimate;
        c.converged = oracle.converged;
        c.abs_err = std::abs(c.oracle - c.closed_form);
        c.rel_err = c.closed_form != 0 ? c.abs_err / std::abs(c.closed_form) : c.abs_err;
        c.pass = c.abs_err <= std::max(options.abs_tol, options.rel_tol * std::abs(c.closed_form));
    });

    auto& s = report.summary;
    s.cell_count = report.cells.size();
    double worst_ratio = -1;
    for (std::size_t i = 0; i < report.cells.size(); ++i) {
        const auto& c = report.cells[i];
        s.max_abs_err = std::max(s.max_abs_err, c.abs_err);
        s.max_rel_err = std::max(s.max_rel_err, c.rel_err);
        const double ratio = c.abs_err / std::max(options.abs_tol, options.rel_tol * std::abs(c.closed_form));
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            s.worst_cell = i;
        }
        if (!c.converged)
            ++s.non_converged;
        else if (!c.pass)
            ++s.failures;
    }
    s.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

int verification_exit_code(const VerificationReport& report)
{
    if (report.summary.failures > 0)
        return kExitTolerance;
    if (report.summary.non_converged > 0)
        return kExitNonConvergence;
    return kExitPass;
}

std::vector<ExpansionRow> run_expansion(const ExpandOptions& options)
{
    if (options.n_terms.empty())
        throw std::invalid_argument("expand: no term counts given");
    if (options.x_points < 1)
        throw std::invalid_argument("expand: x-points must be at least 1");
    if (!(options.x_min > 0) || options.x_max < options.x_min)
        throw std::invalid_argument("expand: need 0 < x-min <= x-max");

    Eigen::VectorXd grid;
    if (options.x_points == 1)
        grid = Eigen::VectorXd::Constant(1, options.x_min);
    else
        grid = Eigen::VectorXd::LinSpaced(options.x_points, options.x_min, options.x_max);
    std::vector<ExpansionRow> rows(options.n_terms.size());
    parallel_for(rows.size(), options.threads, [&](std::size_t i) {
        rows[i].n_terms = options.n_terms[i];
        rows[i].sup_error = reconstruction_error(options.nu, options.mu, grid, options.n_terms[i]);
    });
    return rows;
}

RecursionTable run_recursion(const RecursionOptions& options)
{
    RecursionTable table;
    table.options = options;
    table.seeds = options.seed_mode == SeedMode::closed_form ? closed_form_seeds(options.nu, options.mu)
                                                             : options.seeds;
    const auto run = recursion_solve(options.nu, options.alpha, options.mu, options.n_max, table.seeds);
    table.values.assign(run.values.data(), run.values.data() + run.values.size());
    table.max_residual = recursion_residual(run);
    return table;
}

TridiagReport run_tridiag(const TridiagOptions& options)
{
    if (options.n_max < 0)
        throw std::invalid_argument("tridiag: n-max must be non-negative");
    TridiagReport report;
    report.options = options;
    const int size = options.n_max + 1;
    report.cells.resize(static_cast<std::size_t>(size) * size);
    const Eigen::MatrixXd closed = tridiagonal_matrix(options.n_max, options.nu, options.alpha, options.mu);

    parallel_for(report.cells.size(), options.threads, [&](std::size_t i) {
        TridiagCell& c = report.cells[i];
        c.n = static_cast<int>(i) / size;
        c.m = static_cast<int>(i) % size;
        const auto q = matrix_element_numeric(c.n, c.m, options.nu, options.alpha, options.mu, options.quadrature);
        c.numeric = q.value;
        c.err_estimate = q.err_estimate;
        c.converged = q.converged;
        c.closed_form = closed(c.n, c.m);
        c.abs_delta = std::abs(c.numeric - c.closed_form);
        c.in_band = std::abs(c.n - c.m) <= 1;
    });

    // Off-band cells are judged against the largest in-band element of their
    // row, the scale the quadrature actually resolved.
    for (auto& c : report.cells) {
        if (c.in_band) {
            c.pass = c.abs_delta <= options.rel_tol * std::max(1.0, std::abs(c.closed_form));
        } else {
            double scale = 0;
            for (int m = std::max(0, c.n - 1); m <= std::min(options.n_max, c.n + 1); ++m)
                scale = std::max(scale, std::abs(closed(c.n, m)));
            c.pass = std::abs(c.numeric) <= options.off_band_tol * std::max(1.0, scale);
        }
    }
    return report;
}

int tridiag_exit_code(const TridiagReport& report)
{
    bool failed = false;
    bool unconverged = false;
    for (const auto& c : report.cells) {
        if (!c.converged)
            unconverged = true;
        else if (!c.pass)
            failed = true;
    }
    if (failed)
        return kExitTolerance;
    return unconverged ? kExitNonConvergence : kExitPass;
}

}  // namespace lbj::cli

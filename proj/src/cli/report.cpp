#include "lbj/cli/report.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lbj::cli {

namespace {

std::string fixed10(double value)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10f", value);
    return buf;
}

const char* flag(bool b) { return b ? "1" : "0"; }

}  // namespace

Format parse_format(const std::string& name)
{
    if (name == "csv")
        return Format::csv;
    if (name == "json")
        return Format::json;
    if (name == "text")
        return Format::text;
    throw std::invalid_argument("unknown format '" + name + "' (expected csv or json)");
}

std::string format_real(double value)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

std::string render_eval(const EvalResult& r, Format format, bool explain)
{
    std::ostringstream os;
    switch (format) {
    case Format::text:
        os << fixed10(r.value);
        if (r.limit)
            os << "  (mu = 0: continuous-extension limit)";
        os << '\n';
        if (explain && !r.limit) {
            os << "cos_theta  " << format_real(r.cos_theta) << '\n'
               << "sin_theta  " << format_real(r.sin_theta) << '\n'
               << "A_nu       " << format_real(r.amplitude) << '\n'
               << "f_nu(mu)   " << format_real(r.envelope) << '\n'
               << "C_n        " << format_real(r.gegenbauer) << '\n';
        }
        break;
    case Format::csv:
        os << "n,nu,mu,value,limit";
        if (explain)
            os << ",cos_theta,sin_theta,amplitude,envelope,gegenbauer";
        os << '\n'
           << r.n << ',' << format_real(r.nu) << ',' << format_real(r.mu) << ',' << format_real(r.value) << ','
           << flag(r.limit);
        if (explain)
            os << ',' << format_real(r.cos_theta) << ',' << format_real(r.sin_theta) << ','
               << format_real(r.amplitude) << ',' << format_real(r.envelope) << ',' << format_real(r.gegenbauer);
        os << '\n';
        break;
    case Format::json: {
        nlohmann::json j{{"n", r.n}, {"nu", r.nu}, {"mu", r.mu}, {"value", r.value}, {"limit", r.limit}};
        if (explain && !r.limit) {
            j["cos_theta"] = r.cos_theta;
            j["sin_theta"] = r.sin_theta;
            j["amplitude"] = r.amplitude;
            j["envelope"] = r.envelope;
            j["gegenbauer"] = r.gegenbauer;
        }
        os << j.dump(2) << '\n';
        break;
    }
    }
    return os.str();
}

std::string render_verification_csv(const VerificationReport& report)
{
    std::ostringstream os;
    os << "n,nu,mu,closed_form,oracle,abs_err,rel_err,oracle_err_estimate,converged,limit,pass\n";
    for (const auto& c : report.cells) {
        os << c.n << ',' << format_real(c.nu) << ',' << format_real(c.mu) << ',' << format_real(c.closed_form) << ','
           << format_real(c.oracle) << ',' << format_real(c.abs_err) << ',' << format_real(c.rel_err) << ','
           << format_real(c.oracle_err_estimate) << ',' << flag(c.converged) << ',' << flag(c.limit) << ','
           << flag(c.pass) << '\n';
    }
    return os.str();
}

nlohmann::json verification_to_json(const VerificationReport& report)
{
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : report.cells) {
        cells.push_back({{"n", c.n},
                         {"nu", c.nu},
                         {"mu", c.mu},
                         {"closed_form", c.closed_form},
                         {"oracle", c.oracle},
                         {"abs_err", c.abs_err},
                         {"rel_err", c.rel_err},
                         {"oracle_err_estimate", c.oracle_err_estimate},
                         {"converged", c.converged},
                         {"limit", c.limit},
                         {"pass", c.pass}});
    }
    const auto& s = report.summary;
    nlohmann::json worst = nullptr;
    if (s.worst_cell) {
        const auto& c = report.cells[*s.worst_cell];
        worst = {{"index", *s.worst_cell}, {"n", c.n}, {"nu", c.nu}, {"mu", c.mu}};
    }
    return {{"cells", cells},
            {"summary",
             {{"cell_count", s.cell_count},
              {"max_abs_err", s.max_abs_err},
              {"max_rel_err", s.max_rel_err},
              {"worst_cell", worst},
              {"failures", s.failures},
              {"non_converged", s.non_converged},
              {"wall_time", s.wall_time}}}};
}

std::string render_verification_summary(const VerificationReport& report)
{
    const auto& s = report.summary;
    std::ostringstream os;
    os << "verify: " << s.cell_count << " cells, max_abs_err=" << format_real(s.max_abs_err)
       << ", max_rel_err=" << format_real(s.max_rel_err);
    if (s.worst_cell) {
        const auto& c = report.cells[*s.worst_cell];
        os << ", worst=(n=" << c.n << ", nu=" << format_real(c.nu) << ", mu=" << format_real(c.mu) << ")";
    }
    os << ", failures=" << s.failures << ", non_converged=" << s.non_converged << ", wall_time=" << s.wall_time
       << "s\n";
    return os.str();
}

std::string render_expansion_csv(const std::vector<ExpansionRow>& rows)
{
    std::ostringstream os;
    os << "N,sup_error\n";
    for (const auto& r : rows)
        os << r.n_terms << ',' << format_real(r.sup_error) << '\n';
    return os.str();
}

nlohmann::json expansion_to_json(const ExpandOptions& options, const std::vector<ExpansionRow>& rows)
{
    nlohmann::json out_rows = nlohmann::json::array();
    for (const auto& r : rows)
        out_rows.push_back({{"N", r.n_terms}, {"sup_error", r.sup_error}});
    return {{"nu", options.nu},
            {"mu", options.mu},
            {"x_min", options.x_min},
            {"x_max", options.x_max},
            {"x_points", options.x_points},
            {"rows", out_rows}};
}

std::string render_recursion_csv(const RecursionTable& table)
{
    std::ostringstream os;
    os << "n,P_n\n";
    for (std::size_t n = 0; n < table.values.size(); ++n)
        os << n << ',' << format_real(table.values[n]) << '\n';
    return os.str();
}

nlohmann::json recursion_to_json(const RecursionTable& table)
{
    const auto& o = table.options;
    return {{"nu", o.nu},
            {"alpha", o.alpha},
            {"mu", o.mu},
            {"n_max", o.n_max},
            {"seed_mode", o.seed_mode == SeedMode::closed_form ? "closed-form" : "explicit"},
            {"seeds", {table.seeds[0], table.seeds[1]}},
            {"values", table.values},
            {"max_residual", table.max_residual}};
}

std::string render_tridiag_csv(const TridiagReport& report)
{
    std::ostringstream os;
    os << "n,m,numeric,err_estimate,closed_form,abs_delta,in_band,converged,pass\n";
    for (const auto& c : report.cells) {
        os << c.n << ',' << c.m << ',' << format_real(c.numeric) << ',' << format_real(c.err_estimate) << ','
           << format_real(c.closed_form) << ',' << format_real(c.abs_delta) << ',' << flag(c.in_band) << ','
           << flag(c.converged) << ',' << flag(c.pass) << '\n';
    }
    return os.str();
}

nlohmann::json tridiag_to_json(const TridiagReport& report)
{
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : report.cells) {
        cells.push_back({{"n", c.n},
                         {"m", c.m},
                         {"numeric", c.numeric},
                         {"err_estimate", c.err_estimate},
                         {"closed_form", c.closed_form},
                         {"abs_delta", c.abs_delta},
                         {"in_band", c.in_band},
                         {"converged", c.converged},
                         {"pass", c.pass}});
    }
    const auto& o = report.options;
    return {{"nu", o.nu}, {"alpha", o.alpha}, {"mu", o.mu}, {"n_max", o.n_max}, {"cells", cells}};
}

}  // namespace lbj::cli

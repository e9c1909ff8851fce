#include "lbj/cli/app.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "lbj/cli/commands.hpp"
#include "lbj/cli/report.hpp"

namespace lbj::cli {

namespace {

const std::vector<std::string> kSubcommands{"eval", "verify", "expand", "recursion", "tridiag"};

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

template <typename T, typename Convert>
std::vector<T> parse_list(const std::string& text, Convert convert)
{
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        std::size_t used = 0;
        const T value = convert(item, &used);
        if (used != item.size())
            throw std::invalid_argument("malformed list entry '" + item + "'");
        out.push_back(value);
    }
    return out;
}

// Pulls "--config PATH" / "--config=PATH" out of args and splices the file's
// settings in directly after the subcommand, ahead of the user's own flags,
// so that explicit flags win.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
    std::optional<std::string> path;
    for (auto it = args.begin(); it != args.end();) {
        if (*it == "--config") {
            if (std::next(it) == args.end())
                throw CLI::ArgumentMismatch("--config requires a path");
            path = *std::next(it);
            it = args.erase(it, std::next(it, 2));
        } else if (it->rfind("--config=", 0) == 0) {
            path = it->substr(9);
            it = args.erase(it);
        } else {
            ++it;
        }
    }
    if (!path)
        return args;

    std::ifstream in(*path);
    if (!in)
        throw std::runtime_error("cannot read config file '" + *path + "'");
    std::vector<std::string> injected;
    for (const auto& [key, value] : parse_config(in))
        injected.push_back("--" + key + "=" + value);

    auto sub = std::find_if(args.begin(), args.end(), [](const std::string& a) {
        return std::find(kSubcommands.begin(), kSubcommands.end(), a) != kSubcommands.end();
    });
    const auto pos = sub == args.end() ? args.end() : std::next(sub);
    args.insert(pos, injected.begin(), injected.end());
    return args;
}

class OutputSink {
public:
    OutputSink(const std::string& path, std::ostream& fallback) : fallback_(fallback)
    {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_)
                throw std::runtime_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

private:
    std::ofstream file_;
    std::ostream& fallback_;
};

Format table_format(const std::string& name)
{
    const Format f = parse_format(name.empty() ? "csv" : name);
    if (f == Format::text)
        throw std::invalid_argument("format must be csv or json");
    return f;
}

}  // namespace

std::map<std::string, std::string> parse_config(std::istream& in)
{
    std::map<std::string, std::string> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        if (key.rfind("--", 0) == 0)
            key.erase(0, 2);
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        out[key] = trim(line.substr(eq + 1));
    }
    return out;
}

std::vector<double> parse_real_list(const std::string& text)
{
    return parse_list<double>(text, [](const std::string& s, std::size_t* used) { return std::stod(s, used); });
}

std::vector<int> parse_int_list(const std::string& text)
{
    return parse_list<int>(text, [](const std::string& s, std::size_t* used) { return std::stoi(s, used); });
}

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Laguerre/Bessel projection integrals: closed form, quadrature oracle and recursion checks", "lbj"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    std::string format_name;
    std::string out_path;
    std::optional<double> tol;
    int threads = 1;
    app.add_option("--format", format_name, "Output format: csv or json (eval also prints plain text by default)");
    app.add_option("--out", out_path, "Write output to PATH instead of stdout");
    app.add_option("--tol", tol, "Relative tolerance for pass/fail");
    app.add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
    app.add_option("--config", "key=value file of defaults; explicit flags override it");

    // eval
    int eval_n = 0;
    double eval_nu = 0, eval_mu = 0;
    bool explain = false;
    auto* eval = app.add_subcommand("eval", "Closed-form value of the integral");
    eval->fallthrough();
    eval->add_option("--n", eval_n, "Laguerre degree")->required()->check(CLI::NonNegativeNumber);
    eval->add_option("--nu", eval_nu, "Bessel order, > -1/2")->required();
    eval->add_option("--mu", eval_mu, "Frequency, >= 0")->required();
    eval->add_flag("--explain", explain, "Print theta, A_nu, f_nu and C_n factors");

    // verify
    VerifyOptions verify_opts;
    std::optional<std::string> nu_list, mu_list, n_list;
    std::optional<int> verify_n_max;
    std::optional<double> abs_tol;
    auto* verify = app.add_subcommand("verify", "Closed form vs. quadrature over a parameter grid");
    verify->fallthrough();
    verify->add_option("--nu-list", nu_list, "Comma-separated nu values");
    verify->add_option("--mu-list", mu_list, "Comma-separated mu values");
    verify->add_option("--n-list", n_list, "Comma-separated degrees");
    verify->add_option("--n-max", verify_n_max, "Use degrees 0..n-max instead of --n-list");
    verify->add_option("--abs-tol", abs_tol, "Absolute tolerance floor");

    // expand
    ExpandOptions expand_opts;
    std::string n_terms;
    auto* expand = app.add_subcommand("expand", "Sup-error of the truncated Laguerre expansion of J_nu(mu x)");
    expand->fallthrough();
    expand->add_option("--nu", expand_opts.nu, "Bessel order")->capture_default_str();
    expand->add_option("--mu", expand_opts.mu, "Frequency, > 0")->capture_default_str();
    expand->add_option("--n-terms", n_terms, "Comma-separated truncation orders N");
    expand->add_option("--x-min", expand_opts.x_min, "Grid start, > 0")->capture_default_str();
    expand->add_option("--x-max", expand_opts.x_max, "Grid end")->capture_default_str();
    expand->add_option("--x-points", expand_opts.x_points, "Grid size")->capture_default_str();

    // recursion
    RecursionOptions rec_opts;
    std::string seed_mode = "closed-form";
    auto* recursion = app.add_subcommand("recursion", "Generate P_n from the three-term recursion");
    recursion->fallthrough();
    recursion->add_option("--nu", rec_opts.nu, "Bessel order")->capture_default_str();
    recursion->add_option("--alpha", rec_opts.alpha, "Basis decay rate, in (0, 1)")->capture_default_str();
    recursion->add_option("--mu", rec_opts.mu, "Frequency, > 0")->capture_default_str();
    recursion->add_option("--n-max", rec_opts.n_max, "Last index generated, >= 1")->capture_default_str();
    recursion->add_option("--seed-mode", seed_mode, "Where P_0 and P_1 come from")->capture_default_str()->check(CLI::IsMember({"closed-form", "explicit"}));
    recursion->add_option("--p0", rec_opts.seeds[0], "P_0 for --seed-mode explicit");
    recursion->add_option("--p1", rec_opts.seeds[1], "P_1 for --seed-mode explicit");

    // tridiag
    TridiagOptions tri_opts;
    auto* tridiag = app.add_subcommand("tridiag", "Matrix of D + mu^2 by quadrature vs. closed form");
    tridiag->fallthrough();
    tridiag->add_option("--nu", tri_opts.nu, "Bessel order")->capture_default_str();
    tridiag->add_option("--alpha", tri_opts.alpha, "Basis decay rate, in (0, 1)")->capture_default_str();
    tridiag->add_option("--mu", tri_opts.mu, "Frequency, >= 0")->capture_default_str();
    tridiag->add_option("--n-max", tri_opts.n_max, "Largest row/column index")->capture_default_str();

    try {
        args = expand_config(std::move(args));
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (eval->parsed()) {
            const Format f = format_name.empty() ? Format::text : parse_format(format_name);
            OutputSink sink(out_path, out);
            sink.stream() << render_eval(run_eval(eval_n, eval_nu, eval_mu), f, explain);
            return kExitPass;
        }

        if (verify->parsed()) {
            const Format f = table_format(format_name);
            if (nu_list)
                verify_opts.nu_list = parse_real_list(*nu_list);
            if (mu_list)
                verify_opts.mu_list = parse_real_list(*mu_list);
            if (n_list)
                verify_opts.n_list = parse_int_list(*n_list);
            if (verify_n_max) {
                if (*verify_n_max < 0)
                    throw std::invalid_argument("n-max must be non-negative");
                verify_opts.n_list.clear();
                for (int n = 0; n <= *verify_n_max; ++n)
                    verify_opts.n_list.push_back(n);
            }
            if (tol)
                verify_opts.rel_tol = *tol;
            if (abs_tol)
                verify_opts.abs_tol = *abs_tol;
            verify_opts.threads = threads;
            const auto report = run_verification(verify_opts);
            OutputSink sink(out_path, out);
            if (f == Format::json)
                sink.stream() << verification_to_json(report).dump(2) << '\n';
            else
                sink.stream() << render_verification_csv(report);
            err << render_verification_summary(report);
            return verification_exit_code(report);
        }

        if (expand->parsed()) {
            const Format f = table_format(format_name);
            if (!n_terms.empty())
                expand_opts.n_terms = parse_int_list(n_terms);
            expand_opts.threads = threads;
            const auto rows = run_expansion(expand_opts);
            OutputSink sink(out_path, out);
            if (f == Format::json)
                sink.stream() << expansion_to_json(expand_opts, rows).dump(2) << '\n';
            else
                sink.stream() << render_expansion_csv(rows);
            return kExitPass;
        }

        if (recursion->parsed()) {
            const Format f = table_format(format_name);
            rec_opts.seed_mode = seed_mode == "explicit" ? SeedMode::explicit_values : SeedMode::closed_form;
            const auto table = run_recursion(rec_opts);
            OutputSink sink(out_path, out);
            if (f == Format::json) {
                sink.stream() << recursion_to_json(table).dump(2) << '\n';
            } else {
                sink.stream() << render_recursion_csv(table);
                err << "max_recursion_residual=" << format_real(table.max_residual) << '\n';
            }
            return kExitPass;
        }

        if (tridiag->parsed()) {
            const Format f = table_format(format_name);
            if (tol)
                tri_opts.rel_tol = *tol;
            tri_opts.threads = threads;
            const auto report = run_tridiag(tri_opts);
            OutputSink sink(out_path, out);
            if (f == Format::json)
                sink.stream() << tridiag_to_json(report).dump(2) << '\n';
            else
                sink.stream() << render_tridiag_csv(report);
            return tridiag_exit_code(report);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace lbj::cli

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "lbj/cli/app.hpp"
#include "lbj/cli/commands.hpp"
#include "lbj/cli/report.hpp"

using namespace lbj::cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

using Table = std::vector<std::vector<std::string>>;

Table parse_csv(const std::string& text)
{
    Table rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ','))
            cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

std::filesystem::path temp_file(const std::string& name)
{
    return std::filesystem::temp_directory_path() / ("lbj_test_" + name);
}

}  // namespace

TEST_CASE("eval prints the closed form")
{
    auto r = run({"eval", "--n", "0", "--nu", "0", "--mu", "0.5"});
    CHECK(r.code == 0);
    CHECK(r.out == "1.4142135624\n");

    r = run({"eval", "--n", "1", "--nu", "0.5", "--mu", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == "0.7659691784\n");

    r = run({"eval", "--n", "0", "--nu", "0", "--mu", "0"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("2.0000000000", 0) == 0);
    CHECK(r.out.find("limit") != std::string::npos);
}

TEST_CASE("eval --explain lists the factors")
{
    const auto r = run({"eval", "--n", "1", "--nu", "0.5", "--mu", "1", "--explain"});
    CHECK(r.code == 0);
    for (const char* key : {"cos_theta", "sin_theta", "A_nu", "f_nu(mu)", "C_n"})
        CHECK(r.out.find(key) != std::string::npos);

    const auto j = nlohmann::json::parse(run({"eval", "--n", "2", "--nu", "0", "--mu", "1", "--format", "json",
                                              "--explain"})
                                             .out);
    CHECK(j.at("value").get<double>() == doctest::Approx(0.0357771).epsilon(1e-6));
    CHECK(j.at("gegenbauer").get<double>() == doctest::Approx(0.04));
    CHECK_FALSE(j.at("limit").get<bool>());
}

TEST_CASE("eval rejects bad arguments with the usage code")
{
    CHECK(run({"eval", "--n", "0", "--nu", "-1", "--mu", "1"}).code == kExitUsage);
    CHECK(run({"eval", "--n", "0", "--nu", "0"}).code == kExitUsage);
    CHECK(run({"eval", "--n", "0", "--nu", "0", "--mu", "1", "--bogus"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify: single cell")
{
    const auto r = run({"verify", "--nu-list", "0", "--mu-list", "0.5", "--n-list", "0"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"n", "nu", "mu", "closed_form", "oracle", "abs_err", "rel_err",
                                              "oracle_err_estimate", "converged", "limit", "pass"});
    CHECK(std::stod(rows[1][5]) <= 1e-9);
    CHECK(rows[1][8] == "1");
    CHECK(rows[1][10] == "1");
    CHECK(r.err.find("verify: 1 cells") != std::string::npos);
}

TEST_CASE("verify: n-max expands to all degrees")
{
    const auto r = run({"verify", "--nu-list", "0.5", "--mu-list", "1,3", "--n-max", "3"});
    CHECK(r.code == 0);
    CHECK(parse_csv(r.out).size() == 1 + 2 * 4);
}

TEST_CASE("verify: empty grid is a usage error")
{
    CHECK(run({"verify", "--nu-list", ""}).code == kExitUsage);
    CHECK(run({"verify", "--n-list", " , "}).code == kExitUsage);
    CHECK(run({"verify", "--mu-list", "1,x"}).code == kExitUsage);
}

TEST_CASE("verify: impossible tolerance gives the tolerance exit code")
{
    const auto r = run({"verify", "--nu-list", "0", "--mu-list", "0.5,1", "--n-list", "0,2", "--tol", "1e-30",
                        "--abs-tol", "1e-30"});
    CHECK(r.code == kExitTolerance);
}

TEST_CASE("verify: non-convergence and its precedence")
{
    VerifyOptions opts;
    opts.nu_list = {0.5};
    opts.mu_list = {3.0};
    opts.n_list = {10};
    opts.quadrature.max_panels = 2;
    auto report = run_verification(opts);
    CHECK(report.summary.non_converged == 1);
    CHECK(verification_exit_code(report) == kExitNonConvergence);

    report.summary.failures = 1;
    CHECK(verification_exit_code(report) == kExitTolerance);
}

TEST_CASE("verify: JSON report fields and summary consistency")
{
    const auto r = run({"verify", "--nu-list", "0,1", "--mu-list", "0,1", "--n-list", "0,3", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    const auto& cells = j.at("cells");
    REQUIRE(cells.size() == 8);
    double max_abs = 0;
    for (const auto& c : cells) {
        for (const char* key : {"n", "nu", "mu", "closed_form", "oracle", "abs_err", "rel_err",
                                "oracle_err_estimate", "converged", "limit", "pass"})
            CHECK(c.contains(key));
        max_abs = std::max(max_abs, c.at("abs_err").get<double>());
    }
    const auto& s = j.at("summary");
    CHECK(s.at("cell_count").get<int>() == 8);
    CHECK(s.at("max_abs_err").get<double>() == max_abs);
    CHECK(s.at("failures").get<int>() == 0);
    CHECK(s.at("non_converged").get<int>() == 0);
    CHECK(s.at("wall_time").get<double>() >= 0);
    CHECK(s.at("worst_cell").contains("index"));
    // mu = 0 rows carry the limit flag.
    CHECK(cells[0].at("limit").get<bool>());
}

TEST_CASE("verify output is byte-identical across runs and thread counts")
{
    const std::vector<std::string> base{"verify", "--nu-list", "0,0.25,2.5", "--mu-list", "0.1,1,10",
                                        "--n-list", "0,5,20"};
    auto with_threads = [&](const char* t) {
        auto args = base;
        args.insert(args.end(), {"--threads", t});
        return run(args).out;
    };
    const auto one = with_threads("1");
    CHECK(one == with_threads("1"));
    CHECK(one == with_threads("4"));
    CHECK(one == with_threads("7"));
}

TEST_CASE("expand: sup-error column")
{
    const auto r = run({"expand", "--nu", "0.5", "--mu", "1", "--n-terms", "5,10,20,40,80"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0] == std::vector<std::string>{"N", "sup_error"});
    for (std::size_t i = 2; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][1]) < std::stod(rows[i - 1][1]));

    const auto calibrated = parse_csv(run({"expand", "--nu", "0", "--mu", "0.5", "--n-terms", "80"}).out);
    CHECK(std::stod(calibrated[1][1]) <= 0.02);

    const auto single = run({"expand", "--x-points", "1", "--x-min", "2", "--x-max", "2", "--n-terms", "0,20,40"});
    CHECK(single.code == 0);
    CHECK(parse_csv(single.out).size() == 4);

    CHECK(run({"expand", "--x-points", "0"}).code == kExitUsage);
    CHECK(run({"expand", "--format", "text"}).code == kExitUsage);
}

TEST_CASE("recursion: tables and residual")
{
    auto r = run({"recursion", "--alpha", "0.5", "--seed-mode", "closed-form", "--nu", "0", "--mu", "1", "--n-max",
                  "2"});
    CHECK(r.code == 0);
    auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"n", "P_n"});
    CHECK(std::stod(rows[3][1]) == doctest::Approx(0.0357771).epsilon(1e-6));

    r = run({"recursion", "--seed-mode", "explicit", "--p0", "0", "--p1", "0", "--n-max", "20"});
    CHECK(r.code == 0);
    rows = parse_csv(r.out);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(std::stod(rows[i][1]) == 0.0);

    r = run({"recursion", "--alpha", "0.3", "--nu", "0.5", "--mu", "1", "--n-max", "50", "--format", "json"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("values").size() == 51);
    for (const auto& v : j.at("values"))
        CHECK(std::isfinite(v.get<double>()));
    CHECK(j.at("max_residual").get<double>() <= 1e-12);

    r = run({"recursion", "--alpha", "0.3", "--nu", "0.5", "--mu", "1", "--n-max", "50"});
    CHECK(r.err.find("max_recursion_residual=") != std::string::npos);
    CHECK(run({"recursion", "--seed-mode", "guess"}).code == kExitUsage);
}

TEST_CASE("tridiag: quadrature matrix against the closed form")
{
    const auto r = run({"tridiag", "--nu", "0", "--alpha", "0.5", "--mu", "0.5", "--n-max", "4"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1 + 25);
    CHECK(rows[0] == std::vector<std::string>{"n", "m", "numeric", "err_estimate", "closed_form", "abs_delta",
                                              "in_band", "converged", "pass"});
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const int n = std::stoi(rows[i][0]), m = std::stoi(rows[i][1]);
        const double numeric = std::stod(rows[i][2]);
        if (n == m)
            CHECK(std::abs(numeric) <= 1e-10);
        if (std::abs(n - m) >= 2)
            CHECK(std::abs(numeric) <= 1e-8);
        CHECK(rows[i][8] == "1");
    }

    const auto wide = run({"tridiag", "--alpha", "0.9", "--mu", "1", "--n-max", "3", "--format", "json"});
    CHECK(wide.code == 0);
    CHECK(nlohmann::json::parse(wide.out).at("alpha").get<double>() == 0.9);
    CHECK(run({"tridiag", "--alpha", "1.5"}).code == kExitUsage);
}

TEST_CASE("config file supplies defaults and flags override them")
{
    const auto path = temp_file("config.ini");
    {
        std::ofstream cfg(path);
        cfg << "# grid for CI\n"
               "nu-list = 0, 0.5\n"
               "mu-list = 1\n"
               "--n-list = 0,1\n"
               "\n";
    }
    auto r = run({"verify", "--config", path.string()});
    CHECK(r.code == 0);
    CHECK(parse_csv(r.out).size() == 1 + 4);

    r = run({"verify", "--config=" + path.string(), "--nu-list", "2.5"});
    CHECK(r.code == 0);
    const auto rows = parse_csv(r.out);
    REQUIRE(rows.size() == 1 + 2);
    CHECK(rows[1][1] == "2.5");

    CHECK(run({"verify", "--config", (path.string() + ".missing")}).code == kExitUsage);
    std::filesystem::remove(path);
}

TEST_CASE("config parsing")
{
    std::istringstream in("a=1\n  # comment\n--b = x y  # trailing\n\n");
    const auto cfg = parse_config(in);
    CHECK(cfg.size() == 2);
    CHECK(cfg.at("a") == "1");
    CHECK(cfg.at("b") == "x y");
    std::istringstream bad("novalue\n");
    CHECK_THROWS_AS(parse_config(bad), std::invalid_argument);
    CHECK(parse_real_list("1, 2.5,3") == std::vector<double>{1, 2.5, 3});
    CHECK(parse_int_list("4") == std::vector<int>{4});
    CHECK_THROWS(parse_int_list("1.5"));
}

TEST_CASE("--out writes the report to a file")
{
    const auto path = temp_file("out.csv");
    const auto r = run({"expand", "--n-terms", "5,10", "--out", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    CHECK(text.str() == run({"expand", "--n-terms", "5,10"}).out);
    std::filesystem::remove(path);
}

TEST_CASE("format_real round-trips")
{
    for (double v : {0.1, 1.0 / 3, -2.5e-300, 123456789.123456789, 0.7659691783707507})
        CHECK(std::stod(format_real(v)) == v);
    CHECK(format_real(0.5) == "0.5");
}

TEST_CASE("exit codes of the installed binary")
{
    const std::string tool = LBJ_TOOL_PATH;
    auto status = [&](const std::string& args) {
        const int raw = std::system((tool + " " + args + " >/dev/null 2>&1").c_str());
        return WEXITSTATUS(raw);
    };
    CHECK(status("eval --n 0 --nu 0 --mu 0.5") == 0);
    CHECK(status("verify --nu-list 0 --mu-list 0.5 --n-list 0") == 0);
    CHECK(status("verify --nu-list 0 --mu-list 0.5,1 --n-list 0,2 --tol 1e-30 --abs-tol 1e-30") == 1);
    CHECK(status("verify --nu-list ''") == 64);
    CHECK(status("frobnicate") == 64);
}

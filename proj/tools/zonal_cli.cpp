// Command-line front-end: variance tables, verification suites, closed-form
// printing, and the uncertainty-limit table.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "zonal/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Variance and uncertainty-product computations for the "
                 "Abel-Poisson wavelet on S^n"};
    app.require_subcommand(1);

    // table
    auto* table = app.add_subcommand("table", "Emit one row per (n, rho) grid point");
    std::vector<int> n_values{2};
    double rho_min = 0.1, rho_max = 1.0;
    int points = 10;
    bool log_spacing = false;
    std::string format = "csv";
    double tol = 1e-12;
    table->add_option("--n", n_values, "Sphere dimensions (repeatable or comma separated)")
        ->delimiter(',');
    table->add_option("--rho-min", rho_min, "Smallest scale");
    table->add_option("--rho-max", rho_max, "Largest scale");
    table->add_option("--points", points, "Number of rho values");
    table->add_flag("--log", log_spacing, "Log-spaced rho grid (default linear)");
    table->add_option("--format", format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--tol", tol, "Series tail tolerance");

    // verify
    auto* verify = app.add_subcommand("verify", "Run the verification suites");
    std::string level = "fast";
    std::string vformat = "text";
    double vtol = 1e-12;
    double inject_fault = 0.0;
    verify->add_option("--level", level, "Suite level: fast or full")
        ->check(CLI::IsMember({"fast", "full"}));
    verify->add_option("--format", vformat, "Output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    verify->add_option("--tol", vtol, "Series tail tolerance");
    verify->add_option("--inject-fault", inject_fault,
                       "Testing only: perturb the lemma-path momentum variance "
                       "by this relative amount")
        ->group("");

    // closed-form
    auto* closed = app.add_subcommand("closed-form",
                                      "Print the exact closed form of S_{n,m}");
    int cf_n = 2, cf_m = 0;
    closed->add_option("n", cf_n, "Sphere dimension (>= 2)")->required();
    closed->add_option("m", cf_m, "Power of l (0..12)")->required();

    // limit
    auto* limit = app.add_subcommand("limit", "Table of the rho->0 uncertainty limits");
    int n_max = 2;
    limit->add_option("n_max", n_max, "Largest dimension")->required();

    CLI11_PARSE(app, argc, argv);

    if (table->parsed()) {
        zonal::cli::GridSpec grid;
        grid.n_values = n_values;
        grid.rho_min = rho_min;
        grid.rho_max = rho_max;
        grid.rho_points = points;
        grid.spacing = log_spacing ? zonal::cli::Spacing::log : zonal::cli::Spacing::linear;
        const auto fmt = format == "json" ? zonal::cli::OutputFormat::json
                                          : zonal::cli::OutputFormat::csv;
        return zonal::cli::cmd_table(grid, fmt, tol, std::cout, std::cerr);
    }
    if (verify->parsed()) {
        const auto lvl = level == "full" ? zonal::cli::VerifyLevel::full
                                         : zonal::cli::VerifyLevel::fast;
        const auto fmt = vformat == "json" ? zonal::cli::OutputFormat::json
                                           : zonal::cli::OutputFormat::csv;
        return zonal::cli::cmd_verify(vtol, lvl, fmt, std::cout, inject_fault);
    }
    if (closed->parsed()) {
        return zonal::cli::cmd_closed_form(cf_n, cf_m, std::cout, std::cerr);
    }
    if (limit->parsed()) {
        return zonal::cli::cmd_limit(n_max, std::cout, std::cerr);
    }
    return 0;
}

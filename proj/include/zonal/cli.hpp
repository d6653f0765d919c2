#pragma once

// Batch front-end operations behind the command-line tool: variance tables
// over (n, rho) grids, the verification suites, closed-form printing, and the
// limit table. Kept in the library so they are directly testable.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "zonal/abel_poisson.hpp"
#include "zonal/verify.hpp"

namespace zonal::cli {

enum class Spacing { linear, log };
enum class OutputFormat { csv, json };
enum class VerifyLevel { fast, full };

struct GridSpec {
    std::vector<int> n_values;
    double rho_min = 0.0;
    double rho_max = 0.0;
    int rho_points = 0;
    Spacing spacing = Spacing::linear;

    void validate() const {
        if (n_values.empty()) throw std::domain_error("grid: need at least one dimension");
        for (int n : n_values) {
            if (n < 2) throw std::domain_error("grid: dimensions must be >= 2");
        }
        if (!(rho_min > 0.0)) throw std::domain_error("grid: rho_min must be > 0");
        if (!(rho_min <= rho_max)) throw std::domain_error("grid: rho_min must be <= rho_max");
        if (rho_points < 1) throw std::domain_error("grid: need at least one rho point");
    }

    std::vector<double> rho_values() const {
        std::vector<double> out;
        out.reserve(rho_points);
        if (rho_points == 1) {
            out.push_back(rho_min);
            return out;
        }
        if (spacing == Spacing::log) {
            const double la = std::log(rho_min), lb = std::log(rho_max);
            for (int i = 0; i < rho_points; ++i) {
                out.push_back(std::exp(la + (lb - la) * i / (rho_points - 1)));
            }
        } else {
            for (int i = 0; i < rho_points; ++i) {
                out.push_back(rho_min + (rho_max - rho_min) * i / (rho_points - 1));
            }
        }
        return out;
    }
};

struct RunRow {
    int n = 0;
    double rho = 0.0;
    double var_space = 0.0;
    double var_momentum = 0.0;
    double uncertainty = 0.0;
    double limit_uncertainty = 0.0;
    double margin_over_half_n = 0.0;
};

inline RunRow compute_row(int n, double rho, double tol) {
    const AbelPoissonWavelet w(n, rho);
    RunRow row;
    row.n = n;
    row.rho = rho;
    row.var_space = ap_var_space(w, tol);
    row.var_momentum = ap_var_momentum_closed(w);
    row.uncertainty = std::sqrt(row.var_space * row.var_momentum);
    row.limit_uncertainty = ap_limit_uncertainty(n);
    row.margin_over_half_n = row.uncertainty - 0.5 * n;
    return row;
}

/// Computes all grid rows in a worker pool; rows are returned (and later
/// emitted) in grid order regardless of completion order.
inline std::vector<RunRow> run_grid(const GridSpec& grid, double tol) {
    grid.validate();
    const std::vector<double> rhos = grid.rho_values();
    struct Task {
        int n;
        double rho;
    };
    std::vector<Task> tasks;
    for (int n : grid.n_values) {
        for (double rho : rhos) tasks.push_back({n, rho});
    }
    std::vector<RunRow> rows(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};
    const unsigned workers =
        std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                           static_cast<unsigned>(tasks.size()));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                try {
                    rows[i] = compute_row(tasks[i].n, tasks[i].rho, tol);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return rows;
}

namespace detail {

// 17 significant digits round-trip IEEE doubles through decimal exactly.
inline std::string num17(double x) {
    std::ostringstream os;
    os << std::setprecision(17) << x;
    return os.str();
}

} // namespace detail

inline void write_csv(const std::vector<RunRow>& rows, std::ostream& out) {
    out << "n,rho,var_space,var_momentum,uncertainty,limit_uncertainty,"
           "margin_over_half_n\n";
    for (const RunRow& r : rows) {
        out << r.n << ',' << detail::num17(r.rho) << ',' << detail::num17(r.var_space)
            << ',' << detail::num17(r.var_momentum) << ',' << detail::num17(r.uncertainty)
            << ',' << detail::num17(r.limit_uncertainty) << ','
            << detail::num17(r.margin_over_half_n) << '\n';
    }
}

inline void write_json(const std::vector<RunRow>& rows, std::ostream& out) {
    out << "[";
    bool first = true;
    for (const RunRow& r : rows) {
        out << (first ? "\n" : ",\n");
        first = false;
        out << "  {\"n\": " << r.n << ", \"rho\": " << detail::num17(r.rho)
            << ", \"var_space\": " << detail::num17(r.var_space)
            << ", \"var_momentum\": " << detail::num17(r.var_momentum)
            << ", \"uncertainty\": " << detail::num17(r.uncertainty)
            << ", \"limit_uncertainty\": " << detail::num17(r.limit_uncertainty)
            << ", \"margin_over_half_n\": " << detail::num17(r.margin_over_half_n) << "}";
    }
    out << "\n]\n";
}

/// `table` subcommand: one row per (n, rho). Exit 0 on success, 2 on an
/// invalid grid, 1 on computation failure.
inline int cmd_table(const GridSpec& grid, OutputFormat format, double tol,
                     std::ostream& out, std::ostream& err) {
    try {
        grid.validate();
    } catch (const std::exception& e) {
        err << "invalid grid: " << e.what() << "\n";
        return 2;
    }
    try {
        const std::vector<RunRow> rows = run_grid(grid, tol);
        if (format == OutputFormat::csv) {
            write_csv(rows, out);
        } else {
            write_json(rows, out);
        }
        return 0;
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << "\n";
        return 1;
    }
}

/// `verify` subcommand. The fast level runs the series/closed-form suite, the
/// quadrature cross-path, spot values, and proof bounds at reduced grids; the
/// full level adds the limit ladder, asymptotics, and full-grid lower-bound
/// sweep. `fault` perturbs the lemma-path momentum variance (detection hook).
inline int cmd_verify(double series_tol, VerifyLevel level, OutputFormat format,
                      std::ostream& out, double fault = 0.0) {
    std::vector<CheckResult> checks;
    auto append = [&checks](std::vector<CheckResult> more) {
        for (auto& c : more) checks.push_back(std::move(c));
    };

    checks.push_back(verify_series_closed_forms(series_tol));
    checks.push_back(verify_var_momentum_closed(
        {2, 3}, {0.2, 0.5, 1.0}, 1e-10, fault));
    append(verify_quadrature_cross_path());
    append(verify_spot_values());

    if (level == VerifyLevel::full) {
        checks.push_back(verify_var_momentum_closed(
            {2, 3, 4, 5, 6}, zonal::detail::log_spaced(0.01, 3.0, 30), 1e-10, fault));
        append(verify_limit_ladder());
        append(verify_asymptotics());
        checks.push_back(verify_lower_bound({2, 3, 4, 5, 6},
                                            zonal::detail::log_spaced(0.01, 3.0, 30)));
        append(verify_proof_bounds(series_tol));
    } else {
        checks.push_back(
            verify_lower_bound({2, 3}, {0.001, 0.0125, 0.05, 0.2, 0.5, 1.0, 3.0}));
    }

    bool all_ok = true;
    for (const CheckResult& c : checks) {
        if (!c.passed) all_ok = false;
    }
    if (format == OutputFormat::json) {
        out << "[";
        bool first = true;
        for (const CheckResult& c : checks) {
            out << (first ? "\n" : ",\n");
            first = false;
            out << "  {\"name\": \"" << c.name << "\", \"passed\": "
                << (c.passed ? "true" : "false") << ", \"detail\": \"" << c.detail
                << "\"}";
        }
        out << "\n]\n";
    } else {
        for (const CheckResult& c : checks) {
            out << (c.passed ? "[ ok ] " : "[FAIL] ") << c.name << " -- " << c.detail
                << "\n";
        }
        out << (all_ok ? "all checks passed\n" : "some checks FAILED\n");
    }
    return all_ok ? 0 : 1;
}

/// `closed-form` subcommand: canonical S_{n,m} string. Exit 2 outside the
/// supported range (coefficient blow-up guard at m = 12).
inline int cmd_closed_form(int n, int m, std::ostream& out, std::ostream& err) {
    if (n < 2 || m < 0 || m > 12) {
        err << "closed-form: need n >= 2 and 0 <= m <= 12\n";
        return 2;
    }
    out << s_closed_form(n, m).to_string() << "\n";
    return 0;
}

/// `limit` subcommand: n, limit value, n/2, excess for n = 2..n_max.
inline int cmd_limit(int n_max, std::ostream& out, std::ostream& err) {
    if (n_max < 2) {
        err << "limit: need n_max >= 2\n";
        return 2;
    }
    out << "n,limit_uncertainty,half_n,excess\n";
    for (int n = 2; n <= n_max; ++n) {
        const double lim = ap_limit_uncertainty(n);
        out << n << ',' << detail::num17(lim) << ',' << detail::num17(0.5 * n) << ','
            << detail::num17(lim - 0.5 * n) << '\n';
    }
    return 0;
}

} // namespace zonal::cli

#pragma once

// Verification suites: every cross-path, closed-form-vs-numeric, bound, and
// asymptotic check the library certifies, each returning structured results
// so front-ends can render or gate on them.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "zonal/abel_poisson.hpp"
#include "zonal/localization.hpp"
#include "zonal/qseries.hpp"

namespace zonal {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

namespace detail {

inline std::vector<double> log_spaced(double lo, double hi, int count) {
    std::vector<double> out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < count; ++i) {
        out.push_back(std::exp(la + (lb - la) * i / (count - 1)));
    }
    return out;
}

inline std::string describe(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

} // namespace detail

/// s_numeric vs the exact closed forms: n in [2,6], m in [0,4], five scales;
/// agreement within certified tail + rel_tol * |value|.
inline CheckResult verify_series_closed_forms(double tol = 1e-12,
                                              double rel_tol = 1e-12) {
    const double rhos[] = {0.05, 0.1, 0.5, 1.0, 2.0};
    double worst = 0.0;
    int worst_n = 0, worst_m = 0;
    double worst_rho = 0.0;
    bool ok = true;
    for (int n = 2; n <= 6; ++n) {
        for (std::int64_t m = 0; m <= 4; ++m) {
            const QRational closed = s_closed_form(n, m);
            for (double rho : rhos) {
                const SummationResult num = s_numeric(SeriesIndex(n, m, rho), tol);
                const double q = std::exp(-2.0 * rho);
                const double exact = closed.eval(q, -std::expm1(-2.0 * rho));
                const double err = std::abs(num.value - exact);
                const double allowed = num.tail_bound + rel_tol * std::abs(exact);
                const double margin = err / allowed;
                if (margin > worst) {
                    worst = margin;
                    worst_n = n;
                    worst_m = static_cast<int>(m);
                    worst_rho = rho;
                }
                if (err > allowed) ok = false;
            }
        }
    }
    std::ostringstream detail;
    detail << "worst err/allowed = " << detail::describe(worst) << " at (n=" << worst_n
           << ", m=" << worst_m << ", rho=" << worst_rho << ")";
    return {"series numeric vs closed form (n=2..6, m=0..4, 5 scales)", ok, detail.str()};
}

/// Exact momentum variance vs the coefficient-lemma series path.
/// `fault` perturbs the lemma-path value (test hook for detection checks).
inline CheckResult verify_var_momentum_closed(const std::vector<int>& dims,
                                              const std::vector<double>& rhos,
                                              double rel_tol = 1e-10,
                                              double fault = 0.0) {
    double worst = 0.0;
    int worst_n = 0;
    double worst_rho = 0.0;
    for (int n : dims) {
        const Lambda lam(n);
        for (double rho : rhos) {
            const AbelPoissonWavelet w(n, rho);
            const double closed = ap_var_momentum_closed(w);
            double lemma = var_momentum_coeff(ap_coefficients(w), lam, 1e-13);
            lemma *= 1.0 + fault;
            const double rel = std::abs(closed - lemma) / std::abs(closed);
            if (rel > worst) {
                worst = rel;
                worst_n = n;
                worst_rho = rho;
            }
        }
    }
    std::ostringstream detail;
    detail << "max rel err = " << detail::describe(worst) << " at (n=" << worst_n
           << ", rho=" << worst_rho << "), allowed " << rel_tol;
    return {"var_momentum closed form vs coefficient lemma", worst <= rel_tol,
            detail.str()};
}

/// |U(rho) - U_limit| <= limit_tol * U_limit at rho = 1e-3 and monotone
/// decrease of the error along the halving ladder, per dimension.
inline std::vector<CheckResult> verify_limit_ladder(double limit_tol = 0.01,
                                                    double series_tol = 1e-12) {
    const double ladder[] = {0.2, 0.1, 0.05, 0.025, 0.0125};
    std::vector<CheckResult> out;
    for (int n = 2; n <= 6; ++n) {
        const double limit = ap_limit_uncertainty(n);
        const double u_small = ap_uncertainty(AbelPoissonWavelet(n, 1e-3), series_tol);
        const double rel = std::abs(u_small - limit) / limit;
        {
            std::ostringstream detail;
            detail << "rel err " << detail::describe(rel) << " vs allowed " << limit_tol;
            out.push_back({"limit reproduction at rho=1e-3, n=" + std::to_string(n),
                           rel <= limit_tol, detail.str()});
        }
        bool mono = true;
        double prev = std::numeric_limits<double>::infinity();
        std::ostringstream seq;
        for (double rho : ladder) {
            const double err =
                std::abs(ap_uncertainty(AbelPoissonWavelet(n, rho), series_tol) - limit);
            seq << detail::describe(err) << " ";
            if (!(err < prev)) mono = false;
            prev = err;
        }
        out.push_back({"monotone |U-limit| on halving ladder, n=" + std::to_string(n),
                       mono, "|U-limit| sequence: " + seq.str()});
    }
    return out;
}

/// Leading asymptotic terms at rho = 1e-3 and the first-order var_M
/// correction at rho = 0.05.
inline std::vector<CheckResult> verify_asymptotics(double lead_tol = 0.01,
                                                   double improvement_factor = 0.1,
                                                   double series_tol = 1e-12) {
    std::vector<CheckResult> out;
    for (int n = 2; n <= 6; ++n) {
        const double nd = n;
        const double rho = 1e-3;
        const AbelPoissonWavelet w(n, rho);
        const AsymptoticTerms asym = ap_asymptotics(n, rho);

        const double vs = ap_var_space(w, series_tol);
        const double lead_s = asym.var_s_leading / (rho * rho);
        const double rel_s = std::abs(vs / (rho * rho) - lead_s) / lead_s;
        out.push_back({"var_space leading term at rho=1e-3, n=" + std::to_string(n),
                       rel_s <= lead_tol,
                       "rel err " + detail::describe(rel_s) + " vs allowed " +
                           detail::describe(lead_tol)});

        const double vm = ap_var_momentum_closed(w);
        const double lead_m = (nd * nd + 3.0 * nd + 2.0) / 4.0;
        const double rel_m = std::abs(vm * rho * rho - lead_m) / lead_m;
        out.push_back({"var_momentum leading term at rho=1e-3, n=" + std::to_string(n),
                       rel_m <= lead_tol,
                       "rel err " + detail::describe(rel_m) + " vs allowed " +
                           detail::describe(lead_tol)});

        const double rho2 = 0.05;
        const double vm2 = ap_var_momentum_closed(AbelPoissonWavelet(n, rho2));
        const double lead_only = (nd * nd + 3.0 * nd + 2.0) / (4.0 * rho2 * rho2);
        const double two_terms = ap_asymptotics(n, rho2).var_m_two_terms;
        const double e_lead = std::abs(vm2 - lead_only);
        const double e_two = std::abs(vm2 - two_terms);
        out.push_back({"first-order var_M correction at rho=0.05, n=" + std::to_string(n),
                       e_two <= improvement_factor * e_lead,
                       "error ratio " + detail::describe(e_two / e_lead) +
                           " vs allowed " + detail::describe(improvement_factor)});
    }
    return out;
}

/// U >= n/2 with margin at every grid point.
inline CheckResult verify_lower_bound(const std::vector<int>& dims,
                                      const std::vector<double>& rhos,
                                      double series_tol = 1e-12) {
    double min_margin = std::numeric_limits<double>::infinity();
    int worst_n = 0;
    double worst_rho = 0.0;
    bool ok = true;
    for (int n : dims) {
        for (double rho : rhos) {
            const double u = ap_uncertainty(AbelPoissonWavelet(n, rho), series_tol);
            const double margin = u - 0.5 * n;
            if (margin < min_margin) {
                min_margin = margin;
                worst_n = n;
                worst_rho = rho;
            }
            if (!(margin >= -1e-12 * u)) ok = false;
        }
    }
    std::ostringstream detail;
    detail << "min margin " << detail::describe(min_margin) << " at (n=" << worst_n
           << ", rho=" << worst_rho << ")";
    return {"uncertainty principle U >= n/2 on full grid", ok, detail.str()};
}

/// Coefficient-lemma vs quadrature variances for n in {2,3}, rho in
/// {0.2, 0.5, 1.0}; both variances within rel_tol.
inline std::vector<CheckResult> verify_quadrature_cross_path(double rel_tol = 1e-6,
                                                             double series_tol = 1e-12,
                                                             double quad_tol = 1e-8) {
    std::vector<CheckResult> out;
    for (int n : {2, 3}) {
        const Lambda lam(n);
        for (double rho : {0.2, 0.5, 1.0}) {
            const AbelPoissonWavelet w(n, rho);
            const CoefficientSequence seq = ap_coefficients(w);
            const ZonalFunction f(seq, lam, 1e-9);

            const double vs_c = var_space_coeff(seq, lam, series_tol);
            const double vs_q = var_space_quadrature(f, quad_tol);
            const double rel_s = std::abs(vs_c - vs_q) / std::abs(vs_c);

            const double vm_c = var_momentum_coeff(seq, lam, series_tol);
            const double vm_q = var_momentum_quadrature(f, quad_tol);
            const double rel_m = std::abs(vm_c - vm_q) / std::abs(vm_c);

            std::ostringstream name;
            name << "coefficient vs quadrature paths (n=" << n << ", rho=" << rho << ")";
            std::ostringstream detail;
            detail << "var_space rel " << detail::describe(rel_s) << ", var_momentum rel "
                   << detail::describe(rel_m) << ", allowed " << rel_tol;
            out.push_back({name.str(), rel_s <= rel_tol && rel_m <= rel_tol, detail.str()});
        }
    }
    return out;
}

namespace detail {

// Exact integer verification of
//   l + 1/2 - 1/(8l) <= sqrt(l(l+1)) <= l + 1/2 - 1/(8l) + 1/(16 l^2),
// cleared of denominators and squared:
//   (8l^2+4l-1)^2 <= 64l^4 + 64l^3   and   256l^6 + 256l^5 <= (16l^3+8l^2-2l+1)^2.
inline bool sqrt_sandwich_holds(std::int64_t l) {
    using u128 = unsigned __int128;
    const u128 L = static_cast<u128>(l);
    const u128 lower = 8 * L * L + 4 * L - 1;
    if (lower * lower > 64 * L * L * L * L + 64 * L * L * L) return false;
    const u128 upper = 16 * L * L * L + 8 * L * L - 2 * L + 1;
    const u128 lhs = 256 * L * L * L * L * L * L + 256 * L * L * L * L * L;
    return lhs <= upper * upper;
}

} // namespace detail

/// The proof-bound battery: rest-term bound |R| <= S_{n,-1}/4, the two-sided
/// S_{2,-1} estimate, the exact sqrt(l(l+1)) sandwich, boundedness of the
/// scaled S_{n,-1}, and boundedness + reconstruction of the extracted alpha.
inline std::vector<CheckResult> verify_proof_bounds(double series_tol = 1e-12,
                                                    double recon_tol = 1e-8) {
    std::vector<CheckResult> out;

    {
        bool ok = true;
        std::string failure;
        double worst = 0.0;
        for (int n = 2; n <= 6; ++n) {
            for (double rho : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
                try {
                    const RestTerm rest = ap_rest_term(n, rho, series_tol);
                    worst = std::max(worst, std::abs(rest.r) / rest.bound);
                } catch (const std::runtime_error& e) {
                    ok = false;
                    failure = e.what();
                }
            }
        }
        out.push_back({"rest term |R| <= S_{n,-1}/4 (n=2..6, 6 scales)", ok,
                       ok ? "max |R|/bound = " + detail::describe(worst) : failure});
    }

    {
        bool ok = true;
        std::ostringstream detail_s;
        for (double rho : {0.05, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0}) {
            const SMinusOneReport rep = s_minus1_bound_check(2, rho);
            if (!rep.bound_holds) {
                ok = false;
                detail_s << "violated at rho=" << rho << " ";
            }
        }
        out.push_back({"0 <= S_{2,-1} <= e^{-2rho} + Gamma(0,2rho)", ok,
                       ok ? "holds on scale grid" : detail_s.str()});
    }

    {
        bool ok = true;
        std::int64_t bad = 0;
        for (std::int64_t l = 1; l <= 1'000'000; ++l) {
            if (!detail::sqrt_sandwich_holds(l)) {
                ok = false;
                bad = l;
                break;
            }
        }
        out.push_back({"sqrt(l(l+1)) sandwich, exact integers, l <= 1e6", ok,
                       ok ? "holds for all l" : "fails at l=" + std::to_string(bad)});
    }

    {
        // S_{n,-1} * rho^{n-2} stays bounded as rho -> 0 (checked as
        // non-increasing along the halving grid).
        bool ok = true;
        std::ostringstream detail_s;
        for (int n = 3; n <= 6; ++n) {
            double prev = std::numeric_limits<double>::infinity();
            for (double rho : {0.1, 0.05, 0.025}) {
                const SMinusOneReport rep = s_minus1_bound_check(n, rho);
                if (!(rep.scaled <= prev)) {
                    ok = false;
                    detail_s << "n=" << n << " grows at rho=" << rho << " ";
                }
                prev = rep.scaled;
            }
        }
        out.push_back({"S_{n,-1} * rho^{n-2} bounded along halving grid (n=3..6)", ok,
                       ok ? "non-increasing" : detail_s.str()});
    }

    {
        bool finite = true;
        bool recon_ok = true;
        double max_alpha = 0.0;
        double worst_recon = 0.0;
        for (int n = 2; n <= 6; ++n) {
            for (double rho : detail::log_spaced(1e-3, 1.0, 30)) {
                const double alpha = ap_alpha_extract(n, rho, series_tol);
                if (!std::isfinite(alpha)) finite = false;
                max_alpha = std::max(max_alpha, std::abs(alpha));
                const double direct = ap_var_space(AbelPoissonWavelet(n, rho), series_tol);
                const double recon = ap_var_space_reconstructed(n, rho, alpha);
                const double rel = std::abs(recon - direct) / std::abs(direct);
                worst_recon = std::max(worst_recon, rel);
                if (rel > recon_tol) recon_ok = false;
            }
        }
        out.push_back({"extracted alpha bounded on log grid [1e-3, 1]", finite,
                       "max |alpha| = " + detail::describe(max_alpha)});
        out.push_back({"closed-form var_space reconstruction from alpha", recon_ok,
                       "max rel err = " + detail::describe(worst_recon) + ", allowed " +
                           detail::describe(recon_tol)});
    }

    return out;
}

/// Frozen spot values: var_M(n=2, e^{2rho}=2) = 192/7 and the n=2,3 limits.
inline std::vector<CheckResult> verify_spot_values() {
    std::vector<CheckResult> out;
    {
        const double rho = std::log(2.0) / 2.0;
        const double vm = ap_var_momentum_closed(AbelPoissonWavelet(2, rho));
        const double rel = std::abs(vm - 192.0 / 7.0) / (192.0 / 7.0);
        out.push_back({"var_momentum(n=2, e^{2rho}=2) = 192/7", rel <= 1e-12,
                       "rel err " + detail::describe(rel)});
    }
    {
        const double rel2 =
            std::abs(ap_limit_uncertainty(2) - 1.2247448713915890) / 1.2247448713915890;
        const double rel3 =
            std::abs(ap_limit_uncertainty(3) - 1.5811388300841898) / 1.5811388300841898;
        out.push_back({"limits sqrt(6)/2 and sqrt(10)/2 for n=2,3",
                       rel2 <= 1e-15 && rel3 <= 1e-15,
                       "rel errs " + detail::describe(rel2) + ", " +
                           detail::describe(rel3)});
    }
    return out;
}

} // namespace zonal

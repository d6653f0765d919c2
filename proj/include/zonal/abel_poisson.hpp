#pragma once

// Everything specific to the Abel-Poisson wavelet: its Gegenbauer
// coefficients, the A/B/C series assembled from the S_{n,m} closed forms,
// the exact momentum variance, the series-route space variance, the rho -> 0
// limit of the uncertainty product, small-scale asymptotics, and the
// rest-term diagnostics that certify the space-variance structure.

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "zonal/localization.hpp"
#include "zonal/qseries.hpp"

namespace zonal {

/// Abel-Poisson wavelet on S^n at scale rho > 0. Gegenbauer coefficients:
/// h(l) = ((lambda+l)/lambda) sqrt(2*l*rho) e^{-l*rho}.
struct AbelPoissonWavelet {
    int n;
    double rho;

    AbelPoissonWavelet(int dim, double scale) : n(dim), rho(scale) {
        if (dim < 2) throw std::domain_error("AbelPoissonWavelet: n must be >= 2");
        if (!(scale > 0.0)) throw std::domain_error("AbelPoissonWavelet: rho must be > 0");
    }

    Lambda order() const { return Lambda(n); }
};

/// Coefficient sequence with decay certificate K = (1+1/lambda) sqrt(2*rho),
/// p = 3/2, delta = rho (from (lambda+l)/lambda <= l (1+1/lambda) for l >= 1).
inline CoefficientSequence ap_coefficients(const AbelPoissonWavelet& w) {
    const double lambda = w.order().lambda;
    const double rho = w.rho;
    auto coeff = [lambda, rho](std::int64_t l) {
        if (l == 0) return 0.0;
        return (lambda + static_cast<double>(l)) / lambda *
               std::sqrt(2.0 * rho * static_cast<double>(l)) *
               std::exp(-rho * static_cast<double>(l));
    };
    DecayCertificate cert{(1.0 + 1.0 / lambda) * std::sqrt(2.0 * rho), 1.5, rho};
    return CoefficientSequence(coeff, cert);
}

/// The three series entering the variance ratios:
///   A = (1/lambda) S_{n,2} + S_{n,1}
///   B = sum ((l+2*lambda)/lambda) binom(l+2*lambda-1, l) sqrt(l(l+1)) e^{-2*rho*l}
///   C = (1/lambda) S_{n,4} + 3 S_{n,3} + 2*lambda S_{n,2}
/// A and C come from the exact closed forms; B is summed directly with a
/// certified tail (the sqrt(l(l+1)) factor has no closed form).
struct ABCValues {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double a_tail = 0.0;
    double b_tail = 0.0;
    double c_tail = 0.0;
};

namespace detail {

inline double eval_closed(const QRational& r, double q, double one_minus_q) {
    return r.eval(q, one_minus_q);
}

} // namespace detail

inline ABCValues ap_abc(const AbelPoissonWavelet& w, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("ap_abc: tol must be > 0");
    const Lambda lam = w.order();
    const double lambda = lam.lambda;
    const double q = std::exp(-2.0 * w.rho);
    const double one_minus_q = -std::expm1(-2.0 * w.rho);

    const double s1 = detail::eval_closed(s_closed_form(w.n, 1), q, one_minus_q);
    const double s2 = detail::eval_closed(s_closed_form(w.n, 2), q, one_minus_q);
    const double s3 = detail::eval_closed(s_closed_form(w.n, 3), q, one_minus_q);
    const double s4 = detail::eval_closed(s_closed_form(w.n, 4), q, one_minus_q);

    ABCValues out;
    out.a = s2 / lambda + s1;
    out.c = s4 / lambda + 3.0 * s3 + 2.0 * lambda * s2;
    // closed forms are exact; only evaluation rounding remains
    out.a_tail = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(out.a);
    out.c_tail = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(out.c);

    if (w.rho < series_rho_floor) {
        throw std::domain_error("ap_abc: rho below summation floor 1e-8");
    }
    detail::BinomialWalker binom(lambda);
    auto term = [&](std::int64_t l) {
        const double ld = static_cast<double>(l);
        return (ld + 2.0 * lambda) / lambda * binom.at(l) *
               std::sqrt(ld * (ld + 1.0)) * std::exp(-2.0 * w.rho * ld);
    };
    // (l+2*lambda)/lambda * sqrt(l(l+1)) <= 2(1+2*lambda)/lambda * l^2
    GeometricMajorant maj(lambda, 2.0 * (1.0 + 2.0 * lambda) / lambda, 2.0, q);
    const SummationResult b = sum_series(term, maj, tol, 0.0);
    out.b = b.value;
    out.b_tail = b.tail_bound;
    return out;
}

/// Space variance through the series route: [e^rho A / B]^2 - 1.
inline double ap_var_space(const AbelPoissonWavelet& w, double tol) {
    const ABCValues abc = ap_abc(w, tol);
    const double ratio = std::exp(w.rho) * abc.a / abc.b;
    return ratio * ratio - 1.0;
}

/// Exact momentum variance,
/// n(n+1) [n + (n+3) e^{2rho} + e^{4rho}] e^{2rho} /
///   ([n-1 + (n+1) e^{2rho}] (e^{2rho}-1)^2).
inline double ap_var_momentum_closed(const AbelPoissonWavelet& w) {
    const double n = w.n;
    const double e2 = std::exp(2.0 * w.rho);
    const double em1 = std::expm1(2.0 * w.rho); // e^{2rho} - 1, accurate near 0
    return n * (n + 1.0) * (n + (n + 3.0) * e2 + e2 * e2) * e2 /
           ((n - 1.0 + (n + 1.0) * e2) * em1 * em1);
}

inline double ap_uncertainty(const AbelPoissonWavelet& w, double tol) {
    return std::sqrt(ap_var_space(w, tol) * ap_var_momentum_closed(w));
}

/// lim_{rho->0} U = (1/2) sqrt((n+1)(n+2)(n^2-3n+3) / (n(n-1))).
inline double ap_limit_uncertainty(int n) {
    if (n < 2) throw std::domain_error("ap_limit_uncertainty: n must be >= 2");
    const double nd = n;
    return 0.5 * std::sqrt((nd + 1.0) * (nd + 2.0) * (nd * nd - 3.0 * nd + 3.0) /
                           (nd * (nd - 1.0)));
}

/// Leading small-scale behavior:
///   var_S ~ (n^2-3n+3)/(n(n-1)) rho^2
///   var_M ~ (n^2+3n+2)/(4 rho^2) + (n^2-1)/(2 n rho)
struct AsymptoticTerms {
    double var_s_leading;
    double var_m_two_terms;
};

inline AsymptoticTerms ap_asymptotics(int n, double rho) {
    if (n < 2) throw std::domain_error("ap_asymptotics: n must be >= 2");
    if (!(rho > 0.0)) throw std::domain_error("ap_asymptotics: rho must be > 0");
    const double nd = n;
    AsymptoticTerms out;
    out.var_s_leading = (nd * nd - 3.0 * nd + 3.0) / (nd * (nd - 1.0)) * rho * rho;
    out.var_m_two_terms =
        (nd * nd + 3.0 * nd + 2.0) / (4.0 * rho * rho) + (nd * nd - 1.0) / (2.0 * nd * rho);
    return out;
}

/// Residual of B after removing its polynomial-in-l part,
///   r = B - [(1/lambda) S_{n,2} + (1/(2*lambda)+2) S_{n,1} + (1-1/(8*lambda)) S_{n,0}],
/// together with the bound |r| <= (1/4) S_{n,-1}. Throws if the bound fails.
struct RestTerm {
    double r = 0.0;
    double bound = 0.0;
};

inline RestTerm ap_rest_term(int n, double rho, double tol) {
    const AbelPoissonWavelet w(n, rho);
    const Lambda lam = w.order();
    const double lambda = lam.lambda;
    const double q = std::exp(-2.0 * rho);
    const double one_minus_q = -std::expm1(-2.0 * rho);

    const ABCValues abc = ap_abc(w, tol);
    const double s0 = detail::eval_closed(s_closed_form(n, 0), q, one_minus_q);
    const double s1 = detail::eval_closed(s_closed_form(n, 1), q, one_minus_q);
    const double s2 = detail::eval_closed(s_closed_form(n, 2), q, one_minus_q);

    RestTerm out;
    out.r = abc.b - (s2 / lambda + (1.0 / (2.0 * lambda) + 2.0) * s1 +
                     (1.0 - 1.0 / (8.0 * lambda)) * s0);
    double s_minus1;
    double s_minus1_tail = 0.0;
    if (n == 2) {
        s_minus1 = s2_minus1_closed(rho);
    } else {
        const SummationResult s = s_numeric(SeriesIndex(n, -1, rho), tol);
        s_minus1 = s.value;
        s_minus1_tail = s.tail_bound;
    }
    out.bound = 0.25 * (s_minus1 + s_minus1_tail);
    if (!(std::abs(out.r) <= out.bound + abc.b_tail)) {
        std::ostringstream msg;
        msg << "ap_rest_term: |R| <= S_{n,-1}/4 violated at n=" << n << ", rho=" << rho
            << ": |R|=" << std::abs(out.r) << ", bound=" << out.bound << ", B=" << abc.b
            << ", S0=" << s0 << ", S1=" << s1 << ", S2=" << s2;
        throw std::runtime_error(msg.str());
    }
    return out;
}

/// Extracted bounded rest function alpha(rho) = rho^{n-2} (r - (1 - 1/(8*lambda))).
///
/// The constant shift accounts for replacing S_{n,0} by (1-e^{-2*rho})^{1-n}
/// in the closed-form space-variance expression; with this convention,
/// substituting alpha back into ap_var_space_reconstructed reproduces
/// ap_var_space exactly up to rounding.
inline double ap_alpha_extract(int n, double rho, double tol) {
    const RestTerm rest = ap_rest_term(n, rho, tol);
    const double lambda = (n - 1) / 2.0;
    return detail::int_pow(rho, n - 2) * (rest.r - (1.0 - 1.0 / (8.0 * lambda)));
}

/// The closed-form space variance display in terms of the extracted alpha:
///   16 (n-1)^2 [n-1+(n+1)e^{2rho}]^2 rho^{2n} e^{2rho} / D^2 - 1,
///   D = rho^n + 2[2(n-1)(1-e^{-2rho})^n alpha rho^2 - (4n^2-6n+3) rho^n] e^{2rho}
///       - [4(n-1)(1-e^{-2rho})^n alpha rho^2 + (4n-5) rho^n] e^{4rho}.
inline double ap_var_space_reconstructed(int n, double rho, double alpha) {
    const double nd = n;
    const double e2 = std::exp(2.0 * rho);
    const double e4 = e2 * e2;
    const double wq = -std::expm1(-2.0 * rho); // 1 - e^{-2rho}
    const double wn = std::pow(wq, nd);
    const double rho_n = std::pow(rho, nd);
    const double num = 16.0 * (nd - 1.0) * (nd - 1.0) *
                       (nd - 1.0 + (nd + 1.0) * e2) * (nd - 1.0 + (nd + 1.0) * e2) *
                       std::pow(rho, 2.0 * nd) * e2;
    const double den =
        rho_n +
        2.0 * (2.0 * (nd - 1.0) * wn * alpha * rho * rho -
               (4.0 * nd * nd - 6.0 * nd + 3.0) * rho_n) *
            e2 -
        (4.0 * (nd - 1.0) * wn * alpha * rho * rho + (4.0 * nd - 5.0) * rho_n) * e4;
    return num / (den * den) - 1.0;
}

} // namespace zonal

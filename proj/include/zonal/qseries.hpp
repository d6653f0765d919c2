#pragma once

// The auxiliary series S_{n,m}(rho) = sum_{l>=1} binom(l+2*lambda-1, l) l^m e^{-2*rho*l}:
// rigorously truncated numeric summation, and exact closed forms as rational
// functions of q = e^{-2*rho}.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "zonal/qrational.hpp"
#include "zonal/special_functions.hpp"

namespace zonal {

/// Truncated-series value with a rigorous bound on the discarded tail.
struct SummationResult {
    double value = 0.0;
    double tail_bound = 0.0;
    std::int64_t terms_used = 0;
};

/// Index triple identifying S_{n,m}(rho).
struct SeriesIndex {
    int n;
    std::int64_t m;
    double rho;

    SeriesIndex(int dim, std::int64_t power, double scale)
        : n(dim), m(power), rho(scale) {
        if (dim < 2) throw std::domain_error("SeriesIndex: n must be >= 2");
        if (power < -1) throw std::domain_error("SeriesIndex: m must be >= -1");
        if (!(scale > 0.0)) throw std::domain_error("SeriesIndex: rho must be > 0");
    }
};

// Below this scale the term counts for direct summation explode; only the
// closed forms are offered.
inline constexpr double series_rho_floor = 1e-8;

namespace detail {

inline double int_pow(double base, std::int64_t e) {
    if (e < 0) return 1.0 / int_pow(base, -e);
    double r = 1.0;
    while (e-- > 0) r *= base;
    return r;
}

} // namespace detail

/// Geometric majorant u_l = scale * binom(l+2*lambda-1, l) * l^power * x^l,
/// walked incrementally from l = 1. For 2*lambda >= 1 the term ratio
///   u_{l+1}/u_l = ((l+2*lambda)/(l+1)) * ((l+1)/l)^power * x
/// is bounded, for all j >= l, by its value at l (power > 0) or by
/// (1+(2*lambda-1)/(l+1)) * x (power <= 0); both bounds decrease to x < 1,
/// which certifies the geometric tail sum_{j>l} u_j <= u_l * r/(1-r).
class GeometricMajorant {
public:
    GeometricMajorant(double lambda, double scale, double power, double x)
        : lambda_(lambda), power_(power), x_(x), l_(1),
          u_(scale * 2.0 * lambda * x) {
        if (!(x > 0.0 && x < 1.0)) {
            throw std::domain_error("GeometricMajorant: x must lie in (0,1)");
        }
        // u_1 = scale * binom(2*lambda, 1) * 1^power * x
    }

    std::int64_t index() const { return l_; }
    double current() const { return u_; }

    void advance() {
        const double l = static_cast<double>(l_);
        u_ *= (l + 2.0 * lambda_) / (l + 1.0) * std::pow((l + 1.0) / l, power_) * x_;
        ++l_;
    }

    // Upper bound for all term ratios u_{j+1}/u_j with j >= current l.
    double ratio_bound() const {
        const double l = static_cast<double>(l_);
        double r = (1.0 + (2.0 * lambda_ - 1.0) / (l + 1.0)) * x_;
        if (power_ > 0.0) r *= std::pow((l + 1.0) / l, power_);
        return r;
    }

    // Bound on sum_{j > current l} u_j; infinity until the ratio certifies < 1.
    double tail_bound() const {
        const double r = ratio_bound();
        if (!(r < 1.0)) return std::numeric_limits<double>::infinity();
        return u_ * r / (1.0 - r);
    }

private:
    double lambda_;
    double power_;
    double x_;
    std::int64_t l_;
    double u_;
};

namespace detail {

// Kahan-compensated accumulator.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

} // namespace detail

/// Sums term(l) for l = 1, 2, ... with |term(l)| majorized by `majorant`,
/// stopping once the certified tail drops below tol_abs + tol_rel * |sum|.
template <typename TermFn>
SummationResult sum_series(TermFn&& term, GeometricMajorant majorant, double tol_abs,
                           double tol_rel, std::int64_t term_budget = 50'000'000) {
    detail::CompensatedSum acc;
    for (;;) {
        const std::int64_t l = majorant.index();
        acc.add(term(l));
        const double tail = majorant.tail_bound();
        if (tail <= tol_abs + tol_rel * std::abs(acc.sum)) {
            return SummationResult{acc.sum, tail, l};
        }
        if (l >= term_budget) {
            throw std::runtime_error(
                "sum_series: tail not certified below tolerance within term budget");
        }
        majorant.advance();
    }
}

/// Certified numeric summation of S_{n,m}(rho).
inline SummationResult s_numeric(const SeriesIndex& idx, double tol) {
    if (!(tol > 0.0)) throw std::domain_error("s_numeric: tol must be > 0");
    if (idx.rho < series_rho_floor) {
        throw std::domain_error("s_numeric: rho below summation floor 1e-8");
    }
    const Lambda lam(idx.n);
    const double q = std::exp(-2.0 * idx.rho);
    // Incremental term state: binom(l+2*lambda-1, l) and q^l.
    double binom = 1.0;
    double q_pow = 1.0;
    std::int64_t at = 0;
    auto term = [&](std::int64_t l) {
        while (at < l) {
            binom *= (at + 2.0 * lam.lambda) / (at + 1.0);
            q_pow *= q;
            ++at;
        }
        return binom * detail::int_pow(static_cast<double>(l), idx.m) * q_pow;
    };
    GeometricMajorant maj(lam.lambda, 1.0, static_cast<double>(idx.m), q);
    return sum_series(term, maj, tol, 0.0);
}

/// Exact closed form R_{n,m}(q) with S_{n,m}(rho) = R_{n,m}(e^{-2*rho});
/// built from R_{n,0}(q) = (1-q)^{1-n} - 1 by applying q*d/dq m times.
inline QRational s_closed_form(int n, std::int64_t m) {
    if (n < 2) throw std::domain_error("s_closed_form: n must be >= 2");
    if (m < 0) throw std::domain_error("s_closed_form: m must be >= 0");
    const Polynomial one = Polynomial::monomial(1, 0);
    QRational r(one - Polynomial::one_minus_q_power(n - 1), n - 1);
    for (std::int64_t i = 0; i < m; ++i) r = r.q_derivative();
    return r;
}

/// Horner evaluation of a closed form at q in (0,1).
inline double qrational_eval(const QRational& r, double q) { return r.eval(q); }

/// S_{2,-1}(rho) = sum_{l>=1} e^{-2*rho*l}/l = -ln(1 - e^{-2*rho}), exactly.
inline double s2_minus1_closed(double rho) {
    if (!(rho > 0.0)) throw std::domain_error("s2_minus1_closed: rho must be > 0");
    return -std::log1p(-std::exp(-2.0 * rho));
}

/// Diagnostic for the S_{n,-1} estimates: for n = 2 the two-sided bound
/// 0 <= S_{2,-1}(rho) <= e^{-2*rho} + Gamma(0,2*rho); for n > 2 the scaled
/// value S_{n,-1}(rho) * rho^{n-2}, whose boundedness as rho -> 0 is checked
/// by callers across a grid.
struct SMinusOneReport {
    int n = 0;
    double rho = 0.0;
    double value = 0.0;
    double upper_bound = std::numeric_limits<double>::quiet_NaN();
    double scaled = 0.0;
    bool bound_holds = false;
};

inline SMinusOneReport s_minus1_bound_check(int n, double rho) {
    if (n < 2) throw std::domain_error("s_minus1_bound_check: n must be >= 2");
    if (!(rho > 0.0)) throw std::domain_error("s_minus1_bound_check: rho must be > 0");
    SMinusOneReport rep;
    rep.n = n;
    rep.rho = rho;
    const SummationResult s = s_numeric(SeriesIndex(n, -1, rho), 1e-14);
    rep.value = s.value;
    rep.scaled = s.value * detail::int_pow(rho, n - 2);
    if (n == 2) {
        rep.upper_bound = std::exp(-2.0 * rho) + gamma0(2.0 * rho);
        rep.bound_holds =
            s.value >= -s.tail_bound && s.value <= rep.upper_bound + s.tail_bound;
    } else {
        rep.bound_holds = std::isfinite(s.value) && s.value > 0.0;
    }
    return rep;
}

} // namespace zonal

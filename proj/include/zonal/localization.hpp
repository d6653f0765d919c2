#pragma once

// Space- and momentum-domain variances of zonal functions on S^n, computed
// along two independent paths:
//
//  * coefficient path -- series in the Gegenbauer coefficients h(l), each sum
//    truncated with a certified geometric tail;
//  * quadrature path -- the defining one-dimensional integrals of the
//    truncated series, via adaptive Gauss-Legendre.
//
// Coefficients are real-valued; the conjugated cross term in the space
// variance then reduces to 2*h(l)*h(l+1).

#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

#include "zonal/qseries.hpp"
#include "zonal/quadrature.hpp"
#include "zonal/special_functions.hpp"

namespace zonal {

/// The denominator of the space-variance ratio vanished: the function has no
/// preferred axis direction (the paper's precondition fails).
class CenterOfMassZeroError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Exponential decay certificate |h(l)| <= K * l^p * e^{-delta*l} for l >= 1.
struct DecayCertificate {
    double K;
    double p;
    double delta;
};

/// Gegenbauer coefficient sequence l -> h(l) with a certified decay rate used
/// for rigorous truncation. The certificate is spot-checked on construction
/// for l <= 10^4.
class CoefficientSequence {
public:
    CoefficientSequence(std::function<double(std::int64_t)> coeff, DecayCertificate cert)
        : coeff_(std::move(coeff)), cert_(cert) {
        if (!(cert_.delta > 0.0)) {
            throw std::domain_error("CoefficientSequence: decay rate must be > 0");
        }
        for (std::int64_t l = 1; l <= 10'000; ++l) {
            const double bound = cert_.K *
                                 std::pow(static_cast<double>(l), cert_.p) *
                                 std::exp(-cert_.delta * static_cast<double>(l));
            if (std::abs(coeff_(l)) > bound * (1.0 + 1e-12) + 1e-300) {
                throw std::domain_error(
                    "CoefficientSequence: certificate violated at l=" + std::to_string(l));
            }
        }
    }

    double operator()(std::int64_t l) const { return coeff_(l); }
    const DecayCertificate& certificate() const { return cert_; }

private:
    std::function<double(std::int64_t)> coeff_;
    DecayCertificate cert_;
};

enum class VariancePath { coefficient_lemma, quadrature };

struct LocalizationReport {
    double var_space = 0.0;
    double var_momentum = 0.0;
    double uncertainty = 0.0;
    VariancePath path = VariancePath::coefficient_lemma;
    double error_estimate = 0.0;
};

namespace detail {

// Incremental binom(l+2*lambda-1, l) walker shared by the coefficient sums.
class BinomialWalker {
public:
    explicit BinomialWalker(double lambda) : lambda_(lambda) {}

    double at(std::int64_t l) {
        while (at_ < l) {
            value_ *= (at_ + 2.0 * lambda_) / (at_ + 1.0);
            ++at_;
        }
        return value_;
    }

private:
    double lambda_;
    double value_ = 1.0;
    std::int64_t at_ = 0;
};

// Forward three-term recurrence state for C_k^order(t), advanced on demand.
class GegenbauerWalker {
public:
    GegenbauerWalker(double order, double t) : order_(order), t_(t) {}

    double value_at(std::int64_t target) {
        while (deg_ < target) {
            const std::int64_t k = deg_ + 1;
            const double next =
                k == 1 ? 2.0 * order_ * t_
                       : (2.0 * (k + order_ - 1.0) * t_ * cur_ -
                          (k + 2.0 * order_ - 2.0) * prev_) /
                             static_cast<double>(k);
            prev_ = cur_;
            cur_ = next;
            ++deg_;
        }
        return cur_;
    }

private:
    double order_;
    double t_;
    double prev_ = 0.0;
    double cur_ = 1.0;
    std::int64_t deg_ = 0;
};

struct SeriesTriple {
    SummationResult mass;      // sum (lambda/(l+lambda)) binom |h(l)|^2, l >= 0
    SummationResult cross;     // the conjugated h(l) h(l+1) sum, l >= 0
    SummationResult momentum;  // sum (l lambda (l+2lambda)/(l+lambda)) binom |h(l)|^2
};

// All three coefficient-lemma series with certified tails <= tol each.
inline SeriesTriple lemma_series(const CoefficientSequence& seq, const Lambda& lam,
                                 double tol) {
    if (!(tol > 0.0)) throw std::domain_error("lemma_series: tol must be > 0");
    const DecayCertificate& cert = seq.certificate();
    if (cert.delta < series_rho_floor) {
        throw std::domain_error("lemma_series: decay rate below summation floor 1e-8");
    }
    const double lambda = lam.lambda;
    const double x = std::exp(-2.0 * cert.delta);
    const double K2 = cert.K * cert.K;
    const double pow2p = cert.p > 0.0 ? std::pow(2.0, cert.p) : 1.0;

    SeriesTriple out;

    {
        BinomialWalker binom(lambda);
        auto term = [&](std::int64_t l) {
            const double h = seq(l);
            return lambda / (l + lambda) * binom.at(l) * h * h;
        };
        GeometricMajorant maj(lambda, K2, 2.0 * cert.p, x);
        out.mass = sum_series(term, maj, tol, 0.0);
        out.mass.value += seq(0) * seq(0); // l = 0 term
    }
    {
        BinomialWalker binom(lambda);
        auto term = [&](std::int64_t l) {
            // binom(l+2*lambda, l) = ((l+2*lambda)/(2*lambda)) * binom(l+2*lambda-1, l)
            const double b = binom.at(l) * (l + 2.0 * lambda) / (2.0 * lambda);
            return b * lambda * lambda * 2.0 * seq(l) * seq(l + 1) /
                   ((l + lambda) * (l + lambda + 1.0));
        };
        // |h(l) h(l+1)| <= K^2 l^p (l+1)^p e^{-delta(2l+1)}; with
        // (l+2lambda) <= l(1+2lambda) and (l+1)^p <= (2l)^p this majorizes as
        // lambda(1+2lambda) 2^p e^{-delta} K^2 * binom * l^{2p-1} x^l.
        GeometricMajorant maj(lambda,
                              lambda * (1.0 + 2.0 * lambda) * pow2p *
                                  std::exp(-cert.delta) * K2,
                              2.0 * cert.p - 1.0, x);
        out.cross = sum_series(term, maj, tol, 0.0);
        out.cross.value += 2.0 * lambda / (lambda + 1.0) * seq(0) * seq(1);
    }
    {
        BinomialWalker binom(lambda);
        auto term = [&](std::int64_t l) {
            const double h = seq(l);
            return static_cast<double>(l) * lambda * (l + 2.0 * lambda) /
                   (l + lambda) * binom.at(l) * h * h;
        };
        // l (l+2lambda)/(l+lambda) * lambda <= lambda (1+2lambda) l^2 for l >= 1.
        GeometricMajorant maj(lambda, lambda * (1.0 + 2.0 * lambda) * K2,
                              2.0 * cert.p + 2.0, x);
        out.momentum = sum_series(term, maj, tol, 0.0);
    }
    return out;
}

} // namespace detail

/// Space-domain variance from the coefficient lemma: (mass/cross)^2 - 1.
inline double var_space_coeff(const CoefficientSequence& seq, const Lambda& lam,
                              double tol) {
    const auto series = detail::lemma_series(seq, lam, tol);
    if (std::abs(series.cross.value) <= series.cross.tail_bound) {
        throw CenterOfMassZeroError("var_space_coeff: center of mass is zero");
    }
    const double ratio = series.mass.value / series.cross.value;
    double v = ratio * ratio - 1.0;
    // (mass/cross)^2 ~ 1 can dip below zero through rounding alone.
    if (v < 0.0 && v > -tol) v = 0.0;
    return v;
}

/// Momentum-domain variance from the coefficient lemma.
inline double var_momentum_coeff(const CoefficientSequence& seq, const Lambda& lam,
                                 double tol) {
    const auto series = detail::lemma_series(seq, lam, tol);
    if (std::abs(series.mass.value) <= series.mass.tail_bound) {
        throw std::domain_error("var_momentum_coeff: zero-norm sequence");
    }
    return series.momentum.value / series.mass.value;
}

/// Both variances and the uncertainty product, with a first-order propagated
/// error estimate from the certified tail bounds.
inline LocalizationReport uncertainty_product(const CoefficientSequence& seq,
                                              const Lambda& lam, double tol) {
    const auto series = detail::lemma_series(seq, lam, tol);
    if (std::abs(series.cross.value) <= series.cross.tail_bound) {
        throw CenterOfMassZeroError("uncertainty_product: center of mass is zero");
    }
    if (std::abs(series.mass.value) <= series.mass.tail_bound) {
        throw std::domain_error("uncertainty_product: zero-norm sequence");
    }
    LocalizationReport rep;
    rep.path = VariancePath::coefficient_lemma;
    const double mass = series.mass.value;
    const double cross = series.cross.value;
    const double mom = series.momentum.value;
    const double ratio = mass / cross;
    rep.var_space = ratio * ratio - 1.0;
    if (rep.var_space < 0.0 && rep.var_space > -tol) rep.var_space = 0.0;
    rep.var_momentum = mom / mass;

    const double rel_mass = series.mass.tail_bound / std::abs(mass);
    const double rel_cross = series.cross.tail_bound / std::abs(cross);
    const double rel_mom = mom != 0.0 ? series.momentum.tail_bound / std::abs(mom) : 0.0;
    const double err_s = 2.0 * ratio * ratio * (rel_mass + rel_cross);
    const double err_m = std::abs(rep.var_momentum) * (rel_mom + rel_mass);

    rep.uncertainty = std::sqrt(std::max(0.0, rep.var_space) * rep.var_momentum);
    rep.error_estimate =
        rep.uncertainty > 0.0
            ? (rep.var_momentum * err_s + rep.var_space * err_m) / (2.0 * rep.uncertainty)
            : std::sqrt(err_s * err_m);
    return rep;
}

/// Truncated zonal function f(cos theta) = sum_{l<=L} h(l) C_l^lambda(cos theta),
/// with L chosen so the neglected coefficient mass is certified below tol.
class ZonalFunction {
public:
    ZonalFunction(CoefficientSequence coefficients, Lambda lam, double tail_tol)
        : seq_(std::move(coefficients)), lam_(lam) {
        // sup_{|t|<=1} |C_l(t)| = C_l(1) = binom(l+2*lambda-1, l), so the
        // discarded evaluation mass is bounded by the certificate majorant.
        const DecayCertificate& cert = seq_.certificate();
        GeometricMajorant maj(lam.lambda, cert.K, cert.p, std::exp(-cert.delta));
        std::int64_t l = 1;
        while (maj.tail_bound() > tail_tol) {
            maj.advance();
            ++l;
            if (l > 10'000'000) {
                throw std::runtime_error("ZonalFunction: truncation degree explodes");
            }
        }
        degree_ = l;
    }

    std::int64_t truncation_degree() const { return degree_; }
    const Lambda& order() const { return lam_; }
    const CoefficientSequence& coefficients() const { return seq_; }

    /// f(cos theta).
    double operator()(double theta) const {
        const double t = std::cos(theta);
        detail::GegenbauerWalker c(lam_.lambda, t);
        double acc = seq_(0);
        for (std::int64_t l = 1; l <= degree_; ++l) {
            acc += seq_(l) * c.value_at(l);
        }
        return acc;
    }

    struct SurfaceDerivatives {
        double f;
        double df_dtheta;
        double laplace_beltrami; // f'' + (n-1) cot(theta) f'
    };

    /// f, f', and the zonal Laplace-Beltrami image at theta, by term-wise
    /// differentiation: d/dt C_l^lambda = 2*lambda C_{l-1}^{lambda+1}. The
    /// cot(theta) factor cancels against f'(theta) = -sin(theta) g1(cos theta),
    /// so the assembled form sin^2 g2 - n cos(theta) g1 is regular at the poles.
    SurfaceDerivatives derivatives(double theta) const {
        const double t = std::cos(theta);
        const double s = std::sin(theta);
        const double lambda = lam_.lambda;
        detail::GegenbauerWalker c(lambda, t);
        detail::GegenbauerWalker d(lambda + 1.0, t);
        detail::GegenbauerWalker e(lambda + 2.0, t);
        double f = seq_(0);
        double g1 = 0.0; // sum h(l) C_{l-1}^{lambda+1}
        double g2 = 0.0; // sum h(l) C_{l-2}^{lambda+2}
        for (std::int64_t l = 1; l <= degree_; ++l) {
            const double h = seq_(l);
            f += h * c.value_at(l);
            g1 += h * d.value_at(l - 1);
            if (l >= 2) g2 += h * e.value_at(l - 2);
        }
        g1 *= 2.0 * lambda;
        g2 *= 4.0 * lambda * (lambda + 1.0);
        SurfaceDerivatives out;
        out.f = f;
        out.df_dtheta = -s * g1;
        out.laplace_beltrami = s * s * g2 - lam_.n * t * g1;
        return out;
    }

private:
    CoefficientSequence seq_;
    Lambda lam_;
    std::int64_t degree_ = 0;
};

// Endpoint cutoff for the quadrature path; the excluded mass near the poles
// is O(eps^n) and far below the refinement tolerances in use.
inline constexpr double quadrature_theta_cutoff = 1e-6;

/// Space variance by direct quadrature of the defining integrals, reduced to
/// one dimension: the surface factor omega_{n-1} sin^{n-1}(theta) appears in
/// numerator and denominator and cancels in the ratio.
inline double var_space_quadrature(const ZonalFunction& f, double tol) {
    const int n = f.order().n;
    const double a = quadrature_theta_cutoff;
    const double b = M_PI - quadrature_theta_cutoff;
    auto weight = [n](double theta) { return std::pow(std::sin(theta), n - 1); };
    const double i0 = integrate_adaptive(
        [&](double th) {
            const double v = f(th);
            return v * v * weight(th);
        },
        a, b, tol);
    const double i1 = integrate_adaptive(
        [&](double th) {
            const double v = f(th);
            return std::cos(th) * v * v * weight(th);
        },
        a, b, tol);
    if (std::abs(i1) <= tol * (1.0 + std::abs(i0))) {
        throw CenterOfMassZeroError("var_space_quadrature: center of mass is zero");
    }
    const double ratio = i0 / i1;
    double v = ratio * ratio - 1.0;
    if (v < 0.0 && v > -tol) v = 0.0;
    return v;
}

/// Momentum variance by quadrature: -int Delta* f . f dsigma / int f^2 dsigma
/// with the zonal Laplace-Beltrami operator f'' + (n-1) cot(theta) f'.
inline double var_momentum_quadrature(const ZonalFunction& f, double tol) {
    const int n = f.order().n;
    const double a = quadrature_theta_cutoff;
    const double b = M_PI - quadrature_theta_cutoff;
    auto weight = [n](double theta) { return std::pow(std::sin(theta), n - 1); };
    const double num = integrate_adaptive(
        [&](double th) {
            const auto d = f.derivatives(th);
            return -d.laplace_beltrami * d.f * weight(th);
        },
        a, b, tol);
    const double den = integrate_adaptive(
        [&](double th) {
            const double v = f(th);
            return v * v * weight(th);
        },
        a, b, tol);
    if (!(den > 0.0)) {
        throw std::domain_error("var_momentum_quadrature: zero-norm function");
    }
    return num / den;
}

} // namespace zonal

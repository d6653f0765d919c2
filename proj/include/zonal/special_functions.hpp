#pragma once

// Scalar special functions underlying the variance computations: Gegenbauer
// polynomials, generalized binomial coefficients, and the upper incomplete
// gamma function Gamma(0,x) = E_1(x).
//
// Normalization: C_l^lambda(1) = binom(l + 2*lambda - 1, l). This is the
// convention the coefficient formulas in localization.hpp presuppose; other
// sources normalize differently.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace zonal {

/// Sphere dimension n >= 2 and the tied Gegenbauer order lambda = (n-1)/2.
struct Lambda {
    int n;
    double lambda;

    explicit Lambda(int dim)
        : n(dim), lambda((dim - 1) / 2.0) {
        if (dim < 2) {
            throw std::domain_error("Lambda: sphere dimension must be >= 2");
        }
    }
};

namespace detail {

// Three-term recurrence, no argument checks.
// C_0 = 1, C_1 = 2*lambda*t, l*C_l = 2(l+lambda-1)*t*C_{l-1} - (l+2*lambda-2)*C_{l-2}
inline double gegenbauer_recurrence(std::int64_t l, double lambda, double t) {
    if (l == 0) return 1.0;
    double prev = 1.0;
    double cur = 2.0 * lambda * t;
    for (std::int64_t k = 2; k <= l; ++k) {
        double next =
            (2.0 * (k + lambda - 1.0) * t * cur - (k + 2.0 * lambda - 2.0) * prev) / k;
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace detail

/// C_l^lambda(t) for |t| <= 1, lambda > 0.
inline double gegenbauer_eval(std::int64_t l, const Lambda& lam, double t) {
    if (l < 0) throw std::domain_error("gegenbauer_eval: degree must be >= 0");
    if (lam.lambda <= 0.0) throw std::domain_error("gegenbauer_eval: lambda must be > 0");
    if (std::abs(t) > 1.0) throw std::domain_error("gegenbauer_eval: |t| must be <= 1");
    return detail::gegenbauer_recurrence(l, lam.lambda, t);
}

/// All of C_0^lambda(t), ..., C_L^lambda(t) in one recurrence pass.
inline std::vector<double> gegenbauer_all(std::int64_t degree_max, double lambda, double t) {
    if (degree_max < 0) throw std::domain_error("gegenbauer_all: degree must be >= 0");
    if (lambda <= 0.0) throw std::domain_error("gegenbauer_all: lambda must be > 0");
    if (std::abs(t) > 1.0) throw std::domain_error("gegenbauer_all: |t| must be <= 1");
    std::vector<double> c(static_cast<std::size_t>(degree_max) + 1);
    c[0] = 1.0;
    if (degree_max >= 1) c[1] = 2.0 * lambda * t;
    for (std::int64_t k = 2; k <= degree_max; ++k) {
        c[static_cast<std::size_t>(k)] =
            (2.0 * (k + lambda - 1.0) * t * c[static_cast<std::size_t>(k - 1)] -
             (k + 2.0 * lambda - 2.0) * c[static_cast<std::size_t>(k - 2)]) /
            k;
    }
    return c;
}

/// binom(l + 2*lambda - 1, l) = Gamma(l+2*lambda) / (Gamma(l+1) * Gamma(2*lambda)),
/// evaluated through log-gamma.
inline double gen_binomial(std::int64_t l, const Lambda& lam) {
    if (l < 0) throw std::domain_error("gen_binomial: degree must be >= 0");
    const double two_lambda = 2.0 * lam.lambda;
    if (l == 0) return 1.0;
    const double lg = std::lgamma(l + two_lambda) - std::lgamma(static_cast<double>(l) + 1.0) -
                      std::lgamma(two_lambda);
    const double value = std::exp(lg);
    if (!std::isfinite(value)) {
        throw std::overflow_error("gen_binomial: result overflows double");
    }
    return value;
}

/// Exact integer evaluation of binom(l + 2*lambda - 1, l); requires integer
/// 2*lambda, which holds for every Lambda (2*lambda = n-1).
inline double gen_binomial_exact(std::int64_t l, const Lambda& lam) {
    if (l < 0) throw std::domain_error("gen_binomial_exact: degree must be >= 0");
    const std::int64_t k = lam.n - 2; // binom(l+k, l) with k = 2*lambda - 1
    unsigned __int128 num = 1, den = 1;
    for (std::int64_t j = 1; j <= k; ++j) {
        num *= static_cast<unsigned __int128>(l + j);
        den *= static_cast<unsigned __int128>(j);
        if (num > (static_cast<unsigned __int128>(1) << 120)) {
            throw std::overflow_error("gen_binomial_exact: intermediate overflow");
        }
    }
    const unsigned __int128 q = num / den; // exact: den always divides num
    const double value = static_cast<double>(q);
    if (!std::isfinite(value)) {
        throw std::overflow_error("gen_binomial_exact: result overflows double");
    }
    return value;
}

namespace detail {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

// Power series E_1(x) = -gamma - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!),
// stable for small x.
inline double gamma0_series(double x) {
    double sum = 0.0;
    double term = 1.0; // x^k / k!
    for (int k = 1; k < 80; ++k) {
        term *= x / k;
        const double contrib = (k % 2 == 1 ? term : -term) / k;
        sum += contrib;
        if (std::abs(contrib) < std::numeric_limits<double>::epsilon() * std::abs(sum)) {
            break;
        }
    }
    return -euler_gamma - std::log(x) + sum;
}

// Continued fraction E_1(x) = e^{-x} / (x + 1 - 1/(x + 3 - 4/(x + 5 - ...))),
// evaluated with the modified Lentz algorithm; stable for large x.
inline double gamma0_continued_fraction(double x) {
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k < 200; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = a * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < std::numeric_limits<double>::epsilon()) {
            break;
        }
    }
    return std::exp(-x) * h;
}

} // namespace detail

/// Upper incomplete gamma Gamma(0,x) = int_x^inf e^{-t}/t dt, x > 0.
///
/// Branch switch at x = 1.5: power series below, continued fraction above.
inline double gamma0(double x) {
    if (!(x > 0.0)) throw std::domain_error("gamma0: argument must be > 0");
    return x <= 1.5 ? detail::gamma0_series(x) : detail::gamma0_continued_fraction(x);
}

} // namespace zonal

#pragma once

// Composite Gauss-Legendre integration with panel-doubling refinement.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace zonal {

struct QuadratureRule {
    std::vector<double> nodes;   // on (-1, 1)
    std::vector<double> weights;
};

/// Gauss-Legendre nodes and weights, Newton iteration on the Legendre
/// recurrence from the Chebyshev initial guess.
inline QuadratureRule gauss_legendre(int npoints) {
    if (npoints < 2) throw std::domain_error("gauss_legendre: need >= 2 points");
    QuadratureRule rule;
    rule.nodes.resize(npoints);
    rule.weights.resize(npoints);
    const int mid = (npoints + 1) / 2;
    const double n = npoints;
    for (int i = 0; i < mid; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= npoints; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[npoints - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.weights[i] = w;
        rule.weights[npoints - 1 - i] = w;
    }
    return rule;
}

namespace detail {

inline const QuadratureRule& panel_rule() {
    static const QuadratureRule rule = gauss_legendre(16);
    return rule;
}

} // namespace detail

inline constexpr std::int64_t quadrature_panel_budget = std::int64_t(1) << 20;

/// Integrates f over [a,b] with 16-point Gauss-Legendre panels, doubling the
/// panel count until successive refinements differ by less than
/// tol * (1 + |I|). Throws if the panel budget is exhausted first.
template <typename F>
double integrate_adaptive(F&& f, double a, double b, double tol) {
    if (!(b > a)) throw std::domain_error("integrate_adaptive: need b > a");
    const QuadratureRule& rule = detail::panel_rule();
    double previous = std::numeric_limits<double>::quiet_NaN();
    for (std::int64_t panels = 4;; panels *= 2) {
        const double h = (b - a) / static_cast<double>(panels);
        double sum = 0.0;
        for (std::int64_t p = 0; p < panels; ++p) {
            const double left = a + h * static_cast<double>(p);
            const double c = left + 0.5 * h;
            const double s = 0.5 * h;
            double panel_sum = 0.0;
            for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
                panel_sum += rule.weights[j] * f(c + s * rule.nodes[j]);
            }
            sum += panel_sum * s;
        }
        if (std::isfinite(previous) &&
            std::abs(sum - previous) <= tol * (1.0 + std::abs(sum))) {
            return sum;
        }
        previous = sum;
        if (panels * 2 > quadrature_panel_budget) {
            throw std::runtime_error("integrate_adaptive: panel budget exhausted");
        }
    }
}

} // namespace zonal

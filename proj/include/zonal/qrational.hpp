#pragma once

// Exact rational functions in q with big-rational coefficients and
// denominators of the form (1-q)^k. GMP (mpq_class) supplies the scalar
// arithmetic; the polynomial layer and the q*d/dq operator live here.

#include <gmpxx.h>

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace zonal {

using BigRational = mpq_class;

/// Dense univariate polynomial over the big rationals, coefficients in
/// ascending degree order. The zero polynomial has an empty coefficient list.
class Polynomial {
public:
    Polynomial() = default;

    explicit Polynomial(std::vector<BigRational> coefficients)
        : coeffs_(std::move(coefficients)) {
        trim();
    }

    static Polynomial monomial(const BigRational& c, std::size_t degree) {
        if (c == 0) return Polynomial{};
        std::vector<BigRational> v(degree + 1);
        v[degree] = c;
        return Polynomial(std::move(v));
    }

    bool is_zero() const { return coeffs_.empty(); }

    // Degree of the zero polynomial is -1 by convention.
    std::int64_t degree() const { return static_cast<std::int64_t>(coeffs_.size()) - 1; }

    const BigRational& coeff(std::size_t i) const {
        static const BigRational zero(0);
        return i < coeffs_.size() ? coeffs_[i] : zero;
    }

    const std::vector<BigRational>& coefficients() const { return coeffs_; }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<BigRational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) + b.coeff(i);
        return Polynomial(std::move(v));
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        std::vector<BigRational> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = a.coeff(i) - b.coeff(i);
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return Polynomial{};
        std::vector<BigRational> v(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
                v[i + j] += a.coeffs_[i] * b.coeffs_[j];
            }
        }
        return Polynomial(std::move(v));
    }

    friend Polynomial operator*(const BigRational& s, const Polynomial& p) {
        std::vector<BigRational> v(p.coeffs_);
        for (auto& c : v) c *= s;
        return Polynomial(std::move(v));
    }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.coeffs_ == b.coeffs_;
    }

    Polynomial derivative() const {
        if (coeffs_.size() <= 1) return Polynomial{};
        std::vector<BigRational> v(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) {
            v[i - 1] = coeffs_[i] * static_cast<long>(i);
        }
        return Polynomial(std::move(v));
    }

    BigRational eval_exact(const BigRational& x) const {
        BigRational acc(0);
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            acc = acc * x + coeffs_[i];
        }
        return acc;
    }

    double eval(double x) const {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) {
            acc = acc * x + coeffs_[i].get_d();
        }
        return acc;
    }

    // Exact quotient by (1-q); requires eval_exact(1) == 0.
    Polynomial divide_by_one_minus_q() const {
        if (is_zero()) return Polynomial{};
        if (eval_exact(1) != 0) {
            throw std::logic_error("Polynomial: not divisible by (1-q)");
        }
        // P(q) = (q-1)*G(q) + P(1); synthetic division at q=1, then negate.
        std::vector<BigRational> g(coeffs_.size() - 1);
        BigRational run = coeffs_.back();
        for (std::size_t i = coeffs_.size() - 1; i-- > 0;) {
            if (i < g.size()) g[i] = run;
            run += coeffs_[i];
        }
        for (auto& c : g) c = -c;
        return Polynomial(std::move(g));
    }

    static Polynomial one_minus_q_power(std::int64_t k) {
        Polynomial acc = monomial(1, 0);
        const Polynomial base(
            std::vector<BigRational>{BigRational(1), BigRational(-1)});
        for (std::int64_t i = 0; i < k; ++i) acc = acc * base;
        return acc;
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<BigRational> coeffs_;
};

/// Rational function N(q) / (1-q)^k in reduced form: (1-q) does not divide
/// the numerator, so k is exactly the pole order at q = 1.
class QRational {
public:
    QRational() : num_(Polynomial::monomial(0, 0)), pole_order_(0) {}

    QRational(Polynomial numerator, std::int64_t pole_order)
        : num_(std::move(numerator)), pole_order_(pole_order) {
        if (pole_order < 0) {
            throw std::domain_error("QRational: pole order must be >= 0");
        }
        reduce();
    }

    const Polynomial& numerator() const { return num_; }
    std::int64_t pole_order() const { return pole_order_; }
    Polynomial denominator() const { return Polynomial::one_minus_q_power(pole_order_); }

    /// Applies q * d/dq exactly. With N/(1-q)^k this yields
    /// q * (N'*(1-q) + k*N) / (1-q)^{k+1}.
    QRational q_derivative() const {
        const Polynomial q = Polynomial::monomial(1, 1);
        if (pole_order_ == 0) {
            return QRational(q * num_.derivative(), 0);
        }
        const Polynomial one_minus_q(
            std::vector<BigRational>{BigRational(1), BigRational(-1)});
        const Polynomial inner = num_.derivative() * one_minus_q +
                                 BigRational(static_cast<long>(pole_order_)) * num_;
        return QRational(q * inner, pole_order_ + 1);
    }

    /// Horner evaluation of numerator and denominator separately, 0 <= q < 1
    /// (q = 0 corresponds to the infinite-scale end where every series term
    /// vanishes). `one_minus_q` may be passed when the caller can compute 1-q
    /// to full precision (e.g. -expm1(-2*rho)).
    double eval(double q) const { return eval(q, 1.0 - q); }

    double eval(double q, double one_minus_q) const {
        if (!(q >= 0.0 && q < 1.0)) {
            throw std::domain_error("QRational::eval: q must lie in [0,1)");
        }
        double den = 1.0;
        for (std::int64_t i = 0; i < pole_order_; ++i) den *= one_minus_q;
        if (std::abs(den) < pole_proximity_threshold) {
            throw std::runtime_error("QRational::eval: denominator too close to pole");
        }
        return num_.eval(q) / den;
    }

    BigRational eval_exact(const BigRational& q) const {
        BigRational den(1);
        const BigRational w = BigRational(1) - q;
        if (w == 0) throw std::domain_error("QRational::eval_exact: pole at q=1");
        for (std::int64_t i = 0; i < pole_order_; ++i) den *= w;
        return num_.eval_exact(q) / den;
    }

    friend bool operator==(const QRational& a, const QRational& b) {
        return a.pole_order_ == b.pole_order_ && a.num_ == b.num_;
    }

    /// Canonical form "P(q) / (1-q)^k", coefficients in ascending degree.
    std::string to_string() const {
        std::ostringstream out;
        std::size_t terms = 0;
        for (const auto& c : num_.coefficients()) {
            if (c != 0) ++terms;
        }
        if (terms == 0) return "0";
        if (terms > 1) out << "(";
        bool first = true;
        const auto& cs = num_.coefficients();
        for (std::size_t i = 0; i < cs.size(); ++i) {
            if (cs[i] == 0) continue;
            const bool negative = cs[i] < 0;
            const BigRational mag = negative ? BigRational(-cs[i]) : cs[i];
            if (first) {
                if (negative) out << "-";
                first = false;
            } else {
                out << (negative ? " - " : " + ");
            }
            if (mag != 1 || i == 0) out << mag.get_str();
            if (i >= 1) {
                out << "q";
                if (i >= 2) out << "^" << i;
            }
        }
        if (terms > 1) out << ")";
        out << " / (1-q)^" << pole_order_;
        return out.str();
    }

    // |den(q)| below this is reported as pole proximity.
    static constexpr double pole_proximity_threshold = 1e-250;

private:
    void reduce() {
        if (num_.is_zero()) {
            pole_order_ = 0;
            return;
        }
        while (pole_order_ > 0 && num_.eval_exact(1) == 0) {
            num_ = num_.divide_by_one_minus_q();
            --pole_order_;
        }
    }

    Polynomial num_;
    std::int64_t pole_order_;
};

} // namespace zonal

#pragma once

// q-arithmetic primitives: q-integers, q-factorials, q-binomials,
// infinite q-Pochhammer products and the q-gamma function.
//
// All functions are pure. Real powers q^t are taken as exp(t log q).

#include <cstdint>

namespace qfd {

/// Deformation parameter q in (0,1) with the numeric tolerances used by
/// product truncation and pole detection.
class QParam {
public:
    static constexpr double default_prod_tol = 1e-15;
    static constexpr double default_eps = 1e-12;

    explicit QParam(double q, double prod_tol = default_prod_tol, double eps = default_eps);

    double q() const noexcept { return q_; }
    double log_q() const noexcept { return log_q_; }
    double prod_tol() const noexcept { return prod_tol_; }
    double eps() const noexcept { return eps_; }

    /// q^t for real t.
    double pow(double t) const noexcept;

    friend bool operator==(const QParam&, const QParam&) = default;

private:
    double q_;
    double log_q_;
    double prod_tol_;
    double eps_;
};

/// Finite real argument (t, gamma, mu, nu). Converts implicitly from double
/// and rejects NaN and infinities.
class QReal {
public:
    QReal(double value); // NOLINT(google-explicit-constructor)

    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; } // NOLINT

private:
    double value_;
};

/// [t]_q = (1 - q^t)/(1 - q).
double q_integer(QReal t, const QParam& qp);

/// [n]_q! = [1]_q [2]_q ... [n]_q, with [0]_q! = 1.
double q_factorial(std::int64_t n, const QParam& qp);

/// Gaussian binomial [mu choose nu]_q; zero when mu < nu.
double q_binomial(std::int64_t mu, std::int64_t nu, const QParam& qp);

/// (x; q)_inf truncated at the first factor index J with |x| q^J < prod_tol.
double q_pochhammer_inf(double x, const QParam& qp);

/// True when t lies within eps of a non-positive integer.
bool is_q_gamma_pole(double t, const QParam& qp) noexcept;

/// Gamma_q(t). Throws PoleError at non-positive integers.
double q_gamma(QReal t, const QParam& qp);

/// Gamma_q(a)/Gamma_q(b) via (q^b;q)_inf/(q^a;q)_inf * (1-q)^(b-a).
/// Returns exactly 0 when b is a pole and a is not; throws PoleError when a
/// is a pole.
double q_gamma_ratio(QReal a, QReal b, const QParam& qp);

} // namespace qfd

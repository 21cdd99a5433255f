#include "qfd/qcore.hpp"

#include <cmath>
#include <string>

#include "qfd/errors.hpp"

namespace qfd {

QParam::QParam(double q, double prod_tol, double eps)
    : q_(q), log_q_(0.0), prod_tol_(prod_tol), eps_(eps) {
    if (!(q > 0.0 && q < 1.0)) {
        throw ValidationError("q must lie in the open interval (0,1), got " + std::to_string(q));
    }
    if (!(prod_tol > 0.0)) {
        throw ValidationError("prod_tol must be positive");
    }
    if (!(eps > 0.0)) {
        throw ValidationError("eps must be positive");
    }
    log_q_ = std::log(q_);
}

double QParam::pow(double t) const noexcept { return std::exp(t * log_q_); }

QReal::QReal(double value) : value_(value) {
    if (!std::isfinite(value)) {
        throw ValidationError("real argument must be finite");
    }
}

namespace {

// 1 - q^x without cancellation when q^x is close to 1.
double one_minus_pow(double x, const QParam& qp) noexcept { return -std::expm1(x * qp.log_q()); }

} // namespace

double q_integer(QReal t, const QParam& qp) {
    // + 0.0 normalizes the signed zero produced at t = 0.
    return one_minus_pow(t, qp) / (1.0 - qp.q()) + 0.0;
}

double q_factorial(std::int64_t n, const QParam& qp) {
    if (n < 0) {
        throw ValidationError("q_factorial: n must be nonnegative");
    }
    double result = 1.0;
    for (std::int64_t nu = 1; nu <= n; ++nu) {
        result *= q_integer(static_cast<double>(nu), qp);
    }
    return result;
}

double q_binomial(std::int64_t mu, std::int64_t nu, const QParam& qp) {
    if (mu < 0 || nu < 0) {
        throw ValidationError("q_binomial: arguments must be nonnegative");
    }
    if (mu < nu) {
        return 0.0;
    }
    return q_factorial(mu, qp) / (q_factorial(mu - nu, qp) * q_factorial(nu, qp));
}

double q_pochhammer_inf(double x, const QParam& qp) {
    if (!std::isfinite(x)) {
        throw ValidationError("q_pochhammer_inf: x must be finite");
    }
    const double ax = std::fabs(x);
    double result = 1.0;
    for (std::int64_t j = 0;; ++j) {
        const double scaled = ax * qp.pow(static_cast<double>(j));
        result *= 1.0 - x * qp.pow(static_cast<double>(j));
        if (scaled < qp.prod_tol()) {
            break;
        }
    }
    return result;
}

bool is_q_gamma_pole(double t, const QParam& qp) noexcept {
    if (t > qp.eps()) {
        return false;
    }
    return std::fabs(t - std::round(t)) < qp.eps();
}

double q_gamma_ratio(QReal a, QReal b, const QParam& qp) {
    if (is_q_gamma_pole(a, qp)) {
        throw PoleError("q-gamma pole at argument " + std::to_string(a.value()));
    }
    if (is_q_gamma_pole(b, qp)) {
        return 0.0;
    }
    if (a.value() == b.value()) {
        return 1.0;
    }
    // prod_j (1 - q^{b+j}) / (1 - q^{a+j}), paired so that neither infinite
    // product is formed on its own (both underflow as q -> 1).
    // q^x < prod_tol  <=>  x > log(prod_tol)/log(q).
    const double x_stop = std::log(qp.prod_tol()) / qp.log_q();
    double product = 1.0;
    for (std::int64_t j = 0;; ++j) {
        const double xa = a.value() + static_cast<double>(j);
        const double xb = b.value() + static_cast<double>(j);
        product *= one_minus_pow(xb, qp) / one_minus_pow(xa, qp);
        if (xa > x_stop && xb > x_stop) {
            break;
        }
    }
    return product * std::pow(1.0 - qp.q(), b.value() - a.value());
}

double q_gamma(QReal t, const QParam& qp) {
    if (is_q_gamma_pole(t, qp)) {
        throw PoleError("q_gamma: pole at t = " + std::to_string(t.value()));
    }
    return q_gamma_ratio(t, 1.0, qp);
}

} // namespace qfd

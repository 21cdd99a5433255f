#include "qfd/fracdiff.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfd/errors.hpp"
#include "qfd/kernels.hpp"

namespace qfd {

CoeffStream::CoeffStream(double gamma, QParam qp, CoeffKind kind, std::vector<double> coeffs)
    : gamma_(gamma), qp_(qp), kind_(kind), coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) {
        throw ValidationError("coefficient stream must hold at least c_0");
    }
}

MatrixWindow CoeffStream::matrix(std::size_t n) const {
    std::vector<double> d(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k <= j && j - k < coeffs_.size(); ++k) {
            d[j * n + k] = coeffs_[j - k];
        }
    }
    return MatrixWindow(n, n, std::move(d), true);
}

CoeffStream forward_coeffs(QReal gamma, const QParam& qp, std::size_t K) {
    std::vector<double> c(K + 1);
    c[0] = 1.0;
    // The factored step keeps integer orders exact but overflows in q^(gamma-k)
    // for large k; there the equivalent (q^k - q^gamma)/(1 - q^(k+1)) is used.
    const double q_gamma_pow = qp.pow(gamma);
    for (std::size_t k = 0; k < K; ++k) {
        const double kd = static_cast<double>(k);
        double next = -c[k] * qp.pow(kd) * q_integer(gamma - kd, qp) / q_integer(kd + 1.0, qp);
        if (!std::isfinite(next)) {
            const double num = q_gamma_pow * std::expm1((kd - gamma) * qp.log_q());
            const double den = -std::expm1((kd + 1.0) * qp.log_q());
            next = -c[k] * num / den;
        }
        c[k + 1] = next == 0.0 ? 0.0 : next;
    }
    return CoeffStream(gamma, qp, CoeffKind::Forward, std::move(c));
}

CoeffStream inverse_coeffs(QReal gamma, const QParam& qp, std::size_t K) {
    std::vector<double> e(K + 1);
    e[0] = 1.0;
    for (std::size_t k = 0; k < K; ++k) {
        const double kd = static_cast<double>(k);
        const double next = e[k] * q_integer(gamma + kd, qp) / q_integer(kd + 1.0, qp);
        e[k + 1] = next == 0.0 ? 0.0 : next;
    }
    return CoeffStream(gamma, qp, CoeffKind::Inverse, std::move(e));
}

SeqWindow apply_stream(const CoeffStream& s, const SeqWindow& g) {
    std::vector<double> out(g.size());
    kernels::omp::lower_toeplitz_apply(s.coeffs(), g.values(), out);
    return SeqWindow(std::move(out));
}

SeqWindow apply_forward(const SeqWindow& g, QReal gamma, const QParam& qp) {
    return apply_stream(forward_coeffs(gamma, qp, g.size() - 1), g);
}

SeqWindow apply_inverse(const SeqWindow& h, QReal gamma, const QParam& qp) {
    return apply_stream(inverse_coeffs(gamma, qp, h.size() - 1), h);
}

namespace {

double signed_order(const CoeffStream& s) noexcept {
    return s.kind() == CoeffKind::Inverse ? -s.gamma() : s.gamma();
}

} // namespace

CoeffStream compose_coeffs(const CoeffStream& a, const CoeffStream& b) {
    if (!(a.qp() == b.qp())) {
        throw MismatchedParameter("compose_coeffs: streams were built with different q (" +
                                  std::to_string(a.qp().q()) + " vs " + std::to_string(b.qp().q()) + ")");
    }
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<double> out(n);
    // (a*b)_k = sum_i a_i b_{k-i}: the Toeplitz action of b on the sequence a.
    kernels::omp::lower_toeplitz_apply(std::span<const double>(b.coeffs()).first(n),
                                       std::span<const double>(a.coeffs()).first(n), out);
    return CoeffStream(signed_order(a) + signed_order(b), a.qp(), CoeffKind::Composite, std::move(out));
}

namespace {

double identity_residual(const CoeffStream& s) {
    double r = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        r = std::max(r, std::fabs(s[k] - (k == 0 ? 1.0 : 0.0)));
    }
    return r;
}

} // namespace

double verify_inverse(QReal gamma, const QParam& qp, std::size_t N) {
    if (N == 0) {
        throw ValidationError("verify_inverse: window must be ≥ 1");
    }
    const CoeffStream c = forward_coeffs(gamma, qp, N - 1);
    const CoeffStream e = inverse_coeffs(gamma, qp, N - 1);
    return std::max(identity_residual(compose_coeffs(c, e)), identity_residual(compose_coeffs(e, c)));
}

double semigroup_defect(QReal mu, QReal nu, const QParam& qp, std::size_t N) {
    if (N < 2) {
        throw ValidationError("semigroup_defect: window must be ≥ 2");
    }
    const CoeffStream composed = compose_coeffs(forward_coeffs(mu, qp, N - 1), forward_coeffs(nu, qp, N - 1));
    const CoeffStream direct = forward_coeffs(mu.value() + nu.value(), qp, N - 1);
    double d = 0.0;
    for (std::size_t k = 0; k < N; ++k) {
        d = std::max(d, std::fabs(composed[k] - direct[k]));
    }
    return d;
}

} // namespace qfd

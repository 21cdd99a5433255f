#pragma once

// The fractional q-difference operator and its inverse as lower-triangular
// Toeplitz operators, represented by their coefficient streams.
//
//   forward:  c_0 = 1,  c_{k+1} = -c_k q^k [gamma-k]_q / [k+1]_q
//   inverse:  e_0 = 1,  e_{k+1} =  e_k [gamma+k]_q / [k+1]_q
//
// The inverse stream carries no q^{k(k-1)/2} factor; the asymmetric pair is
// an exact inverse (q-binomial theorem), which verify_inverse checks.

#include <cstddef>
#include <vector>

#include "qfd/qcore.hpp"
#include "qfd/window.hpp"

namespace qfd {

enum class CoeffKind {
    Forward,
    Inverse,
    Composite, // convolution of two streams; gamma holds the net order
};

class CoeffStream {
public:
    CoeffStream(double gamma, QParam qp, CoeffKind kind, std::vector<double> coeffs);

    double gamma() const noexcept { return gamma_; }
    const QParam& qp() const noexcept { return qp_; }
    CoeffKind kind() const noexcept { return kind_; }
    const std::vector<double>& coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    /// Truncation index K (coefficients 0..K are stored).
    std::size_t truncation() const noexcept { return coeffs_.size() - 1; }
    double operator[](std::size_t k) const noexcept { return coeffs_[k]; }

    /// Dense N x N lower-triangular Toeplitz window d_jk = coeffs[j-k].
    MatrixWindow matrix(std::size_t n) const;

private:
    double gamma_;
    QParam qp_;
    CoeffKind kind_;
    std::vector<double> coeffs_;
};

/// c_0..c_K of the forward operator of order gamma.
CoeffStream forward_coeffs(QReal gamma, const QParam& qp, std::size_t K);

/// e_0..e_K of the inverse operator of order gamma.
CoeffStream inverse_coeffs(QReal gamma, const QParam& qp, std::size_t K);

/// Lower-triangular Toeplitz action y_j = sum_{k<=j} s_{j-k} g_k.
SeqWindow apply_stream(const CoeffStream& s, const SeqWindow& g);

/// h = forward transform of g (same length).
SeqWindow apply_forward(const SeqWindow& g, QReal gamma, const QParam& qp);

/// g = inverse transform of h (same length).
SeqWindow apply_inverse(const SeqWindow& h, QReal gamma, const QParam& qp);

/// Cauchy convolution (a*b)_k = sum_{i<=k} a_i b_{k-i}, truncated to the
/// shorter stream. Throws MismatchedParameter when q differs.
CoeffStream compose_coeffs(const CoeffStream& a, const CoeffStream& b);

/// max_k |(c*e)_k - delta_k0| over both convolution orders, N coefficients.
double verify_inverse(QReal gamma, const QParam& qp, std::size_t N);

/// max_{k<N} |(c(mu)*c(nu))_k - c(mu+nu)_k|.
double semigroup_defect(QReal mu, QReal nu, const QParam& qp, std::size_t N);

} // namespace qfd

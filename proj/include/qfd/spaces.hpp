#pragma once

// Matrix-domain sequence spaces of the fractional q-difference operator:
// window norms, the isometry onto l_p, and the Schauder basis zeta^(k).

#include <cstddef>
#include <string>
#include <vector>

#include "qfd/qcore.hpp"
#include "qfd/window.hpp"

namespace qfd {

/// Which side of the case splits an exponent falls on. p = 1 belongs to
/// AtMostOne.
enum class PRegime { AtMostOne, Between, Infinite };

/// Exponent p in (0, inf]; infinity is a distinct state, not a large float.
class PExponent {
public:
    static PExponent finite(double p);
    static PExponent infinity() noexcept { return PExponent(); }
    /// Accepts a positive decimal or "inf"/"infinity".
    static PExponent parse(const std::string& text);

    bool is_infinite() const noexcept { return infinite_; }
    /// Throws ValidationError for p = inf.
    double value() const;
    /// p' = p/(p-1), defined only for 1 < p < inf.
    double conjugate() const;
    PRegime regime() const noexcept;
    std::string to_string() const;

    friend bool operator==(const PExponent&, const PExponent&) = default;

private:
    PExponent() noexcept = default;
    explicit PExponent(double p) noexcept : p_(p), infinite_(false) {}

    double p_ = 0.0;
    bool infinite_ = true;
};

struct NormReport {
    double value = 0.0;
    PExponent p = PExponent::infinity();
    std::size_t window = 0;
    std::vector<std::size_t> checkpoints; // prefix lengths, increasing
    std::vector<double> partials;         // norm of each prefix
};

/// (sum |h_j|^p)^(1/p) for 1 <= p < inf; sum |h_j|^p (no root) for p < 1;
/// max |h_j| for p = inf.
double lp_norm(const SeqWindow& h, const PExponent& p);

/// Powers of two below n, followed by n itself.
std::vector<std::size_t> default_checkpoints(std::size_t n);

/// Norm of g in the matrix domain: lp_norm of its forward transform, with
/// prefix norms at the default checkpoints.
NormReport domain_norm(const SeqWindow& g, QReal gamma, const QParam& qp, const PExponent& p);

/// Growth profile of the domain norm at the given prefix lengths. Purely
/// descriptive: a finite window cannot certify membership.
NormReport membership_diagnostic(const SeqWindow& g, QReal gamma, const QParam& qp, const PExponent& p,
                                 const std::vector<std::size_t>& checkpoints);

/// zeta^(k): the inverse coefficient stream shifted to start at index k.
SeqWindow schauder_basis_vector(std::size_t k, QReal gamma, const QParam& qp, std::size_t N);

/// sum_k h_k zeta^(k) over the window.
SeqWindow schauder_reconstruct(const SeqWindow& h, QReal gamma, const QParam& qp);

} // namespace qfd

#include "qfd/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "qfd/errors.hpp"
#include "qfd/fracdiff.hpp"

namespace qfd {

PExponent PExponent::finite(double p) {
    if (!(p > 0.0) || !std::isfinite(p)) {
        throw ValidationError("p must be a positive finite number or inf");
    }
    return PExponent(p);
}

PExponent PExponent::parse(const std::string& text) {
    std::string lower;
    for (char ch : text) {
        lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    }
    if (lower == "inf" || lower == "infinity") {
        return infinity();
    }
    double p = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ValidationError("p: cannot parse '" + text + "'");
    }
    return finite(p);
}

double PExponent::value() const {
    if (infinite_) {
        throw ValidationError("p is infinite");
    }
    return p_;
}

double PExponent::conjugate() const {
    if (infinite_ || p_ <= 1.0) {
        throw ValidationError("conjugate exponent requires 1 < p < inf");
    }
    return p_ / (p_ - 1.0);
}

PRegime PExponent::regime() const noexcept {
    if (infinite_) {
        return PRegime::Infinite;
    }
    return p_ <= 1.0 ? PRegime::AtMostOne : PRegime::Between;
}

std::string PExponent::to_string() const {
    if (infinite_) {
        return "inf";
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, p_);
    return std::string(buf, res.ptr);
}

namespace {

double lp_norm_span(std::span<const double> h, const PExponent& p) {
    if (p.is_infinite()) {
        double m = 0.0;
        for (double v : h) {
            m = std::max(m, std::fabs(v));
        }
        return m;
    }
    const double pv = p.value();
    double s = 0.0;
    for (double v : h) {
        s += pv == 1.0 ? std::fabs(v) : std::pow(std::fabs(v), pv);
    }
    return pv < 1.0 ? s : std::pow(s, 1.0 / pv);
}

NormReport norm_profile(const SeqWindow& g, QReal gamma, const QParam& qp, const PExponent& p,
                        std::vector<std::size_t> checkpoints) {
    const SeqWindow h = apply_forward(g, gamma, qp);
    NormReport r;
    r.p = p;
    r.window = g.size();
    r.value = lp_norm(h, p);
    for (std::size_t n : checkpoints) {
        r.partials.push_back(lp_norm_span(h.values().first(n), p));
    }
    r.checkpoints = std::move(checkpoints);
    return r;
}

} // namespace

double lp_norm(const SeqWindow& h, const PExponent& p) { return lp_norm_span(h.values(), p); }

std::vector<std::size_t> default_checkpoints(std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t c = 1; c < n; c *= 2) {
        out.push_back(c);
    }
    out.push_back(n);
    return out;
}

NormReport domain_norm(const SeqWindow& g, QReal gamma, const QParam& qp, const PExponent& p) {
    return norm_profile(g, gamma, qp, p, default_checkpoints(g.size()));
}

NormReport membership_diagnostic(const SeqWindow& g, QReal gamma, const QParam& qp, const PExponent& p,
                                 const std::vector<std::size_t>& checkpoints) {
    if (checkpoints.empty()) {
        throw ValidationError("checkpoints: at least one prefix length is required");
    }
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] == 0 || checkpoints[i] > g.size()) {
            throw ValidationError("checkpoints: each must lie in [1, window length]");
        }
        if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) {
            throw ValidationError("checkpoints: must be strictly increasing");
        }
    }
    return norm_profile(g, gamma, qp, p, checkpoints);
}

SeqWindow schauder_basis_vector(std::size_t k, QReal gamma, const QParam& qp, std::size_t N) {
    if (k >= N) {
        throw IndexError("basis index k = " + std::to_string(k) + " must be < window " + std::to_string(N));
    }
    const CoeffStream e = inverse_coeffs(gamma, qp, N - 1 - k);
    std::vector<double> z(N, 0.0);
    std::copy(e.coeffs().begin(), e.coeffs().end(), z.begin() + static_cast<std::ptrdiff_t>(k));
    return SeqWindow(std::move(z));
}

SeqWindow schauder_reconstruct(const SeqWindow& h, QReal gamma, const QParam& qp) {
    const std::size_t n = h.size();
    const CoeffStream e = inverse_coeffs(gamma, qp, n - 1);
    std::vector<double> g(n, 0.0);
    // Accumulate h_k * zeta^(k) one basis vector at a time.
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t j = k; j < n; ++j) {
            g[j] += h[k] * e[j - k];
        }
    }
    return SeqWindow(std::move(g));
}

} // namespace qfd

#include "qfd/duals.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "qfd/errors.hpp"
#include "qfd/fracdiff.hpp"

namespace qfd {

MatrixWindow lambda_matrix(const SeqWindow& a, QReal gamma, const QParam& qp) {
    const std::size_t n = a.size();
    const CoeffStream e = inverse_coeffs(gamma, qp, n - 1);
    std::vector<double> l(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k <= j; ++k) {
            l[j * n + k] = e[j - k] * a[j];
        }
    }
    return MatrixWindow(n, n, std::move(l), true);
}

MatrixWindow omega_matrix(const SeqWindow& a, QReal gamma, const QParam& qp) {
    const CoeffStream e = inverse_coeffs(gamma, qp, a.size() - 1);
    return kernels::omp::running_correlation(e.coeffs(), a.values());
}

SubsetSupResult subset_sup(const MatrixWindow& m, double exponent, SubsetMode mode, std::size_t row_limit) {
    return kernels::omp::subset_sup(m, exponent, mode, row_limit);
}

std::vector<std::size_t> default_row_limits(std::size_t rows) {
    const std::size_t top = std::min(rows, kernels::max_subset_rows);
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i <= 4; ++i) {
        const std::size_t r = std::max<std::size_t>(1, top * i / 4);
        if (out.empty() || r > out.back()) {
            out.push_back(r);
        }
    }
    return out;
}

namespace {

bool is_subset_condition(ConditionId c) {
    return c == ConditionId::C3_4 || c == ConditionId::C3_7 || c == ConditionId::C3_8;
}

std::vector<std::size_t> resolve_windows(const MatrixWindow& m, ConditionId cond, const std::vector<std::size_t>& windows) {
    if (m.rows() == 0) {
        throw ValidationError("window must be ≥ 1");
    }
    std::vector<std::size_t> w = windows;
    if (w.empty()) {
        w = is_subset_condition(cond) ? default_row_limits(m.rows()) : default_windows(m.rows());
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (is_subset_condition(cond) && w[i] > kernels::max_subset_rows) {
            throw LimitError("row_limit " + std::to_string(w[i]) + " exceeds the exhaustive enumeration cap of " +
                             std::to_string(kernels::max_subset_rows));
        }
        if (w[i] == 0 || w[i] > m.rows()) {
            throw ValidationError("window " + std::to_string(w[i]) + " outside [1, " + std::to_string(m.rows()) + "]");
        }
        if (i > 0 && w[i] <= w[i - 1]) {
            throw ValidationError("windows must be strictly increasing");
        }
    }
    return w;
}

void require_regime(ConditionId cond, const PExponent& p, PRegime want) {
    if (p.regime() != want) {
        const char* what = want == PRegime::Between ? "1 < p < inf" : "0 < p <= 1";
        throw InvalidCondition(to_string(cond) + " is only defined for " + std::string(what) + ", got p = " +
                               p.to_string());
    }
}

std::string describe_subset(const std::vector<std::size_t>& j) {
    std::string s = "J = {";
    for (std::size_t i = 0; i < j.size(); ++i) {
        s += (i ? "," : "") + std::to_string(j[i]);
    }
    return s + "}";
}

ConditionReport subset_report(const MatrixWindow& m, ConditionId cond, double exponent, SubsetMode mode,
                              const std::vector<std::size_t>& limits) {
    ConditionReport r;
    r.id = cond;
    for (std::size_t lim : limits) {
        SubsetSupResult s = subset_sup(m, exponent, mode, lim);
        r.values.push_back({lim, s.value});
        r.witness = std::move(s.witness);
    }
    r.verdict = classify_bound(r.values);
    r.detail = describe_subset(r.witness);
    return r;
}

} // namespace

ConditionReport lemma_mc_condition(const MatrixWindow& m, ConditionId cond, const PExponent& p,
                                   const std::vector<std::size_t>& windows) {
    switch (cond) {
    case ConditionId::C3_5:
    case ConditionId::C3_8:
        require_regime(cond, p, PRegime::Between);
        break;
    case ConditionId::C3_6:
    case ConditionId::C3_7:
        require_regime(cond, p, PRegime::AtMostOne);
        break;
    case ConditionId::C3_1:
    case ConditionId::C3_2:
    case ConditionId::C3_3:
    case ConditionId::C3_4:
    case ConditionId::C3_9:
        break;
    default:
        throw InvalidCondition(to_string(cond) + " is not a matrix-class condition");
    }

    const std::vector<std::size_t> w = resolve_windows(m, cond, windows);
    switch (cond) {
    case ConditionId::C3_4: return subset_report(m, cond, 1.0, SubsetMode::SumOverColsOfAbsColSum, w);
    case ConditionId::C3_7: return subset_report(m, cond, p.value(), SubsetMode::SupOverColsOfAbs, w);
    case ConditionId::C3_8: return subset_report(m, cond, p.conjugate(), SubsetMode::SumOverColsOfAbsColSum, w);
    default: break;
    }

    ConditionReport r;
    r.id = cond;
    std::size_t witness = 0;
    for (std::size_t n : w) {
        double v = 0.0;
        switch (cond) {
        case ConditionId::C3_1: std::tie(v, witness) = eval::row_power_sup(m, n, 1.0); break;
        case ConditionId::C3_5: std::tie(v, witness) = eval::row_power_sup(m, n, p.conjugate()); break;
        case ConditionId::C3_6: v = eval::entry_sup(m, n, p.value()); break;
        case ConditionId::C3_2: std::tie(v, witness) = eval::column_tail_spread(m, n); break;
        case ConditionId::C3_9: v = eval::column_tail_abs(m, n); break;
        case ConditionId::C3_3: v = eval::row_mass_escape(m, n); break;
        default: break;
        }
        r.values.push_back({n, v});
    }
    switch (cond) {
    case ConditionId::C3_2:
        r.verdict = classify_limit(r.values, eval::scale(m, w.back()));
        r.detail = "widest tail spread in column " + std::to_string(witness);
        break;
    case ConditionId::C3_9:
    case ConditionId::C3_3:
        r.verdict = classify_limit(r.values, eval::scale(m, w.back()));
        r.detail = "tail estimate over rows [" + std::to_string(tail_start(std::min(w.back(), m.rows()))) + ", " +
                   std::to_string(std::min(w.back(), m.rows())) + ")";
        break;
    case ConditionId::C3_6:
        r.verdict = classify_bound(r.values);
        r.detail = "largest entry";
        break;
    default:
        r.verdict = classify_bound(r.values);
        r.detail = "maximizing row " + std::to_string(witness);
        break;
    }
    return r;
}

namespace {

ConditionReport relabel(ConditionReport r, ConditionId id, std::string label) {
    r.label = to_string(r.id) + (label.empty() ? "" : " " + label);
    r.id = id;
    return r;
}

DualReport bundle(std::vector<ConditionReport> parts) {
    DualReport d;
    for (const auto& p : parts) {
        d.verdict = combine(d.verdict, p.verdict);
    }
    d.parts = std::move(parts);
    return d;
}

} // namespace

DualReport alpha_dual_check(const SeqWindow& a, QReal gamma, const QParam& qp, const PExponent& p,
                            const std::vector<std::size_t>& row_limits) {
    const MatrixWindow lambda = lambda_matrix(a, gamma, qp);
    switch (p.regime()) {
    case PRegime::AtMostOne:
        return bundle({relabel(lemma_mc_condition(lambda, ConditionId::C3_7, p, row_limits), ConditionId::S, "")});
    case PRegime::Between:
        return bundle({relabel(lemma_mc_condition(lambda, ConditionId::C3_8, p, row_limits), ConditionId::Sp, "")});
    case PRegime::Infinite:
        return bundle(
            {relabel(lemma_mc_condition(lambda, ConditionId::C3_4, p, row_limits), ConditionId::Sp, "(p'=1)")});
    }
    return {};
}

namespace {

ConditionReport t1(const MatrixWindow& omega, const PExponent& p, const std::vector<std::size_t>& w) {
    return relabel(lemma_mc_condition(omega, ConditionId::C3_2, p, w), ConditionId::T1, "");
}

ConditionReport t2(const MatrixWindow& omega, const PExponent& p, const std::vector<std::size_t>& w) {
    if (p.is_infinite()) {
        return relabel(lemma_mc_condition(omega, ConditionId::C3_1, p, w), ConditionId::T2, "(p'=1)");
    }
    return relabel(lemma_mc_condition(omega, ConditionId::C3_5, p, w), ConditionId::T2, "");
}

ConditionReport t3(const MatrixWindow& omega, const PExponent& p, const std::vector<std::size_t>& w) {
    return relabel(lemma_mc_condition(omega, ConditionId::C3_6, p, w), ConditionId::T3, "");
}

ConditionReport t4(const MatrixWindow& omega, const PExponent& p, const std::vector<std::size_t>& w) {
    return relabel(lemma_mc_condition(omega, ConditionId::C3_3, p, w), ConditionId::T4, "");
}

} // namespace

DualReport beta_dual_check(const SeqWindow& a, QReal gamma, const QParam& qp, const PExponent& p,
                           const std::vector<std::size_t>& windows) {
    const MatrixWindow omega = omega_matrix(a, gamma, qp);
    switch (p.regime()) {
    case PRegime::AtMostOne: return bundle({t1(omega, p, windows), t3(omega, p, windows)});
    case PRegime::Between: return bundle({t1(omega, p, windows), t2(omega, p, windows)});
    case PRegime::Infinite: return bundle({t1(omega, p, windows), t4(omega, p, windows)});
    }
    return {};
}

DualReport gamma_dual_check(const SeqWindow& a, QReal gamma, const QParam& qp, const PExponent& p,
                            const std::vector<std::size_t>& windows) {
    const MatrixWindow omega = omega_matrix(a, gamma, qp);
    if (p.regime() == PRegime::AtMostOne) {
        return bundle({t3(omega, p, windows)});
    }
    return bundle({t2(omega, p, windows)});
}

} // namespace qfd

#include "qfd/matclass.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfd/duals.hpp"
#include "qfd/errors.hpp"
#include "qfd/kernels.hpp"

namespace qfd {

MatrixWindow psi_j_matrix(const MatrixWindow& phi, std::size_t j, QReal gamma, const QParam& qp) {
    if (j >= phi.rows()) {
        throw IndexError("psi_j_matrix: row " + std::to_string(j) + " outside a matrix with " +
                         std::to_string(phi.rows()) + " rows");
    }
    if (phi.cols() == 0) {
        throw ValidationError("window must be ≥ 1");
    }
    const CoeffStream e = inverse_coeffs(gamma, qp, phi.cols() - 1);
    return kernels::omp::running_correlation(e.coeffs(), phi.row(j));
}

double inverse_coeff_sup(QReal gamma, const QParam& qp) {
    // e_k is monotone from k = 1 on and tends to (q^gamma;q)_inf/(q;q)_inf,
    // so the sup is either an early coefficient or the limit.
    const CoeffStream e = inverse_coeffs(gamma, qp, 64);
    double best = 0.0;
    for (double v : e.coeffs()) {
        best = std::max(best, std::fabs(v));
    }
    const double limit = q_pochhammer_inf(qp.pow(gamma), qp) / q_pochhammer_inf(qp.q(), qp);
    return std::max(best, std::fabs(limit));
}

PsiMatrix psi_matrix(const MatrixWindow& phi, QReal gamma, const QParam& qp, double tail_rtol) {
    const std::size_t rows = phi.rows();
    const std::size_t cols = phi.cols();
    if (cols == 0) {
        throw ValidationError("window must be ≥ 1");
    }
    const CoeffStream e = inverse_coeffs(gamma, qp, cols - 1);
    const double e_sup = inverse_coeff_sup(gamma, qp);
    const std::size_t cut = cols - std::max<std::size_t>(1, cols / 4);

    std::vector<double> entries(rows * cols);
    std::vector<double> bound(rows, 0.0);
    for (std::size_t j = 0; j < rows; ++j) {
        const auto row = phi.row(j);
        if (!phi.triangular()) {
            double head = 0.0;
            double tail = 0.0;
            for (std::size_t v = 0; v < cols; ++v) {
                (v < cut ? head : tail) += std::fabs(row[v]);
            }
            if (tail > 0.0) {
                if (!(tail < tail_rtol * (head + 1.0))) {
                    throw TailError("psi_matrix: row " + std::to_string(j) +
                                    " does not decay inside the window (tail mass " + std::to_string(tail) +
                                    "); the series cannot be truncated");
                }
                bound[j] = e_sup * tail;
            }
        }
        const std::vector<double> t = kernels::omp::tail_correlation(e.coeffs(), row);
        std::copy(t.begin(), t.end(), entries.begin() + static_cast<std::ptrdiff_t>(j * cols));
    }
    return PsiMatrix{MatrixWindow(rows, cols, std::move(entries), false), std::move(bound)};
}

double thm41_consistency(const MatrixWindow& phi, const SeqWindow& g, QReal gamma, const QParam& qp) {
    if (phi.cols() != g.size()) {
        throw ValidationError("thm41_consistency: Phi has " + std::to_string(phi.cols()) +
                              " columns but g has length " + std::to_string(g.size()));
    }
    const SeqWindow h = apply_forward(g, gamma, qp);
    double worst = 0.0;
    for (std::size_t j = 0; j < phi.rows(); ++j) {
        const MatrixWindow pj = psi_j_matrix(phi, j, gamma, qp);
        double lhs = 0.0;
        for (std::size_t m = 0; m < g.size(); ++m) {
            lhs += phi(j, m) * g[m];
            double rhs = 0.0;
            for (std::size_t k = 0; k <= m; ++k) {
                rhs += pj(m, k) * h[k];
            }
            worst = std::max(worst, std::fabs(lhs - rhs));
        }
    }
    return worst;
}

PsiFamily::PsiFamily(MatrixWindow phi, QReal gamma, const QParam& qp, double tail_rtol)
    : phi_(std::move(phi)), gamma_(gamma), qp_(qp), psi_(psi_matrix(phi_, gamma, qp, tail_rtol)) {
    psi_j_.reserve(phi_.rows());
    for (std::size_t j = 0; j < phi_.rows(); ++j) {
        psi_j_.push_back(psi_j_matrix(phi_, j, gamma, qp));
    }
}

namespace {

std::vector<std::size_t> family_windows(const PsiFamily& f, const std::vector<std::size_t>& windows) {
    const std::size_t cols = f.phi().cols();
    std::vector<std::size_t> w = windows.empty() ? default_windows(cols) : windows;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == 0 || w[i] > cols) {
            throw ValidationError("window " + std::to_string(w[i]) + " outside [1, " + std::to_string(cols) + "]");
        }
        if (i > 0 && w[i] <= w[i - 1]) {
            throw ValidationError("windows must be strictly increasing");
        }
    }
    return w;
}

double row_sum_tail_spread(const MatrixWindow& pj, std::size_t n) {
    const std::size_t ts = tail_start(n);
    double lo = 0.0;
    double hi = 0.0;
    for (std::size_t m = ts; m < n; ++m) {
        double s = 0.0;
        for (std::size_t k = 0; k <= m; ++k) {
            s += pj(m, k);
        }
        lo = m == ts ? s : std::min(lo, s);
        hi = m == ts ? s : std::max(hi, s);
    }
    return hi - lo;
}

double abs_row_sum(std::span<const double> row, std::size_t n) {
    double s = 0.0;
    for (std::size_t k = 0; k < std::min(n, row.size()); ++k) {
        s += std::fabs(row[k]);
    }
    return s;
}

} // namespace

ConditionReport mtc_condition(const PsiFamily& family, ConditionId cond, const PExponent& p,
                              const std::vector<std::size_t>& windows) {
    switch (cond) {
    case ConditionId::MT_ADD:
    case ConditionId::MT1:
    case ConditionId::MT2:
    case ConditionId::MT4:
    case ConditionId::MT5:
        break;
    case ConditionId::MT3:
        if (p.regime() != PRegime::Between) {
            throw InvalidCondition("MT3 is only defined for 1 < p < inf, got p = " + p.to_string());
        }
        break;
    default:
        throw InvalidCondition(to_string(cond) + " is not a Psi-family condition");
    }

    const std::vector<std::size_t> w = family_windows(family, windows);
    const std::size_t rows = family.rows();
    const std::size_t cols = family.phi().cols();
    ConditionReport r;
    r.id = cond;
    std::size_t witness = 0;
    double scale = 1.0;

    for (std::size_t n : w) {
        double v = 0.0;
        if (cond == ConditionId::MT_ADD) {
            const std::size_t last = std::min(n, rows) - 1;
            v = abs_row_sum(family.psi().row(last), n);
            witness = last;
            scale = std::max(scale, eval::scale(family.psi(), n));
        } else {
            for (std::size_t j = 0; j < rows; ++j) {
                const MatrixWindow& pj = family.psi_j(j);
                double vj = 0.0;
                switch (cond) {
                case ConditionId::MT1: vj = eval::column_tail_spread(pj, n).first; break;
                case ConditionId::MT2: vj = eval::entry_sup(pj, n, 1.0); break;
                case ConditionId::MT3: vj = eval::row_power_sup(pj, n, p.conjugate()).first; break;
                case ConditionId::MT4: vj = row_sum_tail_spread(pj, n); break;
                case ConditionId::MT5:
                    vj = std::fabs(abs_row_sum(pj.row(n - 1), n) - abs_row_sum(family.psi().row(j), cols));
                    break;
                default: break;
                }
                if (vj > v) {
                    v = vj;
                    witness = j;
                }
                scale = std::max(scale, eval::scale(pj, n));
            }
        }
        r.values.push_back({n, v});
    }

    switch (cond) {
    case ConditionId::MT2:
    case ConditionId::MT3:
        r.verdict = classify_bound(r.values);
        r.detail = "worst row j = " + std::to_string(witness);
        break;
    case ConditionId::MT_ADD:
        r.verdict = classify_limit(r.values, scale);
        r.detail = "row " + std::to_string(witness) + " absolute sum";
        break;
    default:
        r.verdict = classify_limit(r.values, scale);
        r.detail = "worst row j = " + std::to_string(witness);
        break;
    }
    return r;
}

std::string to_string(DomainSource s) {
    switch (s) {
    case DomainSource::L1Domain: return "l1_domain";
    case DomainSource::LpDomain: return "lp_domain";
    case DomainSource::LinfDomain: return "linf_domain";
    }
    return "unknown";
}

std::string to_string(ClassTarget t) {
    switch (t) {
    case ClassTarget::L1: return "l1";
    case ClassTarget::C0: return "c0";
    case ClassTarget::C: return "c";
    case ClassTarget::Linf: return "linf";
    case ClassTarget::BS: return "bs";
    case ClassTarget::CS: return "cs";
    case ClassTarget::CS0: return "cs0";
    case ClassTarget::QCesaro1: return "qcesaro_1";
    case ClassTarget::QCesaro0: return "qcesaro_0";
    case ClassTarget::QCesaroC: return "qcesaro_c";
    case ClassTarget::QCesaroInf: return "qcesaro_inf";
    }
    return "unknown";
}

std::string to_string(ClassicalSource s) {
    switch (s) {
    case ClassicalSource::L1: return "l1";
    case ClassicalSource::C0: return "c0";
    case ClassicalSource::C: return "c";
    case ClassicalSource::Linf: return "linf";
    }
    return "unknown";
}

std::string to_string(DomainTarget t) {
    return t == DomainTarget::LpDomain ? "lp_domain" : "linf_domain";
}

namespace {

// The classical target whose column of the table applies.
ClassTarget base_column(ClassTarget t) {
    switch (t) {
    case ClassTarget::BS:
    case ClassTarget::QCesaroInf: return ClassTarget::Linf;
    case ClassTarget::CS:
    case ClassTarget::QCesaroC: return ClassTarget::C;
    case ClassTarget::CS0:
    case ClassTarget::QCesaro0: return ClassTarget::C0;
    case ClassTarget::QCesaro1: return ClassTarget::L1;
    default: return t;
    }
}

} // namespace

std::vector<int> table1_bundle(DomainSource source, ClassTarget target) {
    // rows: l1, lp, linf domains; columns: l1, c0, c, linf
    static const std::vector<int> table[3][4] = {
        {{1, 11}, {1, 5, 13}, {1, 6, 13}, {1, 13}},
        {{2, 12}, {2, 5, 10}, {2, 6, 10}, {2, 10}},
        {{3, 4}, {3, 8}, {3, 6, 9}, {3, 7}},
    };
    const auto row = static_cast<std::size_t>(source);
    std::size_t col = 0;
    switch (base_column(target)) {
    case ClassTarget::L1: col = 0; break;
    case ClassTarget::C0: col = 1; break;
    case ClassTarget::C: col = 2; break;
    default: col = 3; break;
    }
    return table[row][col];
}

std::vector<std::string> table2_bundle(ClassicalSource source, DomainTarget target) {
    if (source == ClassicalSource::L1) {
        return {target == DomainTarget::LpDomain ? "A'" : "13"};
    }
    return {target == DomainTarget::LpDomain ? "B'" : "7"};
}

namespace {

struct EvalPlan {
    std::vector<std::size_t> windows;
    std::vector<std::size_t> row_limits;
};

EvalPlan make_plan(std::size_t rows, std::size_t cols, std::size_t window, std::size_t row_limit) {
    std::size_t n = std::min(rows, cols);
    if (window != 0) {
        n = std::min(n, window);
    }
    if (n == 0) {
        throw ValidationError("window must be ≥ 1");
    }
    if (row_limit > kernels::max_subset_rows) {
        throw LimitError("row_limit " + std::to_string(row_limit) + " exceeds the exhaustive enumeration cap of " +
                         std::to_string(kernels::max_subset_rows));
    }
    const std::size_t r = std::min(n, row_limit == 0 ? kernels::max_subset_rows : row_limit);
    return {default_windows(n), default_row_limits(r)};
}

std::vector<ConditionReport> numbered(int number, const PsiFamily& f, const PExponent& p, const EvalPlan& plan) {
    static const PExponent one = PExponent::finite(1.0);
    const MatrixWindow& psi = f.psi();
    switch (number) {
    case 1:
        return {mtc_condition(f, ConditionId::MT1, p, plan.windows), mtc_condition(f, ConditionId::MT2, p, plan.windows)};
    case 2:
        return {mtc_condition(f, ConditionId::MT1, p, plan.windows), mtc_condition(f, ConditionId::MT3, p, plan.windows)};
    case 3:
        return {mtc_condition(f, ConditionId::MT1, p, plan.windows), mtc_condition(f, ConditionId::MT5, p, plan.windows)};
    case 4: return {lemma_mc_condition(psi, ConditionId::C3_4, p, plan.row_limits)};
    case 5: return {lemma_mc_condition(psi, ConditionId::C3_9, p, plan.windows)};
    case 6: return {lemma_mc_condition(psi, ConditionId::C3_2, p, plan.windows)};
    case 7: return {lemma_mc_condition(psi, ConditionId::C3_1, p, plan.windows)};
    case 8: return {mtc_condition(f, ConditionId::MT_ADD, p, plan.windows)};
    case 9: return {lemma_mc_condition(psi, ConditionId::C3_3, p, plan.windows)};
    case 10: return {lemma_mc_condition(psi, ConditionId::C3_5, p, plan.windows)};
    case 11: return {lemma_mc_condition(psi, ConditionId::C3_7, one, plan.row_limits)};
    case 12: return {lemma_mc_condition(psi, ConditionId::C3_8, p, plan.row_limits)};
    case 13: return {lemma_mc_condition(psi, ConditionId::C3_6, one, plan.windows)};
    default: throw InvalidCondition("no table condition numbered " + std::to_string(number));
    }
}

PExponent source_exponent(const ClassQuery& q) {
    switch (q.source) {
    case DomainSource::L1Domain: return PExponent::finite(1.0);
    case DomainSource::LinfDomain: return PExponent::infinity();
    case DomainSource::LpDomain:
        if (q.p.regime() != PRegime::Between) {
            throw ValidationError("p: the l_p domain row of the table needs 1 < p < inf, got " + q.p.to_string());
        }
        return q.p;
    }
    return q.p;
}

} // namespace

std::vector<ConditionReport> class_check(const ClassQuery& query, const MatrixWindow& phi) {
    const PExponent p = source_exponent(query);
    MatrixWindow transformed = phi;
    switch (query.target) {
    case ClassTarget::BS:
    case ClassTarget::CS:
    case ClassTarget::CS0: transformed = sigma_matrix(phi); break;
    case ClassTarget::QCesaro1:
    case ClassTarget::QCesaro0:
    case ClassTarget::QCesaroC:
    case ClassTarget::QCesaroInf: transformed = cesaro_composite(phi, query.qp); break;
    default: break;
    }
    const PsiFamily family(std::move(transformed), query.gamma, query.qp, query.tail_rtol);
    const EvalPlan plan = make_plan(family.rows(), family.phi().cols(), query.window, query.row_limit);

    const std::string cell = "(" + to_string(query.source) + ", " + to_string(query.target) + ")";
    std::vector<ConditionReport> out;
    for (int number : table1_bundle(query.source, query.target)) {
        for (ConditionReport& r : numbered(number, family, p, plan)) {
            r.label = "table1 " + cell + " #" + std::to_string(number);
            out.push_back(std::move(r));
        }
    }
    return out;
}

MatrixWindow upsilon_matrix(const MatrixWindow& phi, QReal gamma, const QParam& qp) {
    if (phi.rows() == 0) {
        throw ValidationError("window must be ≥ 1");
    }
    const CoeffStream c = forward_coeffs(gamma, qp, phi.rows() - 1);
    return kernels::omp::lower_toeplitz_columns(c.coeffs(), phi);
}

ConditionReport condition_a_prime(const MatrixWindow& upsilon, const PExponent& p,
                                  const std::vector<std::size_t>& windows) {
    const double exponent = p.value();
    std::vector<std::size_t> w = windows.empty() ? default_windows(upsilon.rows()) : windows;
    ConditionReport r;
    r.id = ConditionId::A_PRIME;
    std::size_t arg = 0;
    for (std::size_t n : w) {
        if (n == 0 || n > upsilon.rows()) {
            throw ValidationError("window " + std::to_string(n) + " outside the matrix");
        }
        const auto [v, row] = eval::row_power_sup(upsilon, n, exponent);
        arg = row;
        r.values.push_back({n, v});
    }
    r.verdict = classify_bound(r.values);
    r.detail = "maximizing row " + std::to_string(arg);
    return r;
}

ConditionReport condition_b_prime(const MatrixWindow& upsilon, const PExponent& p, std::size_t row_limit) {
    if (row_limit > kernels::max_subset_rows) {
        throw LimitError("row_limit " + std::to_string(row_limit) + " exceeds the exhaustive enumeration cap of " +
                         std::to_string(kernels::max_subset_rows));
    }
    const double exponent = p.value();
    // Subsets of columns of Upsilon are subsets of rows of its transpose.
    const MatrixWindow t = upsilon.transpose();
    ConditionReport r;
    r.id = ConditionId::B_PRIME;
    for (std::size_t lim : default_row_limits(std::min(row_limit, t.rows()))) {
        SubsetSupResult s = subset_sup(t, exponent, SubsetMode::SumOverColsOfAbsColSum, lim);
        r.values.push_back({lim, s.value});
        r.witness = std::move(s.witness);
    }
    r.verdict = classify_bound(r.values);
    r.detail = "K = {";
    for (std::size_t i = 0; i < r.witness.size(); ++i) {
        r.detail += (i ? "," : "") + std::to_string(r.witness[i]);
    }
    r.detail += "}";
    return r;
}

std::vector<ConditionReport> conditions_a_b_prime(const MatrixWindow& upsilon, const PExponent& p,
                                                  std::size_t row_limit) {
    return {condition_a_prime(upsilon, p), condition_b_prime(upsilon, p, row_limit)};
}

std::vector<ConditionReport> class_check_into_domain(ClassicalSource source, DomainTarget target,
                                                     const MatrixWindow& phi, QReal gamma, const QParam& qp,
                                                     const PExponent& p, std::size_t window, std::size_t row_limit) {
    static const PExponent one = PExponent::finite(1.0);
    if (target == DomainTarget::LpDomain && p.regime() != PRegime::Between) {
        throw ValidationError("p: the l_p domain column of the table needs 1 < p < inf, got " + p.to_string());
    }
    const MatrixWindow upsilon = upsilon_matrix(phi, gamma, qp);
    const EvalPlan plan = make_plan(upsilon.rows(), upsilon.cols(), window, row_limit);
    const std::string cell = "(" + to_string(source) + ", " + to_string(target) + ")";
    std::vector<ConditionReport> out;
    for (const std::string& c : table2_bundle(source, target)) {
        ConditionReport r;
        if (c == "A'") {
            r = condition_a_prime(upsilon, p, plan.windows);
        } else if (c == "B'") {
            r = condition_b_prime(upsilon, p, plan.row_limits.back());
        } else if (c == "7") {
            r = lemma_mc_condition(upsilon, ConditionId::C3_1, p, plan.windows);
        } else {
            r = lemma_mc_condition(upsilon, ConditionId::C3_6, one, plan.windows);
        }
        r.label = "table2 " + cell + " #" + c;
        out.push_back(std::move(r));
    }
    return out;
}

MatrixWindow sigma_matrix(const MatrixWindow& phi) {
    const std::size_t rows = phi.rows();
    const std::size_t cols = phi.cols();
    std::vector<double> s(rows * cols);
    for (std::size_t k = 0; k < cols; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < rows; ++j) {
            acc += phi(j, k);
            s[j * cols + k] = acc;
        }
    }
    return MatrixWindow(rows, cols, std::move(s), phi.triangular());
}

MatrixWindow cesaro_composite(const MatrixWindow& phi, const QParam& qp) {
    const std::size_t rows = phi.rows();
    const std::size_t cols = phi.cols();
    std::vector<double> c(rows * cols, 0.0);
    for (std::size_t j = 0; j < rows; ++j) {
        const double denom = q_integer(static_cast<double>(j + 1), qp);
        for (std::size_t v = 0; v <= j; ++v) {
            const double w = qp.pow(static_cast<double>(v)) / denom;
            for (std::size_t k = 0; k < cols; ++k) {
                c[j * cols + k] += w * phi(v, k);
            }
        }
    }
    return MatrixWindow(rows, cols, std::move(c), phi.triangular());
}

} // namespace qfd

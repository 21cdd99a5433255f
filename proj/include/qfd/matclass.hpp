#pragma once

// Matrix transformations on the difference spaces.
//
// A matrix Phi maps the domain of the difference operator into Y exactly
// when the associated family
//   psi^(j)_mk = sum_{v=k}^{m} e_{v-k} phi_jv      (k <= m)
//   psi_jk     = sum_{v>=k}    e_{v-k} phi_jv
// satisfies the conditions tabulated per (source, target) cell. This module
// builds the family, evaluates the numbered conditions on windows, and
// builds the composite matrices used for the corollary targets.

#include <cstddef>
#include <string>
#include <vector>

#include "qfd/conditions.hpp"
#include "qfd/fracdiff.hpp"
#include "qfd/qcore.hpp"
#include "qfd/spaces.hpp"
#include "qfd/window.hpp"

namespace qfd {

struct PsiMatrix {
    MatrixWindow psi;
    /// Truncation bound for every entry of row j: sup_k e_k times the row's
    /// tail mass. Zero when the row is supported inside the window.
    std::vector<double> tail_bound;
};

/// Psi^(j): cols x cols lower-triangular window for row j of Phi.
MatrixWindow psi_j_matrix(const MatrixWindow& phi, std::size_t j, QReal gamma, const QParam& qp);

/// Psi truncated at the window edge. Rows of a triangular Phi are exact;
/// otherwise each row must pass the decay test
///   sum_{v >= 3M/4} |phi_jv| < tail_rtol * (sum_{v < 3M/4} |phi_jv| + 1)
/// or TailError is thrown.
PsiMatrix psi_matrix(const MatrixWindow& phi, QReal gamma, const QParam& qp, double tail_rtol = 1e-12);

/// sup_k e_k for the inverse stream: 1 for gamma <= 1, else the limit
/// (q^gamma; q)_inf / (q; q)_inf.
double inverse_coeff_sup(QReal gamma, const QParam& qp);

/// max_{j,m} |sum_{k<=m} phi_jk g_k - sum_{k<=m} psi^(j)_mk h_k|, h the
/// forward transform of g.
double thm41_consistency(const MatrixWindow& phi, const SeqWindow& g, QReal gamma, const QParam& qp);

/// Phi together with its Psi^(j) and Psi, built once.
class PsiFamily {
public:
    PsiFamily(MatrixWindow phi, QReal gamma, const QParam& qp, double tail_rtol = 1e-12);

    const MatrixWindow& phi() const noexcept { return phi_; }
    const MatrixWindow& psi() const noexcept { return psi_.psi; }
    const std::vector<double>& tail_bound() const noexcept { return psi_.tail_bound; }
    const MatrixWindow& psi_j(std::size_t j) const { return psi_j_.at(j); }
    std::size_t rows() const noexcept { return phi_.rows(); }
    double gamma() const noexcept { return gamma_; }
    const QParam& qp() const noexcept { return qp_; }

private:
    MatrixWindow phi_;
    double gamma_;
    QParam qp_;
    PsiMatrix psi_;
    std::vector<MatrixWindow> psi_j_;
};

/// Evaluates MT_ADD or MT1..MT5. The per-j conditions run over every row j
/// of Phi; windows restrict m and k. MT3 needs 1 < p < inf.
ConditionReport mtc_condition(const PsiFamily& family, ConditionId cond, const PExponent& p,
                              const std::vector<std::size_t>& windows = {});

enum class DomainSource { L1Domain, LpDomain, LinfDomain };

enum class ClassTarget {
    L1,
    C0,
    C,
    Linf,
    BS,  // via Sigma, read as the Linf column
    CS,  // via Sigma, read as the C column
    CS0, // via Sigma, read as the C0 column
    QCesaro1,
    QCesaro0,
    QCesaroC,
    QCesaroInf,
};

struct ClassQuery {
    DomainSource source = DomainSource::LpDomain;
    ClassTarget target = ClassTarget::Linf;
    PExponent p = PExponent::finite(2.0);
    double gamma = 0.5;
    QParam qp{0.5};
    std::size_t window = 0;    // 0: whole matrix
    std::size_t row_limit = 0; // 0: min(window, 20)
    double tail_rtol = 1e-12;
};

/// Numbered conditions of one cell of the (domain source, classical
/// target) table. Targets BS/CS/CS0 and the q-Cesaro targets use the
/// column they reduce to.
std::vector<int> table1_bundle(DomainSource source, ClassTarget target);

enum class ClassicalSource { L1, C0, C, Linf };
enum class DomainTarget { LpDomain, LinfDomain };

/// Conditions of one cell of the (classical source, domain target) table:
/// "A'", "B'", "7" or "13", read on Upsilon.
std::vector<std::string> table2_bundle(ClassicalSource source, DomainTarget target);

/// One report per atomic condition of the cell's bundle; each report's
/// label records the table cell and condition number.
std::vector<ConditionReport> class_check(const ClassQuery& query, const MatrixWindow& phi);

/// Conditions for Phi in (classical source, domain target), evaluated on
/// Upsilon = (forward operator) * Phi.
std::vector<ConditionReport> class_check_into_domain(ClassicalSource source, DomainTarget target,
                                                     const MatrixWindow& phi, QReal gamma, const QParam& qp,
                                                     const PExponent& p, std::size_t window = 0,
                                                     std::size_t row_limit = 0);

/// upsilon_jk = sum_{v<=j} c_{j-v} phi_vk: the forward operator applied
/// down each column of Phi.
MatrixWindow upsilon_matrix(const MatrixWindow& phi, QReal gamma, const QParam& qp);

/// A': sup_j sum_k |upsilon_jk|^p over windows.
ConditionReport condition_a_prime(const MatrixWindow& upsilon, const PExponent& p,
                                  const std::vector<std::size_t>& windows = {});

/// B': sup over column subsets K of sum_j |sum_{k in K} upsilon_jk|^p, with
/// K ranging over the first row_limit columns. Throws LimitError above 20.
ConditionReport condition_b_prime(const MatrixWindow& upsilon, const PExponent& p, std::size_t row_limit);

/// {A', B'} for the same Upsilon.
std::vector<ConditionReport> conditions_a_b_prime(const MatrixWindow& upsilon, const PExponent& p,
                                                  std::size_t row_limit);

/// sigma_jk = sum_{v<=j} phi_vk.
MatrixWindow sigma_matrix(const MatrixWindow& phi);

/// c_jk = sum_{v<=j} q^v/[j+1]_q phi_vk.
MatrixWindow cesaro_composite(const MatrixWindow& phi, const QParam& qp);

std::string to_string(DomainSource s);
std::string to_string(ClassTarget t);
std::string to_string(ClassicalSource s);
std::string to_string(DomainTarget t);

} // namespace qfd

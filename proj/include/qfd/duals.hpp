#pragma once

// Multiplier matrices for the alpha-, beta- and gamma-duals of the
// difference spaces, and window evaluation of the classical matrix-class
// conditions they reduce to.
//
// With h the forward transform of g and e_k the inverse coefficients:
//   a_j g_j            = (Lambda h)_j,  lambda_jk = e_{j-k} a_j
//   sum_{k<=j} a_k g_k = (Omega h)_j,   omega_jk  = sum_{v=k}^{j} e_{v-k} a_v

#include <cstddef>
#include <vector>

#include "qfd/conditions.hpp"
#include "qfd/kernels.hpp"
#include "qfd/qcore.hpp"
#include "qfd/spaces.hpp"
#include "qfd/window.hpp"

namespace qfd {

using kernels::SubsetMode;
using kernels::SubsetSupResult;

MatrixWindow lambda_matrix(const SeqWindow& a, QReal gamma, const QParam& qp);
MatrixWindow omega_matrix(const SeqWindow& a, QReal gamma, const QParam& qp);

/// Exhaustive sup over nonempty subsets J of the first row_limit rows.
/// Throws LimitError when row_limit exceeds 20.
SubsetSupResult subset_sup(const MatrixWindow& m, double exponent, SubsetMode mode, std::size_t row_limit);

/// Quarter steps up to min(rows, 20), used when no row limits are given.
std::vector<std::size_t> default_row_limits(std::size_t rows);

/// Evaluates one of C3_1..C3_9 on leading windows of m. For the subset
/// conditions (C3_4, C3_7, C3_8) the windows are row limits. An empty
/// window list selects the defaults. Throws InvalidCondition when the
/// condition does not apply to the p-regime.
ConditionReport lemma_mc_condition(const MatrixWindow& m, ConditionId cond, const PExponent& p,
                                   const std::vector<std::size_t>& windows = {});

struct DualReport {
    std::vector<ConditionReport> parts;
    Verdict verdict = Verdict::BoundedOnWindow;
};

/// S(q) for p <= 1, S^(p')(q) for 1 < p < inf, S^(1)(q) for p = inf.
DualReport alpha_dual_check(const SeqWindow& a, QReal gamma, const QParam& qp, const PExponent& p,
                            const std::vector<std::size_t>& row_limits = {});

/// T1 & T3 for p <= 1, T1 & T2 for 1 < p < inf, T1 & T4 for p = inf.
DualReport beta_dual_check(const SeqWindow& a, QReal gamma, const QParam& qp, const PExponent& p,
                           const std::vector<std::size_t>& windows = {});

/// T3 for p <= 1, T2 for 1 < p < inf, T2 with p' = 1 for p = inf.
DualReport gamma_dual_check(const SeqWindow& a, QReal gamma, const QParam& qp, const PExponent& p,
                            const std::vector<std::size_t>& windows = {});

} // namespace qfd

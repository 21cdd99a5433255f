#pragma once

// Truncated-window evaluation of matrix-class conditions.
//
// The conditions are finiteness or limit statements about infinite
// matrices. On a finite window each one becomes a quantity evaluated over a
// sequence of growing leading blocks; a verdict summarizes the trend.
//
// Two flavors:
//  - bound conditions (a sup or sum must stay finite): the values should
//    level off;
//  - limit conditions (a limit must exist, or two limits must agree): the
//    values are Cauchy-tail estimates that should shrink towards zero.
// A limit estimate at window n only looks at rows in the last quarter of the
// window, [tail_start(n), n), and at columns that are complete there.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qfd/window.hpp"

namespace qfd {

enum class ConditionId {
    C3_1, // sup_j sum_k |phi_jk|                            (l_inf -> l_inf)
    C3_2, // lim_j phi_jk exists for every k                  (l_inf -> c, part)
    C3_3, // lim_j sum_k |phi_jk| = sum_k |lim_j phi_jk|      (l_inf -> c, part)
    C3_4, // sup_J sum_k |sum_{j in J} phi_jk|                 (l_inf -> l_1)
    C3_5, // sup_j sum_k |phi_jk|^p'                          (l_p -> l_inf, 1<p<inf)
    C3_6, // sup_{j,k} |phi_jk|^p                             (l_p -> l_inf, p<=1)
    C3_7, // sup_J sup_k |sum_{j in J} phi_jk|^p               (l_p -> l_1, p<=1)
    C3_8, // sup_J sum_k |sum_{j in J} phi_jk|^p'              (l_p -> l_1, 1<p<inf)
    C3_9, // lim_j phi_jk = 0 for every k                     (C3_2 with zero limits)
    T1,
    T2,
    T3,
    T4,
    S,
    Sp,
    MT_ADD,
    MT1,
    MT2,
    MT3,
    MT4,
    MT5,
    A_PRIME,
    B_PRIME,
};

enum class Verdict { BoundedOnWindow, Growing, Inconclusive };

struct WindowValue {
    std::size_t window = 0;
    double value = 0.0;
    friend bool operator==(const WindowValue&, const WindowValue&) = default;
};

struct ConditionReport {
    ConditionId id = ConditionId::C3_1;
    std::vector<WindowValue> values; // window sizes strictly increasing
    Verdict verdict = Verdict::Inconclusive;
    std::string detail;               // worst-case witness, human readable
    std::vector<std::size_t> witness; // maximizing subset for subset conditions
    std::string label;                // e.g. table condition number

    double last_value() const { return values.back().value; }
};

std::string to_string(ConditionId id);
std::string to_string(Verdict v);

/// Worst verdict of a bundle: Growing > Inconclusive > BoundedOnWindow.
Verdict combine(Verdict a, Verdict b) noexcept;

/// Powers of two (from 2) below n, then n.
std::vector<std::size_t> default_windows(std::size_t n);

/// Trend of a bound condition: levelled off, still climbing at an
/// undiminished rate, or neither.
Verdict classify_bound(const std::vector<WindowValue>& values);

/// Trend of a limit condition: tail estimate at noise level relative to
/// `scale`, not shrinking, or shrinking but not yet small.
Verdict classify_limit(const std::vector<WindowValue>& values, double scale);

/// First row of the tail block used by limit estimates at window n.
std::size_t tail_start(std::size_t n) noexcept;

namespace eval {

/// sup_{j<n} sum_{k<n} |m_jk|^exponent, with the maximizing row.
std::pair<double, std::size_t> row_power_sup(const MatrixWindow& m, std::size_t n, double exponent);

/// sup_{j,k<n} |m_jk|^exponent.
double entry_sup(const MatrixWindow& m, std::size_t n, double exponent);

/// max over complete columns of the spread (max - min) across tail rows.
std::pair<double, std::size_t> column_tail_spread(const MatrixWindow& m, std::size_t n);

/// max over complete columns of |m_jk| across tail rows (limit zero).
double column_tail_abs(const MatrixWindow& m, std::size_t n);

/// Mass of row n-1 sitting in the incomplete columns [tail_start(n), n):
/// the part of sum_k |phi_jk| that the column limits cannot account for.
double row_mass_escape(const MatrixWindow& m, std::size_t n);

/// Largest |entry| of the leading n x n block, at least 1.
double scale(const MatrixWindow& m, std::size_t n);

} // namespace eval

} // namespace qfd

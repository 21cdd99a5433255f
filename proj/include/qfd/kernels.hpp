#pragma once

// Data-parallel kernels behind the operator and matrix builders.
//
// Every kernel exists twice: `serial` is the plain reference loop nest kept
// for testing, `omp` distributes independent outputs across OpenMP threads.
// Each output element is reduced in the same fixed order in both variants,
// so their results are bit-identical; tests assert that.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qfd/window.hpp"

namespace qfd::kernels {

enum class SubsetMode {
    SumOverColsOfAbsColSum, // sum_k |sum_{j in J} m_jk|^exponent
    SupOverColsOfAbs,       // sup_k |sum_{j in J} m_jk|^exponent
};

struct SubsetSupResult {
    double value = 0.0;
    std::vector<std::size_t> witness; // maximizing row subset, ascending
};

/// Hard cap on exhaustive subset enumeration (2^20 subsets).
inline constexpr std::size_t max_subset_rows = 20;

/// Value of one subset (bit j of mask selects row j) under the given mode.
/// `colsum` is scratch space of length m.cols().
double subset_value(const MatrixWindow& m, std::uint64_t mask, double exponent, SubsetMode mode,
                    std::span<double> colsum);

/// Strict lexicographic order on the ascending index lists encoded by masks.
bool subset_lex_less(std::uint64_t a, std::uint64_t b) noexcept;

std::vector<std::size_t> mask_to_indices(std::uint64_t mask);

namespace serial {

/// y_j = sum_{k=0}^{j} coeffs[j-k] * x_k for j < x.size(); coefficients
/// beyond coeffs.size() count as zero.
void lower_toeplitz_apply(std::span<const double> coeffs, std::span<const double> x, std::span<double> y);

/// Applies the lower Toeplitz operator down every column of m.
MatrixWindow lower_toeplitz_columns(std::span<const double> coeffs, const MatrixWindow& m);

/// W_jk = sum_{v=k}^{j} coeffs[v-k] * a_v for k <= j (lower triangular,
/// N = a.size()). Row j is accumulated from row j-1, so
/// W_jk == W_{j-1,k} + coeffs[j-k]*a_j holds bit-for-bit.
MatrixWindow running_correlation(std::span<const double> coeffs, std::span<const double> a);

/// t_k = sum_{v=k}^{N-1} coeffs[v-k] * a_v, summed in ascending v. Equals
/// the last row of running_correlation bit-for-bit.
std::vector<double> tail_correlation(std::span<const double> coeffs, std::span<const double> a);

/// Exhaustive maximum over nonempty subsets of the first row_limit rows.
/// Ties resolve to the lexicographically least subset.
SubsetSupResult subset_sup(const MatrixWindow& m, double exponent, SubsetMode mode, std::size_t row_limit);

} // namespace serial

namespace omp {

void lower_toeplitz_apply(std::span<const double> coeffs, std::span<const double> x, std::span<double> y);
MatrixWindow lower_toeplitz_columns(std::span<const double> coeffs, const MatrixWindow& m);
MatrixWindow running_correlation(std::span<const double> coeffs, std::span<const double> a);
std::vector<double> tail_correlation(std::span<const double> coeffs, std::span<const double> a);
SubsetSupResult subset_sup(const MatrixWindow& m, double exponent, SubsetMode mode, std::size_t row_limit);

} // namespace omp

} // namespace qfd::kernels

#include "qfd/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include <omp.h>

#include "qfd/errors.hpp"

namespace qfd::kernels {

namespace {

// Below this many independent outputs the thread team costs more than it saves.
constexpr std::int64_t parallel_threshold = 64;

template <class Get>
double toeplitz_element(std::span<const double> coeffs, Get x, std::size_t j) noexcept {
    const std::size_t first = j + 1 > coeffs.size() ? j + 1 - coeffs.size() : 0;
    double acc = 0.0;
    for (std::size_t k = first; k <= j; ++k) {
        acc += coeffs[j - k] * x(k);
    }
    return acc;
}

void correlation_column(std::span<const double> coeffs, std::span<const double> a, std::size_t k,
                        std::vector<double>& w) {
    const std::size_t n = a.size();
    double acc = 0.0;
    for (std::size_t j = k; j < n; ++j) {
        if (j - k < coeffs.size()) {
            acc += coeffs[j - k] * a[j];
        }
        w[j * n + k] = acc;
    }
}

double correlation_tail_element(std::span<const double> coeffs, std::span<const double> a, std::size_t k) {
    double acc = 0.0;
    for (std::size_t v = k; v < a.size(); ++v) {
        if (v - k < coeffs.size()) {
            acc += coeffs[v - k] * a[v];
        }
    }
    return acc;
}

void check_subset_request(const MatrixWindow& m, std::size_t row_limit) {
    if (row_limit > max_subset_rows) {
        throw LimitError("row_limit " + std::to_string(row_limit) + " exceeds the exhaustive enumeration cap of " +
                         std::to_string(max_subset_rows));
    }
    if (row_limit == 0) {
        throw ValidationError("row_limit must be >= 1");
    }
    if (row_limit > m.rows()) {
        throw ValidationError("row_limit " + std::to_string(row_limit) + " exceeds the matrix row count " +
                              std::to_string(m.rows()));
    }
}

bool better(double v, std::uint64_t mask, double best_v, std::uint64_t best_mask) noexcept {
    return v > best_v || (v == best_v && subset_lex_less(mask, best_mask));
}

SubsetSupResult make_result(double value, std::uint64_t mask) {
    return SubsetSupResult{value, mask_to_indices(mask)};
}

} // namespace

double subset_value(const MatrixWindow& m, std::uint64_t mask, double exponent, SubsetMode mode,
                    std::span<double> colsum) {
    std::fill(colsum.begin(), colsum.end(), 0.0);
    for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(bits));
        const auto row = m.row(j);
        for (std::size_t k = 0; k < row.size(); ++k) {
            colsum[k] += row[k];
        }
    }
    double value = 0.0;
    for (double s : colsum) {
        const double t = exponent == 1.0 ? std::fabs(s) : std::pow(std::fabs(s), exponent);
        if (mode == SubsetMode::SumOverColsOfAbsColSum) {
            value += t;
        } else {
            value = std::max(value, t);
        }
    }
    return value;
}

bool subset_lex_less(std::uint64_t a, std::uint64_t b) noexcept {
    if (a == b) {
        return false;
    }
    const std::uint64_t diff = a ^ b;
    const std::uint64_t low = diff & (~diff + 1);
    const std::uint64_t above = ~((low << 1) - 1);
    // The set owning the lowest differing index continues with that index;
    // the other continues with something larger, or ends (and is a prefix).
    if (a & low) {
        return (b & above) != 0;
    }
    return (a & above) == 0;
}

std::vector<std::size_t> mask_to_indices(std::uint64_t mask) {
    std::vector<std::size_t> out;
    for (std::uint64_t bits = mask; bits != 0; bits &= bits - 1) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(bits)));
    }
    return out;
}

namespace serial {

void lower_toeplitz_apply(std::span<const double> coeffs, std::span<const double> x, std::span<double> y) {
    for (std::size_t j = 0; j < x.size(); ++j) {
        y[j] = toeplitz_element(coeffs, [&](std::size_t k) { return x[k]; }, j);
    }
}

MatrixWindow lower_toeplitz_columns(std::span<const double> coeffs, const MatrixWindow& m) {
    std::vector<double> out(m.rows() * m.cols());
    for (std::size_t k = 0; k < m.cols(); ++k) {
        for (std::size_t j = 0; j < m.rows(); ++j) {
            out[j * m.cols() + k] = toeplitz_element(coeffs, [&](std::size_t v) { return m(v, k); }, j);
        }
    }
    return MatrixWindow(m.rows(), m.cols(), std::move(out), m.triangular());
}

MatrixWindow running_correlation(std::span<const double> coeffs, std::span<const double> a) {
    const std::size_t n = a.size();
    std::vector<double> w(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        correlation_column(coeffs, a, k, w);
    }
    return MatrixWindow(n, n, std::move(w), true);
}

std::vector<double> tail_correlation(std::span<const double> coeffs, std::span<const double> a) {
    std::vector<double> t(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        t[k] = correlation_tail_element(coeffs, a, k);
    }
    return t;
}

SubsetSupResult subset_sup(const MatrixWindow& m, double exponent, SubsetMode mode, std::size_t row_limit) {
    check_subset_request(m, row_limit);
    const std::uint64_t total = std::uint64_t{1} << row_limit;
    std::vector<double> colsum(m.cols());
    double best_v = -std::numeric_limits<double>::infinity();
    std::uint64_t best_mask = 0;
    for (std::uint64_t mask = 1; mask < total; ++mask) {
        const double v = subset_value(m, mask, exponent, mode, colsum);
        if (better(v, mask, best_v, best_mask)) {
            best_v = v;
            best_mask = mask;
        }
    }
    return make_result(best_v, best_mask);
}

} // namespace serial

namespace omp {

void lower_toeplitz_apply(std::span<const double> coeffs, std::span<const double> x, std::span<double> y) {
    const auto n = static_cast<std::int64_t>(x.size());
#pragma omp parallel for schedule(dynamic, 16) if (n >= parallel_threshold)
    for (std::int64_t j = 0; j < n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        y[ju] = toeplitz_element(coeffs, [&](std::size_t k) { return x[k]; }, ju);
    }
}

MatrixWindow lower_toeplitz_columns(std::span<const double> coeffs, const MatrixWindow& m) {
    std::vector<double> out(m.rows() * m.cols());
    const auto cols = static_cast<std::int64_t>(m.cols());
#pragma omp parallel for schedule(static) if (cols >= parallel_threshold)
    for (std::int64_t kk = 0; kk < cols; ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        for (std::size_t j = 0; j < m.rows(); ++j) {
            out[j * m.cols() + k] = toeplitz_element(coeffs, [&](std::size_t v) { return m(v, k); }, j);
        }
    }
    return MatrixWindow(m.rows(), m.cols(), std::move(out), m.triangular());
}

MatrixWindow running_correlation(std::span<const double> coeffs, std::span<const double> a) {
    const std::size_t n = a.size();
    std::vector<double> w(n * n, 0.0);
    const auto ni = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 8) if (ni >= parallel_threshold)
    for (std::int64_t k = 0; k < ni; ++k) {
        correlation_column(coeffs, a, static_cast<std::size_t>(k), w);
    }
    return MatrixWindow(n, n, std::move(w), true);
}

std::vector<double> tail_correlation(std::span<const double> coeffs, std::span<const double> a) {
    std::vector<double> t(a.size());
    const auto n = static_cast<std::int64_t>(a.size());
#pragma omp parallel for schedule(dynamic, 16) if (n >= parallel_threshold)
    for (std::int64_t k = 0; k < n; ++k) {
        t[static_cast<std::size_t>(k)] = correlation_tail_element(coeffs, a, static_cast<std::size_t>(k));
    }
    return t;
}

SubsetSupResult subset_sup(const MatrixWindow& m, double exponent, SubsetMode mode, std::size_t row_limit) {
    check_subset_request(m, row_limit);
    const auto total = static_cast<std::int64_t>(std::uint64_t{1} << row_limit);
    double best_v = -std::numeric_limits<double>::infinity();
    std::uint64_t best_mask = 0;
#pragma omp parallel if (total >= 4096)
    {
        std::vector<double> colsum(m.cols());
        double local_v = -std::numeric_limits<double>::infinity();
        std::uint64_t local_mask = 0;
#pragma omp for schedule(static)
        for (std::int64_t mask = 1; mask < total; ++mask) {
            const auto um = static_cast<std::uint64_t>(mask);
            const double v = subset_value(m, um, exponent, mode, colsum);
            if (better(v, um, local_v, local_mask)) {
                local_v = v;
                local_mask = um;
            }
        }
        // max with a total-order tie-break: merge order cannot change the result
#pragma omp critical(qfd_subset_sup_merge)
        if (local_mask != 0 && better(local_v, local_mask, best_v, best_mask)) {
            best_v = local_v;
            best_mask = local_mask;
        }
    }
    return make_result(best_v, best_mask);
}

} // namespace omp

} // namespace qfd::kernels

#include "qfd/window.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qfd/errors.hpp"

namespace qfd {

SeqWindow::SeqWindow(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
        throw ValidationError("window must be ≥ 1");
    }
    for (std::size_t j = 0; j < values_.size(); ++j) {
        if (!std::isfinite(values_[j])) {
            throw ValidationError("sequence entry " + std::to_string(j) + " is not finite");
        }
    }
}

SeqWindow SeqWindow::zeros(std::size_t n) { return SeqWindow(std::vector<double>(n, 0.0)); }

SeqWindow SeqWindow::impulse(std::size_t n, std::size_t k) {
    if (k >= n) {
        throw IndexError("impulse position " + std::to_string(k) + " outside window of length " + std::to_string(n));
    }
    std::vector<double> v(n, 0.0);
    v[k] = 1.0;
    return SeqWindow(std::move(v));
}

SeqWindow SeqWindow::prefix(std::size_t n) const {
    if (n == 0 || n > values_.size()) {
        throw IndexError("prefix length " + std::to_string(n) + " outside window");
    }
    return SeqWindow(std::vector<double>(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(n)));
}

MatrixWindow::MatrixWindow(std::size_t rows, std::size_t cols, std::vector<double> entries, bool triangular)
    : rows_(rows), cols_(cols), entries_(std::move(entries)), triangular_(triangular) {
    if (entries_.size() != rows_ * cols_) {
        throw ValidationError("matrix entry count does not match its shape");
    }
    for (double v : entries_) {
        if (!std::isfinite(v)) {
            throw ValidationError("matrix entries must be finite");
        }
    }
    if (triangular_) {
        if (rows_ != cols_) {
            throw ValidationError("triangular matrix window must be square");
        }
        for (std::size_t j = 0; j < rows_; ++j) {
            for (std::size_t k = j + 1; k < cols_; ++k) {
                if (entries_[j * cols_ + k] != 0.0) {
                    throw ValidationError("triangular matrix has a nonzero entry above the diagonal");
                }
            }
        }
    }
}

MatrixWindow MatrixWindow::zeros(std::size_t rows, std::size_t cols) {
    return MatrixWindow(rows, cols, std::vector<double>(rows * cols, 0.0), rows == cols);
}

MatrixWindow MatrixWindow::identity(std::size_t n) {
    std::vector<double> e(n * n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        e[j * n + j] = 1.0;
    }
    return MatrixWindow(n, n, std::move(e), true);
}

MatrixWindow MatrixWindow::from_rows(const std::vector<std::vector<double>>& rows) {
    const std::size_t n = rows.size();
    const std::size_t m = n == 0 ? 0 : rows.front().size();
    std::vector<double> e;
    e.reserve(n * m);
    for (const auto& r : rows) {
        if (r.size() != m) {
            throw ValidationError("matrix rows must all have the same length");
        }
        e.insert(e.end(), r.begin(), r.end());
    }
    bool tri = n == m;
    for (std::size_t j = 0; tri && j < n; ++j) {
        for (std::size_t k = j + 1; k < m; ++k) {
            if (e[j * m + k] != 0.0) {
                tri = false;
                break;
            }
        }
    }
    return MatrixWindow(n, m, std::move(e), tri);
}

std::vector<double> MatrixWindow::column(std::size_t k) const {
    std::vector<double> c(rows_);
    for (std::size_t j = 0; j < rows_; ++j) {
        c[j] = (*this)(j, k);
    }
    return c;
}

MatrixWindow MatrixWindow::leading(std::size_t n, std::size_t m) const {
    n = std::min(n, rows_);
    m = std::min(m, cols_);
    std::vector<double> e;
    e.reserve(n * m);
    for (std::size_t j = 0; j < n; ++j) {
        const auto r = row(j);
        e.insert(e.end(), r.begin(), r.begin() + static_cast<std::ptrdiff_t>(m));
    }
    return MatrixWindow(n, m, std::move(e), triangular_ && n == m);
}

MatrixWindow MatrixWindow::transpose() const {
    std::vector<double> e(rows_ * cols_);
    for (std::size_t j = 0; j < rows_; ++j) {
        for (std::size_t k = 0; k < cols_; ++k) {
            e[k * rows_ + j] = (*this)(j, k);
        }
    }
    return MatrixWindow(cols_, rows_, std::move(e), false);
}

std::vector<std::vector<double>> MatrixWindow::to_rows() const {
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t j = 0; j < rows_; ++j) {
        const auto r = row(j);
        out[j].assign(r.begin(), r.end());
    }
    return out;
}

} // namespace qfd

#pragma once

// Finite windows onto infinite sequences and matrices.

#include <cstddef>
#include <span>
#include <vector>

namespace qfd {

/// Prefix (g_0, ..., g_{N-1}) of a sequence. Entries at negative indices are
/// taken as zero by every operator that reads a window.
class SeqWindow {
public:
    /// Throws ValidationError when empty or when an entry is not finite.
    explicit SeqWindow(std::vector<double> values);

    static SeqWindow zeros(std::size_t n);
    static SeqWindow impulse(std::size_t n, std::size_t k);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t j) const noexcept { return values_[j]; }
    std::span<const double> values() const noexcept { return values_; }
    const std::vector<double>& vector() const noexcept { return values_; }

    /// First n entries (n <= size(), n >= 1).
    SeqWindow prefix(std::size_t n) const;

    friend bool operator==(const SeqWindow&, const SeqWindow&) = default;

private:
    std::vector<double> values_;
};

/// Dense rows x cols window, row-major. When flagged triangular the matrix
/// is square and every entry above the diagonal is exactly zero.
class MatrixWindow {
public:
    MatrixWindow(std::size_t rows, std::size_t cols, std::vector<double> entries, bool triangular = false);

    static MatrixWindow zeros(std::size_t rows, std::size_t cols);
    static MatrixWindow identity(std::size_t n);
    /// Builds from row arrays; sets the triangular flag when the shape and
    /// zero pattern allow it.
    static MatrixWindow from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool triangular() const noexcept { return triangular_; }

    double operator()(std::size_t j, std::size_t k) const noexcept { return entries_[j * cols_ + k]; }
    std::span<const double> row(std::size_t j) const noexcept {
        return std::span<const double>(entries_).subspan(j * cols_, cols_);
    }
    std::vector<double> column(std::size_t k) const;
    std::span<const double> entries() const noexcept { return entries_; }

    /// Leading n x m block (keeps the triangular flag when n == m).
    MatrixWindow leading(std::size_t n, std::size_t m) const;
    MatrixWindow transpose() const;

    std::vector<std::vector<double>> to_rows() const;

    friend bool operator==(const MatrixWindow&, const MatrixWindow&) = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> entries_;
    bool triangular_;
};

} // namespace qfd

#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace pcrkit {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0);
    /// Takes ownership of `data`, which must hold rows*cols entries in row-major order.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);
    /// Row-wise literal, e.g. `Matrix{{1, 2}, {3, 4}}`. All rows must have equal length.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);
    static Matrix from_columns(const std::vector<Vector>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }
    bool is_square() const noexcept { return rows_ == cols_; }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept {
        return {data_.data() + r * cols_, cols_};
    }
    Vector col(std::size_t c) const;
    void set_col(std::size_t c, std::span<const double> values);

    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;
    /// Copy of the sub-matrix selecting the given rows and columns, in the given order.
    Matrix select(std::span<const std::size_t> row_idx, std::span<const std::size_t> col_idx) const;

    /// Maximum absolute row sum.
    double norm_inf() const noexcept;
    double norm_frobenius() const noexcept;
    double max_abs() const noexcept;
    double trace() const noexcept;
    bool all_finite() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Vector operator*(const Matrix& a, std::span<const double> x);
Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);

/// aᵀ·b without materializing the transpose.
Matrix transpose_times(const Matrix& a, const Matrix& b);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
double max_abs(std::span<const double> a);

/// Throws NonFiniteError naming the first offending cell.
void require_finite(const Matrix& a);

} // namespace pcrkit

#pragma once

#include "fnsurf/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace fnsurf {

using Vector = std::vector<Rational>;

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    [[nodiscard]] Vector column(std::size_t j) const;
    [[nodiscard]] Vector operator*(const Vector& v) const;
    [[nodiscard]] Matrix transpose() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

/// Reduced row echelon form with the pivot column of each nonzero row.
struct RowEchelon {
    Matrix reduced;
    std::vector<std::size_t> pivots;
    [[nodiscard]] std::size_t rank() const { return pivots.size(); }
};

[[nodiscard]] RowEchelon rref(Matrix a);
[[nodiscard]] std::size_t rank(const Matrix& a);

/// Basis of {v : A v = 0}, one vector per free column, read off the RREF.
[[nodiscard]] std::vector<Vector> null_space(const Matrix& a);

/// Factorisation E A = R (R in reduced row echelon form, E invertible) of a
/// fixed matrix, reused for many right-hand sides. Rows of E past the rank
/// span the left null space and serve as the cokernel basis.
class LinearSolver {
public:
    explicit LinearSolver(const Matrix& a);

    [[nodiscard]] std::size_t rank() const { return pivots_.size(); }
    [[nodiscard]] std::size_t cokernel_dimension() const { return rows_ - pivots_.size(); }
    [[nodiscard]] const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Coordinates of b in the cokernel basis; all zero iff b lies in the image.
    [[nodiscard]] Vector obstruction(const Vector& b) const;
    /// Linear right inverse on the image: free coordinates are set to zero.
    /// For b outside the image the result ignores the cokernel part.
    [[nodiscard]] Vector particular(const Vector& b) const;
    [[nodiscard]] std::optional<Vector> solve(const Vector& b) const;
    [[nodiscard]] const std::vector<Vector>& kernel() const { return kernel_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    Matrix transform_;  // E
    std::vector<std::size_t> pivots_;
    std::vector<Vector> kernel_;
};

}  // namespace fnsurf

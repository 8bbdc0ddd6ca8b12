#include "fnsurf/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace fnsurf {

Vector Matrix::column(std::size_t j) const {
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

Vector Matrix::operator*(const Vector& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix * Vector: size mismatch");
    Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        Rational acc;
        for (std::size_t j = 0; j < cols_; ++j) {
            const Rational& a = (*this)(i, j);
            if (!a.is_zero() && !v[j].is_zero()) acc += a * v[j];
        }
        out[i] = acc;
    }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

namespace {

// Gauss-Jordan on `a`, mirroring every row operation on `companion` when given.
std::vector<std::size_t> gauss_jordan(Matrix& a, Matrix* companion, std::size_t column_limit) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < column_limit && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && a(sel, col).is_zero()) ++sel;
        if (sel == a.rows()) continue;
        if (sel != row) {
            for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(sel, j), a(row, j));
            if (companion)
                for (std::size_t j = 0; j < companion->cols(); ++j) std::swap((*companion)(sel, j), (*companion)(row, j));
        }
        const Rational inv = Rational(1) / a(row, col);
        if (!inv.is_one()) {
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (!a(row, j).is_zero()) a(row, j) *= inv;
            if (companion)
                for (std::size_t j = 0; j < companion->cols(); ++j)
                    if (!(*companion)(row, j).is_zero()) (*companion)(row, j) *= inv;
        }
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || a(i, col).is_zero()) continue;
            const Rational f = a(i, col);
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (!a(row, j).is_zero()) a(i, j) -= f * a(row, j);
            if (companion)
                for (std::size_t j = 0; j < companion->cols(); ++j)
                    if (!(*companion)(row, j).is_zero()) (*companion)(i, j) -= f * (*companion)(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::vector<Vector> kernel_from_rref(const Matrix& r, const std::vector<std::size_t>& pivots) {
    std::vector<bool> is_pivot(r.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < r.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(r.cols());
        v[free] = Rational(1);
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -r(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace

RowEchelon rref(Matrix a) {
    auto pivots = gauss_jordan(a, nullptr, a.cols());
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const Matrix& a) { return rref(a).rank(); }

std::vector<Vector> null_space(const Matrix& a) {
    const auto e = rref(a);
    return kernel_from_rref(e.reduced, e.pivots);
}

LinearSolver::LinearSolver(const Matrix& a) : rows_(a.rows()), cols_(a.cols()), transform_(a.rows(), a.rows()) {
    for (std::size_t i = 0; i < rows_; ++i) transform_(i, i) = Rational(1);
    Matrix r = a;
    pivots_ = gauss_jordan(r, &transform_, cols_);
    kernel_ = kernel_from_rref(r, pivots_);
}

Vector LinearSolver::obstruction(const Vector& b) const {
    if (b.size() != rows_) throw std::invalid_argument("LinearSolver: right-hand side size mismatch");
    Vector out;
    out.reserve(cokernel_dimension());
    for (std::size_t i = rank(); i < rows_; ++i) {
        Rational acc;
        for (std::size_t j = 0; j < rows_; ++j)
            if (!transform_(i, j).is_zero() && !b[j].is_zero()) acc += transform_(i, j) * b[j];
        out.push_back(std::move(acc));
    }
    return out;
}

Vector LinearSolver::particular(const Vector& b) const {
    if (b.size() != rows_) throw std::invalid_argument("LinearSolver: right-hand side size mismatch");
    Vector x(cols_);
    for (std::size_t i = 0; i < rank(); ++i) {
        Rational acc;
        for (std::size_t j = 0; j < rows_; ++j)
            if (!transform_(i, j).is_zero() && !b[j].is_zero()) acc += transform_(i, j) * b[j];
        x[pivots_[i]] = std::move(acc);
    }
    return x;
}

std::optional<Vector> LinearSolver::solve(const Vector& b) const {
    for (const auto& c : obstruction(b))
        if (!c.is_zero()) return std::nullopt;
    return particular(b);
}

}  // namespace fnsurf

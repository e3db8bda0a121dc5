#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <utility>
#include <vector>

#include "qres/errors.hpp"

namespace qres {

using Vector = std::vector<double>;

/// Dense row-major matrix of doubles. All problems in this library are tiny
/// (n <= 10, columns <= 20), so there is no sparse or fixed-size variant.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw DimensionMismatch("ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<double>& data() const noexcept { return data_; }
    std::vector<double>& data() noexcept { return data_; }

    bool operator==(const Matrix& other) const = default;

    Vector column(std::size_t c) const {
        Vector out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, c);
        return out;
    }

    void set_column(std::size_t c, const Vector& v) {
        for (std::size_t i = 0; i < rows_; ++i) (*this)(i, c) = v[i];
    }

    /// y = M x
    Vector apply(const Vector& x) const {
        if (x.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
        Vector y(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

    Matrix scaled(double s) const {
        Matrix out = *this;
        for (double& v : out.data_) v *= s;
        return out;
    }

    bool all_finite() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](double v) { return std::isfinite(v); });
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline double dot(const Vector& a, const Vector& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline double norm_inf(const Vector& a) {
    double m = 0.0;
    for (double v : a) m = std::max(m, std::abs(v));
    return m;
}

inline Vector scaled(const Vector& a, double s) {
    Vector out = a;
    for (double& v : out) v *= s;
    return out;
}

inline Vector add(const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return out;
}

inline Vector sub(const Vector& a, const Vector& b) {
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

inline bool is_zero(const Vector& a) {
    return std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
}

constexpr double kDefaultRankTol = 1e-9;

/// Numerical rank by Gaussian elimination with complete pivoting: the count
/// of pivots whose magnitude exceeds rel_tol times the largest pivot. With
/// complete pivoting the first pivot is the largest entry of the matrix.
inline std::size_t matrix_rank(Matrix m, double rel_tol = kDefaultRankTol) {
    if (rel_tol <= 0.0) throw ValidationError("rel_tol", "must be positive");
    const std::size_t nr = m.rows(), nc = m.cols();
    const std::size_t steps = std::min(nr, nc);
    std::size_t rank = 0;
    double largest_pivot = 0.0;
    for (std::size_t s = 0; s < steps; ++s) {
        std::size_t pr = s, pc = s;
        double best = 0.0;
        for (std::size_t i = s; i < nr; ++i)
            for (std::size_t j = s; j < nc; ++j)
                if (std::abs(m(i, j)) > best) { best = std::abs(m(i, j)); pr = i; pc = j; }
        if (s == 0) largest_pivot = best;
        if (best <= rel_tol * largest_pivot) break;
        if (pr != s)
            for (std::size_t j = 0; j < nc; ++j) std::swap(m(s, j), m(pr, j));
        if (pc != s)
            for (std::size_t i = 0; i < nr; ++i) std::swap(m(i, s), m(i, pc));
        for (std::size_t i = s + 1; i < nr; ++i) {
            const double f = m(i, s) / m(s, s);
            if (f == 0.0) continue;
            for (std::size_t j = s; j < nc; ++j) m(i, j) -= f * m(s, j);
        }
        ++rank;
    }
    return rank;
}

} // namespace qres

#pragma once

// Dense matrices over exact scalars, plus the small vector helpers used
// throughout. Dimensions are positive and entry access is bounds-checked.

#include <algorithm>
#include <cstddef>
#include <ostream>
#include <vector>

#include "latcone/numeric.hpp"

namespace latcone {

template <typename T>
class Matrix {
public:
    Matrix(std::size_t rows, std::size_t cols, const T& init = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, init) {
        if (rows == 0 || cols == 0) throw input_error("matrix dimensions must be positive");
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    template <typename U>
    static Matrix from_rows(const std::vector<std::vector<U>>& rows) {
        if (rows.empty() || rows.front().empty()) throw input_error("matrix dimensions must be positive");
        Matrix m(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != m.cols_)
                throw input_error("ragged matrix rows (row " + std::to_string(i) + ")");
            for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = T(rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) {
        check(i, j);
        return data_[i * cols_ + j];
    }
    const T& operator()(std::size_t i, std::size_t j) const {
        check(i, j);
        return data_[i * cols_ + j];
    }

    std::vector<T> row(std::size_t i) const {
        check(i, 0);
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }

    std::vector<T> col(std::size_t j) const {
        check(0, j);
        std::vector<T> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
        return out;
    }

    void set_row(std::size_t i, const std::vector<T>& v) {
        if (v.size() != cols_) throw input_error("row length mismatch");
        for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) = v[j];
    }

    Matrix transposed() const {
        Matrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Matrix select_rows(const std::vector<std::size_t>& idx) const {
        if (idx.empty()) throw input_error("empty row selection");
        Matrix m(idx.size(), cols_);
        for (std::size_t i = 0; i < idx.size(); ++i) m.set_row(i, row(idx[i]));
        return m;
    }

    Matrix select_cols(const std::vector<std::size_t>& idx) const {
        if (idx.empty()) throw input_error("empty column selection");
        Matrix m(rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) m(i, j) = (*this)(i, idx[j]);
        return m;
    }

    // Rows of this stacked on top of rows of other.
    Matrix vstack(const Matrix& other) const {
        if (other.cols_ != cols_) throw input_error("vstack column mismatch");
        Matrix m(rows_ + other.rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) m.set_row(i, row(i));
        for (std::size_t i = 0; i < other.rows_; ++i) m.set_row(rows_ + i, other.row(i));
        return m;
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }
    bool operator!=(const Matrix& o) const { return !(*this == o); }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_) throw input_error("matrix index out of range");
    }

    std::size_t rows_, cols_;
    std::vector<T> data_;
};

using IntMatrix = Matrix<Int>;
using RatMatrix = Matrix<Rat>;

template <typename T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.rows()) throw input_error("matrix product dimension mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

template <typename T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
    if (a.cols() != x.size()) throw input_error("matrix-vector dimension mismatch");
    std::vector<T> y(a.rows(), T(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
    return y;
}

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rat(m(i, j));
    return r;
}

inline RatVec to_rational(const IntVec& v) {
    RatVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

template <typename T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw input_error("dot product dimension mismatch");
    T s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const IntVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw input_error("dot product dimension mismatch");
    Rat s(0);
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

template <typename T>
bool is_zero_vec(const std::vector<T>& v) {
    return std::all_of(v.begin(), v.end(), [](const T& x) { return x == 0; });
}

template <typename T>
std::vector<T> negated(std::vector<T> v) {
    for (auto& x : v) x = -x;
    return v;
}

template <typename T>
std::vector<T> vec_add(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw input_error("vector sum dimension mismatch");
    std::vector<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
    return c;
}

template <typename T>
std::vector<T> vec_sub(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.size() != b.size()) throw input_error("vector difference dimension mismatch");
    std::vector<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] - b[i];
    return c;
}

template <typename T, typename S>
std::vector<T> vec_scaled(const std::vector<T>& a, const S& s) {
    std::vector<T> c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] * T(s);
    return c;
}

// Nonnegative gcd of all entries; 0 for the zero vector.
inline Int vec_gcd(const IntVec& v) {
    Int g(0);
    for (const auto& x : v) g = gcd(g, abs(x));
    return g;
}

// v divided by its content; the zero vector stays zero.
inline IntVec primitive_vector(IntVec v) {
    Int g = vec_gcd(v);
    if (g > 1)
        for (auto& x : v) x /= g;
    return v;
}

template <typename T>
std::ostream& print_vec(std::ostream& os, const std::vector<T>& v) {
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ", ";
        os << to_string(v[i]);
    }
    return os << ")";
}

} // namespace latcone

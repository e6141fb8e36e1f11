#pragma once

#include "kgraph/degree.hpp"
#include "kgraph/numeric.hpp"

#include <cstddef>
#include <type_traits>
#include <vector>

namespace kgraph {

/// Dense row-major square-or-rectangular matrix over an arithmetic type.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        Matrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t l = 0; l < a.cols_; ++l) {
                const T& ail = a(i, l);
                if (ail == T(0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += ail * b(l, j);
            }
        return out;
    }
    friend Matrix operator+(const Matrix& a, const Matrix& b) {
        Matrix out = a;
        for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
        return out;
    }
    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::vector<T> apply(const std::vector<T>& x) const {
        std::vector<T> y(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
        return y;
    }

    template <class U>
    Matrix<U> cast() const {
        Matrix<U> out(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(i, j) = convert<U>((*this)(i, j));
        return out;
    }

private:
    template <class U>
    static U convert(const T& v) {
        if constexpr (std::is_same_v<T, Rational> && std::is_same_v<U, double>) {
            return v.get_d();
        } else {
            return static_cast<U>(v);
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;

/// A family A_1..A_k of square matrices over a common index set.
struct MatrixFamily {
    std::vector<RationalMatrix> matrices;

    std::size_t rank() const { return matrices.size(); }
    std::size_t dimension() const { return matrices.empty() ? 0 : matrices.front().rows(); }

    /// A^n = A_1^{n_1} ... A_k^{n_k}.
    RationalMatrix power(const Degree& n) const;
    /// A_F = sum over n in F of A^n.
    RationalMatrix power_sum(const std::vector<Degree>& F) const;
};

}  // namespace kgraph

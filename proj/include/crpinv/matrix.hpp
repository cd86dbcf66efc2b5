#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "crpinv/errors.hpp"
#include "crpinv/scalar.hpp"

namespace crpinv
{

/// Dense row-major m x n matrix. Either dimension may be zero.
template <Scalar T>
class Matrix
{
public:
    using value_type = T;

    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_)
            throw ShapeError("matrix data length " + std::to_string(data_.size()) + " does not match " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    Matrix(std::initializer_list<std::initializer_list<T>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
    {
        data_.reserve(rows_ * cols_);
        for (const auto& row : rows) {
            if (row.size() != cols_)
                throw ShapeError("ragged initializer list");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

    static Matrix identity(std::size_t n)
    {
        Matrix out(n, n);
        for (std::size_t i = 0; i < n; ++i)
            out(i, i) = T(1);
        return out;
    }

    /// n x 1 column vector.
    static Matrix column(std::vector<T> values)
    {
        const auto n = values.size();
        return Matrix(n, 1, std::move(values));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> data() noexcept { return data_; }
    std::span<const T> data() const noexcept { return data_; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const T> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    Matrix transpose() const
    {
        Matrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = (*this)(i, j);
        return out;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const
    {
        if (r0 + nr > rows_ || c0 + nc > cols_)
            throw ShapeError("block out of range");
        Matrix out(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j)
                out(i, j) = (*this)(r0 + i, c0 + j);
        return out;
    }

    Matrix select_cols(std::span<const std::size_t> indices) const
    {
        Matrix out(rows_, indices.size());
        for (std::size_t k = 0; k < indices.size(); ++k) {
            if (indices[k] >= cols_)
                throw ShapeError("column index out of range");
            for (std::size_t i = 0; i < rows_; ++i)
                out(i, k) = (*this)(i, indices[k]);
        }
        return out;
    }

    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

    Matrix& operator+=(const Matrix& other)
    {
        require_same_shape(other, "+");
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] += other.data_[k];
        return *this;
    }

    Matrix& operator-=(const Matrix& other)
    {
        require_same_shape(other, "-");
        for (std::size_t k = 0; k < data_.size(); ++k)
            data_[k] -= other.data_[k];
        return *this;
    }

    Matrix& operator*=(const T& s)
    {
        for (auto& x : data_)
            x *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, const T& s) { return a *= s; }
    friend Matrix operator*(const T& s, Matrix a) { return a *= s; }

    friend Matrix operator-(Matrix a)
    {
        for (auto& x : a.data_)
            x = -x;
        return a;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b)
    {
        if (a.cols_ != b.rows_)
            throw ShapeError("cannot multiply " + a.shape_string() + " by " + b.shape_string());
        Matrix out(a.rows_, b.cols_);
        // i-k-j order keeps the inner loop contiguous in both b and out.
        for (std::size_t i = 0; i < a.rows_; ++i) {
            T* out_row = out.data_.data() + i * out.cols_;
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (ScalarTraits<T>::is_zero(aik))
                    continue;
                const T* b_row = b.data_.data() + k * b.cols_;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out_row[j] += aik * b_row[j];
            }
        }
        return out;
    }

    friend bool operator==(const Matrix& a, const Matrix& b)
    {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    std::string shape_string() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

private:
    void require_same_shape(const Matrix& other, const char* op) const
    {
        if (rows_ != other.rows_ || cols_ != other.cols_)
            throw ShapeError(std::string("shape mismatch in '") + op + "': " + shape_string() + " vs " +
                             other.shape_string());
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using RationalMatrix = Matrix<Rational>;
using FloatMatrix = Matrix<double>;

/// [a b]
template <Scalar T>
Matrix<T> hcat(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.rows() != b.rows())
        throw ShapeError("hcat: row counts differ (" + a.shape_string() + " vs " + b.shape_string() + ")");
    Matrix<T> out(a.rows(), a.cols() + b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
        for (std::size_t j = 0; j < b.cols(); ++j)
            out(i, a.cols() + j) = b(i, j);
    }
    return out;
}

/// [a; b]
template <Scalar T>
Matrix<T> vcat(const Matrix<T>& a, const Matrix<T>& b)
{
    if (a.cols() != b.cols())
        throw ShapeError("vcat: column counts differ (" + a.shape_string() + " vs " + b.shape_string() + ")");
    Matrix<T> out(a.rows() + b.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            out(a.rows() + i, j) = b(i, j);
    return out;
}

template <Scalar T>
double frobenius_norm(const Matrix<T>& a)
{
    if constexpr (is_exact_v<T>) {
        Rational sum = 0;
        for (const auto& x : a.data())
            sum += x * x;
        return std::sqrt(sum.get_d());
    } else {
        // Scaled accumulation avoids overflow for huge entries.
        double scale = 0.0, ssq = 1.0;
        for (double x : a.data()) {
            if (x == 0.0)
                continue;
            const double ax = std::fabs(x);
            if (scale < ax) {
                ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
                scale = ax;
            } else {
                ssq += (ax / scale) * (ax / scale);
            }
        }
        return scale * std::sqrt(ssq);
    }
}

/// Largest absolute entry (0 for an empty matrix).
template <Scalar T>
double max_abs(const Matrix<T>& a)
{
    double best = 0.0;
    for (const auto& x : a.data())
        best = std::max(best, std::fabs(ScalarTraits<T>::to_double(x)));
    return best;
}

/// ||a - b||_F / ||b||_F, falling back to the absolute residual when b = 0.
template <Scalar T>
double relative_error(const Matrix<T>& a, const Matrix<T>& b)
{
    const double num = frobenius_norm(Matrix<T>(a) -= b);
    const double den = frobenius_norm(b);
    return den > 0.0 ? num / den : num;
}

inline FloatMatrix to_float(const RationalMatrix& a)
{
    FloatMatrix out(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.size(); ++k)
        out.data()[k] = a.data()[k].get_d();
    return out;
}

/// Exact conversion: every finite double is a dyadic rational.
inline RationalMatrix to_rational(const FloatMatrix& a)
{
    RationalMatrix out(a.rows(), a.cols());
    for (std::size_t k = 0; k < a.size(); ++k)
        out.data()[k] = Rational(a.data()[k]);
    return out;
}

} // namespace crpinv

#pragma once

#include <cstddef>
#include <gmpxx.h>
#include <initializer_list>
#include <vector>

namespace nilcone {

using Rational = mpq_class;

// Dense row-major matrix over Q. Every operation is exact.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::initializer_list<std::initializer_list<long>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    // E_{ij} of the given shape
    static Matrix unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool is_zero() const;
    Matrix transposed() const;
    Matrix power(unsigned k) const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(const Rational& s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator-(Matrix a) { return a *= Rational(-1); }
    friend Matrix operator*(const Rational& s, Matrix a) { return a *= s; }
    friend Matrix operator*(const Matrix& a, const Matrix& b);
    friend bool operator==(const Matrix& a, const Matrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

// [a, b] = ab - ba
Matrix commutator(const Matrix& a, const Matrix& b);

std::size_t rank(Matrix m);

// Columns form a basis of {x : m x = 0}.
Matrix nullspace(const Matrix& m);

// Columns form a basis of the column space of m.
Matrix column_space(const Matrix& m);

// Throws std::domain_error when m is singular.
Matrix inverse(const Matrix& m);

Matrix hstack(const Matrix& a, const Matrix& b);
Matrix vstack(const Matrix& a, const Matrix& b);

// Block-diagonal placement of `block` into `target` at (row, col).
void place(Matrix& target, const Matrix& block, std::size_t row, std::size_t col);

}  // namespace nilcone

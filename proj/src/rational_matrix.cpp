#include "nilcone/rational_matrix.hpp"

#include <stdexcept>
#include <utility>

namespace nilcone {

Matrix::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw std::invalid_argument("ragged matrix literal");
        for (long x : r)
            data_.emplace_back(x);
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::unit(std::size_t rows, std::size_t cols, std::size_t i, std::size_t j) {
    Matrix m(rows, cols);
    m(i, j) = 1;
    return m;
}

bool Matrix::is_zero() const {
    for (const auto& x : data_)
        if (sgn(x) != 0)
            return false;
    return true;
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

Matrix Matrix::power(unsigned k) const {
    if (!square())
        throw std::invalid_argument("power of a non-square matrix");
    Matrix result = identity(rows_);
    for (unsigned i = 0; i < k; ++i)
        result = result * (*this);
    return result;
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix shape mismatch in +");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] += other.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw std::invalid_argument("matrix shape mismatch in -");
    for (std::size_t i = 0; i < data_.size(); ++i)
        data_[i] -= other.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(const Rational& s) {
    for (auto& x : data_)
        x *= s;
    return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_)
        throw std::invalid_argument("matrix shape mismatch in *");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Rational& x = a(i, k);
            if (sgn(x) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols_; ++j)
                if (sgn(b(k, j)) != 0)
                    c(i, j) += x * b(k, j);
        }
    return c;
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> row_reduce(Matrix& m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && sgn(m(p, col)) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != row)
            for (std::size_t j = col; j < m.cols(); ++j)
                std::swap(m(p, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (std::size_t j = col; j < m.cols(); ++j)
            m(row, j) *= inv;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(m(i, col)) == 0)
                continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (sgn(m(row, j)) != 0)
                    m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(Matrix m) {
    // forward elimination only
    std::size_t r = 0;
    for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
        std::size_t p = r;
        while (p < m.rows() && sgn(m(p, col)) == 0)
            ++p;
        if (p == m.rows())
            continue;
        if (p != r)
            for (std::size_t j = col; j < m.cols(); ++j)
                std::swap(m(p, j), m(r, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (sgn(m(i, col)) == 0)
                continue;
            const Rational f = m(i, col) / m(r, col);
            for (std::size_t j = col; j < m.cols(); ++j)
                if (sgn(m(r, j)) != 0)
                    m(i, j) -= f * m(r, j);
        }
        ++r;
    }
    return r;
}

Matrix nullspace(const Matrix& m) {
    Matrix r = m;
    const auto pivots = row_reduce(r);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    Matrix basis(m.cols(), m.cols() - pivots.size());
    std::size_t k = 0;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        basis(free, k) = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            basis(pivots[i], k) = -r(i, free);
        ++k;
    }
    return basis;
}

Matrix column_space(const Matrix& m) {
    Matrix t = m.transposed();
    const auto pivots = row_reduce(t);
    Matrix basis(m.rows(), pivots.size());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (std::size_t i = 0; i < m.rows(); ++i)
            basis(i, k) = t(k, i);
    return basis;
}

Matrix inverse(const Matrix& m) {
    if (!m.square())
        throw std::domain_error("inverse of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return Matrix();
    Matrix aug = hstack(m, Matrix::identity(n));
    const auto pivots = row_reduce(aug);
    if (pivots.size() < n || pivots[n - 1] != n - 1)
        throw std::domain_error("matrix is singular");
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            inv(i, j) = aug(i, n + j);
    return inv;
}

Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("hstack row mismatch");
    Matrix out(a.rows(), a.cols() + b.cols());
    place(out, a, 0, 0);
    place(out, b, 0, a.cols());
    return out;
}

Matrix vstack(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("vstack column mismatch");
    Matrix out(a.rows() + b.rows(), a.cols());
    place(out, a, 0, 0);
    place(out, b, a.rows(), 0);
    return out;
}

void place(Matrix& target, const Matrix& block, std::size_t row, std::size_t col) {
    if (row + block.rows() > target.rows() || col + block.cols() > target.cols())
        throw std::out_of_range("block does not fit");
    for (std::size_t i = 0; i < block.rows(); ++i)
        for (std::size_t j = 0; j < block.cols(); ++j)
            target(row + i, col + j) = block(i, j);
}

}  // namespace nilcone

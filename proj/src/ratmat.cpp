#include "superlin/ratmat.hpp"

#include "superlin/errors.hpp"

namespace superlin {

RatMatrix::RatMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0)
        throw dimension_error("negative matrix shape");
    data_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Rational(0));
}

RatMatrix::RatMatrix(std::vector<std::vector<Rational>> rows)
    : RatMatrix(static_cast<int>(rows.size()), rows.empty() ? 0 : static_cast<int>(rows[0].size())) {
    for (int r = 0; r < rows_; ++r) {
        if (static_cast<int>(rows[static_cast<std::size_t>(r)].size()) != cols_)
            throw dimension_error("ragged matrix rows");
        for (int c = 0; c < cols_; ++c)
            at(r, c) = std::move(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::permutation(const std::vector<int>& p) {
    int n = static_cast<int>(p.size());
    RatMatrix m(n, n);
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j) {
        int i = p[static_cast<std::size_t>(j)];
        if (i < 0 || i >= n || seen[static_cast<std::size_t>(i)])
            throw validity_error("not a permutation");
        seen[static_cast<std::size_t>(i)] = true;
        m.at(i, j) = 1;
    }
    return m;
}

Rational& RatMatrix::at(int r, int c) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw dimension_error("matrix index out of range");
    return data_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c)];
}

const Rational& RatMatrix::at(int r, int c) const {
    return const_cast<RatMatrix*>(this)->at(r, c);
}

bool RatMatrix::operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_)
        throw dimension_error("matrix product shape mismatch");
    RatMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& a = at(i, k);
            if (a == 0)
                continue;
            for (int j = 0; j < o.cols_; ++j)
                if (o.at(k, j) != 0)
                    r.at(i, j) += a * o.at(k, j);
        }
    return r;
}

RatVector RatMatrix::operator*(const RatVector& v) const {
    if (cols_ != static_cast<int>(v.size()))
        throw dimension_error("matrix-vector shape mismatch");
    RatVector r(static_cast<std::size_t>(rows_), Rational(0));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            if (at(i, j) != 0)
                r[static_cast<std::size_t>(i)] += at(i, j) * v[static_cast<std::size_t>(j)];
    return r;
}

RatMatrix RatMatrix::inverse() const {
    if (rows_ != cols_)
        throw dimension_error("only square matrices can be inverted");
    int n = rows_;
    RatMatrix a = *this;
    RatMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0)
            throw singular_matrix_error("matrix is singular");
        if (pivot != col)
            for (int c = 0; c < n; ++c) {
                std::swap(a.at(pivot, c), a.at(col, c));
                std::swap(inv.at(pivot, c), inv.at(col, c));
            }
        Rational d = a.at(col, col);
        for (int c = 0; c < n; ++c) {
            a.at(col, c) /= d;
            inv.at(col, c) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a.at(r, col) == 0)
                continue;
            Rational factor = a.at(r, col);
            for (int c = 0; c < n; ++c) {
                a.at(r, c) -= factor * a.at(col, c);
                inv.at(r, c) -= factor * inv.at(col, c);
            }
        }
    }
    return inv;
}

bool RatMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            m.at(i, j) = a.at(i, j);
    for (int i = 0; i < b.rows(); ++i)
        for (int j = 0; j < b.cols(); ++j)
            m.at(a.rows() + i, a.cols() + j) = b.at(i, j);
    return m;
}

} // namespace superlin

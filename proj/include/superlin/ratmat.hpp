#ifndef SUPERLIN_RATMAT_HPP
#define SUPERLIN_RATMAT_HPP

#include <vector>

#include "superlin/rational.hpp"

namespace superlin {

using RatVector = std::vector<Rational>;

// Dense matrix of exact rationals, row-major.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(int rows, int cols);
    RatMatrix(std::vector<std::vector<Rational>> rows); // implicit shape from nested lists

    static RatMatrix identity(int n);
    // Column j of the result carries a 1 in row p[j]: maps e_j to e_{p[j]},
    // i.e. (P x)_{p[j]} = x_j for the permutation p.
    static RatMatrix permutation(const std::vector<int>& p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int r, int c);
    const Rational& at(int r, int c) const;

    bool operator==(const RatMatrix& o) const;
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }

    RatMatrix operator*(const RatMatrix& o) const;
    RatVector operator*(const RatVector& v) const;

    // Exact Gauss-Jordan inverse; throws singular_matrix_error when rank-deficient.
    RatMatrix inverse() const;

    bool is_zero() const;

private:
    int rows_, cols_;
    std::vector<Rational> data_;
};

// [[a, 0], [0, b]] with zero fill outside both blocks.
RatMatrix block_diag(const RatMatrix& a, const RatMatrix& b);

} // namespace superlin

#endif

#pragma once

#include "kmso21/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kmso21 {

// Dense row-major matrix over Q.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static QMatrix identity(size_t n);
    static QMatrix from_columns(const std::vector<QVec>& cols, size_t rows);
    static QMatrix from_rows(const std::vector<QVec>& rows, size_t cols);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    Q& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
    const Q& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

    QVec column(size_t j) const;
    QVec row(size_t i) const;
    void set_column(size_t j, const QVec& v);

    QMatrix transpose() const;
    QMatrix operator*(const QMatrix& o) const;
    QVec operator*(const QVec& v) const;
    QMatrix operator+(const QMatrix& o) const;
    QMatrix operator-(const QMatrix& o) const;
    QMatrix scaled(const Q& c) const;
    bool operator==(const QMatrix& o) const;

    bool is_zero() const;
    bool is_symmetric() const;
    bool is_scalar() const;

    std::string str() const;

private:
    size_t rows_ = 0, cols_ = 0;
    std::vector<Q> data_;
};

struct RowEchelon {
    QMatrix r;                  // reduced row echelon form
    std::vector<size_t> pivots; // pivot column of each nonzero row
};

RowEchelon rref(QMatrix m);
size_t rank(const QMatrix& m);

// Basis of {x : m x = 0}, one vector per free column.
std::vector<QVec> kernel(const QMatrix& m);

// Solves m x = b; nullopt when inconsistent. Free variables are set to zero.
std::optional<QVec> solve(const QMatrix& m, const QVec& b);

QMatrix inverse(const QMatrix& m);

// Exact LDL^T without pivoting; returns the diagonal, or nullopt if a zero pivot appears.
std::optional<QVec> ldlt_diagonal(const QMatrix& m);
bool is_positive_definite(const QMatrix& m);

// Coefficients c_0..c_n of det(x I - m), c_n = 1.
QVec charpoly(const QMatrix& m);
Q poly_eval(const QVec& coeffs, const Q& x);
std::string poly_str(const QVec& coeffs);

// Rational eigenvalues with algebraic multiplicity, when the characteristic polynomial splits over Q.
std::optional<std::vector<std::pair<Q, size_t>>> rational_eigenvalues(const QMatrix& m);

// Rank of the column span of a list of vectors.
size_t span_rank(const std::vector<QVec>& vecs, size_t dim);

}  // namespace kmso21

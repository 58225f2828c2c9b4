#include "kmso21/qmatrix.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace kmso21 {

QMatrix QMatrix::identity(size_t n) {
    QMatrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVec>& cols, size_t rows) {
    QMatrix m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<QVec>& rows, size_t cols) {
    QMatrix m(rows.size(), cols);
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
}

QVec QMatrix::column(size_t j) const {
    QVec v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

QVec QMatrix::row(size_t i) const {
    return QVec(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
}

void QMatrix::set_column(size_t j, const QVec& v) {
    for (size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    QMatrix r(rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            const Q& a = (*this)(i, k);
            if (a == 0) continue;
            for (size_t j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0) r(i, j) += a * o(k, j);
        }
    return r;
}

QVec QMatrix::operator*(const QVec& v) const {
    if (cols_ != v.size()) throw std::invalid_argument("matrix-vector product: shape mismatch");
    QVec r(rows_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k)
            if (v[k] != 0 && (*this)(i, k) != 0) r[i] += (*this)(i, k) * v[k];
    return r;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
    QMatrix r(*this);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
}

QMatrix QMatrix::operator-(const QMatrix& o) const {
    QMatrix r(*this);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
}

QMatrix QMatrix::scaled(const Q& c) const {
    QMatrix r(*this);
    for (auto& x : r.data_) x *= c;
    return r;
}

bool QMatrix::operator==(const QMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

bool QMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

bool QMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool QMatrix::is_scalar() const {
    if (rows_ != cols_) return false;
    for (size_t i = 0; i < rows_; ++i)
        for (size_t j = 0; j < cols_; ++j) {
            if (i != j && (*this)(i, j) != 0) return false;
            if (i == j && (*this)(i, i) != (*this)(0, 0)) return false;
        }
    return true;
}

std::string QMatrix::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    }
    os << "]";
    return os.str();
}

RowEchelon rref(QMatrix m) {
    RowEchelon out;
    size_t row = 0;
    for (size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        size_t p = row;
        while (p < m.rows() && m(p, col) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row)
            for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        Q inv = 1 / m(row, col);
        for (size_t j = col; j < m.cols(); ++j) m(row, j) *= inv;
        for (size_t i = 0; i < m.rows(); ++i) {
            if (i == row || m(i, col) == 0) continue;
            Q f = m(i, col);
            for (size_t j = col; j < m.cols(); ++j)
                if (m(row, j) != 0) m(i, j) -= f * m(row, j);
        }
        out.pivots.push_back(col);
        ++row;
    }
    out.r = std::move(m);
    return out;
}

size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::vector<QVec> kernel(const QMatrix& m) {
    RowEchelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (size_t p : e.pivots) is_pivot[p] = true;
    std::vector<QVec> basis;
    for (size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        QVec v(m.cols());
        v[f] = 1;
        for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.r(r, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<QVec> solve(const QMatrix& m, const QVec& b) {
    QMatrix aug(m.rows(), m.cols() + 1);
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    RowEchelon e = rref(aug);
    QVec x(m.cols());
    for (size_t r = 0; r < e.pivots.size(); ++r) {
        if (e.pivots[r] == m.cols()) return std::nullopt;
        x[e.pivots[r]] = e.r(r, m.cols());
    }
    return x;
}

QMatrix inverse(const QMatrix& m) {
    size_t n = m.rows();
    if (n != m.cols()) throw std::invalid_argument("inverse: non-square matrix");
    QMatrix aug(n, 2 * n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = 1;
    }
    RowEchelon e = rref(aug);
    if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) throw std::domain_error("inverse: singular matrix");
    QMatrix inv(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) inv(i, j) = e.r(i, n + j);
    return inv;
}

std::optional<QVec> ldlt_diagonal(const QMatrix& m) {
    size_t n = m.rows();
    QMatrix l = QMatrix::identity(n);
    QVec d(n);
    for (size_t j = 0; j < n; ++j) {
        Q s = m(j, j);
        for (size_t k = 0; k < j; ++k) s -= l(j, k) * l(j, k) * d[k];
        if (s == 0) return std::nullopt;
        d[j] = s;
        for (size_t i = j + 1; i < n; ++i) {
            Q t = m(i, j);
            for (size_t k = 0; k < j; ++k) t -= l(i, k) * l(j, k) * d[k];
            l(i, j) = t / d[j];
        }
    }
    return d;
}

bool is_positive_definite(const QMatrix& m) {
    if (!m.is_symmetric()) return false;
    auto d = ldlt_diagonal(m);
    if (!d) return false;
    for (const auto& x : *d)
        if (x <= 0) return false;
    return true;
}

QVec charpoly(const QMatrix& m) {
    // Faddeev-LeVerrier: M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k.
    size_t n = m.rows();
    QVec c(n + 1);
    c[n] = 1;
    QMatrix mk(n, n);
    for (size_t k = 1; k <= n; ++k) {
        QMatrix next = m * mk;
        for (size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        QMatrix am = m * mk;
        Q tr = 0;
        for (size_t i = 0; i < n; ++i) tr += am(i, i);
        c[n - k] = -tr / Q(static_cast<long>(k));
    }
    return c;
}

Q poly_eval(const QVec& coeffs, const Q& x) {
    Q acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

std::string poly_str(const QVec& coeffs) {
    std::ostringstream os;
    bool first = true;
    for (size_t i = coeffs.size(); i-- > 0;) {
        if (coeffs[i] == 0) continue;
        Q c = coeffs[i];
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        Q a = abs(c);
        if (a != 1 || i == 0) os << a.get_str();
        if (i > 0) os << (a != 1 ? "*" : "") << "x" << (i > 1 ? "^" + std::to_string(i) : "");
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

namespace {

// Synthetic division by (x - r); assumes r is a root.
QVec deflate(const QVec& p, const Q& r) {
    size_t n = p.size() - 1;
    QVec q(n);
    Q carry = 0;
    for (size_t i = n; i-- > 0;) {
        carry = carry * r + p[i + 1];
        q[i] = carry;
    }
    return q;
}

std::optional<Q> rationalize(double x) {
    // Continued-fraction convergents up to a bounded denominator.
    double v = x;
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int it = 0; it < 40; ++it) {
        double a = std::floor(v);
        if (std::abs(a) > 1e15) break;
        mpz_class ai = static_cast<long>(a);
        mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        h0 = h1; h1 = h2; k0 = k1; k1 = k2;
        Q cand(h1, k1);
        cand.canonicalize();
        if (std::abs(cand.get_d() - x) <= 1e-9 * std::max(1.0, std::abs(x))) return cand;
        double frac = v - a;
        if (frac < 1e-14) break;
        v = 1.0 / frac;
        if (k1 > 1000000000) break;
    }
    return std::nullopt;
}

}  // namespace

std::optional<std::vector<std::pair<Q, size_t>>> rational_eigenvalues(const QMatrix& m) {
    QVec p = charpoly(m);
    std::vector<std::pair<Q, size_t>> out;
    while (p.size() > 1) {
        size_t deg = p.size() - 1;
        Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
        for (size_t i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
        for (size_t i = 0; i < deg; ++i) comp(i, deg - 1) = -p[i].get_d();
        Eigen::VectorXcd ev = comp.eigenvalues();
        bool found = false;
        for (Eigen::Index i = 0; i < ev.size() && !found; ++i) {
            if (std::abs(ev[i].imag()) > 1e-6 * std::max(1.0, std::abs(ev[i]))) continue;
            auto r = rationalize(ev[i].real());
            if (!r || poly_eval(p, *r) != 0) continue;
            p = deflate(p, *r);
            bool merged = false;
            for (auto& e : out)
                if (e.first == *r) { ++e.second; merged = true; }
            if (!merged) out.emplace_back(*r, 1);
            found = true;
        }
        if (!found) return std::nullopt;
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

size_t span_rank(const std::vector<QVec>& vecs, size_t dim) {
    if (vecs.empty()) return 0;
    return rank(QMatrix::from_columns(vecs, dim));
}

}  // namespace kmso21

#pragma once

#include "kmso21/rational.hpp"

#include <array>
#include <string>

namespace kmso21 {

// Gaussian rational re + i im.
struct QI {
    Q re, im;
    QI() = default;
    QI(Q r, Q i = 0) : re(std::move(r)), im(std::move(i)) {}
    QI operator+(const QI& o) const { return {re + o.re, im + o.im}; }
    QI operator-(const QI& o) const { return {re - o.re, im - o.im}; }
    QI operator-() const { return {-re, -im}; }
    QI operator*(const QI& o) const { return {re * o.re - im * o.im, re * o.im + im * o.re}; }
    QI inverse() const;
    bool is_zero() const { return re == 0 && im == 0; }
    bool operator==(const QI& o) const { return re == o.re && im == o.im; }
    std::string str() const;
};

// a + b sqrt(2) with a, b Gaussian rationals.
struct QI2 {
    QI a, b;
    QI2() = default;
    QI2(QI x, QI y = QI()) : a(std::move(x)), b(std::move(y)) {}
    static QI2 rational(const Q& q) { return QI2(QI(q)); }
    QI2 operator+(const QI2& o) const { return {a + o.a, b + o.b}; }
    QI2 operator-(const QI2& o) const { return {a - o.a, b - o.b}; }
    QI2 operator-() const { return {-a, -b}; }
    QI2 operator*(const QI2& o) const { return {a * o.a + QI(2) * b * o.b, a * o.b + b * o.a}; }
    QI2 inverse() const;
    bool is_zero() const { return a.is_zero() && b.is_zero(); }
    bool operator==(const QI2& o) const { return a == o.a && b == o.b; }
    std::string str() const;
};

using Sl2Vec = std::array<QI2, 3>;
using Sl2Mat = std::array<Sl2Vec, 3>;  // row-major

enum class Sl2BasisTag { efh, so3, so21, J, j };

std::string to_string(Sl2BasisTag t);
Sl2BasisTag parse_sl2_basis(const std::string& name);

// Columns are the (e, f, h) coordinates of the tag's three basis elements.
Sl2Mat basis_matrix(Sl2BasisTag t);
Sl2Mat inverse(const Sl2Mat& m);
Sl2Vec mat_apply(const Sl2Mat& m, const Sl2Vec& v);

Sl2Vec convert_basis(const Sl2Vec& coeffs, Sl2BasisTag from, Sl2BasisTag to);

// Bracket of two elements given in (e, f, h) coordinates.
Sl2Vec bracket_efh(const Sl2Vec& x, const Sl2Vec& y);
// Bracket of two elements given in the coordinates of t.
Sl2Vec bracket_in(Sl2BasisTag t, const Sl2Vec& x, const Sl2Vec& y);

Sl2Vec unit_vector(int k);
std::string str(const Sl2Vec& v);

}  // namespace kmso21

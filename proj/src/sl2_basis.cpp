#include "kmso21/sl2_basis.hpp"

#include <stdexcept>

namespace kmso21 {

QI QI::inverse() const {
    Q n = re * re + im * im;
    if (n == 0) throw std::domain_error("QI: division by zero");
    return {re / n, -im / n};
}

std::string QI::str() const {
    if (im == 0) return to_string(re);
    if (re == 0) return to_string(im) + "i";
    return "(" + to_string(re) + (im > 0 ? "+" : "") + to_string(im) + "i)";
}

QI2 QI2::inverse() const {
    // (a + b r)(a - b r) = a^2 - 2 b^2
    QI n = a * a - QI(2) * b * b;
    if (n.is_zero()) throw std::domain_error("QI2: division by zero");
    QI ni = n.inverse();
    return {a * ni, -(b * ni)};
}

std::string QI2::str() const {
    if (b.is_zero()) return a.str();
    std::string s = b.str() + "*sqrt2";
    if (a.is_zero()) return s;
    return a.str() + " + " + s;
}

std::string to_string(Sl2BasisTag t) {
    switch (t) {
        case Sl2BasisTag::efh: return "efh";
        case Sl2BasisTag::so3: return "so3";
        case Sl2BasisTag::so21: return "so21";
        case Sl2BasisTag::J: return "J";
        case Sl2BasisTag::j: return "j";
    }
    return "?";
}

Sl2BasisTag parse_sl2_basis(const std::string& name) {
    for (auto t : {Sl2BasisTag::efh, Sl2BasisTag::so3, Sl2BasisTag::so21, Sl2BasisTag::J, Sl2BasisTag::j})
        if (to_string(t) == name) return t;
    throw std::invalid_argument("unknown sl2 basis '" + name + "'");
}

namespace {

QI2 rq(long n, long d = 1) { return QI2::rational(make_q(n, d)); }
QI2 iq(long n, long d = 1) { return QI2(QI(0, make_q(n, d))); }
QI2 sqrt2_over(long d) { return QI2(QI(), QI(make_q(1, d))); }

Sl2Mat from_columns(const Sl2Vec& c0, const Sl2Vec& c1, const Sl2Vec& c2) {
    Sl2Mat m;
    for (int r = 0; r < 3; ++r) m[r] = {c0[r], c1[r], c2[r]};
    return m;
}

}  // namespace

Sl2Mat basis_matrix(Sl2BasisTag t) {
    QI2 z;
    switch (t) {
        case Sl2BasisTag::efh:
            return from_columns({rq(1), z, z}, {z, rq(1), z}, {z, z, rq(1)});
        case Sl2BasisTag::so21:
            // J0 = (e - f)/2, J1 = (e + f)/2, J2 = -h/2
            return from_columns({rq(1, 2), rq(-1, 2), z}, {rq(1, 2), rq(1, 2), z}, {z, z, rq(-1, 2)});
        case Sl2BasisTag::so3:
            // M1 = -i(e + f)/2, M2 = (f - e)/2, M3 = -i h/2
            return from_columns({iq(-1, 2), iq(-1, 2), z}, {rq(-1, 2), rq(1, 2), z}, {z, z, iq(-1, 2)});
        case Sl2BasisTag::J: {
            // J3 = h/2, J+ = e/sqrt2, J- = -f/sqrt2
            QI2 s = sqrt2_over(2);
            return from_columns({z, z, rq(1, 2)}, {s, z, z}, {z, -s, z});
        }
        case Sl2BasisTag::j: {
            // j3 = (i/2)(e - f), j+- = (-i(e + f) +- h) / (2 sqrt2)
            QI2 s = sqrt2_over(4);
            QI2 mis = QI2(QI(), QI(0, Q(-1, 4)));  // -i sqrt2/4
            return from_columns({iq(1, 2), iq(-1, 2), z}, {mis, mis, s}, {mis, mis, -s});
        }
    }
    throw std::invalid_argument("basis_matrix: bad tag");
}

Sl2Mat inverse(const Sl2Mat& m) {
    Sl2Mat a = m;
    Sl2Mat inv{};
    for (int i = 0; i < 3; ++i) inv[i][i] = rq(1);
    for (int c = 0; c < 3; ++c) {
        int p = c;
        while (p < 3 && a[p][c].is_zero()) ++p;
        if (p == 3) throw std::domain_error("sl2 basis matrix is singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        QI2 k = a[c][c].inverse();
        for (int j = 0; j < 3; ++j) {
            a[c][j] = a[c][j] * k;
            inv[c][j] = inv[c][j] * k;
        }
        for (int r = 0; r < 3; ++r) {
            if (r == c || a[r][c].is_zero()) continue;
            QI2 f = a[r][c];
            for (int j = 0; j < 3; ++j) {
                a[r][j] = a[r][j] - f * a[c][j];
                inv[r][j] = inv[r][j] - f * inv[c][j];
            }
        }
    }
    return inv;
}

Sl2Vec mat_apply(const Sl2Mat& m, const Sl2Vec& v) {
    Sl2Vec out;
    for (int r = 0; r < 3; ++r) out[r] = m[r][0] * v[0] + m[r][1] * v[1] + m[r][2] * v[2];
    return out;
}

Sl2Vec convert_basis(const Sl2Vec& coeffs, Sl2BasisTag from, Sl2BasisTag to) {
    Sl2Vec efh = mat_apply(basis_matrix(from), coeffs);
    return mat_apply(inverse(basis_matrix(to)), efh);
}

Sl2Vec bracket_efh(const Sl2Vec& x, const Sl2Vec& y) {
    // [e,f] = h, [h,e] = 2e, [h,f] = -2f
    QI2 two = rq(2);
    QI2 e = two * (x[2] * y[0] - x[0] * y[2]);
    QI2 f = two * (x[1] * y[2] - x[2] * y[1]);
    QI2 h = x[0] * y[1] - x[1] * y[0];
    return {e, f, h};
}

Sl2Vec bracket_in(Sl2BasisTag t, const Sl2Vec& x, const Sl2Vec& y) {
    Sl2Mat m = basis_matrix(t);
    return mat_apply(inverse(m), bracket_efh(mat_apply(m, x), mat_apply(m, y)));
}

Sl2Vec unit_vector(int k) {
    Sl2Vec v;
    v[k] = rq(1);
    return v;
}

std::string str(const Sl2Vec& v) { return "(" + v[0].str() + ", " + v[1].str() + ", " + v[2].str() + ")"; }

}  // namespace kmso21

#include "kmso21/cartan.hpp"

#include "json.hpp"

#include <Eigen/Dense>

#include <deque>
#include <sstream>
#include <stdexcept>

namespace kmso21 {

RootVector RootVector::simple(size_t rank, size_t i) {
    RootVector r = zero(rank);
    r.n.at(i) = 1;
    return r;
}

int64_t RootVector::height() const {
    int64_t h = 0;
    for (auto x : n) h += x;
    return h;
}

bool RootVector::is_zero() const {
    for (auto x : n)
        if (x != 0) return false;
    return true;
}

bool RootVector::is_positive() const {
    for (auto x : n)
        if (x < 0) return false;
    return !is_zero();
}

bool RootVector::is_negative() const {
    for (auto x : n)
        if (x > 0) return false;
    return !is_zero();
}

RootVector RootVector::operator+(const RootVector& o) const {
    if (o.rank() != rank()) throw std::invalid_argument("root vectors of different rank");
    RootVector r(*this);
    for (size_t i = 0; i < n.size(); ++i) r.n[i] += o.n[i];
    return r;
}

RootVector RootVector::operator-(const RootVector& o) const { return *this + (-o); }

RootVector RootVector::operator-() const {
    RootVector r(*this);
    for (auto& x : r.n) x = -x;
    return r;
}

RootVector RootVector::operator*(int64_t k) const {
    RootVector r(*this);
    for (auto& x : r.n) x *= k;
    return r;
}

QVec RootVector::as_q() const {
    QVec v;
    for (auto x : n) v.emplace_back(static_cast<long>(x));
    return v;
}

std::string RootVector::str() const {
    std::string s;
    for (size_t i = 0; i < n.size(); ++i) s += (i ? "," : "") + std::to_string(n[i]);
    return s;
}

RootVector parse_root(const std::string& text) {
    RootVector r;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t pos = 0;
        long v = std::stol(tok, &pos);
        if (tok.find_first_not_of(" ", pos) != std::string::npos) throw std::invalid_argument("bad root vector: " + text);
        r.n.push_back(v);
    }
    if (r.n.empty()) throw std::invalid_argument("empty root vector");
    return r;
}

std::string Weight::str() const {
    std::string s;
    for (size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + c[i].get_str();
    return s;
}

std::string WeylWord::str() const {
    if (letters.empty()) return "1";
    std::string s;
    for (int l : letters) s += "w" + std::to_string(l + 1);
    return s;
}

std::string to_string(NormClass c) {
    switch (c) {
    case NormClass::spacelike: return "spacelike";
    case NormClass::lightlike: return "lightlike";
    case NormClass::timelike: return "timelike";
    }
    return "?";
}

CartanMatrix::CartanMatrix(std::vector<std::vector<int64_t>> a) : a_(std::move(a)) {
    size_t r = a_.size();
    if (r == 0) throw std::invalid_argument("Cartan matrix: empty");
    for (size_t i = 0; i < r; ++i) {
        if (a_[i].size() != r) throw std::invalid_argument("Cartan matrix: not square");
        if (a_[i][i] != 2) throw std::invalid_argument("Cartan matrix: diagonal entry a_" + std::to_string(i + 1) + std::to_string(i + 1) + " must be 2");
    }
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) {
            if (i == j) continue;
            if (a_[i][j] > 0) throw std::invalid_argument("Cartan matrix: off-diagonal entries must be <= 0");
            if (a_[i][j] != a_[j][i]) throw std::invalid_argument("Cartan matrix: must be symmetric");
        }
    aq_ = QMatrix(r, r);
    for (size_t i = 0; i < r; ++i)
        for (size_t j = 0; j < r; ++j) aq_(i, j) = Q(static_cast<long>(a_[i][j]));
    try {
        inv_ = kmso21::inverse(aq_);
    } catch (const std::domain_error&) {
        throw std::invalid_argument("Cartan matrix: determinant is zero (affine or degenerate)");
    }
}

CartanMatrix CartanMatrix::parse_flag(const std::string& text) {
    std::vector<std::vector<int64_t>> a;
    std::stringstream rows(text);
    std::string row;
    while (std::getline(rows, row, ';')) {
        std::vector<int64_t> vals;
        std::stringstream cols(row);
        std::string tok;
        while (std::getline(cols, tok, ',')) {
            size_t pos = 0;
            long v;
            try {
                v = std::stol(tok, &pos);
            } catch (const std::exception&) {
                throw std::invalid_argument("Cartan matrix: bad entry '" + tok + "'");
            }
            if (tok.find_first_not_of(" ", pos) != std::string::npos) throw std::invalid_argument("Cartan matrix: bad entry '" + tok + "'");
            vals.push_back(v);
        }
        a.push_back(vals);
    }
    return CartanMatrix(a);
}

CartanMatrix CartanMatrix::from_json_text(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.is_array()) return CartanMatrix(j.get<std::vector<std::vector<int64_t>>>());
    auto a = j.at("a").get<std::vector<std::vector<int64_t>>>();
    if (j.contains("rank") && j.at("rank").get<size_t>() != a.size())
        throw std::invalid_argument("Cartan matrix: rank field disagrees with matrix size");
    return CartanMatrix(a);
}

std::string CartanMatrix::flag_str() const {
    std::string s;
    for (size_t i = 0; i < rank(); ++i) {
        if (i) s += ";";
        for (size_t j = 0; j < rank(); ++j) s += (j ? "," : "") + std::to_string(a_[i][j]);
    }
    return s;
}

Q CartanMatrix::inner_product(const QVec& x, const QVec& y) const {
    if (x.size() != rank() || y.size() != rank()) throw std::invalid_argument("inner_product: rank mismatch");
    Q s = 0;
    for (size_t i = 0; i < rank(); ++i) {
        if (x[i] == 0) continue;
        for (size_t j = 0; j < rank(); ++j)
            if (a_[i][j] != 0 && y[j] != 0) s += x[i] * Q(static_cast<long>(a_[i][j])) * y[j];
    }
    return s;
}

Q CartanMatrix::inner_product(const RootVector& x, const RootVector& y) const {
    return inner_product(x.as_q(), y.as_q());
}

Q CartanMatrix::pair_simple(const QVec& x, size_t i) const {
    Q s = 0;
    for (size_t j = 0; j < rank(); ++j) s += x[j] * Q(static_cast<long>(a_[j][i]));
    return s;
}

int64_t CartanMatrix::pair_simple(const RootVector& x, size_t i) const {
    int64_t s = 0;
    for (size_t j = 0; j < rank(); ++j) s += x.n[j] * a_[j][i];
    return s;
}

NormClass CartanMatrix::classify_norm(const RootVector& b) const {
    Q n = inner_product(b, b);
    if (n > 0) return NormClass::spacelike;
    if (n < 0) return NormClass::timelike;
    return NormClass::lightlike;
}

RootVector CartanMatrix::simple_reflection(size_t i, const RootVector& b) const {
    if (i >= rank()) throw std::out_of_range("simple_reflection: index out of range");
    RootVector r(b);
    r.n[i] -= pair_simple(b, i);
    return r;
}

Weight CartanMatrix::simple_reflection(size_t i, const Weight& w) const {
    if (i >= rank()) throw std::out_of_range("simple_reflection: index out of range");
    Weight r(w);
    r.c[i] -= pair_simple(w.c, i);
    return r;
}

Weight CartanMatrix::apply(const WeylWord& w, const Weight& x) const {
    Weight r = x;
    for (size_t k = w.letters.size(); k-- > 0;) r = simple_reflection(static_cast<size_t>(w.letters[k]), r);
    return r;
}

std::set<RootVector> CartanMatrix::weyl_orbit(const RootVector& b, int64_t max_height) const {
    std::set<RootVector> seen{b};
    std::deque<RootVector> queue{b};
    while (!queue.empty()) {
        RootVector x = queue.front();
        queue.pop_front();
        for (size_t i = 0; i < rank(); ++i) {
            RootVector y = simple_reflection(i, x);
            if (std::abs(y.height()) > max_height || seen.count(y)) continue;
            seen.insert(y);
            queue.push_back(y);
        }
    }
    return seen;
}

std::vector<Weight> CartanMatrix::fundamental_weights() const {
    std::vector<Weight> out;
    for (size_t i = 0; i < rank(); ++i) out.push_back({inv_.column(i)});
    return out;
}

Weight CartanMatrix::weyl_vector() const {
    Weight rho{QVec(rank())};
    for (const auto& l : fundamental_weights()) rho.c = add(rho.c, l.c);
    return rho;
}

QVec CartanMatrix::principal_so21_coefficients() const {
    Eigen::MatrixXd m(rank(), rank());
    for (size_t i = 0; i < rank(); ++i)
        for (size_t j = 0; j < rank(); ++j) m(i, j) = static_cast<double>(a_[i][j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    int negative = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] < 0) ++negative;
    if (negative != 1) throw std::domain_error("principal so(2,1): Cartan matrix is not of Lorentzian signature");
    QVec r(rank());
    for (size_t i = 0; i < rank(); ++i) {
        for (size_t j = 0; j < rank(); ++j) r[i] -= inv_(i, j);
        if (r[i] <= 0) throw std::domain_error("principal so(2,1): coefficient r_" + std::to_string(i + 1) + " = " + r[i].get_str() + " is not positive");
    }
    return r;
}

}  // namespace kmso21

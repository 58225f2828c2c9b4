#include "kmso21/rational.hpp"

#include <stdexcept>

namespace kmso21 {

Q make_q(long n, long d) {
    if (d == 0) throw std::domain_error("zero denominator");
    Q q(n, d);
    q.canonicalize();
    return q;
}

Q parse_q(const std::string& text) {
    std::string t;
    for (char c : text)
        if (c != ' ') t += c;
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    if (t[0] == '+') t = t.substr(1);
    Q q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("bad rational literal: " + text);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + text);
    q.canonicalize();
    return q;
}

std::string to_string(const Q& q) { return q.get_str(); }

bool is_zero(const QVec& v) {
    for (const auto& x : v)
        if (x != 0) return false;
    return true;
}

QVec add(const QVec& a, const QVec& b) {
    QVec r(a);
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

QVec sub(const QVec& a, const QVec& b) {
    QVec r(a);
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    return r;
}

QVec scale(const Q& c, const QVec& v) {
    QVec r(v);
    for (auto& x : r) x *= c;
    return r;
}

Q dot(const QVec& a, const QVec& b) {
    Q s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

mpz_class common_denominator(const QVec& v) {
    mpz_class l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    return l;
}

}  // namespace kmso21

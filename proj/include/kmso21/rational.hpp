#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace kmso21 {

using Q = mpq_class;
using QVec = std::vector<Q>;

Q parse_q(const std::string& text);
// n/d in canonical form (mpq_class(n, d) does not reduce).
Q make_q(long n, long d);
std::string to_string(const Q& q);

bool is_zero(const QVec& v);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const Q& c, const QVec& v);
Q dot(const QVec& a, const QVec& b);

// Least common multiple of denominators, as a positive integer.
mpz_class common_denominator(const QVec& v);

}  // namespace kmso21

#pragma once

#include "kmso21/rational.hpp"

#include "json.hpp"

#include <complex>
#include <map>
#include <string>
#include <vector>

namespace kmso21 {

// Roots of s(s-1) = omega, s = 1/2 +- sqrt(disc)/2 with disc = 1 + 4 omega.
struct SParameter {
    Q disc;
    bool complex() const { return disc < 0; }
    // both roots when disc is a rational square, larger root first
    std::vector<Q> rational_roots() const;
    std::complex<double> root(int sign) const;
    nlohmann::json to_json() const;  // "p/q" if rational, else {"re":"1/2","im2":..} or {"re":"1/2","sq2":..}
    std::string str() const;
};

SParameter s_from_casimir(const Q& omega);

enum class IrrepKind { trivial, finite_dim, discrete_lowest, discrete_highest, principal, complementary };

struct IrrepLabel {
    IrrepKind kind = IrrepKind::trivial;
    long m = 0;  // finite_dim
    Q s;         // discrete
    Q p;         // principal / complementary, normalized to [0,1)
    Q omega;     // principal / complementary

    static IrrepLabel trivial() { return {}; }
    static IrrepLabel finite(long m);
    static IrrepLabel lowest(const Q& s);
    static IrrepLabel highest(const Q& s);
    static IrrepLabel principal_series(const Q& p, const Q& omega);
    static IrrepLabel complementary_series(const Q& p, const Q& omega);

    nlohmann::json to_json(long mult) const;
    std::string str() const;
    bool operator==(const IrrepLabel& o) const = default;
    bool operator<(const IrrepLabel& o) const;
};

std::string to_string(IrrepKind k);
Q casimir_of(const IrrepLabel& l);

enum class ContinuousClass { principal, complementary, not_continuous_unitary };
std::string to_string(ContinuousClass c);
ContinuousClass classify_continuous(const Q& omega);
ContinuousClass classify_continuous(double omega);

Q discrete_norm_sq(const Q& s, long n);
Q principal_norm_sq(const Q& p, const Q& omega, long n);

// Multiset of V(m) as m -> count.
using FiniteMultiset = std::map<long, long>;
FiniteMultiset clebsch_gordan(long m1, long m2);
FiniteMultiset wedge_square(long m);
FiniteMultiset sym_square(long m);
FiniteMultiset decompose_character(std::map<long, long> weights);  // weight (in units of 1/2) -> multiplicity
FiniteMultiset finite_string_decompose(const std::vector<long>& mults);
std::string str(const FiniteMultiset& ms);

}  // namespace kmso21

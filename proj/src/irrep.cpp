#include "kmso21/irrep.hpp"

#include <cmath>
#include <stdexcept>

namespace kmso21 {

namespace {

bool rational_sqrt(const Q& x, Q& out) {
    if (x < 0) return false;
    mpz_class n = x.get_num(), d = x.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    out = Q(rn, rd);
    out.canonicalize();
    return true;
}

Q normalize_p(const Q& p) {
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), p.get_num_mpz_t(), p.get_den_mpz_t());
    Q r = p - Q(fl);
    r.canonicalize();
    return r;
}

}  // namespace

std::vector<Q> SParameter::rational_roots() const {
    Q r;
    if (!rational_sqrt(disc, r)) return {};
    Q half(1, 2);
    return {half + r / 2, half - r / 2};
}

std::complex<double> SParameter::root(int sign) const {
    double d = disc.get_d();
    std::complex<double> sq = d < 0 ? std::complex<double>(0, std::sqrt(-d)) : std::complex<double>(std::sqrt(d), 0);
    return 0.5 + (sign >= 0 ? 1.0 : -1.0) * 0.5 * sq;
}

nlohmann::json SParameter::to_json() const {
    auto rr = rational_roots();
    if (!rr.empty()) return nlohmann::json::array({to_string(rr[0]), to_string(rr[1])});
    if (complex()) return {{"re", "1/2"}, {"im2", to_string(Q(-disc))}};
    return {{"re", "1/2"}, {"sq2", to_string(disc)}};
}

std::string SParameter::str() const {
    auto rr = rational_roots();
    if (!rr.empty()) return to_string(rr[0]) + ", " + to_string(rr[1]);
    if (complex()) return "(1 +- i*sqrt(" + to_string(Q(-disc)) + "))/2";
    return "(1 +- sqrt(" + to_string(disc) + "))/2";
}

SParameter s_from_casimir(const Q& omega) {
    SParameter s;
    s.disc = 1 + 4 * omega;
    s.disc.canonicalize();
    return s;
}

IrrepLabel IrrepLabel::finite(long m) {
    if (m < 0) throw std::invalid_argument("V(m) needs m >= 0");
    IrrepLabel l;
    l.kind = m == 0 ? IrrepKind::trivial : IrrepKind::finite_dim;
    l.m = m;
    return l;
}

IrrepLabel IrrepLabel::lowest(const Q& s) {
    if (s <= 0) throw std::invalid_argument("discrete series needs s > 0, got " + to_string(s));
    IrrepLabel l;
    l.kind = IrrepKind::discrete_lowest;
    l.s = s;
    return l;
}

IrrepLabel IrrepLabel::highest(const Q& s) {
    IrrepLabel l = lowest(s);
    l.kind = IrrepKind::discrete_highest;
    return l;
}

IrrepLabel IrrepLabel::principal_series(const Q& p, const Q& omega) {
    if (omega > Q(-1, 4)) throw std::invalid_argument("principal series needs omega <= -1/4, got " + to_string(omega));
    IrrepLabel l;
    l.kind = IrrepKind::principal;
    l.p = normalize_p(p);
    l.omega = omega;
    return l;
}

IrrepLabel IrrepLabel::complementary_series(const Q& p, const Q& omega) {
    if (omega <= Q(-1, 4) || omega >= 0)
        throw std::invalid_argument("complementary series needs -1/4 < omega < 0, got " + to_string(omega));
    IrrepLabel l;
    l.kind = IrrepKind::complementary;
    l.p = normalize_p(p);
    l.omega = omega;
    return l;
}

std::string to_string(IrrepKind k) {
    switch (k) {
        case IrrepKind::trivial: return "trivial";
        case IrrepKind::finite_dim: return "finite";
        case IrrepKind::discrete_lowest: return "discrete_lowest";
        case IrrepKind::discrete_highest: return "discrete_highest";
        case IrrepKind::principal: return "principal";
        case IrrepKind::complementary: return "complementary";
    }
    return "?";
}

Q casimir_of(const IrrepLabel& l) {
    switch (l.kind) {
        case IrrepKind::trivial: return 0;
        case IrrepKind::finite_dim: return make_q(l.m * (l.m + 2), 4);
        case IrrepKind::discrete_lowest:
        case IrrepKind::discrete_highest: return l.s * (l.s - 1);
        case IrrepKind::principal:
        case IrrepKind::complementary: return l.omega;
    }
    return 0;
}

nlohmann::json IrrepLabel::to_json(long mult) const {
    nlohmann::json j{{"kind", to_string(kind)}, {"mult", mult}};
    switch (kind) {
        case IrrepKind::trivial: break;
        case IrrepKind::finite_dim: j["m"] = m; break;
        case IrrepKind::discrete_lowest:
        case IrrepKind::discrete_highest: j["s"] = to_string(s); break;
        case IrrepKind::principal:
        case IrrepKind::complementary:
            j["p"] = to_string(p);
            j["omega"] = to_string(omega);
            j["s"] = s_from_casimir(omega).to_json();
            break;
    }
    return j;
}

std::string IrrepLabel::str() const {
    switch (kind) {
        case IrrepKind::trivial: return "V(0)";
        case IrrepKind::finite_dim: return "V(" + std::to_string(m) + ")";
        case IrrepKind::discrete_lowest: return "D+(" + to_string(s) + ")";
        case IrrepKind::discrete_highest: return "D-(" + to_string(s) + ")";
        case IrrepKind::principal: return "P(p=" + to_string(p) + ", omega=" + to_string(omega) + ")";
        case IrrepKind::complementary: return "C(p=" + to_string(p) + ", omega=" + to_string(omega) + ")";
    }
    return "?";
}

std::string to_string(ContinuousClass c) {
    switch (c) {
        case ContinuousClass::principal: return "principal";
        case ContinuousClass::complementary: return "complementary";
        case ContinuousClass::not_continuous_unitary: return "not-continuous-unitary";
    }
    return "?";
}

ContinuousClass classify_continuous(const Q& omega) {
    if (omega <= Q(-1, 4)) return ContinuousClass::principal;
    if (omega < 0) return ContinuousClass::complementary;
    return ContinuousClass::not_continuous_unitary;
}

ContinuousClass classify_continuous(double omega) {
    if (omega <= -0.25) return ContinuousClass::principal;
    if (omega < 0) return ContinuousClass::complementary;
    return ContinuousClass::not_continuous_unitary;
}

Q discrete_norm_sq(const Q& s, long n) {
    if (s <= 0) throw std::invalid_argument("discrete_norm_sq: s must be positive");
    if (n < 0) throw std::invalid_argument("discrete_norm_sq: n must be >= 0");
    Q r = 1;
    for (long k = 1; k <= n; ++k) r *= make_q(k, 2) * (2 * s - 1 + k);
    r.canonicalize();
    return r;
}

// n > 0 walks up from p, n < 0 walks down.
Q principal_norm_sq(const Q& p, const Q& omega, long n) {
    long sign = n >= 0 ? 1 : -1;
    long steps = n >= 0 ? n : -n;
    Q r = 1;
    for (long k = 0; k < steps; ++k) {
        Q a = p + sign * k;
        Q b = p + sign * (k + 1);
        Q factor = a * b - omega;
        if (factor <= 0)
            throw std::domain_error("principal_norm_sq: nonpositive factor " + to_string(factor) + " at k = " +
                                    std::to_string(k));
        r *= factor / 2;
    }
    r.canonicalize();
    return r;
}

FiniteMultiset decompose_character(std::map<long, long> weights) {
    FiniteMultiset out;
    while (true) {
        while (!weights.empty() && weights.rbegin()->second == 0) weights.erase(std::prev(weights.end()));
        if (weights.empty()) break;
        auto [top, count] = *weights.rbegin();
        if (count < 0 || top < 0) throw std::domain_error("decompose_character: not a character");
        for (long w = top; w >= -top; w -= 2) {
            weights[w] -= count;
            if (weights[w] < 0) throw std::domain_error("decompose_character: not a character");
        }
        out[top] += count;
        for (auto it = weights.begin(); it != weights.end();) it = it->second == 0 ? weights.erase(it) : std::next(it);
    }
    return out;
}

FiniteMultiset clebsch_gordan(long m1, long m2) {
    if (m1 < 0 || m2 < 0) throw std::invalid_argument("clebsch_gordan: negative label");
    FiniteMultiset out;
    for (long k = 0; k <= std::min(m1, m2); ++k) out[m1 + m2 - 2 * k] += 1;
    return out;
}

FiniteMultiset wedge_square(long m) {
    if (m < 0) throw std::invalid_argument("wedge_square: negative label");
    std::map<long, long> w;
    for (long a = -m; a <= m; a += 2)
        for (long b = a + 2; b <= m; b += 2) w[a + b] += 1;
    return decompose_character(w);
}

FiniteMultiset sym_square(long m) {
    if (m < 0) throw std::invalid_argument("sym_square: negative label");
    std::map<long, long> w;
    for (long a = -m; a <= m; a += 2)
        for (long b = a; b <= m; b += 2) w[a + b] += 1;
    return decompose_character(w);
}

FiniteMultiset finite_string_decompose(const std::vector<long>& mults) {
    size_t n = mults.size();
    for (size_t i = 0; i < n; ++i)
        if (mults[i] != mults[n - 1 - i]) throw std::domain_error("finite_string_decompose: string is not palindromic");
    FiniteMultiset out;
    long prev = 0;
    for (size_t i = 0; i < (n + 1) / 2; ++i) {
        long diff = mults[i] - prev;
        if (diff < 0) throw std::domain_error("finite_string_decompose: multiplicities decrease toward the middle");
        if (diff > 0) out[static_cast<long>(n - 1 - 2 * i)] += diff;
        prev = mults[i];
    }
    return out;
}

std::string str(const FiniteMultiset& ms) {
    std::string s;
    for (auto it = ms.rbegin(); it != ms.rend(); ++it) {
        if (!s.empty()) s += " + ";
        if (it->second != 1) s += std::to_string(it->second) + "*";
        s += "V(" + std::to_string(it->first) + ")";
    }
    return s.empty() ? "0" : s;
}

}  // namespace kmso21

namespace kmso21 {

bool IrrepLabel::operator<(const IrrepLabel& o) const {
    if (kind != o.kind) return kind < o.kind;
    if (m != o.m) return m < o.m;
    if (s != o.s) return s < o.s;
    if (p != o.p) return p < o.p;
    return omega < o.omega;
}

}  // namespace kmso21

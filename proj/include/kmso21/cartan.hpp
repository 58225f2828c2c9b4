#pragma once

#include "kmso21/qmatrix.hpp"
#include "kmso21/rational.hpp"

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

namespace kmso21 {

// Coefficients in the simple-root basis.
struct RootVector {
    std::vector<int64_t> n;

    RootVector() = default;
    explicit RootVector(std::vector<int64_t> c) : n(std::move(c)) {}
    static RootVector zero(size_t rank) { return RootVector(std::vector<int64_t>(rank, 0)); }
    static RootVector simple(size_t rank, size_t i);

    size_t rank() const { return n.size(); }
    int64_t height() const;
    bool is_zero() const;
    bool is_positive() const;  // nonzero with all entries >= 0
    bool is_negative() const;
    bool sign_pure() const { return is_positive() || is_negative(); }

    RootVector operator+(const RootVector& o) const;
    RootVector operator-(const RootVector& o) const;
    RootVector operator-() const;
    RootVector operator*(int64_t k) const;
    auto operator<=>(const RootVector&) const = default;

    QVec as_q() const;
    std::string str() const;  // "1,2"
};

RootVector parse_root(const std::string& text);

struct Weight {
    QVec c;
    auto operator<=>(const Weight& o) const { return c <=> o.c; }
    bool operator==(const Weight& o) const { return c == o.c; }
    static Weight from_root(const RootVector& r) { return {r.as_q()}; }
    std::string str() const;
};

struct WeylWord {
    std::vector<int> letters;  // 0-based simple reflection indices, applied right to left
    bool reduced = true;
    size_t length() const { return letters.size(); }
    std::string str() const;  // "w1w2" style
};

enum class NormClass { spacelike, lightlike, timelike };
std::string to_string(NormClass c);

class CartanMatrix {
public:
    explicit CartanMatrix(std::vector<std::vector<int64_t>> a);

    static CartanMatrix parse_flag(const std::string& text);  // "2,-3;-3,2"
    static CartanMatrix from_json_text(const std::string& text);
    static CartanMatrix fib() { return CartanMatrix({{2, -3}, {-3, 2}}); }

    size_t rank() const { return a_.size(); }
    int64_t operator()(size_t i, size_t j) const { return a_[i][j]; }
    const std::vector<std::vector<int64_t>>& entries() const { return a_; }
    const QMatrix& as_q() const { return aq_; }
    const QMatrix& inverse() const { return inv_; }
    std::string flag_str() const;
    bool operator==(const CartanMatrix& o) const { return a_ == o.a_; }

    Q inner_product(const QVec& x, const QVec& y) const;
    Q inner_product(const RootVector& x, const RootVector& y) const;
    // (x, alpha_i)
    Q pair_simple(const QVec& x, size_t i) const;
    int64_t pair_simple(const RootVector& x, size_t i) const;

    NormClass classify_norm(const RootVector& b) const;

    RootVector simple_reflection(size_t i, const RootVector& b) const;
    Weight simple_reflection(size_t i, const Weight& w) const;
    Weight apply(const WeylWord& w, const Weight& x) const;

    std::set<RootVector> weyl_orbit(const RootVector& b, int64_t max_height) const;

    std::vector<Weight> fundamental_weights() const;
    Weight weyl_vector() const;
    QVec principal_so21_coefficients() const;

private:
    std::vector<std::vector<int64_t>> a_;
    QMatrix aq_, inv_;
};

}  // namespace kmso21

#pragma once

#include "kmso21/algebra.hpp"

#include <random>
#include <vector>

namespace kmso21::testing {

inline const AlgebraContext& fib_ctx() {
    static AlgebraContext ctx(CartanMatrix::fib());
    return ctx;
}

// Positive and negative roots up to the given height, plus the zero weight.
inline std::vector<RootVector> small_weights(const AlgebraContext& ctx, int64_t h) {
    std::vector<RootVector> out{RootVector::zero(ctx.rank())};
    for (const auto& [b, m] : ctx.enumerate_roots(h)) {
        if (!b.is_positive() || m == 0) continue;
        out.push_back(b);
        out.push_back(-b);
    }
    return out;
}

inline Q random_q(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    Q q(num(rng), den(rng));
    q.canonicalize();
    return q;
}

// Random homogeneous element of the given weight, nonzero.
inline LieElement random_element(const AlgebraContext& ctx, const RootVector& w, std::mt19937& rng) {
    size_t d = ctx.dim(w);
    for (;;) {
        LieElement x = ctx.zero();
        for (size_t k = 0; k < d; ++k) {
            Q c = random_q(rng);
            if (c != 0) x = x + c * ctx.basis_element(w, k);
        }
        if (!x.is_zero()) return x;
    }
}

inline LieElement random_element(const AlgebraContext& ctx, const std::vector<RootVector>& weights, std::mt19937& rng) {
    std::uniform_int_distribution<size_t> pick(0, weights.size() - 1);
    return random_element(ctx, weights[pick(rng)], rng);
}

}  // namespace kmso21::testing

#pragma once

#include "kmso21/algebra.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kmso21 {

enum class TripleKind { imaginary, real, principal };
std::string to_string(TripleKind k);

// Unnormalized generators E, F, H plus the rational data that fixes J3, J+ and J-.
// Imaginary: J3 = H/a2, J+- = (E, F)/sqrt(c2), [J+, J-] = -J3.
// Real: same normalization, [J+, J-] = +J3.
// Principal: J3 = sum b_ij h_i, E = sum e_i, F = sum r_i f_i, [E, F] = -J3 (c2 = 1).
struct So21Triple {
    TripleKind kind = TripleKind::imaginary;
    RootVector alpha;  // zero for the principal triple
    std::optional<Word> word;
    LieElement E, F, H;
    Q N;       // (E, E)
    Q alpha2;  // 0 for principal
    Q c2;
    QVec j3;     // Cartan coordinates of J3
    QVec r;      // principal coefficients, empty otherwise
    Q kappa;     // Omega = nu^2 - kappa (EF + FE)
    Q ef_scale;  // ad [E, F] acts on g_beta as ef_scale * nu(beta)

    const AlgebraContext* ctx = nullptr;

    Q nu(const RootVector& beta) const;
    LieElement J3() const;
    // Norm squares of J3 and J+ under the contravariant form (normalized generators).
    Q j3_norm_sq() const;
    Q jplus_norm_sq() const;
    nlohmann::json to_json() const;
    std::string describe() const;
};

So21Triple build_so21(const AlgebraContext& ctx, const RootVector& alpha, const LieElement& E);
So21Triple build_so21(const AlgebraContext& ctx, const RootVector& alpha, const Word& word);
So21Triple build_sl2_real(const AlgebraContext& ctx, const RootVector& alpha, const Word& word);
So21Triple build_sl2_real(const AlgebraContext& ctx, const RootVector& alpha, const LieElement& E);
So21Triple build_principal_so21(const AlgebraContext& ctx);

// Chooses the first basis word of g_alpha and dispatches on the norm of alpha.
So21Triple build_triple_for_root(const AlgebraContext& ctx, const RootVector& alpha);

// A union of weight spaces acted on as one block: a single root space for root triples,
// a full height level for the principal triple.
struct WeightBlock {
    RootVector key;
    std::vector<RootVector> weights;
    std::vector<size_t> offsets;
    size_t dim = 0;
    Q nu;
};

class TripleAction {
public:
    TripleAction(const AlgebraContext& ctx, const So21Triple& t);

    const So21Triple& triple() const { return t_; }
    const AlgebraContext& context() const { return ctx_; }

    RootVector key_of(const RootVector& beta) const;
    RootVector shift() const { return shift_; }
    WeightBlock block(const RootVector& key) const;

    QMatrix raise(const WeightBlock& b) const;  // ad E into block(key + shift)
    QMatrix lower(const WeightBlock& b) const;  // ad F into block(key - shift)
    // Casimir on the block, computed through the lower (or upper) neighbour only.
    QMatrix casimir(const WeightBlock& b, bool through_lower) const;
    QMatrix gram(const WeightBlock& b) const;

    LieElement element(const WeightBlock& b, const QVec& v) const;
    QVec coordinates(const WeightBlock& b, const LieElement& x) const;

private:
    QMatrix ad_block(const LieElement& x, const WeightBlock& from, const WeightBlock& to) const;

    const AlgebraContext& ctx_;
    So21Triple t_;
    RootVector shift_;
};

// Omega(x) for homogeneous x (any weight).
LieElement casimir_action(const So21Triple& t, const LieElement& x);
// Eigenvalue of x under Omega; throws when x is not an eigenvector.
Q casimir_eigenvalue(const So21Triple& t, const LieElement& x);

struct LowestWeightResult {
    RootVector beta;
    Q s;
    std::vector<LieElement> vectors;
    std::string diagnostic;  // nonempty for a head with s <= 0
};

LowestWeightResult lowest_weight_vectors(const So21Triple& t, const RootVector& beta);

// True when x lies in the span of the given homogeneous elements (exact).
bool in_span(const std::vector<LieElement>& basis, const LieElement& x);

}  // namespace kmso21

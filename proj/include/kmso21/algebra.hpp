#pragma once

#include "kmso21/cartan.hpp"
#include "kmso21/peterson.hpp"
#include "kmso21/qmatrix.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <shared_mutex>
#include <string>
#include <vector>

namespace kmso21 {

enum class Exec { serial, parallel };

// Right-normed word e_{i1...in} (positive) or f_{i1...in} (negative); letters are 0-based.
struct Word {
    bool positive = true;
    std::vector<int> letters;

    RootVector weight(size_t rank) const;
    std::string str() const;  // "e[1,2]"
    auto operator<=>(const Word&) const = default;
};

// Basis data for one graded piece. The zero weight holds the Cartan subalgebra.
struct RootSpace {
    RootVector beta;
    std::vector<std::vector<int>> words;          // basis words (positive side)
    std::vector<std::pair<int, size_t>> origin;   // basis k = [e_i, b_p] with b_p in g_{beta - alpha_i}
    QMatrix gram;
    std::vector<QMatrix> down;  // down[j]: ad f_j as a map g_beta -> g_{beta - alpha_j}
    std::vector<QMatrix> up;    // up[i]:   ad e_i as a map g_{beta - alpha_i} -> g_beta
    size_t dim() const { return words.size(); }
};

struct RootSpaceBasis {
    RootVector beta;
    std::vector<Word> words;
    QMatrix gram;
    size_t dim() const { return words.size(); }
};

class AlgebraContext;

class LieElement {
public:
    LieElement() = default;
    explicit LieElement(const AlgebraContext* ctx) : ctx_(ctx) {}

    const AlgebraContext* context() const { return ctx_; }
    // Components keyed by weight; the zero weight holds Cartan coordinates.
    const std::map<RootVector, QVec>& components() const { return comps_; }
    const QVec* component(const RootVector& w) const;
    void add_component(const RootVector& w, const QVec& c);

    bool is_zero() const { return comps_.empty(); }
    // Weight if homogeneous; nullopt for mixed or zero elements.
    std::optional<RootVector> weight() const;

    LieElement operator+(const LieElement& o) const;
    LieElement operator-(const LieElement& o) const;
    LieElement operator-() const;
    LieElement operator*(const Q& c) const;
    bool operator==(const LieElement& o) const;
    bool operator!=(const LieElement& o) const { return !(*this == o); }

    std::string str() const;

private:
    const AlgebraContext* ctx_ = nullptr;
    std::map<RootVector, QVec> comps_;
};

LieElement operator*(const Q& c, const LieElement& x);

class AlgebraContext {
public:
    explicit AlgebraContext(CartanMatrix a, int max_exact_height = 0, Exec exec = Exec::parallel);

    const CartanMatrix& cartan() const { return a_; }
    size_t rank() const { return a_.rank(); }
    int max_exact_height() const { return max_exact_height_; }
    static int default_max_exact_height(size_t rank);

    // Builds all positive root spaces up to height h (level by level).
    void ensure_height(int64_t h) const;
    int64_t built_height() const;

    // Space data for a positive weight (or zero); null for non-roots.
    std::shared_ptr<const RootSpace> space(const RootVector& beta) const;
    size_t dim(const RootVector& w) const;

    RootSpaceBasis root_space_basis(const RootVector& beta) const;
    long root_multiplicity(const RootVector& beta) const;
    long peterson_multiplicity(const RootVector& beta) const;
    std::vector<std::pair<RootVector, long>> enumerate_roots(int64_t max_height) const;

    LieElement e(const std::vector<int>& letters) const;
    LieElement f(const std::vector<int>& letters) const;
    LieElement word(const Word& w) const;
    LieElement h(size_t i) const;
    LieElement cartan_element(const QVec& v) const;
    LieElement basis_element(const RootVector& beta, size_t k) const;
    LieElement zero() const { return LieElement(this); }

    LieElement bracket(const LieElement& x, const LieElement& y) const;
    Q contravariant_form(const LieElement& x, const LieElement& y) const;
    Q invariant_form(const LieElement& x, const LieElement& y) const;
    LieElement chevalley_involution(const LieElement& x) const;
    LieElement sigma(const LieElement& x) const;  // linear e_i <-> f_i, h -> -h

    // Coordinates of a homogeneous element in the basis of its weight space, certified by a zero residual.
    QVec express_in_basis(const LieElement& x, const RootVector& beta) const;

    // Matrix of ad x_k (k-th basis vector of g_beta) as a map g_gamma -> g_{gamma+beta}.
    QMatrix ad_matrix(const RootVector& beta, size_t k, const RootVector& gamma) const;
    // Matrix of ad x for homogeneous x, as a map g_gamma -> g_{gamma + wt x}.
    QMatrix ad_matrix(const LieElement& x, const RootVector& gamma) const;
    QMatrix gram(const RootVector& w) const;

    std::string word_name(const RootVector& beta, size_t k) const;

private:
    void build_level(int64_t h) const;
    std::shared_ptr<RootSpace> build_space(const RootVector& beta) const;
    QMatrix simple_ad(bool positive, size_t i, const RootVector& gamma) const;
    void check_exact(int64_t h) const;

    CartanMatrix a_;
    int max_exact_height_;
    Exec exec_;
    mutable PetersonTable peterson_;
    mutable std::shared_mutex spaces_mu_;
    mutable std::mutex build_mu_;
    mutable std::map<RootVector, std::shared_ptr<const RootSpace>> spaces_;
    mutable int64_t built_ = 0;
    mutable std::mutex ad_mu_;
    mutable std::map<std::tuple<RootVector, size_t, RootVector>, QMatrix> ad_cache_;
};

}  // namespace kmso21

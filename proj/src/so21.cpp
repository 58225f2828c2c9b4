#include "kmso21/so21.hpp"

#include <functional>
#include <stdexcept>

namespace kmso21 {

std::string to_string(TripleKind k) {
    switch (k) {
        case TripleKind::imaginary: return "imaginary";
        case TripleKind::real: return "real";
        case TripleKind::principal: return "principal";
    }
    return "?";
}

Q So21Triple::nu(const RootVector& beta) const {
    Q v = 0;
    for (size_t k = 0; k < j3.size(); ++k) v += j3[k] * ctx->cartan().pair_simple(beta, k);
    v.canonicalize();
    return v;
}

LieElement So21Triple::J3() const { return ctx->cartan_element(j3); }

Q So21Triple::j3_norm_sq() const { return ctx->cartan().inner_product(j3, j3); }

Q So21Triple::jplus_norm_sq() const {
    Q v = N / c2;
    v.canonicalize();
    return v;
}

nlohmann::json So21Triple::to_json() const {
    nlohmann::json j{{"kind", to_string(kind)},
                     {"E", E.str()},
                     {"F", F.str()},
                     {"J3", J3().str()},
                     {"N", to_string(N)},
                     {"c2", to_string(c2)}};
    if (kind != TripleKind::principal) {
        j["alpha"] = alpha.n;
        j["alpha2"] = to_string(alpha2);
        j["H"] = H.str();
    } else {
        nlohmann::json rs = nlohmann::json::array();
        for (const auto& x : r) rs.push_back(to_string(x));
        j["r"] = rs;
    }
    if (word) j["word"] = word->str();
    return j;
}

std::string So21Triple::describe() const {
    std::string s = to_string(kind);
    if (kind != TripleKind::principal) s += " alpha=(" + alpha.str() + ")";
    if (word) s += " word=" + word->str();
    s += " J3=" + J3().str() + " N=" + to_string(N) + " c2=" + to_string(c2);
    return s;
}

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::logic_error("so(2,1) build check failed: " + what);
}

void check_generator(const AlgebraContext& ctx, const RootVector& alpha, const LieElement& E) {
    if (alpha.rank() != ctx.rank()) throw std::invalid_argument("root vector rank mismatch");
    if (!alpha.is_positive()) throw std::invalid_argument("alpha must be a positive root, got (" + alpha.str() + ")");
    if (E.is_zero()) throw std::invalid_argument("generator is zero in g(A)");
    auto w = E.weight();
    if (!w || *w != alpha) throw std::invalid_argument("generator does not have weight (" + alpha.str() + ")");
}

So21Triple root_triple(const AlgebraContext& ctx, const RootVector& alpha, const LieElement& E, TripleKind kind) {
    So21Triple t;
    t.ctx = &ctx;
    t.kind = kind;
    t.alpha = alpha;
    t.E = E;
    t.F = -ctx.chevalley_involution(E);
    t.H = ctx.cartan_element(alpha.as_q());
    t.alpha2 = ctx.cartan().inner_product(alpha, alpha);
    t.N = ctx.contravariant_form(E, E);
    require(t.N > 0, "(E,E) > 0");
    t.c2 = kind == TripleKind::imaginary ? Q(-t.N * t.alpha2) : Q(t.N * t.alpha2);
    t.c2.canonicalize();
    t.j3 = scale(1 / t.alpha2, alpha.as_q());
    t.kappa = kind == TripleKind::imaginary ? Q(1 / t.c2) : Q(-1 / t.c2);
    t.ef_scale = t.N * t.alpha2;
    t.ef_scale.canonicalize();

    require(ctx.bracket(t.E, t.F) == t.H * t.N, "[E,F] = N H");
    require(ctx.bracket(t.H, t.E) == t.E * t.alpha2, "[H,E] = a2 E");
    require(ctx.bracket(t.H, t.F) == t.F * Q(-t.alpha2), "[H,F] = -a2 F");
    LieElement j3 = t.J3();
    LieElement jj = ctx.bracket(t.E, t.F) * Q(1 / t.c2);
    if (kind == TripleKind::imaginary)
        require(jj == -j3, "[J+,J-] = -J3");
    else
        require(jj == j3, "[J+,J-] = +J3");
    require(ctx.bracket(j3, t.E) == t.E, "[J3,J+] = J+");
    require(ctx.bracket(j3, t.F) == -t.F, "[J3,J-] = -J-");
    return t;
}

}  // namespace

So21Triple build_so21(const AlgebraContext& ctx, const RootVector& alpha, const LieElement& E) {
    check_generator(ctx, alpha, E);
    Q a2 = ctx.cartan().inner_product(alpha, alpha);
    if (a2 == 0) throw std::domain_error("lightlike root (" + alpha.str() + "): Heisenberg contraction, not so(2,1)");
    if (a2 > 0) throw std::domain_error("root (" + alpha.str() + ") is real; use the real-root sl(2)");
    return root_triple(ctx, alpha, E, TripleKind::imaginary);
}

So21Triple build_so21(const AlgebraContext& ctx, const RootVector& alpha, const Word& word) {
    if (!word.positive) throw std::invalid_argument("generator word must be an e-word");
    if (word.weight(ctx.rank()) != alpha)
        throw std::invalid_argument("word " + word.str() + " does not have weight (" + alpha.str() + ")");
    auto t = build_so21(ctx, alpha, ctx.word(word));
    t.word = word;
    return t;
}

So21Triple build_sl2_real(const AlgebraContext& ctx, const RootVector& alpha, const LieElement& E) {
    check_generator(ctx, alpha, E);
    Q a2 = ctx.cartan().inner_product(alpha, alpha);
    if (a2 <= 0) throw std::domain_error("root (" + alpha.str() + ") is not real");
    return root_triple(ctx, alpha, E, TripleKind::real);
}

So21Triple build_sl2_real(const AlgebraContext& ctx, const RootVector& alpha, const Word& word) {
    if (!word.positive) throw std::invalid_argument("generator word must be an e-word");
    if (word.weight(ctx.rank()) != alpha)
        throw std::invalid_argument("word " + word.str() + " does not have weight (" + alpha.str() + ")");
    auto t = build_sl2_real(ctx, alpha, ctx.word(word));
    t.word = word;
    return t;
}

So21Triple build_principal_so21(const AlgebraContext& ctx) {
    size_t r = ctx.rank();
    So21Triple t;
    t.ctx = &ctx;
    t.kind = TripleKind::principal;
    t.alpha = RootVector::zero(r);
    t.r = ctx.cartan().principal_so21_coefficients();
    t.j3 = scale(Q(-1), t.r);
    t.E = ctx.zero();
    t.F = ctx.zero();
    for (size_t i = 0; i < r; ++i) {
        t.E = t.E + ctx.e({static_cast<int>(i)});
        t.F = t.F + ctx.f({static_cast<int>(i)}) * t.r[i];
    }
    t.H = t.J3();
    t.N = ctx.contravariant_form(t.E, t.E);
    t.alpha2 = 0;
    t.c2 = 1;
    t.kappa = 1;
    t.ef_scale = -1;
    LieElement j3 = t.J3();
    require(ctx.bracket(t.E, t.F) == -j3, "[J+,J-] = -J3");
    require(ctx.bracket(j3, t.E) == t.E, "[J3,J+] = J+");
    require(ctx.bracket(j3, t.F) == -t.F, "[J3,J-] = -J-");
    return t;
}

So21Triple build_triple_for_root(const AlgebraContext& ctx, const RootVector& alpha) {
    auto basis = ctx.root_space_basis(alpha);
    if (basis.dim() == 0) throw std::invalid_argument("(" + alpha.str() + ") is not a root");
    Q a2 = ctx.cartan().inner_product(alpha, alpha);
    if (a2 > 0) return build_sl2_real(ctx, alpha, basis.words.front());
    return build_so21(ctx, alpha, basis.words.front());
}

// ---------------------------------------------------------------- TripleAction

TripleAction::TripleAction(const AlgebraContext& ctx, const So21Triple& t) : ctx_(ctx), t_(t) {
    shift_ = t.kind == TripleKind::principal ? RootVector::simple(ctx.rank(), 0) : t.alpha;
}

RootVector TripleAction::key_of(const RootVector& beta) const {
    if (t_.kind != TripleKind::principal) return beta;
    return RootVector::simple(ctx_.rank(), 0) * beta.height();
}

WeightBlock TripleAction::block(const RootVector& key) const {
    WeightBlock b;
    b.key = key;
    b.nu = t_.nu(key);
    auto push = [&](const RootVector& w) {
        size_t d = ctx_.dim(w);
        if (d == 0) return;
        b.weights.push_back(w);
        b.offsets.push_back(b.dim);
        b.dim += d;
    };
    if (t_.kind != TripleKind::principal) {
        push(key);
        return b;
    }
    int64_t h = key.height();
    size_t r = ctx_.rank();
    if (h == 0) {
        push(RootVector::zero(r));
        return b;
    }
    int64_t sign = h > 0 ? 1 : -1;
    std::vector<int64_t> cur(r, 0);
    std::function<void(size_t, int64_t)> rec = [&](size_t pos, int64_t left) {
        if (pos + 1 == r) {
            cur[pos] = left;
            push(RootVector(cur) * sign);
            return;
        }
        for (int64_t k = left; k >= 0; --k) {
            cur[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    rec(0, sign * h);
    return b;
}

QMatrix TripleAction::ad_block(const LieElement& x, const WeightBlock& from, const WeightBlock& to) const {
    QMatrix m(to.dim, from.dim);
    for (const auto& [w, c] : x.components()) {
        for (size_t i = 0; i < from.weights.size(); ++i) {
            const RootVector& g = from.weights[i];
            RootVector target = g + w;
            size_t j = 0;
            while (j < to.weights.size() && to.weights[j] != target) ++j;
            if (j == to.weights.size()) {
                if (ctx_.dim(target) != 0) throw std::logic_error("ad_block: target weight outside block");
                continue;
            }
            for (size_t k = 0; k < c.size(); ++k) {
                if (c[k] == 0) continue;
                QMatrix sub = ctx_.ad_matrix(w, k, g);
                for (size_t p = 0; p < sub.rows(); ++p)
                    for (size_t q = 0; q < sub.cols(); ++q)
                        if (sub(p, q) != 0) m(to.offsets[j] + p, from.offsets[i] + q) += c[k] * sub(p, q);
            }
        }
    }
    return m;
}

QMatrix TripleAction::raise(const WeightBlock& b) const { return ad_block(t_.E, b, block(b.key + shift_)); }

QMatrix TripleAction::lower(const WeightBlock& b) const { return ad_block(t_.F, b, block(b.key - shift_)); }

QMatrix TripleAction::casimir(const WeightBlock& b, bool through_lower) const {
    const Q& nu = b.nu;
    QMatrix id = QMatrix::identity(b.dim);
    if (through_lower) {
        WeightBlock lb = block(b.key - shift_);
        QMatrix el = ad_block(t_.E, lb, b) * ad_block(t_.F, b, lb);
        // EF + FE = 2 EF - ef_scale nu
        return id.scaled(nu * nu + t_.kappa * t_.ef_scale * nu) - el.scaled(2 * t_.kappa);
    }
    WeightBlock ub = block(b.key + shift_);
    QMatrix fe = ad_block(t_.F, ub, b) * ad_block(t_.E, b, ub);
    return id.scaled(nu * nu - t_.kappa * t_.ef_scale * nu) - fe.scaled(2 * t_.kappa);
}

QMatrix TripleAction::gram(const WeightBlock& b) const {
    QMatrix g(b.dim, b.dim);
    for (size_t i = 0; i < b.weights.size(); ++i) {
        QMatrix s = ctx_.gram(b.weights[i]);
        for (size_t p = 0; p < s.rows(); ++p)
            for (size_t q = 0; q < s.cols(); ++q) g(b.offsets[i] + p, b.offsets[i] + q) = s(p, q);
    }
    return g;
}

LieElement TripleAction::element(const WeightBlock& b, const QVec& v) const {
    if (v.size() != b.dim) throw std::invalid_argument("element: coordinate size mismatch");
    LieElement x(&ctx_);
    for (size_t i = 0; i < b.weights.size(); ++i) {
        size_t d = ctx_.dim(b.weights[i]);
        QVec part(v.begin() + static_cast<long>(b.offsets[i]), v.begin() + static_cast<long>(b.offsets[i] + d));
        x.add_component(b.weights[i], part);
    }
    return x;
}

QVec TripleAction::coordinates(const WeightBlock& b, const LieElement& x) const {
    QVec v(b.dim);
    for (const auto& [w, c] : x.components()) {
        size_t i = 0;
        while (i < b.weights.size() && b.weights[i] != w) ++i;
        if (i == b.weights.size()) throw std::invalid_argument("coordinates: element has weight outside the block");
        for (size_t k = 0; k < c.size(); ++k) v[b.offsets[i] + k] = c[k];
    }
    return v;
}

// ---------------------------------------------------------------- Casimir, heads

LieElement casimir_action(const So21Triple& t, const LieElement& x) {
    TripleAction act(*t.ctx, t);
    LieElement out(t.ctx);
    for (const auto& [w, c] : x.components()) {
        WeightBlock b = act.block(act.key_of(w));
        LieElement part(t.ctx);
        part.add_component(w, c);
        bool through_lower = b.key.height() >= 0;
        out = out + act.element(b, act.casimir(b, through_lower) * act.coordinates(b, part));
    }
    return out;
}

Q casimir_eigenvalue(const So21Triple& t, const LieElement& x) {
    if (x.is_zero()) throw std::invalid_argument("casimir_eigenvalue: zero element");
    LieElement y = casimir_action(t, x);
    const auto& [w, c] = *x.components().begin();
    size_t k = 0;
    while (c[k] == 0) ++k;
    const QVec* yc = y.component(w);
    Q lambda = yc ? Q((*yc)[k] / c[k]) : Q(0);
    lambda.canonicalize();
    if (y != x * lambda) throw std::domain_error("casimir_eigenvalue: element is not an eigenvector");
    return lambda;
}

LowestWeightResult lowest_weight_vectors(const So21Triple& t, const RootVector& beta) {
    TripleAction act(*t.ctx, t);
    WeightBlock b = act.block(act.key_of(beta));
    if (b.dim == 0) throw std::invalid_argument("(" + beta.str() + ") is not a root");
    LowestWeightResult res;
    res.beta = beta;
    res.s = b.nu;
    QMatrix omega = act.casimir(b, true);
    Q expect = b.nu * (b.nu - 1);
    for (const auto& v : kernel(act.lower(b))) {
        if (omega * v != scale(expect, v)) throw std::logic_error("lowest weight vector fails the Casimir check");
        res.vectors.push_back(act.element(b, v));
    }
    if (!res.vectors.empty() && b.nu <= 0)
        res.diagnostic = "non-unitary head: J- kernel at (" + beta.str() + ") with s = " + to_string(b.nu);
    return res;
}

bool in_span(const std::vector<LieElement>& basis, const LieElement& x) {
    std::map<RootVector, size_t> offset;
    size_t total = 0;
    auto reg = [&](const LieElement& y) {
        for (const auto& [w, c] : y.components())
            if (!offset.count(w)) {
                offset[w] = total;
                total += c.size();
            }
    };
    for (const auto& y : basis) reg(y);
    reg(x);
    auto flat = [&](const LieElement& y) {
        QVec v(total);
        for (const auto& [w, c] : y.components())
            for (size_t k = 0; k < c.size(); ++k) v[offset[w] + k] = c[k];
        return v;
    };
    std::vector<QVec> vecs;
    for (const auto& y : basis) vecs.push_back(flat(y));
    size_t r0 = span_rank(vecs, total);
    vecs.push_back(flat(x));
    return span_rank(vecs, total) == r0;
}

}  // namespace kmso21

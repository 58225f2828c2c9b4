#include "kmso21/decompose.hpp"

#include <Eigen/Dense>
#include <omp.h>

#include <cmath>
#include <exception>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace kmso21 {

namespace {

struct BlockRecord {
    RootVector key;
    Q nu;
    size_t dim = 0;
    std::vector<QVec> ker_lower;
    std::vector<QVec> ker_raise;
    bool raise_known = false;
    std::vector<QVec> trivial;
};

QMatrix stack(const QMatrix& a, const QMatrix& b) {
    QMatrix m(a.rows() + b.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (size_t i = 0; i < b.rows(); ++i)
        for (size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
    return m;
}

Q floor_q(const Q& x) {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Q(f);
}

class Analyzer {
public:
    explicit Analyzer(const So21Triple& t) : t_(t), ctx_(*t.ctx), act_(*t.ctx, t) {}

    const TripleAction& action() const { return act_; }

    // Keys with positive height only; other keys are reached through omega.
    std::shared_ptr<const BlockRecord> record(const RootVector& key) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = cache_.find(key);
            if (it != cache_.end()) return it->second;
        }
        auto rec = std::make_shared<const BlockRecord>(compute(key));
        std::lock_guard<std::mutex> lock(mu_);
        return cache_.emplace(key, rec).first->second;
    }

    long heads_plus(const RootVector& key) {
        Q nu = t_.nu(key);
        if (nu <= 0 || key.is_zero()) return 0;
        if (key.height() > 0) return static_cast<long>(record(key)->ker_lower.size());
        auto r = record(-key);
        if (!r->raise_known) throw std::range_error("raise kernel unavailable at " + (-key).str());
        return static_cast<long>(r->ker_raise.size());
    }

    long heads_minus(const RootVector& key) {
        Q nu = t_.nu(key);
        if (nu >= 0 || key.is_zero()) return 0;
        if (key.height() < 0) return static_cast<long>(record(-key)->ker_lower.size());
        auto r = record(key);
        if (!r->raise_known) throw std::range_error("raise kernel unavailable at " + key.str());
        return static_cast<long>(r->ker_raise.size());
    }

    long trivial(const RootVector& key) {
        if (t_.nu(key) != 0 || key.is_zero()) return 0;
        return static_cast<long>(record(key.height() > 0 ? key : -key)->trivial.size());
    }

    // Basis of the lower kernel (nu > 0) or trivial part (nu = 0) of a possibly negative block.
    std::vector<QVec> excluded(const WeightBlock& b) {
        if (b.key.is_zero()) throw std::logic_error("excluded: zero block");
        bool pos = b.key.height() > 0;
        auto r = record(pos ? b.key : -b.key);
        const std::vector<QVec>* src = nullptr;
        if (b.nu > 0)
            src = pos ? &r->ker_lower : &r->ker_raise;
        else if (b.nu == 0)
            src = &r->trivial;
        else
            return {};
        if (pos) return *src;
        WeightBlock mb = act_.block(-b.key);
        std::vector<QVec> out;
        for (const auto& v : *src) out.push_back(act_.coordinates(b, ctx_.chevalley_involution(act_.element(mb, v))));
        return out;
    }

private:
    BlockRecord compute(const RootVector& key) const {
        BlockRecord rec;
        rec.key = key;
        WeightBlock b = act_.block(key);
        rec.nu = b.nu;
        rec.dim = b.dim;
        if (b.dim == 0) return rec;
        QMatrix lower = act_.lower(b);
        rec.ker_lower = kernel(lower);
        bool need_raise = b.nu <= 0 || key.height() + act_.shift().height() <= ctx_.max_exact_height();
        if (need_raise) {
            QMatrix raise = act_.raise(b);
            rec.ker_raise = kernel(raise);
            rec.raise_known = true;
            if (b.nu == 0) rec.trivial = kernel(stack(lower, raise));
        }
        return rec;
    }

    const So21Triple& t_;
    const AlgebraContext& ctx_;
    TripleAction act_;
    std::mutex mu_;
    std::map<RootVector, std::shared_ptr<const BlockRecord>> cache_;
};

std::vector<std::string> element_strings(const TripleAction& act, const WeightBlock& b, const std::vector<QVec>& vs,
                                         bool mirror) {
    std::vector<std::string> out;
    for (const auto& v : vs) {
        LieElement x = act.element(b, v);
        if (mirror) x = act.context().chevalley_involution(x);
        out.push_back(x.str());
    }
    return out;
}

RootVector witness_of(const TripleAction& act, const WeightBlock& b, const std::vector<QVec>& vs) {
    if (act.triple().kind != TripleKind::principal) return b.key;
    for (size_t i = 0; i < b.weights.size(); ++i) {
        size_t d = act.context().dim(b.weights[i]);
        for (const auto& v : vs)
            for (size_t k = 0; k < d; ++k)
                if (v[b.offsets[i] + k] != 0) return b.weights[i];
    }
    return b.weights.empty() ? b.key : b.weights.front();
}

bool block_nonempty(const So21Triple& t, const AlgebraContext& ctx, const RootVector& key) {
    if (t.kind != TripleKind::principal) return key.is_zero() || ctx.root_multiplicity(key) > 0;
    int64_t h = key.height();
    if (h == 0) return true;
    int64_t a = std::abs(h);
    size_t r = ctx.rank();
    std::vector<int64_t> cur(r, 0);
    bool found = false;
    std::function<void(size_t, int64_t)> rec = [&](size_t pos, int64_t left) {
        if (found) return;
        if (pos + 1 == r) {
            cur[pos] = left;
            if (ctx.root_multiplicity(RootVector(cur)) > 0) found = true;
            return;
        }
        for (int64_t k = left; k >= 0 && !found; --k) {
            cur[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    rec(0, a);
    return found;
}

nlohmann::json root_json(const RootVector& r) { return r.n; }

}  // namespace

int64_t strip_height_bound(const CartanMatrix& a, const RootVector& alpha) {
    QVec rho = a.weyl_vector().c;
    QVec al = alpha.as_q();
    Q ra = a.inner_product(rho, al);
    Q a2 = a.inner_product(al, al);
    if (a2 >= 0) throw std::invalid_argument("strip_height_bound: alpha must be timelike");
    Q perp = a.inner_product(rho, rho) - ra * ra / a2;
    double bound = std::abs(ra.get_d()) + std::sqrt(std::max(0.0, (2.0 - a2.get_d()) * perp.get_d()));
    return static_cast<int64_t>(std::floor(bound + 1e-9));
}

long AdjointReport::principal_count() const {
    long n = 0;
    for (const auto& p : principal) n += p.mult;
    return n;
}

long AdjointReport::discrete_count(const Q& s) const {
    long n = 0;
    for (const auto& d : discrete)
        if (d.s == s) n += d.mult;
    return n;
}

bool AdjointReport::accounting_ok() const {
    for (const auto& row : accounting)
        if (!row.ok()) return false;
    return true;
}

AdjointReport decompose_adjoint(const So21Triple& t, int64_t cutoff, int window, Exec exec) {
    if (t.kind == TripleKind::real) throw std::invalid_argument("decompose_adjoint: real-root triples decompose into finite strings");
    if (window < 2) throw std::invalid_argument("decompose_adjoint: window must be >= 2");
    const AlgebraContext& ctx = *t.ctx;
    if (t.kind == TripleKind::imaginary && cutoff < t.alpha.height())
        throw std::invalid_argument("decompose_adjoint: cutoff below height(alpha)");
    if (cutoff < 1) throw std::invalid_argument("decompose_adjoint: cutoff must be positive");
    if (cutoff > ctx.max_exact_height())
        throw std::range_error("decompose_adjoint: cutoff " + std::to_string(cutoff) + " exceeds max-exact-height " +
                               std::to_string(ctx.max_exact_height()));

    AdjointReport rep;
    rep.triple = t;
    rep.cutoff = cutoff;
    rep.window = window;
    Analyzer an(t);
    const TripleAction& act = an.action();
    size_t r = ctx.rank();
    RootVector zero = RootVector::zero(r);

    std::vector<RootVector> keys;
    if (t.kind == TripleKind::principal) {
        for (int64_t h = 1; h <= cutoff; ++h) keys.push_back(act.shift() * h);
    } else {
        for (const auto& [b, m] : ctx.enumerate_roots(cutoff)) keys.push_back(b);
    }

    // Kernels per positive block, in parallel.
    std::exception_ptr err;
    std::mutex err_mu;
    long nkeys = static_cast<long>(keys.size());
#pragma omp parallel for schedule(dynamic) if (exec == Exec::parallel)
    for (long i = 0; i < nkeys; ++i) {
        try {
            an.record(keys[static_cast<size_t>(i)]);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mu);
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);

    // Discrete heads and non-unitary diagnostics.
    for (const auto& key : keys) {
        auto rec = an.record(key);
        if (rec->dim == 0) continue;
        WeightBlock b = act.block(key);
        if (rec->nu > 0 && !rec->ker_lower.empty()) {
            DiscreteEntry d;
            d.s = rec->nu;
            d.mult = static_cast<long>(rec->ker_lower.size());
            d.witness = witness_of(act, b, rec->ker_lower);
            d.vectors = element_strings(act, b, rec->ker_lower, false);
            rep.discrete.push_back(d);
        }
        if (rec->nu < 0 && !rec->ker_raise.empty()) {
            DiscreteEntry d;
            d.s = -rec->nu;
            d.mult = static_cast<long>(rec->ker_raise.size());
            d.witness = -witness_of(act, b, rec->ker_raise);
            d.mirrored = true;
            d.vectors = element_strings(act, b, rec->ker_raise, true);
            rep.discrete.push_back(d);
        }
        if (rec->nu <= 0 && rec->ker_lower.size() > rec->trivial.size())
            rep.diagnostics.push_back("non-unitary head: J- kernel at (" + key.str() + ") with s = " + to_string(rec->nu));
        size_t top = key == act.shift() ? 1 : 0;  // E itself at the top of the adjoint module
        if (rec->nu >= 0 && rec->raise_known && rec->ker_raise.size() > rec->trivial.size() + top)
            rep.diagnostics.push_back("non-unitary head: J+ kernel at (" + key.str() + ") with J3 = " + to_string(rec->nu));
    }

    // Cartan: J3 is the adjoint marker, the rest splits into singlets and principal pieces.
    WeightBlock b0 = act.block(zero);
    QMatrix l0 = act.lower(b0), r0 = act.raise(b0);
    std::vector<QVec> singlets = kernel(stack(l0, r0));
    rep.singlets = static_cast<long>(singlets.size());
    for (const auto& v : singlets) {
        LieElement x = act.element(b0, v);
        if (!ctx.bracket(t.E, x).is_zero() || !ctx.bracket(t.F, x).is_zero())
            throw std::logic_error("singlet is not annihilated by J+-");
        rep.singlet_vectors.push_back(x.str());
    }
    rep.adjoint_marker = !(l0 * t.j3).empty() && !is_zero(l0 * t.j3);

    // Strip representatives 0 <= nu < 1.
    std::vector<RootVector> strip{zero};
    if (t.kind == TripleKind::imaginary) {
        rep.strip_height_bound = strip_height_bound(ctx.cartan(), t.alpha);
        if (rep.strip_height_bound > ctx.max_exact_height())
            throw std::range_error("decompose_adjoint: strip reaches height " + std::to_string(rep.strip_height_bound) +
                                   " beyond max-exact-height");
        for (const auto& [b, m] : ctx.enumerate_roots(rep.strip_height_bound)) {
            for (const RootVector& mu : {b, -b}) {
                Q nu = t.nu(mu);
                if (nu >= 0 && nu < 1) strip.push_back(mu);
            }
        }
    }

    std::map<RootVector, long> strip_p;
    for (const auto& mu : strip) {
        WeightBlock b = act.block(mu);
        if (b.dim == 0) continue;
        std::vector<QVec> kept;
        if (mu.is_zero()) {
            kept = singlets;
            kept.push_back(t.j3);
        } else {
            kept = an.excluded(b);
        }
        long p = static_cast<long>(b.dim) - static_cast<long>(kept.size());
        strip_p[mu] = p;
        if (p < 0) {
            rep.diagnostics.push_back("negative principal count at (" + mu.str() + ")");
            continue;
        }
        if (p == 0) continue;

        PrincipalEntry base;
        base.p = b.nu;
        base.window = window;
        base.witness = mu;
        for (int k = -window; k <= window; ++k) {
            RootVector w = mu + act.shift() * k;
            if (block_nonempty(t, ctx, w)) {
                if (t.kind != TripleKind::principal) base.string.push_back(w);
            } else {
                base.window_ok = false;
            }
        }
        if (!base.window_ok)
            rep.diagnostics.push_back("structural inconsistency: string through (" + mu.str() +
                                      ") breaks inside the window");

        QMatrix g = act.gram(b);
        QMatrix omega = act.casimir(b, mu.height() >= 0);
        std::vector<QVec> comp;
        if (kept.empty()) {
            for (size_t i = 0; i < b.dim; ++i) {
                QVec e(b.dim);
                e[i] = 1;
                comp.push_back(e);
            }
        } else {
            QMatrix kg = QMatrix::from_columns(kept, b.dim).transpose() * g;
            comp = kernel(kg);
        }
        if (static_cast<long>(comp.size()) != p) {
            rep.diagnostics.push_back("degenerate complement at (" + mu.str() + ")");
            continue;
        }
        QMatrix c = QMatrix::from_columns(comp, b.dim);
        QMatrix ct = c.transpose();
        QMatrix x = inverse(ct * g * c) * (ct * g * omega * c);
        if (!(omega * c == c * x)) {
            rep.diagnostics.push_back("complement at (" + mu.str() + ") is not Casimir invariant");
            continue;
        }
        auto eig = rational_eigenvalues(x);
        if (eig) {
            for (const auto& [lambda, m] : *eig) {
                auto cls = classify_continuous(lambda);
                if (cls == ContinuousClass::principal) {
                    PrincipalEntry e = base;
                    e.omega = lambda;
                    e.mult = static_cast<long>(m);
                    rep.principal.push_back(e);
                } else if (cls == ContinuousClass::complementary) {
                    rep.complementary.push_back({b.nu, lambda.get_d(), to_string(lambda), mu});
                } else {
                    rep.diagnostics.push_back("non-unitary continuous piece at (" + mu.str() + ") with omega = " +
                                              to_string(lambda));
                }
            }
        } else {
            Eigen::MatrixXd xd(x.rows(), x.cols());
            for (size_t i = 0; i < x.rows(); ++i)
                for (size_t j = 0; j < x.cols(); ++j) xd(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x(i, j).get_d();
            Eigen::VectorXcd ev = xd.eigenvalues();
            PrincipalEntry e = base;
            e.charpoly = poly_str(charpoly(x));
            e.block = x.str();
            e.mult = p;
            for (Eigen::Index i = 0; i < ev.size(); ++i) {
                double w = ev[i].real();
                e.omega_numeric.push_back(w);
                auto cls = classify_continuous(w);
                if (cls == ContinuousClass::complementary)
                    rep.complementary.push_back({b.nu, w, "", mu});
                else if (cls == ContinuousClass::not_continuous_unitary)
                    rep.diagnostics.push_back("non-unitary continuous piece at (" + mu.str() + ")");
            }
            rep.principal.push_back(e);
        }
    }

    // Dimension accounting per positive block.
    for (const auto& key : keys) {
        AccountingRow row;
        row.beta = key;
        auto rec = an.record(key);
        row.mult = static_cast<long>(rec->dim);
        try {
            Q nu = rec->nu;
            for (long k = 0; nu - k > 0; ++k) row.discrete += an.heads_plus(key - act.shift() * k);
            for (long k = 0; nu + k < 0; ++k) row.discrete += an.heads_minus(key + act.shift() * k);
            row.trivial = an.trivial(key);
            row.adjoint = key == act.shift() ? 1 : 0;
            RootVector mu = t.kind == TripleKind::principal ? zero : key - act.shift() * floor_q(nu).get_num().get_si();
            auto it = strip_p.find(mu);
            row.principal = it == strip_p.end() ? 0 : std::max(0L, it->second);
        } catch (const std::range_error&) {
            row.checked = false;
        }
        if (!row.ok())
            rep.diagnostics.push_back("dimension accounting fails at (" + key.str() + "): mult " +
                                      std::to_string(row.mult) + " vs " +
                                      std::to_string(row.discrete + row.principal + row.trivial + row.adjoint));
        rep.accounting.push_back(row);
    }
    return rep;
}

nlohmann::json AdjointReport::to_json() const {
    using nlohmann::json;
    json j;
    j["schema_version"] = 1;
    j["triple"] = triple.to_json();
    j["cutoff"] = cutoff;
    j["window"] = window;
    j["singlets"] = singlets;
    j["singlet_vectors"] = singlet_vectors;
    j["adjoint"] = adjoint_marker;
    j["discrete"] = json::array();
    for (const auto& d : discrete)
        j["discrete"].push_back({{"s", to_string(d.s)},
                                 {"mult", d.mult},
                                 {"witness_root", root_json(d.witness)},
                                 {"mirrored", d.mirrored},
                                 {"vectors", d.vectors}});
    j["principal"] = json::array();
    for (const auto& p : principal) {
        json e{{"p", to_string(p.p)},
               {"mult", p.mult},
               {"window", p.window},
               {"window_ok", p.window_ok},
               {"witness_root", root_json(p.witness)}};
        if (p.omega) {
            e["omega"] = to_string(*p.omega);
            e["s"] = s_from_casimir(*p.omega).to_json();
        } else {
            e["omega"] = nullptr;
            e["omega_numeric"] = p.omega_numeric;
            e["charpoly"] = p.charpoly;
            e["block"] = p.block;
        }
        json str = json::array();
        for (const auto& w : p.string) str.push_back(root_json(w));
        e["string"] = str;
        j["principal"].push_back(e);
    }
    j["complementary"] = json::array();
    for (const auto& c : complementary)
        j["complementary"].push_back(
            {{"p", to_string(c.p)}, {"omega", c.omega_exact.empty() ? json(c.omega) : json(c.omega_exact)}, {"witness_root", root_json(c.witness)}});
    long checked = 0, failed = 0, unchecked = 0;
    for (const auto& row : accounting) {
        if (!row.checked)
            ++unchecked;
        else if (!row.ok())
            ++failed;
        else
            ++checked;
    }
    j["accounting"] = {{"ok", checked}, {"failed", failed}, {"unchecked", unchecked}};
    j["strip_height_bound"] = strip_height_bound;
    j["diagnostics"] = diagnostics;
    return j;
}

std::string AdjointReport::to_text() const {
    std::ostringstream os;
    os << "triple: " << triple.describe() << "\n";
    os << "cutoff " << cutoff << ", window " << window << "\n";
    os << "adjoint: " << (adjoint_marker ? "yes" : "no") << ", singlets: " << singlets;
    for (const auto& s : singlet_vectors) os << " [" << s << "]";
    os << "\n";
    for (const auto& d : discrete) {
        os << "D+(" << to_string(d.s) << ") x" << d.mult << " at (" << d.witness.str() << ")" << (d.mirrored ? " (mirrored)" : "");
        for (const auto& v : d.vectors) os << "\n    " << v;
        os << "\n";
    }
    for (const auto& p : principal) {
        os << "P(p=" << to_string(p.p) << ", omega=";
        if (p.omega)
            os << to_string(*p.omega);
        else {
            os << "charpoly " << p.charpoly;
        }
        os << ") x" << p.mult << " through (" << p.witness.str() << "), window " << p.window << (p.window_ok ? "" : " BROKEN")
           << "\n";
    }
    for (const auto& c : complementary)
        os << "COMPLEMENTARY p=" << to_string(c.p) << " omega=" << (c.omega_exact.empty() ? std::to_string(c.omega) : c.omega_exact)
           << " at (" << c.witness.str() << ")\n";
    size_t bad = 0;
    for (const auto& row : accounting)
        if (!row.ok()) ++bad;
    os << "accounting: " << accounting.size() - bad << "/" << accounting.size() << " blocks consistent\n";
    for (const auto& d : diagnostics) os << "diagnostic: " << d << "\n";
    return os.str();
}

// ---------------------------------------------------------------- real roots

std::vector<LieElement> real_root_invariants(const So21Triple& t, const RootVector& beta) {
    TripleAction act(*t.ctx, t);
    WeightBlock b = act.block(beta);
    std::vector<LieElement> out;
    if (b.dim == 0) return out;
    for (const auto& v : kernel(stack(act.lower(b), act.raise(b)))) out.push_back(act.element(b, v));
    return out;
}

RealRootReport decompose_real_root(const So21Triple& t, int64_t cutoff) {
    if (t.kind != TripleKind::real) throw std::invalid_argument("decompose_real_root: triple is not a real-root sl(2)");
    const AlgebraContext& ctx = *t.ctx;
    if (cutoff > ctx.max_exact_height())
        throw std::range_error("decompose_real_root: cutoff exceeds max-exact-height");
    RealRootReport rep;
    rep.triple = t;
    rep.cutoff = cutoff;
    size_t r = ctx.rank();
    RootVector zero = RootVector::zero(r);
    rep.cartan[2] = 1;
    if (r > 1) rep.cartan[0] = static_cast<long>(r) - 1;
    for (const auto& x : real_root_invariants(t, zero)) rep.cartan_singlets.push_back(x.str());

    const RootVector& a = t.alpha;
    Q a2 = t.alpha2;
    std::set<RootVector> seen;
    for (const auto& [beta, m] : ctx.enumerate_roots(cutoff)) {
        if (beta == a) continue;
        RootVector bottom = beta;
        while (ctx.root_multiplicity(bottom - a) > 0 && !(bottom - a).is_zero()) bottom = bottom - a;
        if (seen.count(bottom)) continue;
        seen.insert(bottom);
        RealStringReport s;
        s.base = bottom;
        Q q = 2 * ctx.cartan().inner_product(bottom, a) / a2;
        if (q.get_den() != 1 || q > 0) {
            s.diagnostic = "bottom of string has non-integral or positive alpha pairing";
            s.partial = true;
        }
        int64_t len = q <= 0 ? -q.get_num().get_si() : 0;
        for (int64_t k = 0; k <= len; ++k) {
            RootVector w = bottom + a * k;
            s.roots.push_back(w);
            s.mults.push_back(ctx.root_multiplicity(w));
        }
        if (ctx.root_multiplicity(bottom + a * (len + 1)) > 0) {
            s.partial = true;
            s.diagnostic = "string continues past its reflection image";
        }
        try {
            s.decomposition = finite_string_decompose(s.mults);
        } catch (const std::domain_error& e) {
            s.partial = true;
            s.diagnostic = e.what();
        }
        rep.strings.push_back(s);
    }
    return rep;
}

nlohmann::json RealRootReport::to_json() const {
    using nlohmann::json;
    auto ms = [](const FiniteMultiset& f) {
        json j = json::array();
        for (auto it = f.rbegin(); it != f.rend(); ++it) j.push_back({{"m", it->first}, {"mult", it->second}});
        return j;
    };
    json j{{"schema_version", 1}, {"triple", triple.to_json()}, {"cutoff", cutoff}};
    j["cartan"] = ms(cartan);
    j["cartan_singlets"] = cartan_singlets;
    j["strings"] = json::array();
    for (const auto& s : strings) {
        json roots = json::array();
        for (const auto& w : s.roots) roots.push_back(w.n);
        j["strings"].push_back({{"base", s.base.n},
                                {"roots", roots},
                                {"mults", s.mults},
                                {"decomposition", ms(s.decomposition)},
                                {"text", str(s.decomposition)},
                                {"partial", s.partial},
                                {"diagnostic", s.diagnostic}});
    }
    return j;
}

std::string RealRootReport::to_text() const {
    std::ostringstream os;
    os << "triple: " << triple.describe() << "\n";
    os << "cartan: " << str(cartan);
    for (const auto& s : cartan_singlets) os << " [V(0): " << s << "]";
    os << "\n";
    for (const auto& s : strings) {
        os << "string from (" << s.base.str() << "), mults {";
        for (size_t i = 0; i < s.mults.size(); ++i) os << (i ? "," : "") << s.mults[i];
        os << "}: " << str(s.decomposition);
        if (s.partial) os << " [partial: " << s.diagnostic << "]";
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------- conjecture

std::vector<std::pair<RootVector, Word>> timelike_roots(const AlgebraContext& ctx, int64_t max_height) {
    std::vector<std::pair<RootVector, Word>> out;
    for (const auto& [b, m] : ctx.enumerate_roots(max_height)) {
        if (ctx.cartan().inner_product(b, b) >= 0) continue;
        out.emplace_back(b, ctx.root_space_basis(b).words.front());
    }
    return out;
}

bool ConjectureReport::holds() const {
    for (const auto& i : items)
        if (i.complementary > 0) return false;
    return true;
}

ConjectureReport conjecture_scan(const AlgebraContext& ctx, const std::vector<std::pair<RootVector, Word>>& roots,
                                 int64_t cutoff, int window, Exec exec) {
    ConjectureReport rep;
    rep.cutoff = cutoff;
    rep.window = window;
    for (const auto& [alpha, word] : roots) {
        ConjectureItem item;
        item.alpha = alpha;
        item.word = word.str();
        auto t = build_so21(ctx, alpha, word);
        auto d = decompose_adjoint(t, std::max<int64_t>(cutoff, alpha.height()), window, exec);
        item.principal = d.principal_count();
        item.complementary = static_cast<long>(d.complementary.size());
        for (const auto& p : d.principal) {
            if (p.omega)
                item.omegas.push_back(to_string(*p.omega));
            else
                item.omegas.push_back("charpoly " + p.charpoly);
        }
        for (const auto& c : d.complementary)
            item.diagnostics.push_back("complementary witness (" + c.witness.str() + ") omega " +
                                       (c.omega_exact.empty() ? std::to_string(c.omega) : c.omega_exact));
        item.diagnostics.insert(item.diagnostics.end(), d.diagnostics.begin(), d.diagnostics.end());
        rep.items.push_back(item);
    }
    return rep;
}

nlohmann::json ConjectureReport::to_json() const {
    using nlohmann::json;
    json j{{"schema_version", 1}, {"cutoff", cutoff}, {"window", window}, {"holds", holds()}};
    j["items"] = json::array();
    for (const auto& i : items)
        j["items"].push_back({{"alpha", i.alpha.n},
                              {"word", i.word},
                              {"principal", i.principal},
                              {"complementary", i.complementary},
                              {"omegas", i.omegas},
                              {"diagnostics", i.diagnostics}});
    return j;
}

std::string ConjectureReport::to_text() const {
    std::ostringstream os;
    for (const auto& i : items) {
        os << "alpha=(" << i.alpha.str() << ") " << i.word << ": principal " << i.principal << ", complementary "
           << i.complementary << ", omegas {";
        for (size_t k = 0; k < i.omegas.size(); ++k) os << (k ? ", " : "") << i.omegas[k];
        os << "}\n";
        for (const auto& d : i.diagnostics) os << "  " << d << "\n";
    }
    os << (holds() ? "no complementary series found" : "COMPLEMENTARY SERIES FOUND") << "\n";
    return os.str();
}

}  // namespace kmso21

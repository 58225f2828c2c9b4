#include "kmso21/algebra.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <functional>
#include <tuple>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kmso21 {

RootVector Word::weight(size_t rank) const {
    RootVector r = RootVector::zero(rank);
    for (int l : letters) r.n.at(static_cast<size_t>(l)) += 1;
    return positive ? r : -r;
}

std::string Word::str() const {
    std::string s = positive ? "e[" : "f[";
    for (size_t k = 0; k < letters.size(); ++k) s += (k ? "," : "") + std::to_string(letters[k] + 1);
    return s + "]";
}

// ---------------------------------------------------------------- LieElement

const QVec* LieElement::component(const RootVector& w) const {
    auto it = comps_.find(w);
    return it == comps_.end() ? nullptr : &it->second;
}

void LieElement::add_component(const RootVector& w, const QVec& c) {
    if (kmso21::is_zero(c)) return;
    auto it = comps_.find(w);
    if (it == comps_.end()) {
        QVec v = c;
        for (auto& q : v) q.canonicalize();
        comps_.emplace(w, std::move(v));
        return;
    }
    for (size_t i = 0; i < c.size(); ++i) it->second[i] += c[i];
    if (kmso21::is_zero(it->second)) comps_.erase(it);
}

std::optional<RootVector> LieElement::weight() const {
    if (comps_.size() != 1) return std::nullopt;
    return comps_.begin()->first;
}

LieElement LieElement::operator+(const LieElement& o) const {
    if (ctx_ && o.ctx_ && ctx_ != o.ctx_) throw std::invalid_argument("elements from different algebra contexts");
    LieElement r(*this);
    if (!r.ctx_) r.ctx_ = o.ctx_;
    for (const auto& [w, c] : o.comps_) r.add_component(w, c);
    return r;
}

LieElement LieElement::operator-(const LieElement& o) const { return *this + (-o); }

LieElement LieElement::operator-() const { return *this * Q(-1); }

LieElement LieElement::operator*(const Q& c) const {
    LieElement r(ctx_);
    Q k = c;
    k.canonicalize();
    if (k == 0) return r;
    for (const auto& [w, v] : comps_) r.comps_.emplace(w, scale(k, v));
    return r;
}

bool LieElement::operator==(const LieElement& o) const { return comps_ == o.comps_; }

LieElement operator*(const Q& c, const LieElement& x) { return x * c; }

std::string LieElement::str() const {
    if (comps_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const Q& c, const std::string& name) {
        if (c == 0) return;
        Q a = abs(c);
        if (first) os << (c < 0 ? "-" : "");
        else os << (c < 0 ? " - " : " + ");
        if (a != 1) os << a.get_str() << "*";
        os << name;
        first = false;
    };
    // Positive weights by height, then Cartan, then negative weights.
    std::vector<const std::pair<const RootVector, QVec>*> order;
    for (const auto& kv : comps_) order.push_back(&kv);
    std::stable_sort(order.begin(), order.end(), [](auto* a, auto* b) {
        int64_t ha = a->first.height(), hb = b->first.height();
        if (ha != hb) return ha > hb;
        return a->first > b->first;
    });
    for (auto* kv : order) {
        const auto& [w, c] = *kv;
        for (size_t k = 0; k < c.size(); ++k) {
            std::string name;
            if (w.is_zero()) name = "h" + std::to_string(k + 1);
            else name = ctx_ ? ctx_->word_name(w, k) : ("b" + std::to_string(k));
            emit(c[k], name);
        }
    }
    if (first) return "0";
    return os.str();
}

// ---------------------------------------------------------------- AlgebraContext

int AlgebraContext::default_max_exact_height(size_t rank) {
    if (rank <= 2) return 12;
    if (rank == 3) return 8;
    return 6;
}

AlgebraContext::AlgebraContext(CartanMatrix a, int max_exact_height, Exec exec)
    : a_(std::move(a)),
      max_exact_height_(max_exact_height > 0 ? max_exact_height : default_max_exact_height(a_.rank())),
      exec_(exec),
      peterson_(a_) {}

int64_t AlgebraContext::built_height() const {
    std::shared_lock lock(spaces_mu_);
    return built_;
}

void AlgebraContext::check_exact(int64_t h) const {
    if (h > max_exact_height_)
        throw std::range_error("height " + std::to_string(h) + " exceeds the exact limit (max-exact-height = " +
                               std::to_string(max_exact_height_) + ")");
}

void AlgebraContext::ensure_height(int64_t h) const {
    if (h <= built_height()) return;
    check_exact(h);
    std::lock_guard<std::mutex> lock(build_mu_);
    while (built_height() < h) build_level(built_height() + 1);
}

namespace {

struct Candidate {
    std::vector<int> word;
    int letter;
    size_t tail;
    QVec rep;
};

// Incremental row reduction; rows are kept reduced against earlier pivots.
class Echelon {
public:
    bool insert(QVec v) {
        for (const auto& [p, row] : rows_) {
            if (v[p] == 0) continue;
            Q f = v[p];
            for (size_t i = 0; i < v.size(); ++i)
                if (row[i] != 0) v[i] -= f * row[i];
        }
        for (size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 0) continue;
            Q inv = 1 / v[i];
            for (auto& x : v) x *= inv;
            rows_.emplace_back(i, std::move(v));
            return true;
        }
        return false;
    }

private:
    std::vector<std::pair<size_t, QVec>> rows_;
};

}  // namespace

std::shared_ptr<const RootSpace> AlgebraContext::space(const RootVector& beta) const {
    if (beta.rank() != rank()) throw std::invalid_argument("root vector rank mismatch");
    if (!beta.is_positive()) return nullptr;
    ensure_height(beta.height());
    std::shared_lock lock(spaces_mu_);
    auto it = spaces_.find(beta);
    return it == spaces_.end() ? nullptr : it->second;
}

size_t AlgebraContext::dim(const RootVector& w) const {
    if (w.is_zero()) return rank();
    if (!w.sign_pure()) return 0;
    auto s = space(w.is_positive() ? w : -w);
    return s ? s->dim() : 0;
}

std::shared_ptr<RootSpace> AlgebraContext::build_space(const RootVector& beta) const {
    size_t r = rank();
    auto lookup = [&](const RootVector& w) -> std::shared_ptr<const RootSpace> {
        if (!w.is_positive()) return nullptr;
        std::shared_lock lock(spaces_mu_);
        auto it = spaces_.find(w);
        return it == spaces_.end() ? nullptr : it->second;
    };
    auto sp = std::make_shared<RootSpace>();
    sp->beta = beta;
    sp->down.resize(r);
    sp->up.resize(r);

    if (beta.height() == 1) {
        size_t i = 0;
        while (beta.n[i] == 0) ++i;
        sp->words = {{static_cast<int>(i)}};
        sp->origin = {{static_cast<int>(i), 0}};
        sp->gram = QMatrix::identity(1);
        for (size_t j = 0; j < r; ++j) {
            if (j == i) {
                sp->down[j] = QMatrix(r, 1);
                sp->down[j](i, 0) = -1;
                sp->up[j] = QMatrix(1, r);
                for (size_t k = 0; k < r; ++k) sp->up[j](0, k) = Q(static_cast<long>(-a_(k, i)));
            } else {
                sp->down[j] = QMatrix(0, 1);
                sp->up[j] = QMatrix(1, 0);
            }
        }
        return sp;
    }

    // Target spaces of ad f_j.
    std::vector<std::shared_ptr<const RootSpace>> tgt(r);
    std::vector<size_t> tdim(r, 0), off(r, 0);
    size_t total = 0;
    for (size_t j = 0; j < r; ++j) {
        tgt[j] = lookup(beta - RootVector::simple(r, j));
        tdim[j] = tgt[j] ? tgt[j]->dim() : 0;
        off[j] = total;
        total += tdim[j];
    }

    std::vector<Candidate> cands;
    std::vector<std::shared_ptr<const RootSpace>> src(r);
    for (size_t i = 0; i < r; ++i) {
        RootVector g = beta - RootVector::simple(r, i);
        src[i] = lookup(g);
        if (!src[i]) continue;
        Q gi = a_.pair_simple(g.as_q(), i);
        for (size_t p = 0; p < src[i]->dim(); ++p) {
            Candidate c;
            c.letter = static_cast<int>(i);
            c.tail = p;
            c.word = {static_cast<int>(i)};
            c.word.insert(c.word.end(), src[i]->words[p].begin(), src[i]->words[p].end());
            c.rep.assign(total, Q(0));
            for (size_t j = 0; j < r; ++j) {
                if (tdim[j] == 0) continue;
                // [f_j, [e_i, y]] = -delta_ij (wt y, alpha_i) y + [e_i, [f_j, y]]
                if (j == i) c.rep[off[j] + p] -= gi;
                const QMatrix& dn = src[i]->down[j];
                if (dn.rows() == 0) continue;
                QVec fy = dn.column(p);
                if (kmso21::is_zero(fy)) continue;
                QVec v = tgt[j]->up[i] * fy;
                for (size_t q = 0; q < tdim[j]; ++q) c.rep[off[j] + q] += v[q];
            }
            cands.push_back(std::move(c));
        }
    }
    std::vector<size_t> order(cands.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return cands[a].word < cands[b].word; });

    Echelon ech;
    std::vector<size_t> chosen;
    for (size_t k : order)
        if (ech.insert(cands[k].rep)) chosen.push_back(k);
    size_t d = chosen.size();
    if (d == 0) return nullptr;

    for (size_t k : chosen) {
        sp->words.push_back(cands[k].word);
        sp->origin.emplace_back(cands[k].letter, cands[k].tail);
    }

    // Coordinates of every candidate in the chosen basis.
    QMatrix aug(total, d + cands.size());
    for (size_t c = 0; c < d; ++c)
        for (size_t q = 0; q < total; ++q) aug(q, c) = cands[chosen[c]].rep[q];
    for (size_t c = 0; c < cands.size(); ++c)
        for (size_t q = 0; q < total; ++q) aug(q, d + c) = cands[c].rep[q];
    RowEchelon e = rref(aug);
    if (e.pivots.size() != d || e.pivots.back() != d - 1) throw std::logic_error("root space basis lost rank at " + beta.str());
    for (size_t i = 0; i < r; ++i) sp->up[i] = QMatrix(d, src[i] ? src[i]->dim() : 0);
    for (size_t c = 0; c < cands.size(); ++c)
        for (size_t row = 0; row < d; ++row) sp->up[static_cast<size_t>(cands[c].letter)](row, cands[c].tail) = e.r(row, d + c);

    for (size_t j = 0; j < r; ++j) {
        sp->down[j] = QMatrix(tdim[j], d);
        for (size_t c = 0; c < d; ++c)
            for (size_t q = 0; q < tdim[j]; ++q) sp->down[j](q, c) = cands[chosen[c]].rep[off[j] + q];
    }

    // (e_i b_p, y) = (b_p, [f_i, y])
    sp->gram = QMatrix(d, d);
    for (size_t k = 0; k < d; ++k) {
        auto [i, p] = sp->origin[k];
        const QMatrix& g = src[static_cast<size_t>(i)]->gram;
        for (size_t l = 0; l < d; ++l) {
            Q s = 0;
            for (size_t q = 0; q < g.cols(); ++q)
                if (g(p, q) != 0) s += g(p, q) * sp->down[static_cast<size_t>(i)](q, l);
            sp->gram(k, l) = s;
        }
    }
    if (!sp->gram.is_symmetric()) throw std::logic_error("Gram matrix not symmetric at " + beta.str());
    if (!is_positive_definite(sp->gram)) throw std::logic_error("Gram matrix not positive definite at " + beta.str());
    return sp;
}

void AlgebraContext::build_level(int64_t h) const {
    size_t r = rank();
    std::set<RootVector> targets;
    if (h == 1) {
        for (size_t i = 0; i < r; ++i) targets.insert(RootVector::simple(r, i));
    } else {
        std::shared_lock lock(spaces_mu_);
        for (const auto& [b, s] : spaces_)
            if (b.height() == h - 1)
                for (size_t i = 0; i < r; ++i) targets.insert(b + RootVector::simple(r, i));
    }
    std::vector<RootVector> list(targets.begin(), targets.end());
    std::vector<std::shared_ptr<RootSpace>> built(list.size());
    std::exception_ptr err;
    if (exec_ == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
        for (size_t k = 0; k < list.size(); ++k) {
            try {
                built[k] = build_space(list[k]);
            } catch (...) {
#pragma omp critical
                err = std::current_exception();
            }
        }
    } else {
        for (size_t k = 0; k < list.size(); ++k) built[k] = build_space(list[k]);
    }
    if (err) std::rethrow_exception(err);
    std::unique_lock lock(spaces_mu_);
    for (size_t k = 0; k < list.size(); ++k)
        if (built[k]) spaces_.emplace(list[k], std::move(built[k]));
    built_ = h;
}

RootSpaceBasis AlgebraContext::root_space_basis(const RootVector& beta) const {
    if (!beta.sign_pure()) return {beta, {}, QMatrix(0, 0)};
    RootSpaceBasis b{beta, {}, QMatrix(0, 0)};
    auto s = space(beta.is_positive() ? beta : -beta);
    if (!s) return b;
    for (const auto& w : s->words) b.words.push_back(Word{beta.is_positive(), w});
    b.gram = s->gram;
    return b;
}

long AlgebraContext::root_multiplicity(const RootVector& beta) const {
    if (!beta.sign_pure()) return 0;
    if (std::abs(beta.height()) <= max_exact_height_) return static_cast<long>(dim(beta));
    return peterson_.multiplicity(beta);
}

long AlgebraContext::peterson_multiplicity(const RootVector& beta) const { return peterson_.multiplicity(beta); }

std::vector<std::pair<RootVector, long>> AlgebraContext::enumerate_roots(int64_t max_height) const {
    std::vector<std::pair<RootVector, long>> out;
    if (max_height < 1) return out;
    int64_t exact = std::min<int64_t>(max_height, max_exact_height_);
    ensure_height(exact);
    {
        std::shared_lock lock(spaces_mu_);
        for (const auto& [b, s] : spaces_)
            if (b.height() <= exact) out.emplace_back(b, static_cast<long>(s->dim()));
    }
    if (max_height > exact) {
        peterson_.extend_to_height(max_height);
        size_t r = rank();
        for (int64_t h = exact + 1; h <= max_height; ++h) {
            std::vector<int64_t> cur(r, 0);
            std::function<void(size_t, int64_t)> rec = [&](size_t pos, int64_t left) {
                if (pos + 1 == r) {
                    cur[pos] = left;
                    RootVector b(cur);
                    long m = peterson_.multiplicity(b);
                    if (m > 0) out.emplace_back(b, m);
                    return;
                }
                for (int64_t k = left; k >= 0; --k) {
                    cur[pos] = k;
                    rec(pos + 1, left - k);
                }
            };
            rec(0, h);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.height() != y.first.height()) return x.first.height() < y.first.height();
        return x.first > y.first;
    });
    return out;
}

LieElement AlgebraContext::h(size_t i) const {
    if (i >= rank()) throw std::out_of_range("h index out of range");
    QVec v(rank());
    v[i] = 1;
    return cartan_element(v);
}

LieElement AlgebraContext::cartan_element(const QVec& v) const {
    LieElement x(this);
    x.add_component(RootVector::zero(rank()), v);
    return x;
}

LieElement AlgebraContext::basis_element(const RootVector& beta, size_t k) const {
    size_t d = dim(beta);
    if (k >= d) throw std::out_of_range("basis index out of range at " + beta.str());
    QVec v(d);
    v[k] = 1;
    LieElement x(this);
    x.add_component(beta, v);
    return x;
}

LieElement AlgebraContext::word(const Word& w) const {
    if (w.letters.empty()) throw std::invalid_argument("empty word");
    for (int l : w.letters)
        if (l < 0 || static_cast<size_t>(l) >= rank()) throw std::out_of_range("word letter out of range");
    size_t r = rank();
    ensure_height(static_cast<int64_t>(w.letters.size()));
    // Evaluate from the innermost letter outwards.
    RootVector wt = RootVector::simple(r, static_cast<size_t>(w.letters.back()));
    QVec v{Q(1)};
    for (size_t k = w.letters.size() - 1; k-- > 0;) {
        size_t i = static_cast<size_t>(w.letters[k]);
        RootVector nw = wt + RootVector::simple(r, i);
        auto s = space(nw);
        if (!s) return zero();
        v = s->up[i] * v;
        wt = nw;
        if (kmso21::is_zero(v)) return zero();
    }
    LieElement x(this);
    x.add_component(w.positive ? wt : -wt, v);
    return x;
}

LieElement AlgebraContext::e(const std::vector<int>& letters) const { return word(Word{true, letters}); }
LieElement AlgebraContext::f(const std::vector<int>& letters) const { return word(Word{false, letters}); }

QMatrix AlgebraContext::gram(const RootVector& w) const {
    if (w.is_zero()) return a_.as_q();
    if (!w.sign_pure()) return QMatrix(0, 0);
    auto s = space(w.is_positive() ? w : -w);
    return s ? s->gram : QMatrix(0, 0);
}

std::string AlgebraContext::word_name(const RootVector& beta, size_t k) const {
    if (beta.is_zero()) return "h" + std::to_string(k + 1);
    auto s = space(beta.is_positive() ? beta : -beta);
    if (!s || k >= s->dim()) return "?";
    return Word{beta.is_positive(), s->words[k]}.str();
}

QMatrix AlgebraContext::simple_ad(bool positive, size_t i, const RootVector& gamma) const {
    size_t r = rank();
    RootVector ai = RootVector::simple(r, i);
    RootVector target = positive ? gamma + ai : gamma - ai;
    size_t ds = dim(gamma), dt = dim(target);
    if (ds == 0 || dt == 0) return QMatrix(dt, ds);
    if (gamma.is_zero()) {
        // [e_i, h_k] = -a_ki e_i ; [f_i, h_k] = a_ki f_i
        QMatrix m(1, r);
        for (size_t k = 0; k < r; ++k) m(0, k) = Q(static_cast<long>(positive ? -a_(k, i) : a_(k, i)));
        return m;
    }
    bool same_side = positive == gamma.is_positive();
    RootVector g = gamma.is_positive() ? gamma : -gamma;
    if (same_side) {
        // raising away from zero: up map of the target
        auto s = space(positive ? target : -target);
        return s->up[i];
    }
    // towards zero: down map of the source
    auto s = space(g);
    QMatrix m = s->down[i];
    if (!gamma.is_positive() && target.is_zero()) m = m.scaled(Q(-1));  // sigma flips the Cartan
    return m;
}

QMatrix AlgebraContext::ad_matrix(const RootVector& beta, size_t k, const RootVector& gamma) const {
    if (beta.is_zero() || !beta.sign_pure()) throw std::invalid_argument("ad_matrix: beta must be a nonzero root");
    ensure_height(std::max({std::abs(beta.height()), std::abs(gamma.height()), std::abs((gamma + beta).height())}));
    auto key = std::make_tuple(beta, k, gamma);
    {
        std::lock_guard<std::mutex> lock(ad_mu_);
        auto it = ad_cache_.find(key);
        if (it != ad_cache_.end()) return it->second;
    }
    QMatrix m;
    size_t ds = dim(gamma), dt = dim(gamma + beta);
    if (ds == 0 || dt == 0) {
        m = QMatrix(dt, ds);
    } else if (beta.is_negative()) {
        QMatrix inner = ad_matrix(-beta, k, -gamma);
        m = inner;
        if (gamma.is_zero()) m = m.scaled(Q(-1));
        if ((gamma + beta).is_zero()) m = m.scaled(Q(-1));
    } else if (beta.height() == 1) {
        size_t i = 0;
        while (beta.n[i] == 0) ++i;
        m = simple_ad(true, i, gamma);
    } else {
        auto s = space(beta);
        auto [i, p] = s->origin[k];
        size_t ii = static_cast<size_t>(i);
        RootVector ai = RootVector::simple(rank(), ii);
        RootVector tail = beta - ai;
        // ad [e_i, u] = ad e_i ad u - ad u ad e_i
        m = simple_ad(true, ii, gamma + tail) * ad_matrix(tail, p, gamma) - ad_matrix(tail, p, gamma + ai) * simple_ad(true, ii, gamma);
    }
    std::lock_guard<std::mutex> lock(ad_mu_);
    ad_cache_.emplace(key, m);
    return m;
}

QMatrix AlgebraContext::ad_matrix(const LieElement& x, const RootVector& gamma) const {
    auto w = x.weight();
    size_t ds = dim(gamma);
    if (x.is_zero()) return QMatrix(ds, ds);
    if (!w) throw std::invalid_argument("ad_matrix: element is not homogeneous");
    const QVec& c = *x.component(*w);
    if (w->is_zero()) {
        Q ev = 0;
        for (size_t k = 0; k < rank(); ++k) ev += c[k] * a_.pair_simple(gamma.as_q(), k);
        if (gamma.is_zero()) ev = 0;
        return QMatrix::identity(ds).scaled(ev);
    }
    QMatrix m(dim(gamma + *w), ds);
    for (size_t k = 0; k < c.size(); ++k)
        if (c[k] != 0) m = m + ad_matrix(*w, k, gamma).scaled(c[k]);
    return m;
}

LieElement AlgebraContext::bracket(const LieElement& x, const LieElement& y) const {
    if ((x.context() && x.context() != this) || (y.context() && y.context() != this))
        throw std::invalid_argument("bracket: context mismatch");
    LieElement out(this);
    for (const auto& [bw, bc] : x.components()) {
        for (const auto& [gw, gc] : y.components()) {
            if (bw.is_zero()) {
                if (gw.is_zero()) continue;
                Q ev = 0;
                for (size_t k = 0; k < rank(); ++k) ev += bc[k] * a_.pair_simple(gw.as_q(), k);
                out.add_component(gw, scale(ev, gc));
                continue;
            }
            RootVector tw = bw + gw;
            if (dim(tw) == 0) continue;
            QVec acc(dim(tw));
            for (size_t k = 0; k < bc.size(); ++k) {
                if (bc[k] == 0) continue;
                QVec v = ad_matrix(bw, k, gw) * gc;
                for (size_t q = 0; q < v.size(); ++q) acc[q] += bc[k] * v[q];
            }
            out.add_component(tw, acc);
        }
    }
    return out;
}

Q AlgebraContext::contravariant_form(const LieElement& x, const LieElement& y) const {
    if ((x.context() && x.context() != this) || (y.context() && y.context() != this))
        throw std::invalid_argument("contravariant_form: context mismatch");
    Q s = 0;
    for (const auto& [w, c] : x.components()) {
        const QVec* d = y.component(w);
        if (!d) continue;
        QMatrix g = gram(w);
        s += dot(c, g * *d);
    }
    return s;
}

Q AlgebraContext::invariant_form(const LieElement& x, const LieElement& y) const {
    return -contravariant_form(x, chevalley_involution(y));
}

LieElement AlgebraContext::sigma(const LieElement& x) const {
    LieElement out(this);
    for (const auto& [w, c] : x.components()) out.add_component(-w, w.is_zero() ? scale(Q(-1), c) : c);
    return out;
}

LieElement AlgebraContext::chevalley_involution(const LieElement& x) const {
    LieElement out(this);
    for (const auto& [w, c] : x.components()) {
        bool odd = std::abs(w.height()) % 2 == 1;
        out.add_component(-w, (w.is_zero() || odd) ? scale(Q(-1), c) : c);
    }
    return out;
}

QVec AlgebraContext::express_in_basis(const LieElement& x, const RootVector& beta) const {
    size_t d = dim(beta);
    if (x.is_zero()) return QVec(d);
    auto w = x.weight();
    if (!w || *w != beta) throw std::invalid_argument("express_in_basis: element is not of weight " + beta.str());
    QMatrix g = gram(beta);
    QVec rhs = g * *x.component(beta);
    auto c = solve(g, rhs);
    if (!c) throw std::logic_error("express_in_basis: Gram system inconsistent");
    LieElement back(this);
    back.add_component(beta, *c);
    LieElement diff = x - back;
    if (contravariant_form(diff, diff) != 0) throw std::logic_error("express_in_basis: nonzero residual");
    return *c;
}

}  // namespace kmso21

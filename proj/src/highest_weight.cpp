#include "kmso21/highest_weight.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace kmso21 {

namespace {

RootVector to_root(const QVec& v) {
    std::vector<int64_t> n;
    for (const auto& x : v) {
        if (x.get_den() != 1) throw std::logic_error("weight difference is not in the root lattice");
        n.push_back(x.get_num().get_si());
    }
    return RootVector(n);
}

bool nonnegative(const RootVector& k) {
    return std::all_of(k.n.begin(), k.n.end(), [](int64_t x) { return x >= 0; });
}

// All k in N^r with height <= h, ordered by height.
std::vector<RootVector> offsets_up_to(size_t rank, int64_t h) {
    std::vector<RootVector> out;
    for (int64_t d = 0; d <= h; ++d) {
        std::vector<int64_t> c(rank, 0);
        // compositions of d into rank parts
        std::function<void(size_t, int64_t)> rec = [&](size_t i, int64_t left) {
            if (i + 1 == rank) {
                c[i] = left;
                out.emplace_back(c);
                return;
            }
            for (int64_t x = left; x >= 0; --x) {
                c[i] = x;
                rec(i + 1, left - x);
            }
        };
        if (rank == 0) break;
        rec(0, d);
    }
    return out;
}

struct WeylElement {
    WeylWord word;
    Weight w_rho;
};

// BFS over reduced words, keyed by w(rho). Stops expanding once the predicate fails.
template <class Keep>
std::vector<WeylElement> weyl_bfs(const CartanMatrix& a, Keep keep) {
    Weight rho = a.weyl_vector();
    std::vector<WeylElement> out{{WeylWord{}, rho}};
    std::set<Weight> seen{rho};
    std::deque<size_t> queue{0};
    while (!queue.empty()) {
        WeylElement cur = out[queue.front()];
        queue.pop_front();
        for (size_t i = 0; i < a.rank(); ++i) {
            if (a.pair_simple(cur.w_rho.c, i) <= 0) continue;
            WeylElement next{cur.word, a.simple_reflection(i, cur.w_rho)};
            next.word.letters.insert(next.word.letters.begin(), static_cast<int>(i));
            if (seen.count(next.w_rho)) continue;
            if (!keep(next, rho)) continue;
            seen.insert(next.w_rho);
            out.push_back(next);
            queue.push_back(out.size() - 1);
        }
    }
    return out;
}

std::vector<RhoShift> to_shifts(const std::vector<WeylElement>& els, const Weight& rho) {
    std::vector<RhoShift> out;
    for (const auto& e : els) {
        if (e.word.length() == 0) continue;
        out.push_back({e.word, to_root(sub(rho.c, e.w_rho.c))});
    }
    std::stable_sort(out.begin(), out.end(), [](const RhoShift& x, const RhoShift& y) {
        if (x.word.length() != y.word.length()) return x.word.length() < y.word.length();
        return x.shift.height() < y.shift.height();
    });
    return out;
}

}  // namespace

std::vector<RhoShift> rho_shifts(const CartanMatrix& a, size_t max_length) {
    auto els = weyl_bfs(a, [&](const WeylElement& e, const Weight&) { return e.word.length() <= max_length; });
    return to_shifts(els, a.weyl_vector());
}

std::vector<RhoShift> rho_shifts_by_height(const CartanMatrix& a, int64_t max_height) {
    auto els = weyl_bfs(a, [&](const WeylElement& e, const Weight& rho) { return to_root(sub(rho.c, e.w_rho.c)).height() <= max_height; });
    return to_shifts(els, a.weyl_vector());
}

QVec HighestWeight::root_coords(const CartanMatrix& a) const {
    if (labels.size() != a.rank()) throw std::invalid_argument("highest weight rank mismatch");
    QVec v(a.rank());
    auto fund = a.fundamental_weights();
    for (size_t i = 0; i < labels.size(); ++i) v = add(v, scale(Q(labels[i]), fund[i].c));
    return v;
}

std::string HighestWeight::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < labels.size(); ++i) os << (i ? "," : "") << labels[i];
    os << "]";
    return os.str();
}

HighestWeight parse_highest_weight(const std::string& text, size_t rank) {
    HighestWeight hw{std::vector<int64_t>(rank, 0)};
    if (text == "0") return hw;
    if (text == "rho") {
        std::fill(hw.labels.begin(), hw.labels.end(), 1);
        return hw;
    }
    if (text.rfind("fund", 0) == 0) {
        size_t i = 0;
        try {
            i = std::stoul(text.substr(4));
        } catch (const std::exception&) {
            throw std::invalid_argument("bad highest weight: " + text);
        }
        if (i < 1 || i > rank) throw std::invalid_argument("fundamental weight index out of range: " + text);
        hw.labels[i - 1] = 1;
        return hw;
    }
    RootVector r;
    try {
        r = parse_root(text);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad highest weight: " + text);
    }
    if (r.rank() != rank) throw std::invalid_argument("highest weight has wrong number of labels: " + text);
    for (auto x : r.n)
        if (x < 0) throw std::invalid_argument("highest weight must be dominant: " + text);
    hw.labels = r.n;
    return hw;
}

WeightTable::WeightTable(const CartanMatrix& a, HighestWeight lambda, int64_t max_height)
    : a_(a), lambda_(std::move(lambda)), max_height_(max_height) {
    if (max_height < 0) throw std::invalid_argument("weight table height must be nonnegative");
    for (auto x : lambda_.labels)
        if (x < 0) throw std::invalid_argument("highest weight must be dominant");
    auto shifts = rho_shifts_by_height(a, max_height);
    // signed dot-orbit offsets (lambda+rho) - w(lambda+rho)
    QVec lr = add(lambda_.root_coords(a), a.weyl_vector().c);
    std::map<RootVector, long> dot;
    dot[RootVector::zero(a.rank())] += 1;
    for (const auto& s : shifts) {
        RootVector k = to_root(sub(lr, a.apply(s.word, Weight{lr}).c));
        if (k.height() <= max_height) dot[k] += s.sign();
    }
    for (const auto& k : offsets_up_to(a.rank(), max_height)) {
        long m = 0;
        auto it = dot.find(k);
        if (it != dot.end()) m += it->second;
        for (const auto& s : shifts) {
            RootVector j = k - s.shift;
            if (!nonnegative(j)) continue;
            auto jt = mult_.find(j);
            if (jt != mult_.end()) m += -s.sign() * jt->second;
        }
        if (m < 0) throw std::logic_error("negative weight multiplicity at offset " + k.str());
        if (m != 0) mult_[k] = m;
    }
}

bool WeightTable::in_range(const RootVector& offset) const { return nonnegative(offset) && offset.height() <= max_height_; }

long WeightTable::mult(const RootVector& offset) const {
    auto it = mult_.find(offset);
    return it == mult_.end() ? 0 : it->second;
}

std::vector<RootVector> WeightTable::weyl_orbit_offsets() const {
    QVec l = lambda_.root_coords(a_);
    std::set<Weight> seen{Weight{l}};
    std::deque<Weight> queue{Weight{l}};
    std::vector<RootVector> out;
    while (!queue.empty()) {
        Weight w = queue.front();
        queue.pop_front();
        RootVector k = to_root(sub(l, w.c));
        if (k.height() > max_height_) continue;
        out.push_back(k);
        for (size_t i = 0; i < a_.rank(); ++i) {
            if (a_.pair_simple(w.c, i) <= 0) continue;
            Weight n = a_.simple_reflection(i, w);
            if (seen.insert(n).second) queue.push_back(n);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::string WeightTable::to_csv() const {
    std::ostringstream os;
    for (size_t i = 0; i < a_.rank(); ++i) os << "k" << i + 1 << ",";
    os << "height,mult\n";
    for (const auto& [k, m] : mult_) {
        for (auto x : k.n) os << x << ",";
        os << k.height() << "," << m << "\n";
    }
    return os.str();
}

nlohmann::json WeightTable::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["cartan"] = a_.entries();
    j["lambda"] = lambda_.labels;
    j["max_height"] = max_height_;
    j["weights"] = nlohmann::json::array();
    for (const auto& [k, m] : mult_) j["weights"].push_back({{"offset", k.n}, {"mult", m}});
    return j;
}

std::string WeightTable::to_svg(const std::string& title) const {
    // rank 2 lattice picture; other ranks fall back to height on the x axis
    const int cell = 28, pad = 40;
    int64_t h = max_height_;
    int width = static_cast<int>(2 * pad + cell * (h + 1));
    int height = width + 20;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" font-family=\"monospace\" font-size=\"10\">\n";
    os << "<text x=\"" << pad << "\" y=\"16\">" << title << "</text>\n";
    for (const auto& [k, m] : mult_) {
        int64_t x = k.n.empty() ? 0 : k.n[0];
        int64_t y = a_.rank() >= 2 ? k.n[1] : k.height();
        if (a_.rank() > 2) x = k.height();
        int cx = pad + static_cast<int>(x) * cell, cy = pad + 20 + static_cast<int>(y) * cell;
        os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << cell / 2 - 2 << "\" fill=\"none\" stroke=\"#446\"/>";
        os << "<text x=\"" << cx << "\" y=\"" << cy + 3 << "\" text-anchor=\"middle\">" << m << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

FreudenthalOracle::FreudenthalOracle(const AlgebraContext& ctx, HighestWeight lambda, int64_t max_height) {
    const auto& a = ctx.cartan();
    QVec l = lambda.root_coords(a);
    QVec lr = add(l, a.weyl_vector().c);
    Q top = a.inner_product(lr, lr);
    auto roots = ctx.enumerate_roots(max_height);
    for (const auto& k : offsets_up_to(a.rank(), max_height)) {
        if (k.is_zero()) {
            mult_[k] = 1;
            continue;
        }
        QVec mu = sub(l, k.as_q());
        QVec mr = add(mu, a.weyl_vector().c);
        Q lhs = top - a.inner_product(mr, mr);
        if (lhs == 0) {
            // degenerate: fall back on Weyl invariance through a higher weight
            std::optional<long> m;
            for (size_t i = 0; i < a.rank() && !m; ++i) {
                Q p = a.pair_simple(mu, i);
                if (p >= 0) continue;
                RootVector j = k;
                j.n[i] += p.get_num().get_si();
                if (!nonnegative(j))
                    m = 0;
                else
                    m = mult_.at(j);
            }
            mult_[k] = m;
            continue;
        }
        Q rhs = 0;
        bool known = true;
        for (const auto& [beta, mb] : roots) {
            if (!beta.is_positive() || mb == 0) continue;
            for (int64_t n = 1;; ++n) {
                RootVector j = k - beta * n;
                if (!nonnegative(j)) break;
                auto it = mult_.find(j);
                if (!it->second) {
                    known = false;
                    break;
                }
                if (*it->second == 0) continue;
                QVec up = add(mu, (beta * n).as_q());
                rhs += 2 * Q(mb) * a.inner_product(up, beta.as_q()) * Q(*it->second);
            }
            if (!known) break;
        }
        if (!known) {
            mult_[k] = std::nullopt;
            continue;
        }
        Q m = rhs / lhs;
        m.canonicalize();
        if (m.get_den() != 1) throw std::logic_error("non-integral Freudenthal multiplicity at " + k.str());
        mult_[k] = m.get_num().get_si();
    }
}

std::optional<long> FreudenthalOracle::mult(const RootVector& offset) const {
    auto it = mult_.find(offset);
    if (it == mult_.end()) return std::nullopt;
    return it->second;
}

Q casimir_on_hw(const CartanMatrix& a, const HighestWeight& lambda, const So21Triple& t) {
    if (t.kind == TripleKind::real) throw std::domain_error("casimir_on_hw: real root triple");
    QVec l = lambda.root_coords(a);
    Q nu = 0;
    for (size_t k = 0; k < t.j3.size(); ++k) nu += t.j3[k] * a.pair_simple(l, k);
    Q om = nu * nu - t.kappa * t.ef_scale * nu;
    om.canonicalize();
    return om;
}

HWDecomposition decompose_hw(const AlgebraContext& ctx, const HighestWeight& lambda, const So21Triple& t, int depth) {
    if (depth < 1) throw std::invalid_argument("depth must be positive");
    int64_t step = t.kind == TripleKind::principal ? 1 : t.alpha.height();
    WeightTable table(ctx.cartan(), lambda, depth * step);
    return decompose_hw(table, t, depth);
}

HWDecomposition decompose_hw(const WeightTable& table, const So21Triple& t, int depth) {
    if (t.kind == TripleKind::real) throw std::domain_error("decompose_hw: real root triple gives finite-dimensional strings");
    const auto& a = t.ctx->cartan();
    HWDecomposition out{table.lambda(), t, depth, {}, {}, {}, 0, 0};
    QVec l = table.lambda().root_coords(a);
    auto nu_at = [&](const RootVector& k) {
        QVec mu = sub(l, k.as_q());
        Q v = 0;
        for (size_t i = 0; i < t.j3.size(); ++i) v += t.j3[i] * a.pair_simple(mu, i);
        v.canonicalize();
        return v;
    };
    out.head_s = -nu_at(RootVector::zero(a.rank()));
    out.head_omega = casimir_on_hw(a, table.lambda(), t);

    auto finish = [&](HWColumn& c) {
        long prev = 0;
        for (size_t n = 0; n < c.mults.size(); ++n) {
            long d = c.mults[n] - prev;
            prev = c.mults[n];
            c.counts.push_back(d);
            Q s = c.top_s + Q(static_cast<long>(n));
            s.canonicalize();
            if (d < 0) {
                out.diagnostics.push_back("negative difference " + std::to_string(d) + " in column (" + c.top.str() + ") at step " +
                                          std::to_string(n));
            } else if (d > 0) {
                out.counts[s] += d;
            }
        }
        out.columns.push_back(std::move(c));
    };

    if (t.kind == TripleKind::principal) {
        std::vector<long> level(static_cast<size_t>(table.max_height()) + 1, 0);
        for (const auto& [k, m] : table.entries()) level[static_cast<size_t>(k.height())] += m;
        HWColumn c{RootVector::zero(a.rank()), out.head_s, {}, {}};
        for (int64_t n = 0; n <= std::min<int64_t>(depth, table.max_height()); ++n) c.mults.push_back(level[static_cast<size_t>(n)]);
        finish(c);
        return out;
    }

    const RootVector& alpha = t.alpha;
    int64_t limit = depth * alpha.height();
    if (limit > table.max_height()) throw std::range_error("weight table too shallow for the requested depth");
    for (const auto& [k, m] : table.entries()) {
        RootVector above = k - alpha;
        if (nonnegative(above) && table.mult(above) > 0) continue;
        HWColumn c{k, -nu_at(k), {}, {}};
        for (RootVector j = k; j.height() <= limit; j = j + alpha) c.mults.push_back(table.mult(j));
        if (c.mults.size() < 2) continue;  // too close to the cutoff to say anything
        finish(c);
    }
    return out;
}

const HWColumn* HWDecomposition::column(const RootVector& top) const {
    for (const auto& c : columns)
        if (c.top == top) return &c;
    return nullptr;
}

nlohmann::json HWDecomposition::to_json() const {
    using nlohmann::json;
    json j;
    j["schema_version"] = 1;
    j["lambda"] = lambda.labels;
    j["triple"] = triple.to_json();
    j["depth"] = depth;
    j["head"] = {{"s", to_string(head_s)}, {"omega", to_string(head_omega)}};
    j["counts"] = json::array();
    for (const auto& [s, n] : counts) j["counts"].push_back({{"s", to_string(s)}, {"mult", n}});
    j["columns"] = json::array();
    for (const auto& c : columns)
        j["columns"].push_back({{"top", c.top.n}, {"top_s", to_string(c.top_s)}, {"mults", c.mults}, {"counts", c.counts}});
    j["diagnostics"] = diagnostics;
    return j;
}

std::string HWDecomposition::to_text() const {
    std::ostringstream os;
    os << "lambda " << lambda.str() << " under " << triple.describe() << ", depth " << depth << "\n";
    os << "head: D-(" << to_string(head_s) << "), omega " << to_string(head_omega) << "\n";
    for (const auto& c : columns) {
        os << "column (" << c.top.str() << ") s0=" << to_string(c.top_s) << " mults";
        for (auto m : c.mults) os << " " << m;
        os << " | counts";
        for (auto m : c.counts) os << " " << m;
        os << "\n";
    }
    os << "totals:";
    for (const auto& [s, n] : counts) os << " D-(" << to_string(s) << ")x" << n;
    os << "\n";
    for (const auto& d : diagnostics) os << "warning: " << d << "\n";
    return os.str();
}

}  // namespace kmso21

// One line per acceptance criterion. Exit status 1 if any criterion fails.
#include "kmso21/decompose.hpp"
#include "kmso21/expr.hpp"
#include "kmso21/highest_weight.hpp"
#include "kmso21/unirep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

using namespace kmso21;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Report {
public:
    void run(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (dt > budget_s) {
            o.pass = false;
            o.detail += " (over time budget)";
        }
        if (!o.pass) ++failed_;
        std::cout << "criterion " << std::setw(2) << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << "  [" << std::fixed
                  << std::setprecision(2) << dt << " s / " << std::setprecision(0) << budget_s << " s]  " << o.detail << std::endl;
    }
    int failed() const { return failed_; }

private:
    int failed_ = 0;
};

// Collects mismatches; the detail lists the first few.
class Checks {
public:
    void expect(bool ok, const std::string& what) {
        ++n_;
        if (!ok && bad_.size() < 4) bad_.push_back(what);
        if (!ok) ++nbad_;
    }
    Outcome outcome() const {
        if (nbad_ == 0) return {true, std::to_string(n_) + " checks"};
        std::string d = std::to_string(nbad_) + "/" + std::to_string(n_) + " failed:";
        for (const auto& b : bad_) d += " [" + b + "]";
        return {false, d};
    }

private:
    int n_ = 0, nbad_ = 0;
    std::vector<std::string> bad_;
};

template <class T>
std::string join(const std::vector<T>& v) {
    std::ostringstream os;
    os << "{";
    for (size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
    os << "}";
    return os.str();
}

const AlgebraContext& fib() {
    static AlgebraContext ctx(CartanMatrix::fib());
    return ctx;
}

LieElement el(const std::string& s) { return parse_element(fib(), s); }

So21Triple alpha11() { return build_so21(fib(), RootVector({1, 1}), Word{true, {0, 1}}); }
So21Triple alpha23() { return build_so21(fib(), RootVector({2, 3}), Word{true, {1, 0, 1, 0, 1}}); }

Outcome brackets() {
    Checks c;
    auto eq = [&](const std::string& lhs, const std::string& rhs) {
        auto a = el(lhs), b = el(rhs);
        c.expect(a == b, lhs + " = " + a.str());
    };
    eq("[e12, f21]", "3*(h1 + h2)");
    eq("[e21212, f21212]", "288*(2*h1 + 3*h2)");
    eq("[e1212, f1212]", "-96*(h1 + h2)");
    c.expect(el("[f12, e1212]").is_zero(), "[f12, e1212] = 0");
    return c.outcome();
}

Outcome casimirs() {
    Checks c;
    auto t = alpha11();
    for (auto w : {"e1", "e2"}) {
        Q o = casimir_eigenvalue(t, el(w));
        c.expect(o == Q(-13, 4), std::string("alpha11 Omega(") + w + ") = " + to_string(o));
    }
    auto t2 = alpha23();
    for (auto w : {"f1", "e1", "e12", "e212"}) {
        Q o = casimir_eigenvalue(t2, el(w));
        c.expect(o == Q(-13, 20), std::string("alpha23 Omega(") + w + ") = " + to_string(o));
    }
    for (auto w : {"f2", "e2"}) {
        Q o = casimir_eigenvalue(t2, el(w));
        c.expect(o == Q(-6, 5), std::string("alpha23 Omega(") + w + ") = " + to_string(o));
    }
    return c.outcome();
}

// x lies in span(vs): zero residual of express_in_basis-style least squares, via in_span plus explicit coordinates
bool span_equal(const std::vector<LieElement>& vs, const std::vector<LieElement>& ws, const RootVector& beta) {
    const auto& ctx = fib();
    auto coords = [&](const std::vector<LieElement>& list) {
        std::vector<QVec> cols;
        for (const auto& x : list) cols.push_back(ctx.express_in_basis(x, beta));
        return cols;
    };
    auto a = coords(vs), b = coords(ws);
    size_t d = ctx.dim(beta);
    std::vector<QVec> both = a;
    both.insert(both.end(), b.begin(), b.end());
    size_t ra = span_rank(a, d), rb = span_rank(b, d), rab = span_rank(both, d);
    return ra == rab && rb == rab;
}

Outcome lowest_weights() {
    Checks c;
    auto t = alpha11();
    auto r22 = lowest_weight_vectors(t, RootVector({2, 2}));
    c.expect(r22.s == 2 && r22.vectors.size() == 1 && span_equal(r22.vectors, {el("e1212")}, RootVector({2, 2})), "g_(2,2)");
    auto r33 = lowest_weight_vectors(t, RootVector({3, 3}));
    auto l1 = el("e121212 + e211212"), l2 = el("e112212 + 3*e211212");
    c.expect(r33.vectors.size() == 2, "dim ker in g_(3,3) = " + std::to_string(r33.vectors.size()));
    c.expect(in_span(r33.vectors, l1) && in_span(r33.vectors, l2), "l1, l2 in ker");
    c.expect(r33.s == 3 && casimir_eigenvalue(t, l1) == 6 && casimir_eigenvalue(t, l2) == 6, "J3 = 3, Omega = 6");
    auto r32 = lowest_weight_vectors(t, RootVector({3, 2}));
    auto l3 = el("3*e11212 + 4*e21112");
    c.expect(r32.vectors.size() == 1 && span_equal(r32.vectors, {l3}, RootVector({3, 2})), "g_(3,2) span");
    c.expect(r32.s == Q(5, 2) && casimir_eigenvalue(t, l3) == Q(15, 4), "s = 5/2, Omega = 15/4");
    return c.outcome();
}

Outcome multiplicities() {
    Checks c;
    const auto& ctx = fib();
    std::vector<long> s1, s2;
    for (int64_t m = 0; m <= 3; ++m) s1.push_back(static_cast<long>(ctx.dim(RootVector({m, 1}))));
    for (int64_t m = 1; m <= 8; ++m) s2.push_back(static_cast<long>(ctx.dim(RootVector({m, 3}))));
    c.expect(s1 == std::vector<long>{1, 1, 1, 1}, "a2 + m a1: " + join(s1));
    c.expect(s2 == std::vector<long>{1, 2, 3, 4, 4, 3, 2, 1}, "m a1 + 3 a2: " + join(s2));
    for (int64_t a = 0; a <= 10; ++a)
        for (int64_t b = 0; a + b <= 10; ++b) {
            if (a + b == 0) continue;
            RootVector r({a, b});
            long g = static_cast<long>(ctx.dim(r)), p = ctx.peterson_multiplicity(r);
            c.expect(g == p, r.str() + ": gram " + std::to_string(g) + " peterson " + std::to_string(p));
        }
    return c.outcome();
}

Outcome weight_tables() {
    Checks c;
    const auto& ctx = fib();
    auto lam = parse_highest_weight("fund1", 2);
    WeightTable t(ctx.cartan(), lam, 14);
    auto column = [&](RootVector k, int n) {
        std::vector<long> out;
        for (int i = 0; i < n; ++i, k = k + RootVector({1, 1})) out.push_back(t.mult(k));
        return out;
    };
    auto c1 = column(RootVector({0, 0}), 8), c2 = column(RootVector({1, 0}), 7);
    c.expect(c1 == std::vector<long>{1, 1, 2, 6, 17, 50, 151, 461}, "column 1 " + join(c1));
    c.expect(c2 == std::vector<long>{1, 1, 3, 9, 26, 80, 246}, "column 2 " + join(c2));
    FreudenthalOracle fo(ctx, lam, 12);
    long known = 0;
    for (const auto& [k, m] : fo.entries()) {
        if (!m) continue;
        ++known;
        c.expect(*m == t.mult(k), "Freudenthal at " + k.str());
    }
    c.expect(known > 50, "Freudenthal coverage " + std::to_string(known));
    return c.outcome();
}

Outcome hw_decomposition() {
    Checks c;
    const auto& ctx = fib();
    auto t = alpha11();
    auto d = decompose_hw(ctx, parse_highest_weight("fund1", 2), t, 7);
    const HWColumn* col = d.column(RootVector({0, 0}));
    c.expect(col && col->counts == std::vector<long>{1, 0, 1, 4, 11, 33, 101, 310}, "counts " + (col ? join(col->counts) : "missing"));
    if (col) {
        bool half = true;
        for (size_t n = 0; n < col->counts.size(); ++n) half = half && (col->top_s + static_cast<long>(n) == Q(static_cast<long>(2 * n + 1), 2));
        c.expect(half, "s = (2n+1)/2 along the column");
    }
    c.expect(d.head_s == Q(1, 2) && d.head_omega == Q(-1, 4), "head of fund1");
    auto dr = decompose_hw(ctx, parse_highest_weight("rho", 2), t, 4);
    c.expect(dr.head_s == 1 && dr.head_omega == 0, "head of rho");
    c.expect(d.diagnostics.empty(), "no negative differences");
    return c.outcome();
}

Outcome adjoint_reports() {
    Checks c;
    auto r = decompose_adjoint(alpha11(), 8, 4);
    c.expect(r.singlets == 1 && r.singlet_vectors.size() == 1 && in_span({el("h1 - h2")}, parse_element(fib(), r.singlet_vectors[0])),
             "alpha11 singlet");
    c.expect(r.principal_count() == 2, "alpha11 principal count " + std::to_string(r.principal_count()));
    for (const auto& p : r.principal) {
        c.expect(p.omega && *p.omega == Q(-13, 4), "alpha11 Omega");
        c.expect(s_from_casimir(Q(-13, 4)).disc == -12, "s = (1 +- i sqrt 12)/2");
    }
    c.expect(r.accounting_ok(), "alpha11 accounting");
    auto r2 = decompose_adjoint(alpha23(), 8, 4);
    c.expect(r2.singlet_vectors.size() == 1 && r2.singlet_vectors[0] == "h2", "alpha23 singlet h2");
    std::vector<Q> om;
    for (const auto& p : r2.principal)
        for (long k = 0; k < p.mult; ++k)
            if (p.omega) om.push_back(*p.omega);
    std::sort(om.begin(), om.end());
    std::vector<std::string> oms;
    for (const auto& q : om) oms.push_back(to_string(q));
    c.expect(om == std::vector<Q>{Q(-6, 5), Q(-6, 5), Q(-13, 20), Q(-13, 20), Q(-13, 20), Q(-13, 20)}, "alpha23 strip " + join(oms));
    c.expect(r2.accounting_ok(), "alpha23 accounting");
    return c.outcome();
}

Outcome real_roots() {
    Checks c;
    auto t = build_triple_for_root(fib(), RootVector({1, 0}));
    auto r = decompose_real_root(t, 8);
    c.expect(str(r.cartan) == "V(2) + V(0)", "Cartan " + str(r.cartan));
    auto inv = real_root_invariants(t, RootVector::zero(2));
    c.expect(inv.size() == 1 && in_span(inv, el("3*h1 + 2*h2")), "V(0) = span{3h1 + 2h2}");
    bool found = false;
    for (const auto& s : r.strings)
        if (s.base == RootVector({1, 3})) {
            found = true;
            c.expect(str(s.decomposition) == "V(7) + V(5) + V(3) + V(1)", "string at 3a2: " + str(s.decomposition));
        }
    c.expect(found, "string at 3a2 present");
    c.expect(str(wedge_square(3)) == "V(4) + V(0)", "wedge square of V(3)");
    return c.outcome();
}

Outcome conjecture() {
    const auto& ctx = fib();
    auto fibscan = conjecture_scan(ctx, timelike_roots(ctx, 6), 8, 4);
    AlgebraContext a4(CartanMatrix({{2, -4}, {-4, 2}}));
    auto a4scan = conjecture_scan(a4, {{RootVector({1, 1}), Word{true, {0, 1}}}}, 8, 4);
    std::ostringstream d;
    d << "Fib: " << fibscan.items.size() << " roots scanned";
    long flags = 0;
    for (const auto& it : fibscan.items) {
        flags += it.complementary;
        if (!it.complementary) continue;
        d << "; at alpha = (" << it.alpha.str() << ") " << it.word << ":";
        for (const auto& w : it.diagnostics) d << " " << w << ";";
        d << " principal strip Omegas " << join(it.omegas);
    }
    d << "; a12 = -4 at a1 + a2: " << (a4scan.holds() ? "none" : "flagged");
    return {fibscan.holds() && a4scan.holds() && flags == 0, d.str()};
}

Outcome principal() {
    Checks c;
    auto r = decompose_adjoint(build_principal_so21(fib()), 8, 4);
    c.expect(r.principal_count() == 1, "principal count " + std::to_string(r.principal_count()));
    for (const auto& e : r.discrete) c.expect(e.s > 0 && e.s.get_den() == 1, "s = " + to_string(e.s));
    c.expect(r.accounting_ok(), "accounting");
    return c.outcome();
}

Outcome numerics() {
    using namespace kmso21::unirep;
    constexpr double pi = std::numbers::pi;
    Checks c;
    double n0 = discrete_norm_sq_quadrature(2, 0);
    for (int n = 0; n <= 4; ++n) {
        double q = discrete_norm_sq_quadrature(2, n) / n0, e = discrete_norm_ratio(2, n);
        c.expect(std::abs(q - e) / e < 1e-6, "norm ratio n = " + std::to_string(n));
    }
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> mag(0, 0.06), ang(-pi, pi);
    GroupMatrixOptions opt;
    opt.range = 32;
    opt.tol = 1e300;  // measured below against the criterion threshold
    std::vector<RepParams> reps{{Model::discrete, 2, 0, -1}, {Model::discrete, 5.0 / 2, 0, -1}, {Model::discrete, 0.5, 0, -1},
                                {Model::principal, 0, 0, -13.0 / 4}, {Model::principal, 0, 0.5, -6.0 / 5}};
    double defect = 0, comp = 0, product_defect = 0;
    for (int k = 0; k < 10; ++k) {
        GroupParams g1{std::polar(mag(rng), ang(rng)), ang(rng)}, g2{std::polar(mag(rng), ang(rng)), ang(rng)};
        auto e1 = sl2_from_params(g1), e2 = sl2_from_params(g2);
        const auto& rep = reps[static_cast<size_t>(k) % reps.size()];
        auto u1 = group_matrix(rep, e1, opt), u2 = group_matrix(rep, e2, opt), u12 = group_matrix(rep, e1.compose(e2), opt);
        defect = std::max({defect, u1.defect, u2.defect});
        product_defect = std::max(product_defect, u12.defect);
        comp = std::max(comp, u1.composition_defect(u2, u12));
    }
    std::ostringstream ds;
    ds << std::scientific << std::setprecision(1) << defect << ", composition " << comp << ", product element " << product_defect;
    c.expect(defect < 1e-8, "unitarity defect " + ds.str());
    c.expect(comp < 1e-6, "composition defect " + ds.str());
    auto p1 = cover_phase(Q(5, 2), 1), p2 = cover_phase(Q(5, 2), 2);
    c.expect(p1.minus_identity && !p1.identity && p2.identity, "s = 5/2: -Id at one turn, Id at two");
    c.expect(p1.numeric_error < 1e-8 && p2.numeric_error < 1e-8, "cover phases from the model");
    double worst = 0;
    for (double s : {0.5, 1.0, 2.0, 2.5})
        for (int n = 0; n <= 3; ++n) worst = std::max(worst, differential_op_check(Model::discrete, s, n).max());
    cplx sp(0.5, std::sqrt(12.0) / 2);
    for (double m : {0.0, 0.5, 1.0, 2.3}) worst = std::max(worst, differential_op_check(Model::principal, sp, m).max());
    c.expect(worst < 1e-8, "differential operator residual");
    Outcome o = c.outcome();
    o.detail += "; unitarity " + ds.str();
    return o;
}

// Property suites, 200 random cases each.
Outcome properties() {
    const auto& ctx = fib();
    Checks c;
    std::mt19937 rng(7);
    std::vector<RootVector> ws{RootVector::zero(2)}, pos;
    for (const auto& [b, m] : ctx.enumerate_roots(6)) {
        if (!b.is_positive() || m == 0) continue;
        pos.push_back(b);
        if (b.height() <= 3) {
            ws.push_back(b);
            ws.push_back(-b);
        }
    }
    auto rq = [&] {
        std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
        Q q(num(rng), den(rng));
        q.canonicalize();
        return q;
    };
    auto rand_at = [&](const RootVector& w) {
        for (;;) {
            LieElement x = ctx.zero();
            for (size_t k = 0; k < ctx.dim(w); ++k) x = x + rq() * ctx.basis_element(w, k);
            if (!x.is_zero()) return x;
        }
    };
    auto rand_el = [&] { return rand_at(ws[std::uniform_int_distribution<size_t>(0, ws.size() - 1)(rng)]); };
    const int n = 200;
    int bad_jacobi = 0, bad_form = 0, bad_omega = 0, bad_adj = 0, bad_serre = 0, bad_gram = 0, bad_acc = 0;
    for (int k = 0; k < n; ++k) {
        auto x = rand_el(), y = rand_el(), z = rand_el();
        auto j = ctx.bracket(x, ctx.bracket(y, z)) + ctx.bracket(y, ctx.bracket(z, x)) + ctx.bracket(z, ctx.bracket(x, y));
        if (!j.is_zero()) ++bad_jacobi;
        if (ctx.invariant_form(ctx.bracket(x, y), z) != ctx.invariant_form(x, ctx.bracket(y, z))) ++bad_form;
        if (ctx.chevalley_involution(ctx.bracket(x, y)) != ctx.bracket(ctx.chevalley_involution(x), ctx.chevalley_involution(y))) ++bad_omega;
        int i = k % 2;
        RootVector b = pos[std::uniform_int_distribution<size_t>(0, pos.size() - 1)(rng)];
        RootVector a = b + RootVector::simple(2, static_cast<size_t>(i));
        if (a.height() <= 7 && ctx.dim(a) > 0) {
            auto u = rand_at(b), v = rand_at(a);
            if (ctx.contravariant_form(ctx.bracket(ctx.e({i}), u), v) != ctx.contravariant_form(u, ctx.bracket(ctx.f({i}), v))) ++bad_adj;
        }
        bool up = (k / 2) % 2 == 0;
        auto s = up ? ctx.e({1 - i}) : ctx.f({1 - i});
        for (int r = 0; r < 1 - ctx.cartan()(static_cast<size_t>(i), static_cast<size_t>(1 - i)); ++r) s = ctx.bracket(up ? ctx.e({i}) : ctx.f({i}), s);
        if (!s.is_zero() || !ctx.bracket(x, s).is_zero()) ++bad_serre;
        auto g = rand_at(b);
        if (ctx.contravariant_form(g, g) <= 0) ++bad_gram;
    }
    for (const auto& b : pos)
        if (!is_positive_definite(ctx.gram(b))) ++bad_gram;
    auto roots = timelike_roots(ctx, 6);
    for (int k = 0; k < n; ++k) {
        auto alpha = roots[std::uniform_int_distribution<size_t>(0, roots.size() - 1)(rng)].first;
        auto basis = ctx.root_space_basis(alpha);
        auto t = build_so21(ctx, alpha, basis.words[std::uniform_int_distribution<size_t>(0, basis.words.size() - 1)(rng)]);
        auto r = decompose_adjoint(t, std::uniform_int_distribution<int64_t>(alpha.height(), 8)(rng), std::uniform_int_distribution<int>(2, 4)(rng));
        if (!r.accounting_ok()) ++bad_acc;
    }
    c.expect(bad_jacobi == 0, "Jacobi " + std::to_string(bad_jacobi));
    c.expect(bad_form == 0, "invariant form " + std::to_string(bad_form));
    c.expect(bad_omega == 0, "omega-equivariance " + std::to_string(bad_omega));
    c.expect(bad_adj == 0, "adjointness " + std::to_string(bad_adj));
    c.expect(bad_serre == 0, "Serre " + std::to_string(bad_serre));
    c.expect(bad_gram == 0, "Gram " + std::to_string(bad_gram));
    c.expect(bad_acc == 0, "accounting " + std::to_string(bad_acc));
    Outcome o = c.outcome();
    if (o.pass) o.detail = "7 suites x 200 cases, 0 violations";
    return o;
}

}  // namespace

int main() {
    Report rep;
    rep.run(1, "bracket regression", 1, brackets);
    rep.run(2, "Casimir regression", 5, casimirs);
    rep.run(3, "lowest-weight structure at a1 + a2", 10, lowest_weights);
    rep.run(4, "root multiplicities", 30, multiplicities);
    rep.run(5, "weight tables", 60, weight_tables);
    rep.run(6, "highest-weight decomposition", 5, hw_decomposition);
    rep.run(7, "adjoint decomposition reports", 60, adjoint_reports);
    rep.run(8, "real-root decomposition", 10, real_roots);
    rep.run(9, "conjecture scan", 300, conjecture);
    rep.run(10, "principal so(2,1)", 60, principal);
    rep.run(11, "unitary numerics", 120, numerics);
    rep.run(12, "property suites", 120, properties);
    std::cout << (12 - rep.failed()) << "/12 criteria pass" << std::endl;
    return rep.failed() ? 1 : 0;
}

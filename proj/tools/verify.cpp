#include "verify.hpp"

#include "kmso21/decompose.hpp"
#include "kmso21/expr.hpp"
#include "kmso21/highest_weight.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace kmso21::cli {

namespace {

template <class T>
std::string show(const std::vector<T>& v) {
    std::ostringstream os;
    os << "{";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << "}";
    return os.str();
}

std::string show_q(const std::vector<Q>& v) {
    std::vector<std::string> s;
    for (const auto& q : v) s.push_back(to_string(q));
    return show(s);
}

class Runner {
public:
    Runner(const AlgebraContext& ctx, int64_t cutoff, int window) : ctx_(ctx), cutoff_(cutoff), window_(window) {}

    void section(const std::string& key) {
        cur_ = key;
        if (key == "real")
            real();
        else if (key == "alpha11")
            alpha11();
        else if (key == "weights")
            weights();
        else if (key == "alpha23")
            alpha23();
        else if (key == "principal")
            principal();
        else if (key == "conjecture")
            conjecture();
        else
            throw std::invalid_argument("unknown verify section: " + key);
    }

    std::vector<Check> checks;

private:
    // Runs body; exceptions turn into a failed check carrying the message.
    void check(const std::string& name, const std::string& expected, const std::function<std::string()>& body) {
        Check c{cur_, name, expected, "", false};
        try {
            c.got = body();
            c.pass = c.got == expected;
        } catch (const std::exception& e) {
            c.got = std::string("error: ") + e.what();
        }
        checks.push_back(c);
    }

    LieElement el(const std::string& s) const { return parse_element(ctx_, s); }

    std::string bracket(const std::string& x, const std::string& y) const { return ctx_.bracket(el(x), el(y)).str(); }

    std::string omega_of(const So21Triple& t, const std::string& x) const { return to_string(casimir_eigenvalue(t, el(x))); }

    void real() {
        check("multiplicities along a2 + m a1, m = 0..3", "{1,1,1,1}", [&] {
            std::vector<long> m;
            for (int k = 0; k <= 3; ++k) m.push_back(static_cast<long>(ctx_.dim(RootVector({k, 1}))));
            return show(m);
        });
        check("multiplicities along m a1 + 3 a2, m = 1..8", "{1,2,3,4,4,3,2,1}", [&] {
            std::vector<long> m;
            for (int k = 1; k <= 8; ++k) m.push_back(static_cast<long>(ctx_.dim(RootVector({k, 3}))));
            return show(m);
        });
        auto rep = [&] { return decompose_real_root(build_triple_for_root(ctx_, RootVector({1, 0})), std::min<int64_t>(cutoff_, ctx_.max_exact_height())); };
        check("Cartan subalgebra under sl(2) of a1", "V(2) + V(0)", [&] { return str(rep().cartan); });
        check("V(0) in the Cartan subalgebra is spanned by 3h1 + 2h2", "true", [&] {
            auto t = build_triple_for_root(ctx_, RootVector({1, 0}));
            auto inv = real_root_invariants(t, RootVector::zero(2));
            return std::string(inv.size() == 1 && in_span(inv, el("3*h1 + 2*h2")) ? "true" : "false");
        });
        check("string through m a1 + 3 a2", "V(7) + V(5) + V(3) + V(1)", [&] {
            auto r = rep();
            for (const auto& s : r.strings)
                if (std::find(s.roots.begin(), s.roots.end(), RootVector({1, 3})) != s.roots.end()) return str(s.decomposition);
            return std::string("missing");
        });
        check("exterior square of V(3)", "V(4) + V(0)", [&] { return str(wedge_square(3)); });
    }

    void alpha11() {
        check("[e12, f21]", "3*h1 + 3*h2", [&] { return bracket("e[1,2]", "f[2,1]"); });
        check("[e1212, f1212]", "-96*h1 - 96*h2", [&] { return bracket("e[1,2,1,2]", "f[1,2,1,2]"); });
        check("[f12, e1212]", "0", [&] { return bracket("f[1,2]", "e[1,2,1,2]"); });
        auto t = [&] { return build_so21(ctx_, RootVector({1, 1}), Word{true, {0, 1}}); };
        check("Omega(e1), Omega(e2)", "{-13/4,-13/4}", [&] {
            auto tr = t();
            return show(std::vector<std::string>{omega_of(tr, "e[1]"), omega_of(tr, "e[2]")});
        });
        check("lowest weight vectors in g_(2,2)", "s=2 span{e[1,2,1,2]}", [&] {
            auto r = lowest_weight_vectors(t(), RootVector({2, 2}));
            bool ok = r.vectors.size() == 1 && in_span(r.vectors, el("e[1,2,1,2]"));
            return "s=" + to_string(r.s) + (ok ? " span{e[1,2,1,2]}" : " other");
        });
        check("lowest weight vectors in g_(3,3)", "dim 2, l1 and l2 inside, J3 = 3, Omega = 6", [&] {
            auto tr = t();
            auto r = lowest_weight_vectors(tr, RootVector({3, 3}));
            auto l1 = el("e[1,2,1,2,1,2] + e[2,1,1,2,1,2]"), l2 = el("e[1,1,2,2,1,2] + 3*e[2,1,1,2,1,2]");
            std::ostringstream os;
            os << "dim " << r.vectors.size() << ", " << (in_span(r.vectors, l1) && in_span(r.vectors, l2) ? "l1 and l2 inside" : "l1/l2 missing")
               << ", J3 = " << to_string(tr.nu(RootVector({3, 3}))) << ", Omega = " << to_string(casimir_eigenvalue(tr, l1));
            return os.str();
        });
        check("lowest weight vectors in g_(3,2)", "s=5/2 Omega=15/4 span{3e11212+4e21112}", [&] {
            auto tr = t();
            auto r = lowest_weight_vectors(tr, RootVector({3, 2}));
            auto v = el("3*e[1,1,2,1,2] + 4*e[2,1,1,1,2]");
            bool ok = r.vectors.size() == 1 && in_span(r.vectors, v);
            return "s=" + to_string(r.s) + " Omega=" + to_string(casimir_eigenvalue(tr, v)) + (ok ? " span{3e11212+4e21112}" : " other");
        });
        check("adjoint decomposition", "singlets 1 (h1 - h2), principal 2 with Omega -13/4, accounting ok", [&] {
            auto r = decompose_adjoint(t(), cutoff_, window_);
            std::ostringstream os;
            auto inv = real_root_invariants(t(), RootVector::zero(2));
            bool singlet = r.singlets == 1 && inv.size() == 1 && in_span(inv, el("h1 - h2"));
            std::vector<std::string> om;
            for (const auto& p : r.principal) om.push_back(p.omega ? to_string(*p.omega) : "irrational");
            bool all = r.principal_count() == 2 && std::all_of(om.begin(), om.end(), [](const std::string& s) { return s == "-13/4"; });
            os << "singlets " << r.singlets << (singlet ? " (h1 - h2)" : " (other)") << ", principal " << r.principal_count()
               << (all ? " with Omega -13/4" : " with Omega " + show(om)) << ", accounting " << (r.accounting_ok() ? "ok" : "broken");
            return os.str();
        });
    }

    void weights() {
        auto lam = parse_highest_weight("fund1", ctx_.rank());
        auto t = [&] { return build_so21(ctx_, RootVector({1, 1}), Word{true, {0, 1}}); };
        check("fund1 column from the top", "{1,1,2,6,17,50,151,461}", [&] {
            auto d = decompose_hw(ctx_, lam, t(), 7);
            auto c = d.column(RootVector({0, 0}));
            return c ? show(c->mults) : std::string("missing");
        });
        check("fund1 column from lambda - a1", "{1,1,3,9,26,80,246}", [&] {
            auto d = decompose_hw(ctx_, lam, t(), 7);
            auto c = d.column(RootVector({1, 0}));
            return c ? show(c->mults) : std::string("missing");
        });
        check("discrete counts in the top column at s = (2n+1)/2", "{1,0,1,4,11,33,101,310}", [&] {
            auto d = decompose_hw(ctx_, lam, t(), 7);
            auto c = d.column(RootVector({0, 0}));
            return c ? show(c->counts) : std::string("missing");
        });
        check("heads of fund1 and rho", "{1/2,-1/4,1,0}", [&] {
            auto tr = t();
            auto rho = parse_highest_weight("rho", ctx_.rank());
            auto d1 = decompose_hw(ctx_, lam, tr, 1), d2 = decompose_hw(ctx_, rho, tr, 1);
            return show_q({d1.head_s, d1.head_omega, d2.head_s, d2.head_omega});
        });
    }

    void alpha23() {
        check("[e21212, f21212]", "576*h1 + 864*h2", [&] { return bracket("e[2,1,2,1,2]", "f[2,1,2,1,2]"); });
        auto t = [&] { return build_so21(ctx_, RootVector({2, 3}), Word{true, {1, 0, 1, 0, 1}}); };
        check("Omega on f1, e1, e12, e212", "{-13/20,-13/20,-13/20,-13/20}", [&] {
            auto tr = t();
            return show(std::vector<std::string>{omega_of(tr, "f[1]"), omega_of(tr, "e[1]"), omega_of(tr, "e[1,2]"), omega_of(tr, "e[2,1,2]")});
        });
        check("Omega on f2, e2", "{-6/5,-6/5}", [&] {
            auto tr = t();
            return show(std::vector<std::string>{omega_of(tr, "f[2]"), omega_of(tr, "e[2]")});
        });
        check("adjoint decomposition", "singlet h2, strip Omegas {-13/20,-13/20,-13/20,-13/20,-6/5,-6/5}, accounting ok", [&] {
            auto tr = t();
            auto r = decompose_adjoint(tr, cutoff_, window_);
            auto inv = real_root_invariants(tr, RootVector::zero(2));
            bool singlet = r.singlets == 1 && inv.size() == 1 && in_span(inv, el("h2"));
            std::vector<Q> om;
            for (const auto& p : r.principal)
                for (long k = 0; k < p.mult; ++k) om.push_back(p.omega ? *p.omega : Q(1000));
            std::sort(om.begin(), om.end(), [](const Q& a, const Q& b) { return a > b; });
            std::ostringstream os;
            os << "singlet " << (singlet ? "h2" : "other") << ", strip Omegas " << show_q(om) << ", accounting " << (r.accounting_ok() ? "ok" : "broken");
            return os.str();
        });
    }

    void principal() {
        check("principal so(2,1): principal series count and discrete parameters", "1 principal series, all s positive integers", [&] {
            auto r = decompose_adjoint(build_principal_so21(ctx_), cutoff_, window_);
            bool ints = std::all_of(r.discrete.begin(), r.discrete.end(), [](const DiscreteEntry& d) { return d.s > 0 && d.s.get_den() == 1; });
            std::ostringstream os;
            os << r.principal_count() << " principal series, " << (ints ? "all s positive integers" : "non-integral s present");
            return os.str();
        });
    }

    void conjecture() {
        check("no complementary series, timelike roots up to height 6", "0 complementary", [&] {
            auto r = conjecture_scan(ctx_, timelike_roots(ctx_, 6), cutoff_, window_);
            long n = 0;
            std::ostringstream os;
            for (const auto& it : r.items) {
                n += it.complementary;
                if (it.complementary) os << " at (" << it.alpha.str() << ") " << it.word << " " << show(it.omegas);
            }
            return std::to_string(n) + " complementary" + os.str();
        });
        check("no complementary series for a12 = -4 at a1 + a2", "0 complementary", [&] {
            AlgebraContext c4(CartanMatrix({{2, -4}, {-4, 2}}), ctx_.max_exact_height());
            auto r = conjecture_scan(c4, timelike_roots(c4, 2), cutoff_, window_);
            long n = 0;
            for (const auto& it : r.items)
                if (it.alpha == RootVector({1, 1})) n += it.complementary;
            return std::to_string(n) + " complementary";
        });
    }

    const AlgebraContext& ctx_;
    int64_t cutoff_;
    int window_;
    std::string cur_;
};

}  // namespace

const std::vector<std::string>& verify_sections() {
    static const std::vector<std::string> s{"real", "alpha11", "weights", "alpha23", "principal", "conjecture"};
    return s;
}

std::vector<std::string> default_verify_sections() { return {"real", "alpha11", "weights", "alpha23", "principal"}; }

std::vector<Check> run_verify(const AlgebraContext& ctx, const std::vector<std::string>& sections, int64_t cutoff, int window) {
    if (ctx.rank() != 2) throw std::invalid_argument("verify-paper needs a rank-2 Cartan matrix");
    Runner r(ctx, cutoff, window);
    for (const auto& s : sections) r.section(s);
    return r.checks;
}

nlohmann::json checks_json(const std::vector<Check>& checks) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& c : checks)
        j.push_back({{"section", c.section}, {"name", c.name}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass}});
    return j;
}

std::string checks_text(const std::vector<Check>& checks) {
    std::ostringstream os;
    size_t pass = 0;
    for (const auto& c : checks) {
        os << (c.pass ? "PASS " : "FAIL ") << "[" << c.section << "] " << c.name << "\n";
        if (!c.pass) os << "  expected: " << c.expected << "\n  got:      " << c.got << "\n";
        pass += c.pass;
    }
    os << pass << "/" << checks.size() << " checks passed\n";
    return os.str();
}

}  // namespace kmso21::cli

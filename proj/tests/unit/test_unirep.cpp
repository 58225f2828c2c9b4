#include "kmso21/unirep.hpp"

#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

using namespace kmso21;
using namespace kmso21::unirep;

namespace {

constexpr double pi = std::numbers::pi;

double max_diff(const Mat2& a, const Mat2& b) {
    double d = 0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
    return d;
}

Mat2 exp_series(const Mat2& x) {
    Mat2 term{{{1, 0}, {0, 1}}}, sum = term;
    for (int k = 1; k < 40; ++k) {
        term = mul(term, x);
        for (auto& row : term)
            for (auto& v : row) v /= k;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) sum[i][j] += term[i][j];
    }
    return sum;
}

GroupParams scaled(const GroupParams& p, double t) { return {p.w * t, p.r * t}; }

// Matrix entries <phi_m, U(g) phi_n> computed in the line model by direct quadrature over x = tan(theta/2).
cplx line_entry(cplx s, double p, const CoveredElement& g, int m, int n) {
    Mat2 si = inverse(g.S);
    double a = si[0][0], b = si[0][1], c = si[1][0], d = si[1][1];
    const int N = 4000;
    cplx acc = 0;
    for (int k = 0; k < N; ++k) {
        double th = -pi + (k + 0.5) * 2 * pi / N, x = std::tan(th / 2);
        double mu = c * x + d, y = (a * x + b) / mu;
        cplx G = principal_basis_value(s, p + n, y) * std::pow(std::abs(mu), -2.0 * s) * (p == 0.5 && mu < 0 ? -1.0 : 1.0);
        acc += std::conj(principal_basis_value(s, p + m, x)) * G * 0.5 / std::pow(std::cos(th / 2), 2);
    }
    return acc * (2 * pi / N);
}

}  // namespace

TEST_CASE("matrix helpers") {
    Mat2 x{{{0.3, 1.2}, {-0.7, -0.3}}};
    CHECK(max_diff(exp_sl2(x), exp_series(x)) < 1e-12);
    Mat2 y{{{0.5, 0.2}, {0.4, -0.5}}};  // hyperbolic
    CHECK(max_diff(exp_sl2(y), exp_series(y)) < 1e-12);
    CHECK(std::abs(det(exp_sl2(x)) - 1) < 1e-12);
    Mat2 g = exp_sl2(x);
    CHECK(max_diff(mul(g, inverse(g)), Mat2{{{1, 0}, {0, 1}}}) < 1e-12);
    auto iw = iwasawa_decompose(g);
    CHECK(iw.a > 0);
    CHECK(max_diff(iw.reassemble(), g) < 1e-12);
    cplx z(0.3, 1.7);
    CHECK(std::abs(cayley_inverse(cayley(z)) - z) < 1e-12);
    CHECK(std::abs(cayley(z)) < 1);
    CHECK_THROWS_AS(cayley(cplx(0, -1)), std::domain_error);
    CHECK_THROWS_AS(cayley_inverse(cplx(1, 0)), std::domain_error);
}

TEST_CASE("group parameters") {
    auto p = GroupParams::parse("w=0.1+0.2i,r=0.3");
    CHECK(p.w == cplx(0.1, 0.2));
    CHECK(p.r == 0.3);
    auto q = GroupParams::parse(p.str());
    CHECK(std::abs(q.w - p.w) < 1e-15);
    CHECK(GroupParams::parse("r=1,w=-0.5i").w == cplx(0, -0.5));
    CHECK_THROWS(GroupParams::parse("w=abc"));
    CHECK_THROWS(GroupParams::parse("q=1"));
}

TEST_CASE("covered elements") {
    auto full = sl2_from_params({0, 2 * pi});
    CHECK(max_diff(full.S, Mat2{{{-1, 0}, {0, -1}}}) < 1e-12);
    // r = 4 pi closes a loop in SL(2,R) and lands on the next sheet
    auto loop = sl2_from_params({0, 4 * pi});
    CHECK(max_diff(loop.S, Mat2{{{1, 0}, {0, 1}}}) < 1e-12);
    CHECK(loop.sheet() != 0);
    CHECK(sl2_from_params({0, 4 * pi}, 2).sheet() == 1);
    CHECK(sl2_from_params({0, 8 * pi}, 2).sheet() == 0);
    CHECK(sl2_from_params({0, 8 * pi}).sheet() != 0);
    // one-parameter subgroups compose additively, including the lift
    GroupParams gp{cplx(0.4, -0.3), 2.5};
    auto a = sl2_from_params(scaled(gp, 0.7)), b = sl2_from_params(scaled(gp, 1.9)), ab = sl2_from_params(scaled(gp, 2.6));
    auto c = a.compose(b);
    CHECK(max_diff(c.S, ab.S) < 1e-10);
    CHECK(std::abs(c.theta - ab.theta) < 1e-10);
    // the disk matrix lies in SU(1,1)
    auto T = ab.disk_matrix();
    CHECK(std::abs(std::norm(T[0][0]) - std::norm(T[0][1]) - 1.0) < 1e-10);
    CHECK(std::abs(T[1][1] - std::conj(T[0][0])) < 1e-10);
}

TEST_CASE("discrete series norms") {
    for (int n = 0; n <= 4; ++n) {
        double q = discrete_norm_sq_quadrature(2, n) / discrete_norm_sq_quadrature(2, 0);
        CHECK(std::abs(q - discrete_norm_ratio(2, n)) / discrete_norm_ratio(2, n) < 1e-6);
    }
    CHECK(discrete_norm_ratio(2, 4) == doctest::Approx(1260));
    for (double s : {1.5, 2.5}) {
        double q = discrete_norm_sq_quadrature(s, 3) / discrete_norm_sq_quadrature(s, 0);
        CHECK(q == doctest::Approx(discrete_norm_ratio(s, 3)).epsilon(1e-6));
        CHECK(disk_monomial_norm_quadrature(s, 2) == doctest::Approx(disk_monomial_norm(s, 2)).epsilon(1e-8));
    }
    CHECK(discrete_basis_value(0.75, 0, cplx(0, 1)).needs_continuation);
    CHECK_FALSE(discrete_basis_value(2, 0, cplx(0, 1)).needs_continuation);
}

TEST_CASE("principal series norms") {
    cplx s(0.5, std::sqrt(12.0) / 2);
    CHECK(principal_norm_quadrature(s, 0) == doctest::Approx(1).epsilon(1e-8));
    CHECK(principal_norm_quadrature(s, 2.5) == doctest::Approx(1).epsilon(1e-8));
    CHECK(std::abs(principal_inner_quadrature(s, 0, 1)) < 1e-8);
    CHECK(std::abs(principal_inner_quadrature(s, 0.5, 2.5)) < 1e-8);
}

TEST_CASE("differential operators") {
    for (double s : {0.5, 1.0, 2.0, 2.5})
        for (int n : {0, 1, 3}) CHECK(differential_op_check(Model::discrete, s, n).max() < 1e-8);
    cplx sp(0.5, std::sqrt(12.0) / 2);
    for (double m : {0.0, 0.3, 1.5, -2.0}) CHECK(differential_op_check(Model::principal, sp, m).max() < 1e-8);
    auto r = differential_op_check(Model::discrete, 2.0, 1);
    CHECK(r.points > 0);
    CHECK(r.to_json().contains("casimir"));
}

TEST_CASE("group matrices differentiate to the ladder matrices") {
    const double t = 1e-6;
    GroupParams gp{cplx(0.3, -0.7), 0.4};
    for (int model = 0; model < 2; ++model) {
        RepParams rp = model == 0 ? RepParams{Model::discrete, 2.5, 0, -1} : RepParams{Model::principal, 0, 0.3, -13.0 / 4};
        cplx s = rp.s_complex();
        GroupMatrixOptions o;
        o.range = 8;
        o.tol = 1e9;
        o.angular_nodes = 64;
        auto U = group_matrix(rp, sl2_from_params(scaled(gp, t)), o);
        double err = 0;
        for (int m = U.n_min; m <= U.n_max; ++m)
            for (int n = U.n_min; n <= U.n_max; ++n) {
                cplx jp = 0, jm = 0, j3 = 0;
                if (model == 0) {
                    double sr = s.real();
                    if (m == n) j3 = sr + n;
                    if (m == n + 1) jp = std::sqrt((n + 1) * (2 * sr + n) / 2);
                    if (m == n - 1) jm = std::sqrt(n * (2 * sr + n - 1) / 2);
                } else {
                    double mm = rp.p + n;
                    if (m == n) j3 = mm;
                    if (m == n + 1) jp = -(mm + s) / std::sqrt(2.0);
                    if (m == n - 1) jm = -(mm - s) / std::sqrt(2.0);
                }
                cplx expect = cplx(0, 1) * (gp.w * jp + std::conj(gp.w) * jm + gp.r * j3);
                cplx d = (U(m, n) - (m == n ? 1.0 : 0.0)) / t;
                err = std::max(err, std::abs(d - expect));
            }
        CHECK_MESSAGE(err < 1e-3, "model " << model);
    }
}

TEST_CASE("principal series: circle model against the line model") {
    for (double p : {0.0, 0.5}) {
        RepParams rp{Model::principal, 0, p, -2};
        auto g = sl2_from_params({cplx(0.3, 0.2), 0.7});
        GroupMatrixOptions o;
        o.range = 8;
        o.tol = 1e9;
        auto U = group_matrix(rp, g, o);
        double err = 0;
        for (int m = -2; m <= 2; ++m)
            for (int n = -2; n <= 2; ++n) err = std::max(err, std::abs(line_entry(rp.s_complex(), p, g, m, n) - U(m, n)));
        CHECK_MESSAGE(err < 1e-8, "p = " << p);
    }
}

TEST_CASE("disk model: radial and boundary methods agree") {
    auto g = sl2_from_params({cplx(0.2, -0.1), 1.1});
    GroupMatrixOptions o;
    o.range = 24;
    o.tol = 1e9;
    o.disk = DiskMethod::radial;
    auto a = group_matrix({Model::discrete, 2, 0, -1}, g, o);
    o.disk = DiskMethod::boundary;
    auto b = group_matrix({Model::discrete, 2, 0, -1}, g, o);
    double d = 0;
    for (size_t k = 0; k < a.u.size(); ++k) d = std::max(d, std::abs(a.u[k] - b.u[k]));
    CHECK(d < 1e-10);
    o.disk = DiskMethod::radial;
    CHECK_THROWS(group_matrix({Model::discrete, 0.5, 0, -1}, g, o));
    o.disk = DiskMethod::automatic;
    CHECK_NOTHROW(group_matrix({Model::discrete, 0.5, 0, -1}, g, o));
}

TEST_CASE("unitarity and composition of truncated matrices") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> mag(0, 0.06), ang(-pi, pi);
    GroupMatrixOptions o;
    o.range = 32;
    std::vector<RepParams> reps{{Model::discrete, 2, 0, -1}, {Model::discrete, 2.5, 0, -1}, {Model::principal, 0, 0, -13.0 / 4},
                                {Model::principal, 0, 0.5, -2}};
    auto loose = o;
    loose.tol = 1e300;  // the product leaves the sampled range
    double worst = 0, worst_comp = 0;
    for (int c = 0; c < 6; ++c) {
        GroupParams g1{std::polar(mag(rng), ang(rng)), ang(rng)}, g2{std::polar(mag(rng), ang(rng)), ang(rng)};
        auto e1 = sl2_from_params(g1), e2 = sl2_from_params(g2);
        const auto& rep = reps[static_cast<size_t>(c) % reps.size()];
        auto u1 = group_matrix(rep, e1, o), u2 = group_matrix(rep, e2, o), u12 = group_matrix(rep, e1.compose(e2), loose);
        worst = std::max({worst, u1.defect, u2.defect});
        worst_comp = std::max(worst_comp, u1.composition_defect(u2, u12));
    }
    CHECK(worst < 1e-8);
    CHECK(worst_comp < 1e-6);
    // a large noncompact part leaks past the truncation and is refused
    CHECK_THROWS_AS(group_matrix(reps[0], sl2_from_params({cplx(0.8, 0), 0}), o), std::runtime_error);
}

TEST_CASE("serial and parallel group matrices agree") {
    auto g = sl2_from_params({cplx(0.03, 0.02), 0.4});
    GroupMatrixOptions o;
    o.range = 16;
    o.tol = 1e9;
    o.exec = Exec::serial;
    for (RepParams rp : {RepParams{Model::discrete, 2, 0, -1}, RepParams{Model::principal, 0, 0.25, -2}}) {
        auto a = group_matrix(rp, g, o);
        auto o2 = o;
        o2.exec = Exec::parallel;
        auto b = group_matrix(rp, g, o2);
        CHECK(a.u == b.u);
    }
}

TEST_CASE("rotations and covers") {
    auto c1 = cover_phase(Q(5, 2), 1), c2 = cover_phase(Q(5, 2), 2);
    CHECK(c1.minus_identity);
    CHECK_FALSE(c1.identity);
    CHECK(c2.identity);
    CHECK(c1.first_identity_turns == 2);
    CHECK(c1.numeric_error < 1e-8);
    CHECK(cover_phase(Q(2), 1).identity);
    CHECK(cover_phase(Q(1, 3), 3).identity);
    CHECK_FALSE(cover_phase(Q(1, 3), 2).identity);
    CHECK(cover_phase(Q(1, 3), 1).first_identity_turns == 3);
    // the same phases read off a computed matrix: U(exp(2 pi i J3)) = e^{2 pi i (s + n)}
    GroupMatrixOptions o;
    o.range = 8;
    auto U = group_matrix({Model::discrete, 2.5, 0, -1}, sl2_from_params({0, 2 * pi}), o);
    for (int n = U.n_min; n <= U.n_max; ++n) CHECK(std::abs(U(n, n) + 1.0) < 1e-9);
}

TEST_CASE("complementary series inner product") {
    double s = 0.75;
    auto ops = differential_operators(s);
    auto prof = [](cplx c0, cplx c1, double w, double sh) {
        return [=](double k) -> Jet {
            Jet kk{k - sh, 1, 0};
            Jet e = jet_exp((-pi / w) * (kk * kk));
            return (Jet{c0, 0, 0} + c1 * kk) * e;
        };
    };
    auto f = prof(1.0, cplx(0, 0.5), 1.0, 0.3), g = prof(cplx(0.2, 1), 0.7, 2.0, -0.4);
    auto val = [](auto p) { return [=](double k) { return p(k).v; }; };
    cplx ff = complementary_inner_product(val(f), val(f), s);
    CHECK(ff.real() > 0);
    CHECK(std::abs(ff.imag()) < 1e-10);
    auto hermitian = [&](const FirstOrderOp& a, const FirstOrderOp& b) {
        auto ag = [&](double k) { return fourier_apply(a, g(k), k); };
        auto bf = [&](double k) { return fourier_apply(b, f(k), k); };
        return std::abs(complementary_inner_product(val(f), ag, s) - complementary_inner_product(bf, val(g), s));
    };
    CHECK(hermitian(ops.j3, ops.j3) < 1e-8);
    CHECK(hermitian(ops.jp, ops.jm) < 1e-8);
    CHECK(complementary_prefactor(s) > 0);
    CHECK_THROWS(complementary_inner_product(val(f), val(f), 0.4));
}

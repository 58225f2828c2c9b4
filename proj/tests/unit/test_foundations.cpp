#include "kmso21/cartan.hpp"
#include "kmso21/irrep.hpp"
#include "kmso21/qmatrix.hpp"
#include "kmso21/sl2_basis.hpp"

#include "doctest.h"

#include <random>

using namespace kmso21;

TEST_CASE("rationals") {
    CHECK(parse_q("6/4") == Q(3, 2));
    CHECK(to_string(parse_q("-6/4")) == "-3/2");
    CHECK(to_string(make_q(8, 4)) == "2");
    CHECK_THROWS(parse_q("1/0"));
    CHECK_THROWS(parse_q("abc"));
    CHECK(common_denominator({Q(1, 2), Q(1, 3), Q(5)}) == 6);
}

TEST_CASE("Cartan matrix validation") {
    CHECK_NOTHROW(CartanMatrix::parse_flag("2,-3;-3,2"));
    CHECK(CartanMatrix::parse_flag(" 2, -3 ; -3, 2 ") == CartanMatrix::fib());
    CHECK_THROWS(CartanMatrix::parse_flag("2,-3"));
    CHECK_THROWS(CartanMatrix::parse_flag("1,-3;-3,2"));
    CHECK_THROWS(CartanMatrix::parse_flag("2,3;3,2"));
    CHECK_THROWS(CartanMatrix::parse_flag("2,-2;-2,2"));
    CHECK(CartanMatrix::from_json_text("{\"a\": [[2,-3],[-3,2]]}") == CartanMatrix::fib());
    CHECK(CartanMatrix::from_json_text("[[2,-4],[-4,2]]").flag_str() == "2,-4;-4,2");
    CHECK_THROWS(CartanMatrix::from_json_text("{\"rank\": 3, \"a\": [[2,-3],[-3,2]]}"));
}

TEST_CASE("roots, norms and reflections") {
    auto a = CartanMatrix::fib();
    CHECK(a.classify_norm(RootVector({1, 0})) == NormClass::spacelike);
    CHECK(a.classify_norm(RootVector({1, 1})) == NormClass::timelike);
    CHECK(a.inner_product(RootVector({2, 3}), RootVector({2, 3})) == -10);
    CHECK(a.simple_reflection(0, RootVector({0, 1})) == RootVector({3, 1}));
    CHECK(a.simple_reflection(1, RootVector({1, 0})) == RootVector({1, 3}));
    auto orbit = a.weyl_orbit(RootVector({1, 0}), 10);
    CHECK(orbit.count(RootVector({1, 3})) == 1);
    CHECK(orbit.count(RootVector({0, 1})) == 0);
    for (const auto& r : orbit) CHECK(a.inner_product(r, r) == 2);
    CHECK(parse_root("2,3") == RootVector({2, 3}));
    CHECK_THROWS(parse_root("2;x"));
}

TEST_CASE("fundamental weights and Weyl vector") {
    auto a = CartanMatrix::fib();
    auto fw = a.fundamental_weights();
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) CHECK(a.pair_simple(fw[i].c, j) == (i == j ? 1 : 0));
    auto rho = a.weyl_vector();
    CHECK(a.pair_simple(rho.c, 0) == 1);
    CHECK(a.pair_simple(rho.c, 1) == 1);
    CHECK(a.as_q() * a.inverse() == QMatrix::identity(2));
}

TEST_CASE("rational matrices") {
    QMatrix m = QMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
    CHECK(rank(m) == 2);
    auto k = kernel(m);
    REQUIRE(k.size() == 1);
    CHECK(is_zero(m * k[0]));
    CHECK(solve(m, {1, 2, 0}).has_value());
    CHECK_FALSE(solve(m, {1, 0, 0}).has_value());
    QMatrix s = QMatrix::from_rows({{2, 1}, {1, 2}}, 2);
    CHECK(inverse(s) * s == QMatrix::identity(2));
    CHECK(is_positive_definite(s));
    CHECK_FALSE(is_positive_definite(QMatrix::from_rows({{1, 2}, {2, 1}}, 2)));
    CHECK(charpoly(s) == QVec{3, -4, 1});
    auto ev = rational_eigenvalues(s);
    REQUIRE(ev);
    CHECK(ev->size() == 2);
    CHECK_FALSE(rational_eigenvalues(QMatrix::from_rows({{0, 1}, {2, 0}}, 2)).has_value());
    CHECK_THROWS(inverse(m));
}

TEST_CASE("random LDL^T against rank and inverse") {
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int c = 0; c < 50; ++c) {
        QMatrix b(4, 4);
        for (size_t i = 0; i < 4; ++i)
            for (size_t j = 0; j < 4; ++j) b(i, j) = d(rng);
        QMatrix g = b.transpose() * b;
        bool pd = is_positive_definite(g);
        CHECK(pd == (rank(b) == 4));
        if (pd) CHECK(inverse(g) * g == QMatrix::identity(4));
    }
}

TEST_CASE("sl(2) Casimir parameters and labels") {
    auto a = s_from_casimir(6);
    CHECK(a.rational_roots() == std::vector<Q>{3, -2});
    CHECK(s_from_casimir(Q(-13, 4)).complex());
    CHECK(s_from_casimir(Q(-13, 4)).disc == -12);
    CHECK(classify_continuous(Q(-13, 4)) == ContinuousClass::principal);
    CHECK(classify_continuous(Q(-1, 4)) == ContinuousClass::principal);
    CHECK(classify_continuous(Q(-1, 8)) == ContinuousClass::complementary);
    CHECK(classify_continuous(Q(0)) == ContinuousClass::not_continuous_unitary);
    CHECK(casimir_of(IrrepLabel::lowest(Q(5, 2))) == Q(15, 4));
    CHECK(casimir_of(IrrepLabel::finite(2)) == 2);
    CHECK_THROWS(IrrepLabel::principal_series(0, Q(-1, 8)));
    CHECK_THROWS(IrrepLabel::complementary_series(0, Q(-1, 2)));
}

TEST_CASE("norms in the sl(2) modules") {
    // ||J+^n v||^2 / ||v||^2 computed from the ladder relation directly
    for (Q s : {Q(1, 2), Q(2), Q(5, 2)}) {
        Q acc = 1;
        for (long n = 0; n <= 5; ++n) {
            CHECK(discrete_norm_sq(s, n) == acc);
            // [J+, J-] = -J3 with J- v = 0 gives J- J+ (J+^n v) = (n + 1)(2s + n)/2 J+^n v
            acc *= Q(n + 1) * (2 * s + n) / 2;
        }
    }
    CHECK(principal_norm_sq(0, Q(-13, 4), 1) == Q(13, 8));
}

TEST_CASE("finite-dimensional decompositions") {
    CHECK(str(clebsch_gordan(2, 2)) == "V(4) + V(2) + V(0)");
    CHECK(str(wedge_square(3)) == "V(4) + V(0)");
    CHECK(str(sym_square(2)) == "V(4) + V(0)");
    CHECK(str(finite_string_decompose({1, 2, 3, 4, 4, 3, 2, 1})) == "V(7) + V(5) + V(3) + V(1)");
    CHECK(str(finite_string_decompose({1, 1, 1, 1})) == "V(3)");
    CHECK_THROWS(finite_string_decompose({1, 2, 1, 2}));
    // dimension count of Clebsch-Gordan
    for (long m1 = 0; m1 <= 5; ++m1)
        for (long m2 = 0; m2 <= 5; ++m2) {
            long dim = 0;
            for (auto [m, c] : clebsch_gordan(m1, m2)) dim += (m + 1) * c;
            CHECK(dim == (m1 + 1) * (m2 + 1));
        }
}

TEST_CASE("sl(2) bases agree on brackets") {
    for (auto t : {Sl2BasisTag::efh, Sl2BasisTag::so3, Sl2BasisTag::so21, Sl2BasisTag::J, Sl2BasisTag::j}) {
        CHECK(parse_sl2_basis(to_string(t)) == t);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) {
                Sl2Vec x = unit_vector(a), y = unit_vector(b);
                Sl2Vec direct = bracket_in(t, x, y);
                Sl2Vec via = convert_basis(bracket_efh(convert_basis(x, t, Sl2BasisTag::efh), convert_basis(y, t, Sl2BasisTag::efh)),
                                           Sl2BasisTag::efh, t);
                CHECK(direct == via);
                CHECK(convert_basis(convert_basis(x, t, Sl2BasisTag::so3), Sl2BasisTag::so3, t) == x);
            }
    }
    // [e, f] = h, [h, e] = 2e
    CHECK(bracket_efh(unit_vector(0), unit_vector(1)) == unit_vector(2));
    CHECK(bracket_efh(unit_vector(2), unit_vector(0)) == Sl2Vec{QI2::rational(2), QI2(), QI2()});
    CHECK_THROWS(parse_sl2_basis("xyz"));
}

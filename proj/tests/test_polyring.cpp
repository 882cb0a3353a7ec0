#include "doctest.h"

#include "daha/epoly.hpp"
#include "daha/spectral.hpp"

using namespace daha;

namespace {
ParamSpec a1_params() { return ParamSpec(RootSystem::build("A1"), Rational(1, 2), Rational(1, 3)); }
LaurentPoly X(long n) { return LaurentPoly::monomial(Weight::of_ints({n})); }

LaurentPoly rnd_poly(int rank, unsigned seed) {
    LaurentPoly p(rank);
    unsigned s = seed * 747796405u + 2891336453u;
    for (int k = 0; k < 5; ++k) {
        std::vector<long> c(static_cast<size_t>(rank));
        for (int i = 0; i < rank; ++i) {
            s = s * 1664525u + 1013904223u;
            c[static_cast<size_t>(i)] = static_cast<long>(s % 7) - 3;
        }
        s = s * 1664525u + 1013904223u;
        Rational coef(static_cast<long>(s % 19) - 9, 1 + static_cast<long>(s % 4));
        coef.canonicalize();
        p.add_term(Weight::of_ints(c), coef);
    }
    return p;
}
}

TEST_CASE("ring operations") {
    CHECK(X(1) * X(-1) == LaurentPoly::constant(1, Rational(1)));
    LaurentPoly s = X(1) + X(-1);
    LaurentPoly sq = s * s;
    CHECK(sq.coefficient(Weight::of_ints({2})) == Rational(1));
    CHECK(sq.constant_term() == Rational(2));
    CHECK(sq.coefficient(Weight::of_ints({-2})) == Rational(1));

    // E_{-1} X = X X^{-1} + X^2 (1-t)/(1-tq)
    ParamSpec ps = a1_params();
    Rational q = ps.q(), t = ps.t(1);
    LaurentPoly em1 = X(-1) + X(1) * ((1 - t) / (1 - t * q));
    LaurentPoly lhs = em1 * X(1);
    LaurentPoly rhs = LaurentPoly::constant(1, Rational(1)) + X(2) * ((1 - t) / (1 - t * q));
    CHECK(lhs == rhs);
}

TEST_CASE("constant term") {
    CHECK(LaurentPoly::constant(1, Rational(1)).constant_term() == Rational(1));
    LaurentPoly p = X(2) + LaurentPoly::constant(1, Rational(2)) + X(-2);
    CHECK(p.constant_term() == Rational(2));
    // E_{-2} constant term from the terminating series: (1-q^2)(1-t)/((1-q)(1-t q^2))
    ParamSpec ps = a1_params();
    MacdonaldContext mc(ps);
    Rational q = ps.q(), t = ps.t(1);
    Rational expect = (1 - q * q) * (1 - t) / ((1 - q) * (1 - t * q * q));
    CHECK(mc.e_polynomial(Weight::of_ints({-2})).poly.constant_term() == expect);
}

TEST_CASE("weyl action on polynomials") {
    auto a1 = RootSystem::build("A1");
    CHECK(X(3).weyl_act(a1->simple_element(0)) == X(-3));
    auto a2 = RootSystem::build("A2");
    LaurentPoly xo1 = LaurentPoly::monomial(Weight::of_ints({1, 0}));
    CHECK(xo1.weyl_act(a2->simple_element(0)) == LaurentPoly::monomial(Weight::of_ints({-1, 1})));
    // homomorphism and constant-term invariance on random polynomials
    for (unsigned seed = 0; seed < 4; ++seed) {
        LaurentPoly p = rnd_poly(2, seed), r = rnd_poly(2, seed + 100);
        for (int i = 0; i < 2; ++i) {
            auto w = a2->simple_element(i);
            CHECK((p * r).weyl_act(w) == p.weyl_act(w) * r.weyl_act(w));
            CHECK(p.weyl_act(w).constant_term() == p.constant_term());
        }
    }
}

TEST_CASE("specialization") {
    ParamSpec ps = a1_params();
    Rational q = ps.q(), t = ps.t(1);
    SpectralPoint rho_neg = SpectralPoint::rho_point(ps, -1);
    CHECK(specialize(LaurentPoly::constant(1, Rational(1)), rho_neg) == Rational(1));
    // E_{-1}(t^{-1/2}) = t^{-1/2} (1 - q t^2)/(1 - q t); E_1(t^{-1/2}) = t^{-1/2}
    MacdonaldContext mc(ps);
    Rational tmh = 1 / ps.t_sqrt(1);
    CHECK(specialize(mc.e_polynomial(Weight::of_ints({-1})).poly, rho_neg) ==
          tmh * (1 - q * t * t) / (1 - q * t));
    CHECK(specialize(mc.e_polynomial(Weight::of_ints({1})).poly, rho_neg) == tmh);
    // ring homomorphism on random polynomials
    SpectralPoint pt = SpectralPoint::coordinates({Rational(5, 3)});
    for (unsigned seed = 0; seed < 4; ++seed) {
        LaurentPoly p = rnd_poly(1, seed), r = rnd_poly(1, seed + 9);
        CHECK(specialize(p * r, pt) == specialize(p, pt) * specialize(r, pt));
    }
    // non-integral exponents fail loudly
    SpectralPoint half(1);
    half.push(Rational(2), {Rational(1, 2)});
    CHECK_THROWS_AS(specialize(X(1), half), usage_error);
}

TEST_CASE("exact division") {
    // (X^2 - X^{-2}) / (X^2 - 1) = 1 + X^{-2}
    LaurentPoly num = X(2) - X(-2);
    LaurentPoly den = X(2) - LaurentPoly::constant(1, Rational(1));
    CHECK(exact_divide(num, den) == LaurentPoly::constant(1, Rational(1)) + X(-2));
    LaurentPoly p = rnd_poly(1, 3);
    CHECK(exact_divide(p, LaurentPoly::constant(1, Rational(1))) == p);
    // ((s-1)X) / (X^2 - 1) = -X^{-1}
    CHECK(exact_divide(X(-1) - X(1), den) == -X(-1));
    // quotient round trip on random polys
    for (unsigned seed = 0; seed < 4; ++seed) {
        LaurentPoly a = rnd_poly(1, seed + 40), d = rnd_poly(1, seed + 80);
        if (d.is_zero()) continue;
        CHECK(exact_divide(a * d, d) == a);
    }
    CHECK_THROWS_AS(exact_divide(X(1) + LaurentPoly::constant(1, Rational(1)), den), division_error);
}

TEST_CASE("monomial flip") {
    CHECK(X(1).monomial_flip() == X(-1));
    LaurentPoly sym = X(2) + LaurentPoly::constant(1, Rational(2)) + X(-2);
    CHECK(sym.monomial_flip() == sym);
    for (unsigned seed = 0; seed < 4; ++seed) {
        LaurentPoly p = rnd_poly(2, seed);
        CHECK(p.monomial_flip().monomial_flip() == p);
    }
}

TEST_CASE("rho character") {
    ParamSpec ps = a1_params();
    CHECK(ps.rho_character(Weight::of_ints({1}), 1) == ps.t_sqrt(1));
    CHECK(ps.rho_character(Weight::zero(1), 1) == Rational(1));
    auto a2 = RootSystem::build("A2");
    ParamSpec ps2(a2, Rational(1, 2), Rational(1, 3));
    CHECK(ps2.rho_character(a2->simple_root(0).wt, 1) == ps2.t(1));
    // multiplicativity
    Weight a = Weight::of_ints({2, -1}), b = Weight::of_ints({-1, 3});
    CHECK(ps2.rho_character(a + b, 1) == ps2.rho_character(a, 1) * ps2.rho_character(b, 1));
    CHECK(ps2.rho_character(a, -1) == 1 / ps2.rho_character(a, 1));
}

TEST_CASE("parameter bases and star") {
    ParamSpec ps = a1_params();
    CHECK(ps.q() == Rational(1, 16));
    CHECK(ps.t(1) == Rational(1, 81));
    CHECK(ps.q_pow(Rational(1, 2)) == Rational(1, 4));
    CHECK(ps.t_sqrt(1) == Rational(1, 9));
    ParamSpec star = ps.starred();
    CHECK(star.q() == Rational(16));
    CHECK(star.t(1) == Rational(81));
    CHECK(!star.convergent());
    CHECK(ps.convergent());
    CHECK_THROWS_AS(ParamSpec(RootSystem::build("A1"), Rational(0), Rational(1, 3)), non_generic_error);
}

#include "doctest.h"

#include "daha/spherical.hpp"

using namespace daha;

namespace {
SphericalContext a1_ctx(long psiR = 36) {
    Cutoffs cut;
    cut.psi_R = psiR;
    return SphericalContext(ParamSpec(RootSystem::build("A1"), Rational(1, 2), Rational(1, 3)), cut);
}
bool within(const TruncatedValue& v) { return rat_abs(v.value) <= v.tail; }
}

TEST_CASE("psi: term prefactor, symmetry, shell tails") {
    auto sc = a1_ctx();
    const auto& ps = sc.params();
    // prefactor of the b = omega_1 term is q^{1/4} t^{1/2}
    CHECK(ps.q_pow(sc.rs().norm2(Weight::of_ints({1})) / 2) == ps.q_pow(Rational(1, 4)));
    CHECK(ps.rho_character(Weight::of_ints({-1}), -1) == ps.t_sqrt(1));
    SpectralPoint x = SpectralPoint::coordinates({Rational(3)});
    SpectralPoint lam = SpectralPoint::coordinates({Rational(2, 3)});
    TruncatedValue pxy = sc.psi_value(x, lam);
    TruncatedValue pyx = sc.psi_value(lam, x);
    CHECK(within(pxy - pyx));
    // coarser cutoff stays within its own tail of the finer value
    TruncatedValue coarse = sc.psi_value(x, lam, 16);
    CHECK(rat_abs(coarse.value - pxy.value) <= coarse.tail);
}

TEST_CASE("g function symmetry") {
    auto sc = a1_ctx();
    SpectralPoint x = SpectralPoint::coordinates({Rational(3)});
    SpectralPoint lam = SpectralPoint::coordinates({Rational(5, 7)});
    CHECK(within(sc.g_value(x, lam) - sc.g_value(lam, x)));
}

TEST_CASE("shintani specialization") {
    auto sc = a1_ctx();
    SpectralPoint x = SpectralPoint::coordinates({Rational(3)});
    for (long n : {0L, -2L, 1L}) {
        auto r = sc.shintani_residual(Weight::of_ints({n}), x);
        CHECK(r.pass);
        CHECK(r.residual.tail < Rational(1, 10000000000L));
    }
}

TEST_CASE("A1 Xi series") {
    auto sc = a1_ctx();
    Rational q = sc.params().q(), t = sc.params().t(1);
    // terminating sample (1.16)-style: 2-term series at L^2 = 1/(tq)
    Rational l2 = 1 / (t * q);
    TruncatedValue xt = sc.xi_a1(SphericalContext::XiKind::TildeMinus, Rational(9), l2, 20);
    CHECK(xt.tail == Rational(0));
    CHECK(xt.value == (1 - t) / (1 - t * q) + Rational(1, 9));
    // tilde-minus = minus * (1 - t/L^2)/(1 - 1/L^2)
    Rational g = Rational(16, 9);
    TruncatedValue a = sc.xi_a1(SphericalContext::XiKind::TildeMinus, Rational(16), g, 24);
    TruncatedValue b = sc.xi_a1(SphericalContext::XiKind::Minus, Rational(16), g, 24) *
                       ((1 - t / g) / (1 - 1 / g));
    CHECK(within(a - b));
    // Xi_+ goes to 1 as X -> infinity
    TruncatedValue far = sc.xi_a1(SphericalContext::XiKind::Plus, Rational(1000000), Rational(1, 4), 12);
    CHECK(rat_abs(far.value - 1) < Rational(1, 1000));
    // region guard
    CHECK_THROWS_AS(sc.xi_a1(SphericalContext::XiKind::Minus, Rational(1), Rational(4), 12),
                    insufficient_cutoff_error);
}

TEST_CASE("Theorem-1.1-type decomposition at one generic pair") {
    auto sc = a1_ctx();
    auto r = sc.hc_a1_residual(SpectralPoint::coordinates({Rational(3)}),
                               SpectralPoint::coordinates({Rational(2, 3)}));
    CHECK(r.pass);
    // degenerate lambda = Lambda_{-1}: beta weight vanishes exactly and the
    // alpha-side reduces to the terminating Shintani chain
    SpectralPoint lam(1);
    lam.push(1 / sc.params().u(1), {Rational(2)});
    lam.push(1 / sc.params().v(), {Rational(2)});
    auto r2 = sc.hc_a1_residual(SpectralPoint::coordinates({Rational(3)}), lam);
    CHECK(r2.pass);
}

TEST_CASE("A1 pointwise operator identities on G") {
    auto sc = a1_ctx();
    auto reps = sc.g_operator_residuals(SpectralPoint::coordinates({Rational(3)}),
                                        SpectralPoint::coordinates({Rational(2, 3)}));
    for (const auto& r : reps) CHECK(r.pass);
}

TEST_CASE("stabilized tables") {
    auto sc = a1_ctx();
    Rational q = sc.params().q(), t = sc.params().t(1);
    auto xt = sc.xi_stabilized(WeylElement::identity(1), Weight::of_ints({-3}));
    CHECK(xt.entry(Weight::zero(1)) == (1 - t) / (1 - t * rat_pow(q, 3)));
    auto xs = sc.xi_stabilized(sc.rs().simple_element(0), Weight::of_ints({-3}));
    CHECK(xs.entry(Weight::zero(1)) == Rational(1));
    CHECK_THROWS_AS(sc.xi_stabilized(sc.rs().simple_element(0), Weight::zero(1)), usage_error);
}

TEST_CASE("weight factors") {
    Cutoffs cut;
    SphericalContext sc2(ParamSpec(RootSystem::build("A2"), Rational(1, 2), Rational(1, 3)), cut);
    const auto& rs = sc2.rs();
    // t = 1: the identity factor is exactly 1
    SphericalContext sc_t1(ParamSpec(RootSystem::build("A2"), Rational(1, 2), Rational(1)), cut);
    TruncatedValue one = sc_t1.weight_factor(WeylElement::identity(2),
                                             SpectralPoint::coordinates({Rational(2, 5), Rational(3, 7)}));
    CHECK(one.value == Rational(1));
    // vanishing lemma at lambda = q^{b#}
    Weight b = Weight::of_ints({1, -1});
    SpectralPoint bs = sc2.macdonald().sharp_point(b);
    WeylElement surv = rs.inverse(rs.dominant_split(b).u);
    for (const auto& v : rs.all_elements()) {
        TruncatedValue f = sc2.weight_factor(v, bs);
        if (v == surv) {
            CHECK(f.certainly_nonzero());
        } else {
            CHECK(f.value == Rational(0));
            CHECK(f.tail == Rational(0));
        }
    }
    // A1: the s-factor merges into sigma via the j-shift identity
    auto sc = a1_ctx();
    SpectralPoint lam = SpectralPoint::coordinates({Rational(2, 5)});
    TruncatedValue wf = sc.weight_factor(sc.rs().simple_element(0), lam);
    TruncatedValue sig = sigma_a1_product(sc.params(), Rational(4, 25), 60);
    CHECK(within(wf - sig));
}

TEST_CASE("orbit sum on A1 duality case") {
    auto sc = a1_ctx();
    auto r = sc.orbit_sum_residual(Weight::of_ints({-1}), Weight::of_ints({1}));
    CHECK(r.pass);
    auto r0 = sc.orbit_sum_residual(Weight::zero(1), Weight::of_ints({2}));
    CHECK(r0.pass);
}

TEST_CASE("symmetric decomposition cross-check") {
    auto sc = a1_ctx();
    auto reps = sc.symmetric_hc_a1_residual(SpectralPoint::coordinates({Rational(3)}),
                                            SpectralPoint::coordinates({Rational(2, 3)}));
    for (const auto& r : reps) CHECK(r.pass);
    auto fc = sc.f_connection_residual(SpectralPoint::coordinates({Rational(3)}),
                                       SpectralPoint::coordinates({Rational(2, 3)}));
    CHECK(fc.pass);
}

#include "doctest.h"

#include "daha/affine.hpp"

using namespace daha;

TEST_CASE("affine lengths") {
    auto a2 = RootSystem::build("A2");
    AffineWeyl aw(a2);
    CHECK(aw.affine_length(ExtAffineElement::identity(*a2)) == 0);
    for (int i = 0; i < 2; ++i)
        CHECK(aw.affine_length({a2->simple_element(i), Weight::zero(2)}) == 1);
    CHECK(aw.affine_length(aw.simple_affine(0)) == 1);
    // translation by omega_1 flips two affine roots
    CHECK(aw.affine_length(ExtAffineElement::translation(Weight::of_ints({1, 0}))) == 2);
    // dominant b: l(t_b) = sum over alpha > 0 of (b, alpha^vee)
    for (long c1 = 0; c1 <= 2; ++c1)
        for (long c2 = 0; c2 <= 2; ++c2) {
            Weight b = Weight::of_ints({c1, c2});
            Rational s(0);
            for (const auto& r : a2->positive_roots) s += a2->coroot_pair(b, r);
            CHECK(Rational(aw.affine_length(ExtAffineElement::translation(b))) == s);
        }
}

TEST_CASE("affine length subadditivity and steps") {
    auto b2 = RootSystem::build("B2");
    AffineWeyl aw(b2);
    std::vector<ExtAffineElement> pool = {
        ExtAffineElement::translation(Weight::of_ints({1, -1})),
        aw.compose(ExtAffineElement::translation(Weight::of_ints({0, 2})), aw.simple_affine(1)),
        aw.compose(aw.simple_affine(0), ExtAffineElement::translation(Weight::of_ints({-1, 0}))),
    };
    for (const auto& e : pool)
        for (const auto& f : pool) {
            int lef = aw.affine_length(aw.compose(e, f));
            CHECK(lef <= aw.affine_length(e) + aw.affine_length(f));
        }
    for (const auto& e : pool) {
        int le = aw.affine_length(e);
        for (int i = 0; i <= b2->n; ++i) {
            int l2 = aw.affine_length(aw.compose(e, aw.simple_affine(i)));
            CHECK(std::abs(l2 - le) == 1);
        }
    }
}

TEST_CASE("translation words") {
    auto a1 = RootSystem::build("A1");
    AffineWeyl aw1(a1);
    SUBCASE("zero weight") {
        auto tw = aw1.translation_word(Weight::zero(1));
        CHECK(tw.word.empty());
        CHECK(tw.omega.is_identity());
    }
    SUBCASE("A1 omega_1: length-1 word, omega = (s, omega_1)") {
        auto tw = aw1.translation_word(Weight::of_ints({1}));
        CHECK(tw.word.size() == 1);
        CHECK(tw.omega.w == a1->simple_element(0));
        CHECK(tw.omega.c == Weight::of_ints({1}));
        CHECK(aw1.affine_length(tw.omega) == 0);
    }
    SUBCASE("A2 omega_1: length-2 word; decomposition reconstructs t_b") {
        auto a2 = RootSystem::build("A2");
        AffineWeyl aw2(a2);
        for (const auto& b : {Weight::of_ints({1, 0}), Weight::of_ints({-1, 2}), Weight::of_ints({-2, -1})}) {
            auto tw = aw2.translation_word(b);
            if (b == Weight::of_ints({1, 0})) CHECK(tw.word.size() == 2);
            ExtAffineElement e = tw.omega;
            for (auto it = tw.word.rbegin(); it != tw.word.rend(); ++it)
                e = aw2.compose(e, aw2.simple_affine(*it));
            CHECK(e == ExtAffineElement::translation(b));
        }
    }
}

TEST_CASE("saturation spans") {
    auto a1 = RootSystem::build("A1");
    AffineWeyl aw1(a1);
    CHECK(aw1.saturation_span(Weight::of_ints({-2})) ==
          std::vector<Weight>{Weight::of_ints({-2}), Weight::of_ints({0}), Weight::of_ints({2})});
    CHECK(aw1.saturation_span(Weight::zero(1)) == std::vector<Weight>{Weight::zero(1)});

    auto a2 = RootSystem::build("A2");
    AffineWeyl aw2(a2);
    auto span = aw2.saturation_span(Weight::of_ints({1, 0}));
    CHECK(span.size() == 3);  // the 3-element orbit of omega_1
    // W-invariance of the span
    for (const auto& w : a2->all_elements()) {
        auto other = aw2.saturation_span(w.act(Weight::of_ints({1, 0})));
        CHECK(other == span);
    }
    // closure under W
    for (const auto& c : span)
        for (int i = 0; i < 2; ++i)
            CHECK(std::find(span.begin(), span.end(), a2->simple_reflect(i, c)) != span.end());
}

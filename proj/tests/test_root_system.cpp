#include "doctest.h"

#include "daha/root_system.hpp"

using namespace daha;

namespace {
Weight w1(int n) { return Weight::fundamental(n, 0); }
}

TEST_CASE("root system invariants across supported types") {
    struct Row {
        const char* label;
        long pos_roots;
        long m;
    };
    const Row rows[] = {{"A1", 1, 2}, {"A2", 3, 3},  {"A3", 6, 4},  {"A4", 10, 5},
                        {"B2", 4, 1}, {"B3", 9, 2},  {"B4", 16, 1}, {"C2", 4, 1},
                        {"C3", 9, 1}, {"C4", 16, 1}, {"D4", 12, 2}, {"F4", 24, 1},
                        {"G2", 6, 1}};
    for (const auto& row : rows) {
        CAPTURE(row.label);
        auto rs = RootSystem::build(row.label);
        CHECK(static_cast<long>(rs->positive_roots.size()) == row.pos_roots);
        CHECK(rs->m == row.m);
        CHECK(rs->length(rs->w0) == row.pos_roots);
        CHECK((rs->w0 * rs->w0).is_identity());
        for (const auto& r : rs->positive_roots) {
            CHECK(rs->root_is_negative(rs->w0.act(r.wt)));
            if (r.nu == 1) CHECK(rs->pair(r.wt, r.wt) == Rational(2));
        }
        for (int i = 0; i < rs->n; ++i)
            for (int j = 0; j < rs->n; ++j)
                CHECK(rs->coroot_pair(Weight::fundamental(rs->n, i), rs->simple_root(j)) ==
                      Rational(i == j ? 1 : 0));
    }
    CHECK_THROWS_AS(RootSystem::build("E6"), usage_error);
    CHECK_THROWS_AS(RootSystem::build("B9"), usage_error);
}

TEST_CASE("pairing values") {
    auto a1 = RootSystem::build("A1");
    CHECK(a1->pair(w1(1), w1(1)) == Rational(1, 2));
    auto a2 = RootSystem::build("A2");
    Weight o1 = Weight::fundamental(2, 0), o2 = Weight::fundamental(2, 1);
    CHECK(a2->pair(o1, o1) == Rational(2, 3));
    CHECK(a2->pair(o1, o2) == Rational(1, 3));
    CHECK(a2->pair(o1, a2->simple_root(0).wt) == Rational(1));
    // (rho, omega_1) = 1 by bilinearity of the two pairings above
    CHECK(a2->pair(o1 + o2, o1) == Rational(1));
    CHECK_THROWS_AS(a2->pair(o1, w1(1)), usage_error);
}

TEST_CASE("G2 structure") {
    auto g2 = RootSystem::build("G2");
    int sht = 0, lng = 0;
    for (const auto& r : g2->positive_roots) (r.nu == 1 ? sht : lng)++;
    CHECK(sht == 3);
    CHECK(lng == 3);
    CHECK(g2->rho_nu.count(1) == 1);
    CHECK(g2->rho_nu.count(3) == 1);
    // rho_nu = half sum over roots of that length = matching fundamental weights
    CHECK(g2->rho_nu.at(1) == Weight::fundamental(2, 0));
    CHECK(g2->rho_nu.at(3) == Weight::fundamental(2, 1));
}

TEST_CASE("dominant split") {
    auto a1 = RootSystem::build("A1");
    SUBCASE("antidominant is fixed") {
        auto ds = a1->dominant_split(Weight::of_ints({-3}));
        CHECK(ds.u.is_identity());
        CHECK(ds.b_minus == Weight::of_ints({-3}));
        CHECK(ds.b_plus == Weight::of_ints({3}));
    }
    SUBCASE("rank one positive") {
        auto ds = a1->dominant_split(Weight::of_ints({4}));
        CHECK(ds.u.word == std::vector<int>{0});
        CHECK(ds.b_minus == Weight::of_ints({-4}));
    }
    SUBCASE("A2 omega_1 has u = s_2 s_1") {
        auto a2 = RootSystem::build("A2");
        auto ds = a2->dominant_split(Weight::of_ints({1, 0}));
        CHECK(ds.u.word == std::vector<int>{1, 0});
        CHECK(ds.b_minus == Weight::of_ints({0, -1}));
        // brute force: no shorter element maps omega_1 into P_-
        for (const auto& w : a2->all_elements()) {
            if (a2->is_antidominant(w.act(Weight::of_ints({1, 0}))))
                CHECK(a2->length(w) >= 2);
        }
    }
}

TEST_CASE("u_b minimality on a rank-2 box") {
    for (const char* label : {"A2", "B2"}) {
        auto rs = RootSystem::build(label);
        auto all = rs->all_elements();
        for (long c1 = -2; c1 <= 2; ++c1)
            for (long c2 = -2; c2 <= 2; ++c2) {
                Weight b = Weight::of_ints({c1, c2});
                auto ds = rs->dominant_split(b);
                CHECK(rs->is_antidominant(ds.b_minus));
                CHECK(ds.u.act(b) == ds.b_minus);
                int best = 1 << 20;
                for (const auto& w : all)
                    if (rs->is_antidominant(w.act(b))) best = std::min(best, rs->length(w));
                CHECK(rs->length(ds.u) == best);
                CHECK(static_cast<int>(ds.u.word.size()) == rs->length(ds.u));
            }
    }
}

TEST_CASE("reduced words and inverses") {
    auto b2 = RootSystem::build("B2");
    auto w = b2->simple_element(0) * b2->simple_element(1) * b2->simple_element(0);
    auto word = b2->reduced_word(w);
    CHECK(static_cast<int>(word.size()) == b2->length(w));
    CHECK(b2->from_word(word) == w);
    CHECK((b2->inverse(w) * w).is_identity());
}

// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
//
// Default desk-scale parameters: A1 with v = 1/2 (q = 1/16), u = 1/3
// (t = 1/81); A2 with v = 1/2 (q = 1/64), u = 1/3; cutoffs: mu/product order
// 60, theta shells 40, Psi shells (b,b)/2 <= 36, Xi depth J = 20.

#include <chrono>
#include <iostream>
#include <vector>

#include "daha/suites.hpp"

using namespace daha;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

struct Criterion {
    std::string name;
    bool pass = true;
    std::string detail;
    double seconds = 0;
};

void report(const Criterion& c) {
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << c.name;
    if (!c.detail.empty()) std::cout << " -- " << c.detail;
    std::cout << " (" << c.seconds << " s)" << std::endl;
    if (!c.pass) ++g_failures;
}

template <typename F>
void criterion(const std::string& name, F&& body) {
    Criterion c;
    c.name = name;
    auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string("exception: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report(c);
}

void absorb(Criterion& c, const std::vector<IdentityReport>& reports, const Rational& tail_budget = Rational(0)) {
    for (const auto& r : reports) {
        if (!r.pass) {
            c.pass = false;
            c.detail += " fail:" + r.identity + " residual=" + rat_approx_str(r.residual.value) +
                        " tail=" + rat_approx_str(r.residual.tail) + ";";
        } else if (tail_budget > 0 && r.residual.tail > tail_budget) {
            c.pass = false;
            c.detail += " budget:" + r.identity + " tail=" + rat_approx_str(r.residual.tail) + ";";
        }
    }
    if (c.pass && c.detail.empty()) c.detail = std::to_string(reports.size()) + " checks";
}

SuiteConfig config_for(const std::string& type) {
    SuiteConfig cfg;
    cfg.type = type;
    return cfg;
}

SphericalContext context_for(const std::string& type) {
    SuiteConfig cfg = config_for(type);
    return SphericalContext(make_params(cfg), cfg.cutoffs);
}

} // namespace

int main() {
    std::cout << "acceptance: exact-arithmetic verification at desk scale\n";

    // shared contexts so caches amortize across criteria
    SphericalContext a1 = context_for("A1");
    SphericalContext a2 = context_for("A2");
    SphericalContext b2 = context_for("B2");
    SphericalContext g2 = context_for("G2");

    criterion("1. A1 eigenproblem = closed forms, |n| <= 10, two parameter sets, < 10 s", [&](Criterion& c) {
        auto t0 = Clock::now();
        absorb(c, suites::a1_closed(a1, 10));
        SuiteConfig alt;
        alt.type = "A1";
        alt.v = Rational(1, 3);
        alt.u_sht = Rational(2, 5);
        SphericalContext a1b(make_params(alt), alt.cutoffs);
        absorb(c, suites::a1_closed(a1b, 10));
        double el = std::chrono::duration<double>(Clock::now() - t0).count();
        if (el >= 10.0) {
            c.pass = false;
            c.detail += " runtime " + std::to_string(el) + " s >= 10 s;";
        }
    });

    criterion("2. evaluation formula on boxes (A1, A2, B2: |c| <= 4; G2: |c| <= 2), < 2 min", [&](Criterion& c) {
        auto t0 = Clock::now();
        absorb(c, suites::eval(a1, 4));
        absorb(c, suites::eval(a2, 4));
        absorb(c, suites::eval(b2, 4));
        absorb(c, suites::eval(g2, 2));
        double el = std::chrono::duration<double>(Clock::now() - t0).count();
        if (el >= 120.0) {
            c.pass = false;
            c.detail += " runtime " + std::to_string(el) + " s >= 120 s;";
        }
    });

    criterion("3. duality gap = 0 on the same boxes", [&](Criterion& c) {
        absorb(c, suites::duality(a1, 4));
        absorb(c, suites::duality(a2, 4));
        absorb(c, suites::duality(b2, 4));
        absorb(c, suites::duality(g2, 2));
    });

    criterion("4. Hecke relations: quadratic, braid, Y-commutativity, A1 calibration", [&](Criterion& c) {
        absorb(c, suites::hecke(a1));
        absorb(c, suites::hecke(a2));
        absorb(c, suites::hecke(b2));
        absorb(c, suites::hecke(g2));
    });

    criterion("5. symmetric P: W-invariance, A1 P_1 = X + X^{-1}, Poincare, (2.8) factor", [&](Criterion& c) {
        absorb(c, suites::eigen(a1, 3));
        absorb(c, suites::eigen(a2, 2));
        absorb(c, suites::eigen(b2, 2));
        absorb(c, suites::eigen(g2, 1));
    });

    criterion("6. <mu> product vs expansion, tails <= 1e-12, A1 and A2", [&](Criterion& c) {
        Rational budget(1, 1000000000000L);
        absorb(c, suites::mu_ct(a1), budget);
        absorb(c, suites::mu_ct(a2), budget);
    });

    criterion("7. orthogonality <E_b E_c^* mu_o> = 0 within tails, b != c", [&](Criterion& c) {
        absorb(c, suites::ortho(a1, 4));
        absorb(c, suites::ortho(a2, 4));
        absorb(c, suites::ortho(b2, 4));
        absorb(c, suites::ortho(g2, 2));
    });

    criterion("8. Shintani residuals <= 1e-10 (A1 |n| <= 6 x 3 points; A2 6 weights x 2 points)", [&](Criterion& c) {
        Rational budget(1, 10000000000L);
        absorb(c, suites::shintani(a1), budget);
        absorb(c, suites::shintani(a2), budget);
    });

    criterion("9. Theorem-1.1 residual on a 3x3 grid plus degenerate Lambda_{+-n}, n <= 4", [&](Criterion& c) {
        absorb(c, suites::hc_a1(a1));
    });

    criterion("10. symmetric decomposition and F-connection residuals", [&](Criterion& c) {
        absorb(c, suites::hc_sym_a1(a1));
        absorb(c, suites::f_connection(a1));
        absorb(c, suites::f_connection(a2));
    });

    criterion("11. stabilization: A1/A2 closed forms exact; hc-general with exact vanishing", [&](Criterion& c) {
        absorb(c, suites::stabilize(a1));
        absorb(c, suites::stabilize(a2));
        absorb(c, suites::hc_general(a2));
    });

    criterion("12. orbit-sum residuals (A1 boxes <= 4; A2 3 x 4 sets; b_- = 0 case)", [&](Criterion& c) {
        absorb(c, suites::orbit_sum(a1));
        absorb(c, suites::orbit_sum(a2));
    });

    criterion("13. pointwise Y(G) = Lambda^{-1} G and T(G) = T_Lambda(G) at 4 sample pairs", [&](Criterion& c) {
        std::vector<IdentityReport> reps;
        for (auto [xv, lv] : std::vector<std::pair<Rational, Rational>>{
                 {Rational(3), Rational(2, 3)}, {Rational(4), Rational(2, 7)},
                 {Rational(5, 2), Rational(1, 3)}, {Rational(7, 2), Rational(3, 8)}}) {
            auto g = a1.g_operator_residuals(SpectralPoint::coordinates({xv}),
                                             SpectralPoint::coordinates({lv}));
            reps.insert(reps.end(), g.begin(), g.end());
        }
        absorb(c, reps);
    });

    criterion("14. classical limits: gaps decrease from n = 6 to n = 12 and end below 1e-8", [&](Criterion& c) {
        absorb(c, suites::limits_a1(a1, 12));
    });

    std::cout << (g_failures == 0 ? "ALL CRITERIA PASS" : "FAILURES: " + std::to_string(g_failures))
              << std::endl;
    return g_failures == 0 ? 0 : 1;
}

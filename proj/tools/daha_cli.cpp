// Command-line entry point: compute E-polynomials and global-function values,
// dump root systems, and run the verification suites as JSON-lines reports.
//
// Exit codes: 0 all requested checks pass, 1 identity failure, 2 usage error,
// 3 non-generic parameters, 4 insufficient cutoff.

#include <fstream>
#include <iostream>
#include <memory>

#include "CLI11.hpp"

#include "daha/suites.hpp"

namespace {

using namespace daha;

nlohmann::json weight_json(const Weight& w) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : w.coords) arr.push_back(rat_str(c));
    return arr;
}

nlohmann::json poly_json(const LaurentPoly& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [b, c] : p.terms()) {
        nlohmann::json coords = nlohmann::json::array();
        for (const auto& x : b.coords) coords.push_back(rat_to_long(x, "poly coord"));
        arr.push_back({coords, rat_str(c)});
    }
    return arr;
}

struct Output {
    std::ostream* os = &std::cout;
    std::ofstream file;
    std::string format = "json";

    void open(const std::string& path) {
        if (path.empty()) return;
        file.open(path);
        if (!file) throw usage_error("cannot open output path: " + path);
        os = &file;
    }
    void emit(const nlohmann::json& j) { (*os) << j.dump() << "\n"; }
    void emit_report(const IdentityReport& r) {
        if (format == "csv")
            (*os) << '"' << r.identity << "\"," << rat_approx_str(r.residual.value) << ","
                  << rat_approx_str(r.residual.tail) << "," << (r.pass ? "pass" : "fail") << "\n";
        else
            emit(to_json(r));
    }
};

std::vector<Rational> parse_coords(const std::vector<std::string>& raw, int rank, const char* what) {
    if (static_cast<int>(raw.size()) != rank)
        throw usage_error(std::string(what) + ": expected " + std::to_string(rank) + " coordinates");
    std::vector<Rational> out;
    for (const auto& s : raw) out.push_back(rat_parse(s));
    return out;
}

Weight parse_weight(const std::vector<std::string>& raw, int rank, const char* what) {
    return Weight(parse_coords(raw, rank, what));
}

int run(int argc, char** argv) {
    CLI::App app{"nonsymmetric Macdonald polynomials and global spherical function verification"};
    app.set_config("--config", "", "key=value configuration file");

    SuiteConfig cfg;
    std::string v_str = "1/2", u_str = "1/3", u_lng_str;
    std::string output_path, format = "json", tolerance_str = "0";
    app.add_option("--type", cfg.type, "root system label (A1..A4, B2..B4, C2..C4, D4, F4, G2)")
        ->envname("DAHA_TYPE");
    app.add_option("--v", v_str, "base v = q^{1/2m} as a rational string")->envname("DAHA_V");
    app.add_option("--u", u_str, "base u_sht = t_sht^{1/2m} as a rational string")->envname("DAHA_U");
    app.add_option("--u-lng", u_lng_str, "base for long roots (defaults to --u)")->envname("DAHA_U_LNG");
    app.add_option("--theta-shells", cfg.cutoffs.theta_R, "theta shell bound on (b,b)/2")->envname("DAHA_THETA_SHELLS");
    app.add_option("--product-order", cfg.cutoffs.product_N, "truncation of infinite products")->envname("DAHA_PRODUCT_ORDER");
    app.add_option("--mu-order", cfg.cutoffs.mu_N, "mu expansion order")->envname("DAHA_MU_ORDER");
    app.add_option("--psi-shells", cfg.cutoffs.psi_R, "Psi shell bound on (b,b)/2")->envname("DAHA_PSI_SHELLS");
    app.add_option("--phi-shells", cfg.cutoffs.phi_R, "Phi shell bound on (b,b)/2")->envname("DAHA_PHI_SHELLS");
    app.add_option("--xi-depth", cfg.cutoffs.xi_J, "Xi series depth J")->envname("DAHA_XI_DEPTH");
    app.add_option("--tolerance", tolerance_str, "extra tolerance added to tail budgets")->envname("DAHA_TOLERANCE");
    app.add_option("--output", output_path, "write reports to a file instead of stdout")->envname("DAHA_OUTPUT");
    app.add_option("--format", format, "json | csv")->envname("DAHA_FORMAT")
        ->check(CLI::IsMember({"json", "csv"}));

    auto* roots = app.add_subcommand("roots", "dump root system data");
    std::string roots_type;
    roots->add_option("label", roots_type, "type label")->required();

    auto* epoly = app.add_subcommand("epoly", "compute a nonsymmetric Macdonald polynomial");
    std::vector<std::string> epoly_coords;
    epoly->add_option("coords", epoly_coords, "weight coordinates")->required();

    auto* evalc = app.add_subcommand("eval", "E_b(q^{-rho_k}) by specialization and by product");
    std::vector<std::string> eval_coords;
    evalc->add_option("coords", eval_coords)->required();

    auto* dual = app.add_subcommand("duality", "duality gap for a pair b; c");
    std::vector<std::string> dual_b, dual_c;
    dual->add_option("--b", dual_b)->required();
    dual->add_option("--c", dual_c)->required();

    auto* sympoly = app.add_subcommand("sympoly", "symmetric Macdonald polynomial P_{b_-}");
    std::vector<std::string> sym_coords;
    sympoly->add_option("coords", sym_coords)->required();

    auto* mu = app.add_subcommand("mu", "constant term <mu> by product and by expansion");

    auto* theta_cmd = app.add_subcommand("theta", "theta value at a coordinate point");
    std::vector<std::string> theta_x;
    theta_cmd->add_option("point", theta_x)->required();

    auto* sigma_cmd = app.add_subcommand("sigma", "sigma_* value at a coordinate point");
    std::vector<std::string> sigma_x;
    sigma_cmd->add_option("point", sigma_x)->required();

    auto* psi_cmd = app.add_subcommand("psi", "Psi(x, lambda) at coordinate points");
    std::vector<std::string> psi_x, psi_l;
    psi_cmd->add_option("--x", psi_x)->required();
    psi_cmd->add_option("--lambda", psi_l)->required();

    auto* gfun = app.add_subcommand("gfun", "G(x, lambda) at coordinate points");
    std::vector<std::string> g_x, g_l;
    gfun->add_option("--x", g_x)->required();
    gfun->add_option("--lambda", g_l)->required();

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    verify->add_option("suite", suite, "suite name or 'all'")->required();

    app.require_subcommand(1);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cfg.v = rat_parse(v_str);
    cfg.u_sht = rat_parse(u_str);
    if (!u_lng_str.empty()) cfg.u_lng = rat_parse(u_lng_str);
    cfg.cutoffs.tolerance = rat_parse(tolerance_str);

    Output out;
    out.format = format;
    out.open(output_path);

    if (roots->parsed()) {
        auto rs = RootSystem::build(roots_type);
        nlohmann::json pos = nlohmann::json::array();
        for (const auto& r : rs->positive_roots)
            pos.push_back({{"coords", weight_json(r.wt)}, {"nu", r.nu}});
        nlohmann::json gram = nlohmann::json::array();
        for (const auto& row : rs->gram) {
            nlohmann::json r = nlohmann::json::array();
            for (const auto& x : row) r.push_back(rat_str(x));
            gram.push_back(r);
        }
        out.emit({{"type", rs->label},
                  {"rank", rs->n},
                  {"m", rs->m},
                  {"cartan", rs->cartan},
                  {"gram", gram},
                  {"positive_roots", pos},
                  {"theta_short", weight_json(rs->theta_short)},
                  {"w0_word", rs->w0.word}});
        return 0;
    }

    SphericalContext sc(make_params(cfg), cfg.cutoffs);
    auto& mc = sc.macdonald();
    const int rank = sc.rs().n;

    if (epoly->parsed()) {
        Weight b = parse_weight(epoly_coords, rank, "epoly");
        const EPolynomial& e = mc.e_polynomial(b);
        // (omega_i, b#) exponents: (omega_i, b) for the q-part and
        // -(rho_nu, u_b(omega_i))/nu per length for the t-part
        nlohmann::json sharp_q = nlohmann::json::array(), sharp_t = nlohmann::json::array();
        for (int i = 0; i < rank; ++i) {
            Weight wi = Weight::fundamental(rank, i);
            sharp_q.push_back(rat_str(sc.rs().pair(wi, b)));
            nlohmann::json tpart = nlohmann::json::array();
            for (const auto& [nu, rn] : sc.rs().rho_nu)
                tpart.push_back(rat_str(-sc.rs().pair(rn, e.u.act(wi)) / nu));
            sharp_t.push_back(tpart);
        }
        out.emit({{"b", weight_json(b)},
                  {"b_minus", weight_json(e.b_minus)},
                  {"b_plus", weight_json(e.b_plus)},
                  {"u_b_word", e.u.word},
                  {"sharp_q_exponents", sharp_q},
                  {"sharp_t_exponents", sharp_t},
                  {"coefficients", poly_json(e.poly)}});
        return 0;
    }
    if (evalc->parsed()) {
        Weight b = parse_weight(eval_coords, rank, "eval");
        Rational s = specialize(mc.e_polynomial(b).poly, SpectralPoint::rho_point(sc.params(), -1));
        Rational p = mc.evaluation_product(b);
        out.emit({{"b", weight_json(b)},
                  {"specialized", rat_str(s)},
                  {"product", rat_str(p)},
                  {"equal", s == p}});
        return s == p ? 0 : 1;
    }
    if (dual->parsed()) {
        Weight b = parse_weight(dual_b, rank, "duality b");
        Weight c = parse_weight(dual_c, rank, "duality c");
        Rational gap = mc.duality_gap(b, c);
        out.emit({{"b", weight_json(b)}, {"c", weight_json(c)}, {"gap", rat_str(gap)}, {"pass", gap == 0}});
        return gap == 0 ? 0 : 1;
    }
    if (sympoly->parsed()) {
        Weight b = parse_weight(sym_coords, rank, "sympoly");
        out.emit({{"b_minus", weight_json(b)},
                  {"P", poly_json(mc.symmetric_P(b))},
                  {"poincare", rat_str(mc.poincare_value())}});
        return 0;
    }
    if (mu->parsed()) {
        TruncatedValue prod = mu_ct_product(sc.params(), cfg.cutoffs.product_N);
        TruncatedValue expansion = mc.mu_table(Rational(64), cfg.cutoffs.mu_N).ct_raw();
        TruncatedValue diff = prod - expansion;
        bool pass = rat_abs(diff.value) <= diff.tail;
        out.emit({{"product", to_json(prod)}, {"expansion", to_json(expansion)}, {"pass", pass}});
        return pass ? 0 : 1;
    }
    if (theta_cmd->parsed()) {
        SpectralPoint x = SpectralPoint::coordinates(parse_coords(theta_x, rank, "theta"));
        out.emit({{"theta", to_json(sc.theta(x))}});
        return 0;
    }
    if (sigma_cmd->parsed()) {
        SpectralPoint x = SpectralPoint::coordinates(parse_coords(sigma_x, rank, "sigma"));
        out.emit({{"sigma_star", to_json(sigma_star_value(sc.params(), x, cfg.cutoffs.product_N))}});
        return 0;
    }
    if (psi_cmd->parsed()) {
        SpectralPoint x = SpectralPoint::coordinates(parse_coords(psi_x, rank, "psi x"));
        SpectralPoint l = SpectralPoint::coordinates(parse_coords(psi_l, rank, "psi lambda"));
        out.emit({{"psi", to_json(sc.psi_value(x, l))}});
        return 0;
    }
    if (gfun->parsed()) {
        SpectralPoint x = SpectralPoint::coordinates(parse_coords(g_x, rank, "gfun x"));
        SpectralPoint l = SpectralPoint::coordinates(parse_coords(g_l, rank, "gfun lambda"));
        out.emit({{"g", to_json(sc.g_value(x, l))}});
        return 0;
    }
    if (verify->parsed()) {
        std::vector<std::string> selected;
        if (suite == "all") {
            for (const auto& n : suite_names()) {
                // A1-only suites run only on A1; stabilize needs A1 or A2
                if (sc.rs().n != 1 &&
                    (n == "a1-closed" || n == "hc-a1" || n == "hc-sym-a1" || n == "limits-a1"))
                    continue;
                if (n == "stabilize" && sc.rs().n != 1 && sc.rs().label != "A2") continue;
                selected.push_back(n);
            }
        } else {
            selected.push_back(suite);
        }
        size_t fails = 0;
        for (const auto& name : selected) {
            auto reports = run_suite(name, sc);
            nlohmann::json sj = suite_json(name, reports);
            if (out.format == "csv") {
                for (const auto& r : reports) out.emit_report(r);
            } else {
                out.emit(sj);
            }
            fails += sj["n_fail"].get<size_t>();
        }
        return fails == 0 ? 0 : 1;
    }
    throw usage_error("no subcommand");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const daha::insufficient_cutoff_error& e) {
        std::cerr << "insufficient cutoff: " << e.what() << "\n";
        return 4;
    } catch (const daha::non_generic_error& e) {
        std::cerr << "non-generic parameters: " << e.what() << "\n";
        return 3;
    } catch (const daha::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

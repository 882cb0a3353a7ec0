#pragma once

#include <memory>
#include <optional>

#include "daha/hecke.hpp"
#include "daha/linalg.hpp"
#include "daha/qseries.hpp"

namespace daha {

// Nonsymmetric Macdonald polynomial: the unique joint Y-eigenvector on the
// saturation span of b with eigenvalues q^{-(omega_i, b#)}, normalized so the
// coefficient of X_b is 1.  b# = b - u_b^{-1}(rho_k).
struct EPolynomial {
    Weight b;
    Weight b_minus;
    Weight b_plus;
    WeylElement u;
    LaurentPoly poly;
};

// E-polynomials, their specializations and symmetrizations, and the
// mu_o-pairings, all over one ParamSpec.  The starred twin (q -> 1/q,
// t -> 1/t) is built lazily for *-conjugates and norms.
class MacdonaldContext {
  public:
    explicit MacdonaldContext(ParamSpec ps) : ctx_(std::move(ps)) {}

    const ParamSpec& params() const { return ctx_.params(); }
    const RootSystem& rs() const { return ctx_.rs(); }
    OperatorContext& ops() { return ctx_; }
    const OperatorContext& ops() const { return ctx_; }

    MacdonaldContext& starred() {
        if (!star_) star_ = std::make_unique<MacdonaldContext>(params().starred());
        return *star_;
    }

    // --- the eigenproblem ----------------------------------------------

    const EPolynomial& e_polynomial(const Weight& b) {
        auto it = cache_.find(b);
        if (it != cache_.end()) return it->second;
        if (!b.is_lattice()) throw usage_error("e_polynomial: weight not in P");
        const auto& rs = ctx_.rs();
        auto split = rs.dominant_split(b);
        const SpanData& span = span_data(split.b_plus);
        const int s = static_cast<int>(span.basis.size());

        // eigenvalues q^{-(omega_i, b#)} = q^{-(omega_i,b)} q^{(rho_k, u_b(omega_i))}
        std::vector<Rational> lambdas;
        for (int i = 0; i < rs.n; ++i) {
            Weight wi = Weight::fundamental(rs.n, i);
            lambdas.push_back(params().q_pow(-rs.pair(wi, b)) *
                              params().rho_character(split.u.act(wi), 1));
        }

        auto bi0 = span.index.find(b);
        if (bi0 == span.index.end()) throw usage_error("e_polynomial: b missing from its own span");
        const int idx_b = bi0->second;

        // Fast path: the span basis is ordered so the Y matrices are upper
        // triangular (verified per span); back-substitution then produces the
        // unique eigenvector directly, and the nonzero shifted diagonals away
        // from b certify that the joint eigenspace is one-dimensional.
        if (span.triangular) {
            auto fast = triangular_eigenvector(span, lambdas, idx_b, s);
            if (fast) {
                LaurentPoly poly(rs.n);
                for (int x = 0; x < s; ++x) poly.add_term(span.basis[static_cast<size_t>(x)], (*fast)[static_cast<size_t>(x)]);
                EPolynomial e{b, split.b_minus, split.b_plus, split.u, std::move(poly)};
                return cache_.emplace(b, std::move(e)).first->second;
            }
        }

        // kernel of M_0 - lambda_0, then intersect with the other shifts
        std::vector<std::vector<Rational>> vecs;
        {
            RationalMatrix m0 = span.mats[0];
            for (int d = 0; d < s; ++d) m0[static_cast<size_t>(d)][static_cast<size_t>(d)] -= lambdas[0];
            vecs = kernel_basis(std::move(m0), s);
        }
        for (int i = 1; i < rs.n && !vecs.empty(); ++i) {
            const int k = static_cast<int>(vecs.size());
            RationalMatrix w(static_cast<size_t>(s), std::vector<Rational>(static_cast<size_t>(k), Rational(0)));
            for (int r = 0; r < s; ++r)
                for (int c = 0; c < k; ++c) {
                    Rational acc(0);
                    for (int x = 0; x < s; ++x) {
                        const Rational& mv = span.mats[static_cast<size_t>(i)][static_cast<size_t>(r)][static_cast<size_t>(x)];
                        if (mv != 0 && vecs[static_cast<size_t>(c)][static_cast<size_t>(x)] != 0)
                            acc += mv * vecs[static_cast<size_t>(c)][static_cast<size_t>(x)];
                    }
                    acc -= lambdas[static_cast<size_t>(i)] * vecs[static_cast<size_t>(c)][static_cast<size_t>(r)];
                    w[static_cast<size_t>(r)][static_cast<size_t>(c)] = acc;
                }
            auto coeffs = kernel_basis(std::move(w), k);
            std::vector<std::vector<Rational>> next;
            for (const auto& cf : coeffs) {
                std::vector<Rational> v(static_cast<size_t>(s), Rational(0));
                for (int c = 0; c < k; ++c)
                    if (cf[static_cast<size_t>(c)] != 0)
                        for (int x = 0; x < s; ++x)
                            v[static_cast<size_t>(x)] += cf[static_cast<size_t>(c)] * vecs[static_cast<size_t>(c)][static_cast<size_t>(x)];
                next.push_back(std::move(v));
            }
            vecs = std::move(next);
        }
        if (vecs.size() != 1)
            throw non_generic_error("e_polynomial: joint eigenspace has dimension " +
                                    std::to_string(vecs.size()) + " at b=" + b.str() +
                                    " (" + params().describe() + "); resonance among spectral points of the span");

        Rational lead = vecs[0][static_cast<size_t>(idx_b)];
        if (lead == 0)
            throw non_generic_error("e_polynomial: eigenvector has zero X_b coefficient at b=" + b.str());
        LaurentPoly poly(rs.n);
        for (int x = 0; x < s; ++x)
            poly.add_term(span.basis[static_cast<size_t>(x)], vecs[0][static_cast<size_t>(x)] / lead);

        EPolynomial e{b, split.b_minus, split.b_plus, split.u, std::move(poly)};
        return cache_.emplace(b, std::move(e)).first->second;
    }

    SpectralPoint sharp_point(const Weight& b) const { return SpectralPoint::b_sharp(params(), b); }

    const LaurentPoly& star_e_polynomial(const Weight& b) {
        auto it = star_cache_.find(b);
        if (it != star_cache_.end()) return it->second;
        return star_cache_.emplace(b, starred().e_polynomial(b).poly.monomial_flip()).first->second;
    }

    // --- A1 closed forms (terminating series) ---------------------------

    // E_{-n} and E_n for the rank-one system, n >= 0 resp. n > 0.
    LaurentPoly e_polynomial_a1(long n) {
        const auto& rs = ctx_.rs();
        if (rs.n != 1) throw usage_error("e_polynomial_a1: A1 only");
        const Rational q = params().q(), t = params().t(1);
        LaurentPoly out(1);
        if (n <= 0) {
            long m = -n;
            Rational prod(1);
            for (long j = 0; j <= m; ++j) {
                Rational coef = prod * (1 - t * rat_pow(q, j)) / (1 - t * rat_pow(q, m - j));
                out.add_term(Weight::of_ints({m - 2 * j}), coef);
                prod *= (1 - rat_pow(q, m - j)) * (1 - t * rat_pow(q, j)) /
                        ((1 - rat_pow(q, 1 + j)) * (1 - t * rat_pow(q, m - j)));
            }
        } else {
            Rational prod(1);
            for (long j = 0; j <= n - 1; ++j) {
                out.add_term(Weight::of_ints({n - 2 * j}), prod * rat_pow(q, j));
                prod *= (1 - rat_pow(q, n - j - 1)) * (1 - t * rat_pow(q, j)) /
                        ((1 - rat_pow(q, 1 + j)) * (1 - t * rat_pow(q, n - j - 1)));
            }
        }
        return out;
    }

    // --- evaluation, duality, symmetrization ----------------------------

    // E_b(q^{-rho_k}) as the closed product.
    Rational evaluation_product(const Weight& b) {
        const auto& rs = ctx_.rs();
        auto split = rs.dominant_split(b);
        WeylElement uinv = rs.inverse(split.u);
        Rational out = params().rho_character(split.b_minus, 1);
        for (const auto& a : rs.positive_roots) {
            Rational xa = params().rho_character(a.wt, 1);  // X_alpha(q^{rho_k})
            Rational qa = params().q_of_root(a);
            Rational ta = params().t_of_root(a);
            long jmax = rat_to_long(-rs.coroot_pair(split.b_minus, a), "j(b,alpha)");
            if (rs.root_is_negative(uinv.act(a.wt))) jmax -= 1;
            for (long j = 1; j <= jmax; ++j) {
                Rational qj = rat_pow(qa, j);
                Rational den = 1 - qj * xa;
                if (den == 0) throw non_generic_error("evaluation_product: vanishing denominator");
                out *= (1 - qj * ta * xa) / den;
            }
        }
        return out;
    }

    // E_b(q^{c#}) E_c(q^{-rho_k}) - E_c(q^{b#}) E_b(q^{-rho_k}); zero by duality.
    Rational duality_gap(const Weight& b, const Weight& c) {
        const LaurentPoly& eb = e_polynomial(b).poly;
        const LaurentPoly& ec = e_polynomial(c).poly;
        SpectralPoint rho_neg = SpectralPoint::rho_point(params(), -1);
        return specialize(eb, sharp_point(c)) * specialize(ec, rho_neg) -
               specialize(ec, sharp_point(b)) * specialize(eb, rho_neg);
    }

    std::vector<Weight> orbit(const Weight& b) const {
        std::vector<Weight> out{b};
        for (size_t k = 0; k < out.size(); ++k)
            for (int i = 0; i < rs().n; ++i) {
                Weight img = rs().simple_reflect(i, out[k]);
                if (std::find(out.begin(), out.end(), img) == out.end()) out.push_back(img);
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    // P_{b_-} = sum_{c in W(b_+)} prod_{alpha>0, (alpha,c)>0}
    //             (t_a - X_a(q^{c#}))/(1 - X_a(q^{c#})) E_c.
    LaurentPoly symmetric_P(const Weight& b_minus) {
        const auto& rs = ctx_.rs();
        if (!rs.is_antidominant(b_minus)) throw usage_error("symmetric_P: b not antidominant");
        LaurentPoly out(rs.n);
        for (const Weight& c : orbit(b_minus)) {
            SpectralPoint csharp = sharp_point(c);
            Rational coef(1);
            for (const auto& a : rs.positive_roots) {
                if (!(rs.pair(a.wt, c) > 0)) continue;
                Rational xa = csharp.value(a.wt);
                if (xa == 1) throw non_generic_error("symmetric_P: vanishing denominator");
                coef *= (params().t_of_root(a) - xa) / (1 - xa);
            }
            out = out + e_polynomial(c).poly * coef;
        }
        return out;
    }

    // P''_{b_-} = sum_{c} prod_{alpha>0} (t_a - X_a(q^{c#}))/(1 - X_a(q^{c#})) E'_c,
    // with E'_c = E_c / E_c(q^{-rho_k}).
    LaurentPoly symmetric_P_normalized(const Weight& b_minus) {
        const auto& rs = ctx_.rs();
        if (!rs.is_antidominant(b_minus)) throw usage_error("symmetric_P_normalized: b not antidominant");
        SpectralPoint rho_neg = SpectralPoint::rho_point(params(), -1);
        LaurentPoly out(rs.n);
        for (const Weight& c : orbit(b_minus)) {
            SpectralPoint csharp = sharp_point(c);
            Rational coef(1);
            for (const auto& a : rs.positive_roots) {
                Rational xa = csharp.value(a.wt);
                if (xa == 1) throw non_generic_error("symmetric_P_normalized: vanishing denominator");
                coef *= (params().t_of_root(a) - xa) / (1 - xa);
            }
            Rational ev = specialize(e_polynomial(c).poly, rho_neg);
            if (ev == 0) throw non_generic_error("symmetric_P_normalized: E_c(q^{-rho_k}) = 0");
            out = out + e_polynomial(c).poly * (coef / ev);
        }
        return out;
    }

    // prod_{alpha>0} (1 - t_a q^{(alpha,rho_k)})/(1 - q^{(alpha,rho_k)}).
    // A factor with t_a = 1 is identically 1 (numerator equals denominator),
    // which also covers the t = 1 degeneration where q^{(alpha,rho_k)} = 1.
    Rational poincare_value() const {
        Rational out(1);
        for (const auto& a : rs().positive_roots) {
            if (params().t_of_root(a) == 1) continue;
            Rational xa = params().rho_character(a.wt, 1);
            if (xa == 1) throw non_generic_error("poincare_value: vanishing denominator");
            out *= (1 - params().t_of_root(a) * xa) / (1 - xa);
        }
        return out;
    }

    // --- mu_o pairings ---------------------------------------------------

    // Make sure the table covers weights with (w,w) <= ball at order >= N.
    // The expansion ball is grown past the support requirement until the
    // certified l1 error is small; dropped monomials outside the ball are a
    // real error source, not just missing coverage.  The slowest decay is
    // t_max^i along a short-root string at norm 2 i^2, so the starting ball
    // is sized from log(target)/log|t_max|.
    MuTable& mu_table(const Rational& ball, long N) {
        if (mu_ && mu_->ball() >= ball && mu_->order() >= N) return *mu_;
        const Rational target = Rational(1, mpz_class("100000000000000000000"));  // 1e-20
        Rational b = ball;
        if (mu_ && mu_->ball() * 2 > b) b = mu_->ball() * 2;  // amortize growth
        if (b < 256) b = 256;
        {
            Rational tmax(0);
            for (int nu : params().nus()) {
                Rational ta = rat_abs(params().t(nu));
                if (ta > tmax) tmax = ta;
            }
            if (tmax > 0 && tmax < 1) {
                long bits_needed = -approx_log2(target);
                long bits_per_step = -approx_log2(tmax);
                if (bits_per_step < 1) bits_per_step = 1;
                long steps = bits_needed / bits_per_step + 2;
                Rational est = Rational(2 * steps * steps);
                if (est > b) b = est;
            }
        }
        long n = N;
        if (mu_ && mu_->order() > n) n = mu_->order();
        for (int attempt = 0; attempt < 8; ++attempt) {
            mu_ = std::make_unique<MuTable>(params(), b, n, target);
            if (mu_->l1_error() <= target) break;
            b *= 2;
        }
        return *mu_;
    }

    // <E_b E_c^* mu_o>
    TruncatedValue pairing(const Weight& b, const Weight& c, long N) {
        const LaurentPoly& eb = e_polynomial(b).poly;
        const LaurentPoly& ecs = star_e_polynomial(c);
        Rational ball = pair_ball(b, c);
        return mu_table(ball, N).pair_product(eb, ecs);
    }

    // <p mu_o> for an arbitrary polynomial (used by the symmetric norms).
    TruncatedValue pairing_poly(const LaurentPoly& p, long N) {
        Rational ball(0);
        for (const auto& [w, cf] : p.terms()) {
            Rational nn = rs().norm2(w);
            if (nn > ball) ball = nn;
        }
        return mu_table(ball, N).pair(p);
    }

    Rational pair_ball(const Weight& b, const Weight& c) const {
        Weight bp = rs().dominant_representative(b);
        Weight cp = rs().dominant_representative(c);
        return 2 * (rs().norm2(bp) + rs().norm2(cp));
    }

  private:
    struct SpanData {
        std::vector<Weight> basis;
        std::map<Weight, int> index;
        std::vector<RationalMatrix> mats;  // one per fundamental weight
        bool triangular = false;
    };

    const SpanData& span_data(const Weight& b_plus) {
        auto it = spans_.find(b_plus);
        if (it != spans_.end()) return it->second;
        const auto& rs = ctx_.rs();
        SpanData sd;
        sd.basis = ctx_.affine().saturation_span(b_plus);
        // dominance order: by |c_+|^2, then length of u_c descending, then lex;
        // the Y matrices are then upper triangular (verified below).
        std::stable_sort(sd.basis.begin(), sd.basis.end(), [&](const Weight& a, const Weight& b) {
            auto sa = rs.dominant_split(a), sb = rs.dominant_split(b);
            Rational na = rs.norm2(sa.b_plus), nb = rs.norm2(sb.b_plus);
            if (na != nb) return na < nb;
            size_t la = sa.u.word.size(), lb = sb.u.word.size();
            if (la != lb) return la > lb;
            return a < b;
        });
        const int s = static_cast<int>(sd.basis.size());
        for (int x = 0; x < s; ++x) sd.index[sd.basis[static_cast<size_t>(x)]] = x;

        // T_j expansions of every basis monomial, indexed into the span
        std::vector<std::vector<std::vector<std::pair<int, Rational>>>> tmono(
            static_cast<size_t>(rs.n + 1));
        for (int j = 0; j <= rs.n; ++j) {
            tmono[static_cast<size_t>(j)].resize(static_cast<size_t>(s));
            for (int x = 0; x < s; ++x) {
                for (auto& [w, coef] : ctx_.apply_T_monomial(j, sd.basis[static_cast<size_t>(x)])) {
                    auto wi = sd.index.find(w);
                    if (wi == sd.index.end())
                        throw usage_error("span_data: T image escapes the saturation span at " + w.str());
                    tmono[static_cast<size_t>(j)][static_cast<size_t>(x)].emplace_back(wi->second, coef);
                }
            }
        }
        sd.mats.assign(static_cast<size_t>(rs.n),
                       RationalMatrix(static_cast<size_t>(s), std::vector<Rational>(static_cast<size_t>(s), Rational(0))));
        for (int i = 0; i < rs.n; ++i) {
            const auto& tw = ctx_.translation_word_cache(i, true);
            for (int col = 0; col < s; ++col) {
                std::map<int, Rational> vec{{col, Rational(1)}};
                for (int letter : tw.word) {
                    std::map<int, Rational> nxt;
                    for (const auto& [idx, val] : vec)
                        for (const auto& [ridx, coef] : tmono[static_cast<size_t>(letter)][static_cast<size_t>(idx)]) {
                            auto [it, fresh] = nxt.emplace(ridx, val * coef);
                            if (!fresh) it->second += val * coef;
                        }
                    vec = std::move(nxt);
                }
                for (const auto& [idx, val] : vec) {
                    if (val == 0) continue;
                    // apply_ext(omega): X_b -> q^{(c,b)} X_{w(b)}
                    const Weight& bw = sd.basis[static_cast<size_t>(idx)];
                    Weight img = tw.omega.w.act(bw);
                    auto wi = sd.index.find(img);
                    if (wi == sd.index.end())
                        throw usage_error("span_data: omega image escapes the span at " + img.str());
                    sd.mats[static_cast<size_t>(i)][static_cast<size_t>(wi->second)][static_cast<size_t>(col)] +=
                        val * ctx_.params().q_pow(rs.pair(tw.omega.c, bw));
                }
            }
        }
        sd.triangular = true;
        for (int i = 0; i < rs.n && sd.triangular; ++i)
            for (int r = 0; r < s && sd.triangular; ++r)
                for (int c = 0; c < r; ++c)
                    if (sd.mats[static_cast<size_t>(i)][static_cast<size_t>(r)][static_cast<size_t>(c)] != 0) {
                        sd.triangular = false;
                        break;
                    }
        return spans_.emplace(b_plus, std::move(sd)).first->second;
    }

    // Back-substitution for the upper-triangular case.  Returns nothing when
    // a shifted diagonal away from b vanishes for every i (possible resonance)
    // or a consistency row fails; the caller then uses the robust kernel path.
    std::optional<std::vector<Rational>> triangular_eigenvector(const SpanData& span,
                                                                const std::vector<Rational>& lambdas,
                                                                int idx_b, int s) const {
        const int n = ctx_.rs().n;
        std::vector<Rational> v(static_cast<size_t>(s), Rational(0));
        for (int r = s - 1; r >= 0; --r) {
            std::vector<Rational> rhs(static_cast<size_t>(n), Rational(0));
            for (int i = 0; i < n; ++i)
                for (int c = r + 1; c < s; ++c) {
                    const Rational& m = span.mats[static_cast<size_t>(i)][static_cast<size_t>(r)][static_cast<size_t>(c)];
                    if (m != 0 && v[static_cast<size_t>(c)] != 0) rhs[static_cast<size_t>(i)] += m * v[static_cast<size_t>(c)];
                }
            if (r == idx_b) {
                for (int i = 0; i < n; ++i) {
                    Rational diag = span.mats[static_cast<size_t>(i)][static_cast<size_t>(r)][static_cast<size_t>(r)] - lambdas[static_cast<size_t>(i)];
                    if (diag != 0 || rhs[static_cast<size_t>(i)] != 0) return std::nullopt;
                }
                v[static_cast<size_t>(r)] = 1;
                continue;
            }
            int pick = -1;
            for (int i = 0; i < n; ++i) {
                Rational diag = span.mats[static_cast<size_t>(i)][static_cast<size_t>(r)][static_cast<size_t>(r)] - lambdas[static_cast<size_t>(i)];
                if (diag != 0) { pick = i; break; }
            }
            if (pick < 0) return std::nullopt;  // eigenvalue collision at this basis weight
            Rational diag = span.mats[static_cast<size_t>(pick)][static_cast<size_t>(r)][static_cast<size_t>(r)] - lambdas[static_cast<size_t>(pick)];
            v[static_cast<size_t>(r)] = -rhs[static_cast<size_t>(pick)] / diag;
            // remaining equations at this row must agree
            for (int i = 0; i < n; ++i) {
                if (i == pick) continue;
                Rational d2 = span.mats[static_cast<size_t>(i)][static_cast<size_t>(r)][static_cast<size_t>(r)] - lambdas[static_cast<size_t>(i)];
                if (d2 * v[static_cast<size_t>(r)] + rhs[static_cast<size_t>(i)] != 0) return std::nullopt;
            }
        }
        return v;
    }

    OperatorContext ctx_;
    std::map<Weight, EPolynomial> cache_;
    std::map<Weight, LaurentPoly> star_cache_;
    std::map<Weight, SpanData> spans_;
    std::unique_ptr<MacdonaldContext> star_;
    std::unique_ptr<MuTable> mu_;
};

} // namespace daha

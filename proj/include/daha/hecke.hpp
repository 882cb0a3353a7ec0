#pragma once

#include <functional>

#include "daha/affine.hpp"
#include "daha/laurent.hpp"
#include "daha/params.hpp"
#include "daha/spectral.hpp"
#include "daha/truncated.hpp"

namespace daha {

// The polynomial representation.
//
// Extended affine elements e = (w, c) act on monomials by
//
//     X_b -> q^{(c,b)} X_{w(b)},
//
// which fixes (id, omega_1) on A1 to Gamma(X^n) = q^{n/2} X^n and makes
// s_0 = (s_theta, theta) act by s_0(X_b) = q^{(theta,b)} X_{s_theta(b)}.
//
// Demazure-Lusztig operators, i = 0..n:
//
//     T_i = t_i^{1/2} s_i + (t_i^{1/2} - t_i^{-1/2}) (X_{a_i} - 1)^{-1} (s_i - 1),
//
// with X_{a_0} = q X_theta^{-1}, t_0 = t_sht.  The difference Dunkl operator
// Y_a for dominant a is read off the reduced decomposition of the translation
// by -a:  t_{-a} = pi s_{i_l} ... s_{i_1}  gives
//
//     Y_a = pi o T_{i_l} o ... o T_{i_1}   (T_{i_1} applied first).
//
// The orientation is the one calibrated by the A1 identity Y = s Gamma T and
// by Y_a(1) = q^{(rho_k, a)}; both are rechecked at construction.
class OperatorContext {
  public:
    explicit OperatorContext(ParamSpec ps)
        : ps_(std::move(ps)), aw_(ps_.rs_ptr()) {
        const auto& rs = ps_.rs();
        s0_ = ExtAffineElement{aw_.reflection_matrix(rs.theta_short), rs.theta_short};
        for (int i = 0; i < rs.n; ++i) {
            Weight w = Weight::fundamental(rs.n, i);
            words_pos_.push_back(aw_.translation_word(w));
            words_neg_.push_back(aw_.translation_word(-w));
        }
        calibrate();
    }

    const ParamSpec& params() const { return ps_; }
    const RootSystem& rs() const { return ps_.rs(); }
    const AffineWeyl& affine() const { return aw_; }
    const AffineWeyl::TranslationWord& translation_word_cache(int i, bool negative) const {
        return negative ? words_neg_[static_cast<size_t>(i)] : words_pos_[static_cast<size_t>(i)];
    }

    // --- elementary actions --------------------------------------------

    LaurentPoly apply_ext(const ExtAffineElement& e, const LaurentPoly& p) const {
        LaurentPoly out(p.rank());
        for (const auto& [b, c] : p.terms())
            out.add_term(e.w.act(b), c * ps_.q_pow(rs().pair(e.c, b)));
        return out;
    }

    LaurentPoly apply_s(int i, const LaurentPoly& p) const {
        if (i == 0) return apply_ext(s0_, p);
        return p.weyl_act(rs().simple_element(i - 1));
    }

    // X_{a_i} - 1 as a polynomial.
    LaurentPoly affine_coordinate(int i) const {
        LaurentPoly d(rs().n);
        if (i == 0) d.add_term(-(rs().theta_short), ps_.q());
        else d.add_term(rs().simple_root(i - 1).wt, Rational(1));
        d.add_term(Weight::zero(rs().n), Rational(-1));
        return d;
    }

    int t_index(int i) const { return i == 0 ? 1 : rs().simple_nu[static_cast<size_t>(i - 1)]; }

    LaurentPoly apply_T(int i, const LaurentPoly& p) const {
        const int nu = t_index(i);
        const Rational th = ps_.t_sqrt(nu);
        LaurentPoly sp = apply_s(i, p);
        LaurentPoly quotient = exact_divide(sp - p, affine_coordinate(i));
        return sp * th + quotient * (th - 1 / th);
    }

    // T_i^{-1} = T_i - t_i^{1/2} + t_i^{-1/2} from the quadratic relation.
    LaurentPoly apply_T_inverse(int i, const LaurentPoly& p) const {
        const int nu = t_index(i);
        const Rational th = ps_.t_sqrt(nu);
        return apply_T(i, p) - p * (th - 1 / th);
    }

    // T_i on a single monomial in closed form: the Demazure quotient of a
    // monomial is a root-string sum, so no division is needed.  Matches
    // apply_T on monomials exactly (tested); used for the span matrices.
    std::vector<std::pair<Weight, Rational>> apply_T_monomial(int i, const Weight& c) const {
        const auto& rs = ps_.rs();
        const Rational th = ps_.t_sqrt(t_index(i));
        const Rational gap = th - 1 / th;
        std::vector<std::pair<Weight, Rational>> out;
        if (i >= 1) {
            const Root& a = rs.simple_root(i - 1);
            long k = rat_to_long(rs.coroot_pair(c, a), "string length");
            out.emplace_back(c - a.wt * Rational(k), th);  // t^{1/2} s_i
            if (k > 0)
                for (long j = 1; j <= k; ++j) out.emplace_back(c - a.wt * Rational(j), -gap);
            else if (k < 0)
                for (long j = 0; j <= -k - 1; ++j) out.emplace_back(c + a.wt * Rational(j), gap);
        } else {
            const Weight& th_rt = rs.theta_short;
            auto rt = rs.find_root(th_rt);
            long k = rat_to_long(rs.coroot_pair(c, **rt), "string length");
            out.emplace_back(c - th_rt * Rational(k), th * rat_pow(ps_.q(), k));  // t^{1/2} s_0
            if (k > 0)
                for (long j = 0; j <= k - 1; ++j) out.emplace_back(c - th_rt * Rational(j), gap * rat_pow(ps_.q(), j));
            else if (k < 0)
                for (long j = 1; j <= -k; ++j) out.emplace_back(c + th_rt * Rational(j), -gap * rat_pow(ps_.q(), -j));
        }
        // merge duplicates (the s_i-image can coincide with a string term)
        std::map<Weight, Rational> merged;
        for (auto& [w, coef] : out) {
            auto [it, fresh] = merged.emplace(w, coef);
            if (!fresh) it->second += coef;
        }
        out.clear();
        for (auto& [w, coef] : merged)
            if (coef != 0) out.emplace_back(w, coef);
        return out;
    }

    // Y for one fundamental weight; a = omega_i.
    LaurentPoly apply_Y_fundamental(int i, const LaurentPoly& p) const {
        const auto& tw = words_neg_[static_cast<size_t>(i)];
        LaurentPoly out = p;
        for (int j : tw.word) out = apply_T(j, out);
        return apply_ext(tw.omega, out);
    }

    LaurentPoly apply_Y_fundamental_inverse(int i, const LaurentPoly& p) const {
        const auto& tw = words_neg_[static_cast<size_t>(i)];
        LaurentPoly out = apply_ext(aw_.inverse(tw.omega), p);
        for (auto it = tw.word.rbegin(); it != tw.word.rend(); ++it)
            out = apply_T_inverse(*it, out);
        return out;
    }

    // General a in P: split a = a_+ - a_- over the fundamental coordinates.
    LaurentPoly apply_Y(const Weight& a, const LaurentPoly& p) const {
        if (!a.is_lattice()) throw usage_error("apply_Y: weight not in P");
        LaurentPoly out = p;
        for (int i = 0; i < rs().n; ++i) {
            long c = rat_to_long(a.coords[static_cast<size_t>(i)], "Y exponent");
            for (long k = 0; k < c; ++k) out = apply_Y_fundamental(i, out);
            for (long k = 0; k > c; --k) out = apply_Y_fundamental_inverse(i, out);
        }
        return out;
    }

    // --- A1 pointwise operators ----------------------------------------

    using PointFn = std::function<TruncatedValue(const SpectralPoint&)>;
    enum class A1Op { S, Gamma, T, Y };

    // Operators acting on numeric evaluators; used for the checks
    // Y(G) = Lambda^{-1} G and T(G) = T_Lambda(G) at sample points.
    TruncatedValue a1_pointwise(A1Op op, const PointFn& f, const SpectralPoint& x) const {
        if (rs().n != 1) throw usage_error("a1_pointwise: A1 only");
        switch (op) {
            case A1Op::S: return f(x.inverse());
            case A1Op::Gamma: return f(gamma_shift() * x);
            case A1Op::T: return pointwise_T(f, x);
            case A1Op::Y: {
                // Y = s o Gamma o T:  Y(f)(X) = (T f)(q^{1/2} X^{-1}).
                return pointwise_T(f, gamma_shift() * x.inverse());
            }
        }
        throw usage_error("a1_pointwise: unknown operator");
    }

  private:
    SpectralPoint gamma_shift() const {
        // the point with value q^{n/2} on n omega_1
        SpectralPoint p(1);
        p.push(ps_.v(), {Rational(ps_.m())});
        return p;
    }

    TruncatedValue pointwise_T(const PointFn& f, const SpectralPoint& x) const {
        Rational x2 = x.value(rs().simple_root(0).wt);
        if (x2 == 1) throw pole_error("a1_pointwise: X^2 = 1");
        const Rational th = ps_.t_sqrt(1);
        TruncatedValue fs = f(x.inverse());
        TruncatedValue fx = f(x);
        TruncatedValue diff = fs - fx;
        return fs * th + diff * ((th - 1 / th) / (x2 - 1));
    }

    void calibrate() {
        const auto& rs = ps_.rs();
        // Eigenvalue on E_0 = 1:  Y_{omega_i}(1) = q^{(rho_k, omega_i)}.
        LaurentPoly one = LaurentPoly::constant(rs.n, Rational(1));
        for (int i = 0; i < rs.n; ++i) {
            LaurentPoly y1 = apply_Y_fundamental(i, one);
            Rational expect = ps_.rho_character(Weight::fundamental(rs.n, i), 1);
            if (y1 != one * expect)
                throw non_generic_error("OperatorContext: Y calibration failed on E_0 for " + rs.label);
        }
        if (rs.n == 1) {
            // Y = s Gamma T as exact polynomials on a few monomials.
            for (long nn = -3; nn <= 3; ++nn) {
                LaurentPoly xn = LaurentPoly::monomial(Weight::of_ints({nn}));
                LaurentPoly lhs = apply_Y_fundamental(0, xn);
                LaurentPoly rhs = apply_ext(ExtAffineElement{rs.simple_element(0), Weight::fundamental(1, 0)},
                                            apply_T(1, xn));
                if (lhs != rhs)
                    throw non_generic_error("OperatorContext: A1 calibration Y != s Gamma T");
            }
        }
    }

    ParamSpec ps_;
    AffineWeyl aw_;
    ExtAffineElement s0_;
    std::vector<AffineWeyl::TranslationWord> words_pos_;
    std::vector<AffineWeyl::TranslationWord> words_neg_;
};

} // namespace daha

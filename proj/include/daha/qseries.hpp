#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "daha/laurent.hpp"
#include "daha/mpfloat.hpp"
#include "daha/params.hpp"
#include "daha/spectral.hpp"
#include "daha/truncated.hpp"

namespace daha {

// -------------------------------------------------------------------------
// Truncated infinite products.
//
// A ProductFamily describes  prod_{j >= j0}  prod_k (1 - gen_k * r^j)^{e_k}
// with e_k = +-1 and |r| < 1.  The finite part up to j <= N is exact; the
// remaining factors are certified against 1:
//
//   elementary deviations   |(1-x) - 1| = |x|,  |(1-x)^{-1} - 1| <= |x|/(1-|x|)
//   per-factor-group        |f_j - 1| <= D_j / (1 - D_j),  D_j = sum_k delta_{k,j}
//   whole tail product      |prod_{j>N} f_j - 1| <= S/(1-S),  S = sum_{j>N} D_j-bound
//
// using prod(1+d) <= 1/(1 - sum d).  Any certified-exact zero factor makes
// the whole product exactly zero.  A vanishing denominator factor raises
// pole_error.
// -------------------------------------------------------------------------

struct ProductFamily {
    std::vector<std::pair<Rational, int>> gens;  // (gen, exponent +-1)
    Rational ratio;
    long j0 = 1;
    std::string name = "product";
};

inline TruncatedValue truncated_product(const std::vector<ProductFamily>& families, long N) {
    Rational value(1);
    bool exact_zero = false;
    Rational tail_rel(0);  // sum over families of S/(1-S)
    for (const auto& fam : families) {
        if (rat_abs(fam.ratio) >= 1 && !fam.gens.empty())
            throw insufficient_cutoff_error(fam.name + ": ratio |r| >= 1 does not contract");
        for (long j = fam.j0; j <= N; ++j) {
            Rational rj = rat_pow(fam.ratio, j);
            for (const auto& [g, e] : fam.gens) {
                Rational f = 1 - g * rj;
                if (f == 0) {
                    if (e > 0) exact_zero = true;
                    else throw pole_error(fam.name + ": pole at j=" + std::to_string(j));
                } else if (e > 0) {
                    value *= f;
                } else {
                    value /= f;
                }
            }
        }
        // tail bound over j > N
        Rational rhat = rat_abs(fam.ratio);
        Rational rN1 = rat_pow(rhat, N + 1);
        Rational dhat(0);   // bound on D_j at j = N+1 (decreasing in j)
        Rational ssum(0);   // sum_{j>N} sum_k |gen_k| rhat^j
        for (const auto& [g, e] : fam.gens) {
            Rational x = rat_abs(g) * rN1;
            if (x >= 1)
                throw insufficient_cutoff_error(fam.name + ": tail factor |gen r^j| >= 1 at j=N+1");
            dhat += (e > 0) ? x : x / (1 - x);
            ssum += rat_abs(g) * rN1 / (1 - rhat);
        }
        if (dhat >= 1)
            throw insufficient_cutoff_error(fam.name + ": tail deviation not contracting");
        Rational S = ssum / ((1 - dhat) * (1 - dhat));
        if (S >= 1) throw insufficient_cutoff_error(fam.name + ": tail mass >= 1, raise N");
        tail_rel += S / (1 - S);
    }
    if (exact_zero) {
        TruncatedValue z = TruncatedValue::exact(Rational(0));
        z.note("product_N", N);
        return z;
    }
    TruncatedValue out(value, rat_abs(value) * tail_rel);
    out.note("product_N", N);
    return out;
}

// sigma_*(Lambda) = prod_{alpha>0} prod_{j>=1} (1 - t_a q_a^j / L_a)/(1 - q_a^j / L_a),
// the asymptotic-weight modification of the q,t Harish-Chandra function.
inline TruncatedValue sigma_star_value(const ParamSpec& ps, const SpectralPoint& lambda, long N) {
    std::vector<ProductFamily> fams;
    for (const auto& a : ps.rs().positive_roots) {
        Rational linv = 1 / lambda.value(a.wt);
        ProductFamily f;
        f.gens = {{ps.t_of_root(a) * linv, +1}, {linv, -1}};
        f.ratio = ps.q_of_root(a);
        f.j0 = 1;
        f.name = "sigma_star";
        fams.push_back(std::move(f));
    }
    return truncated_product(fams, N);
}

// A1 sigma(Lambda) = prod_{j>=0} (1 - t q^j L)/(1 - q^j L) with L = Lambda^2,
// together with its series form 1 + sum_j L^j prod_{s<=j} (1-t q^{s-1})/(1-q^s).
inline TruncatedValue sigma_a1_product(const ParamSpec& ps, const Rational& lambda2, long N) {
    ProductFamily f;
    f.gens = {{ps.t(1) * lambda2, +1}, {lambda2, -1}};
    f.ratio = ps.q();
    f.j0 = 0;
    f.name = "sigma_a1";
    return truncated_product({f}, N);
}

inline TruncatedValue sigma_a1_series(const ParamSpec& ps, const Rational& lambda2, long N) {
    if (rat_abs(lambda2) >= 1)
        throw insufficient_cutoff_error("sigma_a1_series: |Lambda^2| >= 1 outside series region");
    const Rational q = ps.q(), t = ps.t(1);
    Rational term(1), sum(1), envelope(0);
    for (long j = 1; j <= N; ++j) {
        term *= lambda2 * (1 - t * rat_pow(q, j - 1)) / (1 - rat_pow(q, j));
        sum += term;
    }
    // |term_{j+1}/term_j| <= |L| (1+|t| |q|^N)/(1-|q|^{N+1}) for j >= N
    Rational rho = rat_abs(lambda2) * (1 + rat_abs(t) * rat_pow(rat_abs(q), N)) / (1 - rat_pow(rat_abs(q), N + 1));
    if (rho >= 1) throw insufficient_cutoff_error("sigma_a1_series: tail ratio >= 1");
    envelope = rat_abs(term);
    TruncatedValue out(sum, envelope * rho / (1 - rho));
    out.note("series_N", N);
    return out;
}

// -------------------------------------------------------------------------
// theta(X) = sum_{b in P} q^{(b,b)/2} X_b, |q| < 1.
//
// Partial sum over the shell (b,b)/2 <= R.  The tail is the rigorous
// envelope: for (b,b)/2 > R split q^{(b,b)/2} = q^{(b,b)/4} q^{(b,b)/4},
// bound one half by |q|^{R/2} and the other coordinatewise through
// (b,b) >= gamma sum c_j^2, so that
//
//   tail <= |q|^{floor(R/2)} prod_j sum_{c in Z} |q|^{floor(gamma c^2/4)} B_j^{|c|},
//
// with B_j the coordinate growth envelope of the evaluation point.  Each 1-D
// sum converges geometrically and is summed until its term ratio drops
// below 1/2.
// -------------------------------------------------------------------------

inline long approx_log2(const Rational& x) {
    if (x == 0) return -100000;
    return static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
           static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
}

inline TruncatedValue theta_value(const ParamSpec& ps, const SpectralPoint& pt, long R) {
    if (!ps.convergent()) throw insufficient_cutoff_error("theta_value: requires |q| < 1");
    const auto& rs = ps.rs();
    const int n = rs.n;
    const Rational qabs = rat_abs(ps.q());

    auto partial_sum = [&](long r) {
        std::vector<long> box(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i)
            box[static_cast<size_t>(i)] = rat_isqrt_ceil(Rational(4 * r) / rs.simple_nu[static_cast<size_t>(i)]);
        Rational sum(0);
        std::vector<long> cur(static_cast<size_t>(n), 0);
        std::function<void(size_t)> rec = [&](size_t k) {
            if (k == static_cast<size_t>(n)) {
                Weight b = Weight::of_ints(cur);
                Rational nn = rs.norm2(b);
                if (nn > Rational(2 * r)) return;
                sum += ps.q_pow(nn / 2) * pt.value(b);
                return;
            }
            for (long v = -box[k]; v <= box[k]; ++v) {
                cur[k] = v;
                rec(k + 1);
            }
        };
        rec(0);
        return sum;
    };

    // coordinate envelope C with tail(R) <= |q|^{floor(R/2)} C
    Rational gamma = rs.gram_lower_bound();
    auto growth = pt.coordinate_growth();
    Rational envc(1);
    for (int j = 0; j < n; ++j) {
        Rational cj(1);
        Rational term(1);
        long c = 0;
        while (true) {
            ++c;
            long e = rat_floor(gamma * Rational(c) * Rational(c) / 4);
            term = rat_pow(qabs, e) * rat_pow(growth[static_cast<size_t>(j)], c);
            cj += 2 * term;
            long ediff = rat_floor(gamma * Rational(2 * c + 1) / 4) - 1;
            if (ediff < 0) ediff = 0;
            Rational ratio = rat_pow(qabs, ediff) * growth[static_cast<size_t>(j)];
            if (ratio <= Rational(1, 2)) {
                cj += 2 * term;  // geometric remainder <= last term
                break;
            }
            if (c > 10000)
                throw insufficient_cutoff_error("theta_value: coordinate envelope does not contract");
        }
        envc *= cj;
    }

    // pick the shell bound: at least the requested R, and deep enough that
    // the envelope is ~1e-24 relative to the partial sum
    Rational sum = partial_sum(R);
    Rational env = rat_pow(qabs, rat_floor(Rational(R, 2))) * envc;
    Rational scale = rat_abs(sum);
    if (scale == 0) scale = 1;
    const long rel_bits = 80;  // ~1e-24
    long deficit = approx_log2(env) - (approx_log2(scale) - rel_bits);
    if (deficit > 0) {
        long qbits = -approx_log2(qabs);
        if (qbits < 1) qbits = 1;
        long r2 = R + 2 * (deficit / qbits + 2);
        if (r2 > 2000000) throw insufficient_cutoff_error("theta_value: cannot reach tail target");
        sum = partial_sum(r2);
        env = rat_pow(qabs, rat_floor(Rational(r2, 2))) * envc;
        R = r2;
    }
    TruncatedValue out(sum, env);
    out.note("theta_R", R);
    return out;
}

// -------------------------------------------------------------------------
// The mu weight and its constant-term normalization mu_o = mu / <mu>.
//
// mu = prod_{alpha>0} prod_{j>=0} (1 - X_a q_a^j)(1 - X_a^{-1} q_a^{j+1})
//                               / ((1 - X_a t_a q_a^j)(1 - X_a^{-1} t_a q_a^{j+1}))
//
// expanded as a Laurent table over a norm ball.  Factors are applied one by
// one; geometric series are cut at the magnitude threshold |q|^N, monomials
// leaving the ball are dropped, and every dropped piece is charged to a
// single l1 error bound that then dominates each coefficient error.
// -------------------------------------------------------------------------

class MuTable {
  public:
    MuTable(const ParamSpec& ps, const Rational& ball_norm2, long N,
            const Rational& err_target = Rational(0))
        : rs_(ps.rs_ptr()), ball_(ball_norm2), N_(N), err_target_(err_target) {
        build(ps);
    }

    const Rational& ball() const { return ball_; }
    long order() const { return N_; }
    const Rational& l1_error() const { return err_; }

    // <mu> obtained from the constant term of the raw expansion.
    TruncatedValue ct_raw() const { return TruncatedValue(ct_, err_); }

    // coefficient of mu_o at weight w
    TruncatedValue coefficient(const Weight& w) const {
        if (rs_->norm2(w) > ball_)
            throw insufficient_cutoff_error("MuTable: weight outside table ball");
        Rational raw(0);
        auto it = table_.find(key(w));
        if (it != table_.end()) raw = it->second;
        Rational v = raw / ct_;
        Rational tl = (err_ + rat_abs(v) * err_) / (rat_abs(ct_) - err_);
        return TruncatedValue(v, tl);
    }

    // <p mu_o>: constant term of p * mu_o.  One division at the end; the raw
    // coefficient errors are bounded per coefficient by the l1 budget, so
    // sum_w |p_w| err_w <= |p|_inf err.
    TruncatedValue pair(const LaurentPoly& p) const {
        Rational raw(0), pinf(0);
        for (const auto& [b, c] : p.terms()) {
            if (rs_->norm2(b) > ball_)
                throw insufficient_cutoff_error("MuTable::pair: support outside table ball");
            auto it = table_.find(key(-b));
            if (it != table_.end()) raw += c * it->second;
            Rational a = rat_abs(c);
            if (a > pinf) pinf = a;
        }
        TruncatedValue out = TruncatedValue(raw, pinf * err_) / TruncatedValue(ct_, err_);
        out.note("mu_N", N_);
        return out;
    }

    // <p1 p2 mu_o> without materializing the product polynomial.  Small sums
    // stay exact; large ones run in fixed-precision floats with the roundoff
    // charged to the tail using the exact l1 magnitudes.  The per-coefficient
    // table error is bounded by |p1 p2|_inf err <= |p1|_inf |p2|_1 err.
    TruncatedValue pair_product(const LaurentPoly& p1, const LaurentPoly& p2) const {
        if (p1.size() * p2.size() <= 256) return pair_product_exact(p1, p2);
        ensure_float_table();
        std::vector<std::pair<std::array<long, 4>, MpFloat>> t2;
        Rational p2l1(0), p1inf(0), p1l1(0);
        for (const auto& [b, c] : p2.terms()) {
            std::array<long, 4> o{0, 0, 0, 0};
            for (int i = 0; i < rs_->n; ++i) o[static_cast<size_t>(i)] = rat_to_long(b.coords[static_cast<size_t>(i)], "pair key");
            t2.emplace_back(o, MpFloat(c));
            p2l1 += rat_round_up_pow2(rat_abs(c));
        }
        MpFloat acc;
        long n_terms = 0;
        for (const auto& [b, c] : p1.terms()) {
            std::array<long, 4> o1{0, 0, 0, 0};
            for (int i = 0; i < rs_->n; ++i) o1[static_cast<size_t>(i)] = rat_to_long(b.coords[static_cast<size_t>(i)], "pair key");
            Rational a = rat_round_up_pow2(rat_abs(c));
            if (a > p1inf) p1inf = a;
            p1l1 += a;
            MpFloat cf(c);
            for (const auto& [o2, c2f] : t2) {
                std::array<long, 4> w{-o1[0] - o2[0], -o1[1] - o2[1], -o1[2] - o2[2], -o1[3] - o2[3]};
                if (qform(w) > ball_int_)
                    throw insufficient_cutoff_error("MuTable::pair_product: support outside table ball");
                Key k = 0;
                for (int i = 0; i < rs_->n; ++i) k |= static_cast<Key>(w[static_cast<size_t>(i)] + kBias) << (12 * i);
                auto it = ftable_.find(k);
                if (it == ftable_.end()) continue;
                MpFloat t = cf;
                t.mul(c2f);
                acc.fma(t, it->second);
                ++n_terms;
            }
        }
        Rational raw = acc.to_rational();
        Rational magnitude = rat_round_up_pow2(p1l1) * rat_round_up_pow2(p2l1) * table_linf_;
        Rational tail = rat_round_up_pow2(p1inf) * rat_round_up_pow2(p2l1) * err_ +
                        float_sum_roundoff(3 * n_terms, magnitude);
        TruncatedValue out = TruncatedValue(raw, tail) / ct_raw();
        out.note("mu_N", N_);
        return out;
    }

  private:
    // Packed coordinates: 12 bits per coordinate, biased; rank <= 4.
    using Key = std::uint64_t;
    static constexpr long kBias = 2048;

    Key key(const Weight& w) const {
        Key k = 0;
        for (int i = 0; i < w.rank(); ++i) {
            long c = rat_to_long(w.coords[static_cast<size_t>(i)], "mu key") + kBias;
            if (c < 0 || c >= 4096) throw insufficient_cutoff_error("MuTable: coordinate overflow");
            k |= static_cast<Key>(c) << (12 * i);
        }
        return k;
    }
    std::array<long, 4> unpack(Key k) const {
        std::array<long, 4> c{0, 0, 0, 0};
        for (int i = 0; i < rs_->n; ++i) c[static_cast<size_t>(i)] = static_cast<long>((k >> (12 * i)) & 0xfff) - kBias;
        return c;
    }

    // integer quadratic form: m * (b,b) as int64 over the packed coordinates
    long qform(const std::array<long, 4>& c) const {
        long s = 0;
        for (int i = 0; i < rs_->n; ++i)
            for (int j = 0; j < rs_->n; ++j) s += c[static_cast<size_t>(i)] * qm_[static_cast<size_t>(i)][static_cast<size_t>(j)] * c[static_cast<size_t>(j)];
        return s;
    }

    void build(const ParamSpec& ps) {
        if (!ps.convergent()) throw insufficient_cutoff_error("MuTable: requires |q| < 1");
        const auto& rs = *rs_;
        for (int i = 0; i < rs.n; ++i)
            for (int j = 0; j < rs.n; ++j)
                qm_[static_cast<size_t>(i)][static_cast<size_t>(j)] = rat_to_long(Rational(rs.m) * rs.gram[static_cast<size_t>(i)][static_cast<size_t>(j)], "mu gram");
        // ball in integer form: m (b,b) <= ceil(m * ball)
        Rational mb = Rational(rs.m) * ball_;
        ball_int_ = rat_floor(mb);
        if (Rational(ball_int_) < mb) ++ball_int_;

        // magnitude threshold for kept terms; dropped mass is charged to err.
        // |q|^N is the nominal order cut, floored at err_target * 2^-24 (or
        // 1e-48 absent a target) so coefficient bit sizes stay workable;
        // every cut is accounted, nothing is silent.
        Rational tau = rat_pow(rat_abs(ps.q()), N_);
        Rational tau_floor(mpz_class(1), mpz_class("1000000000000000000000000000000000000000000000000"));  // 1e-48
        if (err_target_ > 0) tau_floor = err_target_ / (1 << 24);
        if (tau < tau_floor) tau = tau_floor;

        std::map<Key, Rational> acc{{key(Weight::zero(rs.n)), Rational(1)}};
        Rational err(0);
        Rational acc_l1(1);
        Rational leftover_rel(0);

        auto to_off = [&](const Weight& w) {
            std::array<long, 4> o{0, 0, 0, 0};
            for (int i = 0; i < rs.n; ++i) o[static_cast<size_t>(i)] = rat_to_long(w.coords[static_cast<size_t>(i)], "mu offset");
            return o;
        };
        auto multiply = [&](const std::vector<std::pair<std::array<long, 4>, Rational>>& factor,
                            const Rational& factor_err) {
            std::map<Key, Rational> out;
            Rational dropped(0);
            for (const auto& [k, coef] : acc) {
                auto base = unpack(k);
                for (const auto& [off, fc] : factor) {
                    std::array<long, 4> nc{base[0] + off[0], base[1] + off[1], base[2] + off[2], base[3] + off[3]};
                    Rational val = coef * fc;
                    if (qform(nc) > ball_int_ || rat_abs(val) < tau) {
                        dropped += rat_round_up_pow2(rat_abs(val));
                        continue;
                    }
                    Key nk = 0;
                    bool ok = true;
                    for (int i = 0; i < rs.n; ++i) {
                        long cc = nc[static_cast<size_t>(i)] + kBias;
                        if (cc < 0 || cc >= 4096) { ok = false; break; }
                        nk |= static_cast<Key>(cc) << (12 * i);
                    }
                    if (!ok) { dropped += rat_round_up_pow2(rat_abs(val)); continue; }
                    auto [it, fresh] = out.emplace(nk, val);
                    if (!fresh) {
                        it->second += val;
                        if (it->second == 0) out.erase(it);
                    }
                }
            }
            Rational fl1(0);
            for (auto& [off, fc] : factor) fl1 += rat_abs(fc);
            // l1 of the product is bounded multiplicatively; bounds are
            // rounded up to powers of two so they stay one word wide.
            err = rat_round_up_pow2(err * fl1 + acc_l1 * factor_err + err * factor_err +
                                    rat_round_up_pow2(dropped));
            acc = std::move(out);
            acc_l1 = rat_round_up_pow2(acc_l1 * fl1 + acc_l1 * factor_err);
        };

        for (const auto& a : rs.positive_roots) {
            const Rational qa = ps.q_of_root(a);
            const Rational ta = ps.t_of_root(a);
            const Rational qa_abs = rat_abs(qa);
            auto apos = to_off(a.wt);
            std::array<long, 4> aneg{-apos[0], -apos[1], -apos[2], -apos[3]};
            long J = 0;
            while (true) {
                Rational mag = rat_pow(qa_abs, J);
                if (mag < tau && rat_abs(ta) * mag < tau) break;
                multiply({{{0, 0, 0, 0}, Rational(1)}, {apos, -rat_pow(qa, J)}}, Rational(0));
                multiply({{{0, 0, 0, 0}, Rational(1)}, {aneg, -rat_pow(qa, J + 1)}}, Rational(0));
                geometric(apos, ta * rat_pow(qa, J), tau, multiply);
                geometric(aneg, ta * rat_pow(qa, J + 1), tau, multiply);
                ++J;
                if (J > 64 * (N_ + 1))
                    throw insufficient_cutoff_error("MuTable: factor schedule does not terminate");
            }
            // uncovered factor groups j >= J, certified against 1
            Rational rJ = rat_pow(qa_abs, J);
            Rational geo0 = rat_abs(ta) * rJ, geo1 = rat_abs(ta) * rJ * qa_abs;
            if (geo0 >= 1 || qa_abs >= 1)
                throw insufficient_cutoff_error("MuTable: remaining factors do not contract");
            Rational dhat = rJ + rJ * qa_abs + geo0 / (1 - geo0) + geo1 / (1 - geo1);
            if (dhat >= 1) throw insufficient_cutoff_error("MuTable: remaining factor deviation >= 1");
            Rational dsum = dhat / (1 - qa_abs);
            leftover_rel += dsum / (1 - dhat);
        }
        if (leftover_rel >= 1)
            throw insufficient_cutoff_error("MuTable: remaining tail mass >= 1");
        Rational E = leftover_rel / (1 - leftover_rel);
        err = err * (1 + E) + acc_l1 * E;
        ct_ = Rational(0);
        auto it = acc.find(key(Weight::zero(rs.n)));
        if (it != acc.end()) ct_ = it->second;
        if (!(rat_abs(ct_) > err))
            throw insufficient_cutoff_error("MuTable: constant term not separated from zero");
        table_ = std::move(acc);
        err_ = err;
    }

    template <typename M>
    void geometric(const std::array<long, 4>& dir, const Rational& z, const Rational& tau, M&& multiply) {
        // 1/(1 - X_dir z) = sum_i z^i X_{i dir}
        if (rat_abs(z) >= 1)
            throw insufficient_cutoff_error("MuTable: geometric factor |z| >= 1");
        std::vector<std::pair<std::array<long, 4>, Rational>> terms;
        Rational zi(1);
        std::array<long, 4> w{0, 0, 0, 0};
        long i = 0;
        while (rat_abs(zi) >= tau) {
            terms.emplace_back(w, zi);
            for (int d = 0; d < 4; ++d) w[static_cast<size_t>(d)] += dir[static_cast<size_t>(d)];
            zi *= z;
            if (++i > 64 * (N_ + 2))
                throw insufficient_cutoff_error("MuTable: geometric series too long");
        }
        Rational rem = rat_abs(zi) / (1 - rat_abs(z));
        multiply(terms, rem);
    }

  public:
    // Precomputed mu-convolution of one factor: g(w1) = sum_{w2} c2 mu_{-w1-w2}.
    // Pairing an 81-element box against a fixed factor then costs |supp p1|
    // lookups per pairing instead of the full double sum.
    struct Convolved {
        std::map<Key, MpFloat> g;
        Rational p2l1{0};
        Rational max_norm2{0};
        long ops = 0;
    };

    Convolved convolve(const LaurentPoly& p2) const {
        ensure_float_table();
        Convolved out;
        for (const auto& [b2, c2] : p2.terms()) {
            out.p2l1 += rat_round_up_pow2(rat_abs(c2));
            Rational nn = rs_->norm2(b2);
            if (nn > out.max_norm2) out.max_norm2 = nn;
            std::array<long, 4> o2{0, 0, 0, 0};
            for (int i = 0; i < rs_->n; ++i) o2[static_cast<size_t>(i)] = rat_to_long(b2.coords[static_cast<size_t>(i)], "conv key");
            MpFloat c2f(c2);
            for (const auto& [k, mf] : ftable_) {
                auto mu_w = unpack(k);
                // w1 = -mu_w - o2
                std::array<long, 4> w1{-mu_w[0] - o2[0], -mu_w[1] - o2[1], -mu_w[2] - o2[2], -mu_w[3] - o2[3]};
                Key k1 = 0;
                bool ok = true;
                for (int i = 0; i < rs_->n; ++i) {
                    long cc = w1[static_cast<size_t>(i)] + kBias;
                    if (cc < 0 || cc >= 4096) { ok = false; break; }
                    k1 |= static_cast<Key>(cc) << (12 * i);
                }
                if (!ok) continue;
                out.g[k1].fma(c2f, mf);
                ++out.ops;
            }
        }
        return out;
    }

    TruncatedValue pair_with(const Convolved& conv, const LaurentPoly& p1) const {
        MpFloat acc;
        Rational p1inf(0);
        long ops = conv.ops;
        for (const auto& [b1, c1] : p1.terms()) {
            // coverage: every -b1-b2 must lie inside the table ball
            if (2 * (rs_->norm2(b1) + conv.max_norm2) > ball_)
                throw insufficient_cutoff_error("MuTable::pair_with: support outside table ball");
            std::array<long, 4> o1{0, 0, 0, 0};
            for (int i = 0; i < rs_->n; ++i) o1[static_cast<size_t>(i)] = rat_to_long(b1.coords[static_cast<size_t>(i)], "pair key");
            Key k1 = 0;
            for (int i = 0; i < rs_->n; ++i) k1 |= static_cast<Key>(o1[static_cast<size_t>(i)] + kBias) << (12 * i);
            Rational a = rat_round_up_pow2(rat_abs(c1));
            if (a > p1inf) p1inf = a;
            auto it = conv.g.find(k1);
            if (it == conv.g.end()) continue;
            acc.fma(MpFloat(c1), it->second);
            ++ops;
        }
        Rational raw = acc.to_rational();
        Rational magnitude = rat_round_up_pow2(p1inf * Rational(static_cast<long>(p1.size()))) *
                             conv.p2l1 * table_linf_;
        Rational tail = p1inf * conv.p2l1 * err_ + float_sum_roundoff(3 * ops, magnitude);
        TruncatedValue out = TruncatedValue(raw, tail) / ct_raw();
        out.note("mu_N", N_);
        return out;
    }

  private:
    TruncatedValue pair_product_exact(const LaurentPoly& p1, const LaurentPoly& p2) const {
        Rational raw(0), p2l1(0), p1inf(0);
        for (const auto& [b2, c2] : p2.terms()) p2l1 += rat_round_up_pow2(rat_abs(c2));
        for (const auto& [b1, c1] : p1.terms()) {
            Rational a = rat_round_up_pow2(rat_abs(c1));
            if (a > p1inf) p1inf = a;
            for (const auto& [b2, c2] : p2.terms()) {
                Weight w = -(b1 + b2);
                if (rs_->norm2(w) > ball_)
                    throw insufficient_cutoff_error("MuTable::pair_product: support outside table ball");
                auto it = table_.find(key(w));
                if (it != table_.end()) raw += c1 * c2 * it->second;
            }
        }
        TruncatedValue out = TruncatedValue(raw, p1inf * p2l1 * err_) / TruncatedValue(ct_, err_);
        out.note("mu_N", N_);
        return out;
    }

    void ensure_float_table() const {
        if (!ftable_.empty() || table_.empty()) return;
        Rational linf(0);
        for (const auto& [k, v] : table_) {
            ftable_.emplace(k, MpFloat(v));
            Rational a = rat_abs(v);
            if (a > linf) linf = a;
        }
        table_linf_ = rat_round_up_pow2(linf);
    }

    RootSystemPtr rs_;
    Rational ball_;
    long N_;
    Rational err_target_{0};
    long ball_int_ = 0;
    std::array<std::array<long, 4>, 4> qm_{};
    std::map<Key, Rational> table_;
    mutable std::map<Key, MpFloat> ftable_;
    mutable Rational table_linf_{0};
    Rational ct_{0};
    Rational err_{0};
};

// <mu> as the closed product (2.5)-style: over alpha > 0, i >= 1,
// (1 - q^{(rho_k,alpha)+i nu})^2 / ((1 - t_a ...)(1 - t_a^{-1} ...)).
inline TruncatedValue mu_ct_product(const ParamSpec& ps, long N) {
    std::vector<ProductFamily> fams;
    for (const auto& a : ps.rs().positive_roots) {
        Rational qrho = ps.rho_character(a.wt, 1);
        Rational ta = ps.t_of_root(a);
        ProductFamily f;
        f.gens = {{qrho, +1}, {qrho, +1}, {ta * qrho, -1}, {qrho / ta, -1}};
        f.ratio = ps.q_of_root(a);
        f.j0 = 1;
        f.name = "mu_ct";
        fams.push_back(std::move(f));
    }
    return truncated_product(fams, N);
}

// The Shintani-type proportionality constant:
// prod_{alpha>0} prod_{j>=1} (1 - q^{(rho_k,alpha)+nu j}) / (1 - t_a^{-1} q^{(rho_k,alpha)+nu j}).
inline TruncatedValue shintani_constant(const ParamSpec& ps, long N) {
    std::vector<ProductFamily> fams;
    for (const auto& a : ps.rs().positive_roots) {
        Rational qrho = ps.rho_character(a.wt, 1);
        ProductFamily f;
        f.gens = {{qrho, +1}, {qrho / ps.t_of_root(a), -1}};
        f.ratio = ps.q_of_root(a);
        f.j0 = 1;
        f.name = "shintani_constant";
        fams.push_back(std::move(f));
    }
    return truncated_product(fams, N);
}

} // namespace daha

#pragma once

#include <vector>

#include "daha/root_system.hpp"

namespace daha {

// Element w * t_c of the extended affine Weyl group W x| P.  Composition is
// the semidirect rule (w1,c1)(w2,c2) = (w1 w2, w2^{-1}(c1) + c2).
//
// The action on affine roots [z, zeta] is [w(z), zeta + (z, c)].  With this
// sign the affine reflection about a_0 = [-theta, 1] is the pair
// (s_theta, theta), and the induced action on monomials,
// X_b -> q^{(c,b)} X_{w(b)}, reproduces Gamma(X^n) = q^{n/2} X^n on A1.
struct ExtAffineElement {
    WeylElement w;
    Weight c;

    static ExtAffineElement identity(const RootSystem& rs) {
        return {WeylElement::identity(rs.n), Weight::zero(rs.n)};
    }
    static ExtAffineElement translation(const Weight& b) {
        return {WeylElement::identity(b.rank()), b};
    }

    bool is_identity() const { return w.is_identity() && c.is_zero(); }
    bool operator==(const ExtAffineElement& o) const { return w == o.w && c == o.c; }
};

struct AffineRoot {
    Weight alpha;     // finite part, a root
    Rational level;   // nu_alpha * j
};

class AffineWeyl {
  public:
    explicit AffineWeyl(RootSystemPtr rs) : rs_(std::move(rs)) {}

    const RootSystem& rs() const { return *rs_; }

    ExtAffineElement compose(const ExtAffineElement& a, const ExtAffineElement& b) const {
        WeylElement w2inv = rs_->inverse(b.w);
        return {a.w * b.w, w2inv.act(a.c) + b.c};
    }

    ExtAffineElement inverse(const ExtAffineElement& a) const {
        WeylElement winv = rs_->inverse(a.w);
        return {winv, -(a.w.act(a.c))};
    }

    // i = 0 is the affine reflection about a_0 = [-theta, 1].
    ExtAffineElement simple_affine(int i) const {
        if (i == 0) {
            WeylElement st = reflection_matrix(rs_->theta_short);
            return {st, rs_->theta_short};
        }
        return {rs_->simple_element(i - 1), Weight::zero(rs_->n)};
    }

    AffineRoot affine_simple_root(int i) const {
        if (i == 0) return {-(rs_->theta_short), Rational(1)};
        return {rs_->simple_root(i - 1).wt, Rational(0)};
    }

    AffineRoot act(const ExtAffineElement& e, const AffineRoot& r) const {
        return {e.w.act(r.alpha), r.level + rs_->pair(r.alpha, e.c)};
    }

    bool affine_positive(const AffineRoot& r) const {
        if (r.level > 0) return true;
        if (r.level < 0) return false;
        return !rs_->root_is_negative(r.alpha);
    }

    // l(e) = |{affine roots > 0 flipped by e}|.  Enumeration is bounded by the
    // translation part: a level-(nu j) root can only flip when
    // j <= |(alpha^vee, c)|.
    int affine_length(const ExtAffineElement& e) const {
        long bound = 1;
        for (const auto& a : rs_->positive_roots) {
            Rational p = rat_abs(rs_->coroot_pair(e.c, a));
            long pb = rat_floor(p) + 1;
            if (pb > bound) bound = pb;
        }
        int l = 0;
        for (const auto& a : rs_->positive_roots) {
            for (long j = 0; j <= bound; ++j) {
                // [alpha, nu j] for alpha > 0, j >= 0
                AffineRoot pos{a.wt, Rational(a.nu) * j};
                if (!affine_positive(act(e, pos))) ++l;
                // [-alpha, nu j] for j >= 1
                if (j >= 1) {
                    AffineRoot neg{-a.wt, Rational(a.nu) * j};
                    if (!affine_positive(act(e, neg))) ++l;
                }
            }
        }
        return l;
    }

    struct TranslationWord {
        ExtAffineElement omega;  // length-0 part
        std::vector<int> word;   // t_b = omega * s_{word[l-1]} * ... * s_{word[0]}
    };

    // Greedy length descent over the affine simple reflections, lowest index
    // first.  word[0] is the first reflection stripped from the right.
    TranslationWord translation_word(const Weight& b) const {
        if (!b.is_lattice()) throw usage_error("translation_word: weight not in P");
        ExtAffineElement e = ExtAffineElement::translation(b);
        int len = affine_length(e);
        std::vector<int> word;
        while (len > 0) {
            int found = -1;
            for (int i = 0; i <= rs_->n; ++i) {
                AffineRoot img = act(e, affine_simple_root(i));
                if (!affine_positive(img)) { found = i; break; }
            }
            if (found < 0)
                throw usage_error("translation_word: greedy descent stalled (length function bug)");
            e = compose(e, simple_affine(found));
            word.push_back(found);
            --len;
        }
        if (affine_length(e) != 0)
            throw usage_error("translation_word: did not reach a length-0 element");
        return {e, word};
    }

    // {c in P : c = b mod Q, c_+ <= b_+ in dominance order}; finite, W-stable,
    // and Y-stable.  Enumerated over the norm ball (c,c) <= (b,b) of the coset.
    std::vector<Weight> saturation_span(const Weight& b) const {
        if (!b.is_lattice()) throw usage_error("saturation_span: weight not in P");
        const int n = rs_->n;
        auto split = rs_->dominant_split(b);
        const Weight& bp = split.b_plus;
        Rational ball = rs_->norm2(bp);
        std::vector<long> box(static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i) {
            // |c_i| = |(c, alpha_i^vee)| <= |c| |alpha_i^vee|
            Rational bound2 = ball * Rational(2, rs_->simple_nu[static_cast<size_t>(i)]);
            box[static_cast<size_t>(i)] = rat_isqrt_ceil(bound2);
        }
        std::vector<Weight> out;
        std::vector<long> cur(static_cast<size_t>(n), 0);
        enumerate_box(box, cur, 0, [&](const std::vector<long>& coords) {
            Weight cand = Weight::of_ints(coords);
            if (rs_->norm2(cand) > ball) return;
            if (!rs_->in_root_lattice(cand - b)) return;
            Weight cp = rs_->dominant_representative(cand);
            if (!rs_->in_q_plus(bp - cp)) return;
            out.push_back(cand);
        });
        std::sort(out.begin(), out.end());
        return out;
    }

    // Reflection in a (finite) root, as a Weyl group element.
    WeylElement reflection_matrix(const Weight& alpha) const {
        auto rt = rs_->find_root(alpha);
        if (!rt) throw usage_error("reflection_matrix: not a positive root");
        const Root& a = **rt;
        WeylElement w = WeylElement::identity(rs_->n);
        for (int j = 0; j < rs_->n; ++j) {
            Weight ej = Weight::fundamental(rs_->n, j);
            Weight img = ej - a.wt * (rs_->coroot_pair(ej, a));
            for (int k = 0; k < rs_->n; ++k)
                w.mat[static_cast<size_t>(k) * rs_->n + j] = rat_to_long(img.coords[static_cast<size_t>(k)], "reflection entry");
        }
        w.word = rs_->reduced_word(w);
        return w;
    }

  private:
    RootSystemPtr rs_;

    template <typename F>
    static void enumerate_box(const std::vector<long>& box, std::vector<long>& cur, size_t k, F&& f) {
        if (k == box.size()) {
            f(cur);
            return;
        }
        for (long v = -box[k]; v <= box[k]; ++v) {
            cur[k] = v;
            enumerate_box(box, cur, k + 1, f);
        }
    }
};

} // namespace daha

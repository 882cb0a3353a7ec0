#pragma once

#include <mpfr.h>

#include "daha/rational.hpp"

namespace daha {

// Fixed-precision float used only to accelerate large certified sums; every
// result returns to exact rationals with the accumulated roundoff charged to
// the tail bound.
inline constexpr mpfr_prec_t kPairPrecision = 192;

class MpFloat {
  public:
    MpFloat() { mpfr_init2(x_, kPairPrecision); mpfr_set_zero(x_, 1); }
    explicit MpFloat(const Rational& q) {
        mpfr_init2(x_, kPairPrecision);
        mpfr_set_q(x_, q.get_mpq_t(), MPFR_RNDN);
    }
    MpFloat(const MpFloat& o) { mpfr_init2(x_, kPairPrecision); mpfr_set(x_, o.x_, MPFR_RNDN); }
    MpFloat(MpFloat&& o) noexcept { mpfr_init2(x_, kPairPrecision); mpfr_swap(x_, o.x_); }
    MpFloat& operator=(const MpFloat& o) {
        if (this != &o) mpfr_set(x_, o.x_, MPFR_RNDN);
        return *this;
    }
    MpFloat& operator=(MpFloat&& o) noexcept {
        if (this != &o) mpfr_swap(x_, o.x_);
        return *this;
    }
    ~MpFloat() { mpfr_clear(x_); }

    // this += a * b
    void fma(const MpFloat& a, const MpFloat& b) {
        mpfr_t t;
        mpfr_init2(t, kPairPrecision);
        mpfr_mul(t, a.x_, b.x_, MPFR_RNDN);
        mpfr_add(x_, x_, t, MPFR_RNDN);
        mpfr_clear(t);
    }
    void mul(const MpFloat& a) { mpfr_mul(x_, x_, a.x_, MPFR_RNDN); }

    // exact value of the float as a (dyadic) rational
    Rational to_rational() const {
        if (mpfr_zero_p(x_)) return Rational(0);
        mpz_class z;
        mpfr_exp_t e = mpfr_get_z_2exp(z.get_mpz_t(), x_);
        return Rational(z) * rat_pow(Rational(2), static_cast<long>(e));
    }

  private:
    mpfr_t x_;
};

// Roundoff envelope for a sum of n fma terms whose exact magnitudes sum to at
// most M: standard (1+u)^k accumulation with u = 2^{1-P}, valid while n u << 1.
inline Rational float_sum_roundoff(long n_terms, const Rational& magnitude_bound) {
    Rational u = rat_pow(Rational(2), 1 - static_cast<long>(kPairPrecision));
    return rat_round_up_pow2(Rational(8 * (n_terms + 2)) * u * magnitude_bound);
}

} // namespace daha

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "daha/common.hpp"

namespace daha {

// Every scalar in the pipeline is an exact rational.  There is no floating
// point anywhere on the primary path; tolerances are rational comparisons.
using Rational = mpq_class;

inline Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) throw non_generic_error("rat_pow: zero base with negative exponent");
        return Rational(0);
    }
    const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational out;
    mpz_pow_ui(out.get_num_mpz_t(), base.get_num().get_mpz_t(), mag);
    mpz_pow_ui(out.get_den_mpz_t(), base.get_den().get_mpz_t(), mag);
    out.canonicalize();
    if (e < 0) out = 1 / out;
    return out;
}

// Exponents frequently arrive as rationals that must be integral (characters
// of the weight lattice).  Fail loudly when they are not.
inline long rat_to_long(const Rational& x, const char* what = "exponent") {
    if (x.get_den() != 1)
        throw usage_error(std::string("non-integral ") + what + ": " + x.get_str());
    if (!x.get_num().fits_slong_p())
        throw usage_error(std::string(what) + " out of machine range: " + x.get_str());
    return x.get_num().get_si();
}

inline bool rat_is_integer(const Rational& x) { return x.get_den() == 1; }

inline long rat_floor(const Rational& x) {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    if (!q.fits_slong_p()) throw usage_error("rat_floor out of range");
    return q.get_si();
}

// Smallest L >= 0 with L*L >= x; used to bound lattice ball enumerations.
inline long rat_isqrt_ceil(const Rational& x) {
    if (x <= 0) return 0;
    long lo = 0, hi = 1;
    while (Rational(hi) * hi < x) hi *= 2;
    while (lo < hi) {
        long mid = lo + (hi - lo) / 2;
        if (Rational(mid) * mid >= x) hi = mid; else lo = mid + 1;
    }
    return lo;
}

// Round x >= 0 up onto a 16-significant-bit dyadic grid.  Error bounds are
// kept in this form so their representations stay a word or two wide; the
// relative inflation per rounding is below 2^-15.
inline Rational rat_round_up_pow2(const Rational& x) {
    if (x == 0) return x;
    if (x < 0) throw usage_error("rat_round_up_pow2: negative bound");
    long e = static_cast<long>(mpz_sizeinbase(x.get_num().get_mpz_t(), 2)) -
             static_cast<long>(mpz_sizeinbase(x.get_den().get_mpz_t(), 2));
    long g = e - 16;
    // r = ceil(x * 2^-g) * 2^g
    Rational scaled = x * rat_pow(Rational(2), -g);
    mpz_class k;
    mpz_cdiv_q(k.get_mpz_t(), scaled.get_num().get_mpz_t(), scaled.get_den().get_mpz_t());
    return Rational(k) * rat_pow(Rational(2), g);
}

// Serialized rationals always carry an explicit denominator ("3/4", "5/1").
inline std::string rat_str(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rational rat_parse(const std::string& s) {
    try {
        Rational r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw usage_error("cannot parse rational: " + s);
    }
}

// Decimal rendering for report readability; exact value still travels as p/q.
inline std::string rat_approx_str(const Rational& x, int digits = 6) {
    mpf_class f(x, 128);
    mp_exp_t exp10 = 0;
    std::string mant = f.get_str(exp10, 10, static_cast<size_t>(digits));
    if (mant.empty() || mant == "-") return "0";
    bool neg = mant[0] == '-';
    if (neg) mant = mant.substr(1);
    std::string out = (neg ? "-0." : "0.") + mant + "e" + std::to_string(exp10);
    return out;
}

} // namespace daha

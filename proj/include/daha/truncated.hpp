#pragma once

#include <map>
#include <string>

#include "daha/rational.hpp"

namespace daha {

// Exact rational value of a truncated series/product together with a
// nonnegative bound on |true - value|.  Arithmetic propagates bounds:
//
//   (a +- b).tail <= a.tail + b.tail
//   (a * b).tail  <= |a.value| b.tail + |b.value| a.tail + a.tail b.tail
//   a / b         requires |b.value| > b.tail and uses
//                 (a.tail + |a.value/b.value| b.tail) / (|b.value| - b.tail)
//
// The cutoffs map records the orders that produced the value; operations
// merge it for report echoes.
struct TruncatedValue {
    Rational value{0};
    Rational tail{0};
    std::map<std::string, long> cutoffs;

    TruncatedValue() = default;
    TruncatedValue(Rational v, Rational t) : value(std::move(v)), tail(std::move(t)) {
        if (tail < 0) throw usage_error("TruncatedValue: negative tail");
        tail = rat_round_up_pow2(tail);  // keep bound representations small
    }
    static TruncatedValue exact(const Rational& v) { return TruncatedValue(v, Rational(0)); }

    bool is_exact() const { return tail == 0; }
    bool certainly_nonzero() const { return rat_abs(value) > tail; }
    // |true value| is certainly <= bound
    bool certainly_within(const Rational& bound) const { return rat_abs(value) + tail <= bound; }

    void note(const std::string& key, long v) { cutoffs[key] = v; }
    void absorb_cutoffs(const TruncatedValue& o) {
        for (auto& [k, v] : o.cutoffs) {
            auto it = cutoffs.find(k);
            if (it == cutoffs.end() || it->second > v) cutoffs[k] = v;
        }
    }

    TruncatedValue operator+(const TruncatedValue& o) const {
        TruncatedValue r(value + o.value, tail + o.tail);
        r.cutoffs = cutoffs;
        r.absorb_cutoffs(o);
        return r;
    }
    TruncatedValue operator-(const TruncatedValue& o) const {
        TruncatedValue r(value - o.value, tail + o.tail);
        r.cutoffs = cutoffs;
        r.absorb_cutoffs(o);
        return r;
    }
    TruncatedValue operator-() const {
        TruncatedValue r(-value, tail);
        r.cutoffs = cutoffs;
        return r;
    }
    TruncatedValue operator*(const TruncatedValue& o) const {
        TruncatedValue r(value * o.value,
                         rat_abs(value) * o.tail + rat_abs(o.value) * tail + tail * o.tail);
        r.cutoffs = cutoffs;
        r.absorb_cutoffs(o);
        return r;
    }
    TruncatedValue operator*(const Rational& s) const {
        TruncatedValue r(value * s, tail * rat_abs(s));
        r.cutoffs = cutoffs;
        return r;
    }
    TruncatedValue operator/(const TruncatedValue& o) const {
        Rational denom_mag = rat_abs(o.value);
        if (!(denom_mag > o.tail))
            throw insufficient_cutoff_error("TruncatedValue: denominator not separated from zero");
        Rational v = value / o.value;
        Rational t = (tail + rat_abs(v) * o.tail) / (denom_mag - o.tail);
        TruncatedValue r(v, t);
        r.cutoffs = cutoffs;
        r.absorb_cutoffs(o);
        return r;
    }

    std::string str() const { return rat_approx_str(value) + " (+-" + rat_approx_str(tail) + ")"; }
};

inline TruncatedValue operator*(const Rational& s, const TruncatedValue& t) { return t * s; }

} // namespace daha

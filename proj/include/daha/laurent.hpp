#pragma once

#include <functional>
#include <map>

#include "daha/root_system.hpp"

namespace daha {

// Finite map from lattice weights to scalars, X_{b+c} = X_b X_c.  Zero
// coefficients are never stored.
class LaurentPoly {
  public:
    using Terms = std::map<Weight, Rational>;

    LaurentPoly() = default;
    explicit LaurentPoly(int rank) : rank_(rank) {}

    static LaurentPoly zero(int rank) { return LaurentPoly(rank); }
    static LaurentPoly constant(int rank, const Rational& c) {
        LaurentPoly p(rank);
        p.add_term(Weight::zero(rank), c);
        return p;
    }
    static LaurentPoly monomial(const Weight& b, const Rational& c = Rational(1)) {
        if (!b.is_lattice()) throw usage_error("LaurentPoly: key not in P");
        LaurentPoly p(b.rank());
        p.add_term(b, c);
        return p;
    }

    int rank() const { return rank_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    void add_term(const Weight& b, const Rational& c) {
        if (c == 0) return;
        if (!b.is_lattice()) throw usage_error("LaurentPoly: key not in P");
        auto [it, fresh] = terms_.emplace(b, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Rational coefficient(const Weight& b) const {
        auto it = terms_.find(b);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational constant_term() const { return coefficient(Weight::zero(rank_)); }

    LaurentPoly operator+(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [b, c] : o.terms_) r.add_term(b, c);
        return r;
    }
    LaurentPoly operator-(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [b, c] : o.terms_) r.add_term(b, -c);
        return r;
    }
    LaurentPoly operator-() const {
        LaurentPoly r(rank_);
        for (auto& [b, c] : terms_) r.terms_.emplace(b, -c);
        return r;
    }
    LaurentPoly operator*(const Rational& s) const {
        LaurentPoly r(rank_);
        if (s == 0) return r;
        for (auto& [b, c] : terms_) r.terms_.emplace(b, c * s);
        return r;
    }
    LaurentPoly operator*(const LaurentPoly& o) const {
        LaurentPoly r(rank_);
        for (auto& [b1, c1] : terms_)
            for (auto& [b2, c2] : o.terms_) r.add_term(b1 + b2, c1 * c2);
        return r;
    }

    bool operator==(const LaurentPoly& o) const { return terms_ == o.terms_; }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    // Monomial-wise relabeling X_b -> X_{w(b)}.
    LaurentPoly weyl_act(const WeylElement& w) const {
        LaurentPoly r(rank_);
        for (auto& [b, c] : terms_) r.add_term(w.act(b), c);
        return r;
    }

    // X_b -> X_{-b}; coefficients untouched.
    LaurentPoly monomial_flip() const {
        LaurentPoly r(rank_);
        for (auto& [b, c] : terms_) r.terms_.emplace(-b, c);
        return r;
    }

    Rational l1_norm() const {
        Rational s(0);
        for (auto& [b, c] : terms_) s += rat_abs(c);
        return s;
    }
    Rational linf_norm() const {
        Rational s(0);
        for (auto& [b, c] : terms_) {
            Rational a = rat_abs(c);
            if (a > s) s = a;
        }
        return s;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (auto& [b, c] : terms_) {
            if (!s.empty()) s += " + ";
            s += c.get_str() + "*X" + b.str();
        }
        return s;
    }

  private:
    int rank_ = 0;
    Terms terms_;
};

// Exact quotient p/d in the Laurent ring.  Division is by leading-term
// reduction in the lexicographic group order; quotient monomials strictly
// decrease, so exact inputs terminate after |supp(q)| steps.  A step budget
// catches non-divisible inputs.
inline LaurentPoly exact_divide(const LaurentPoly& p, const LaurentPoly& d) {
    if (d.is_zero()) throw division_error("exact_divide: zero divisor");
    LaurentPoly q(p.rank());
    LaurentPoly r = p;
    const auto& lead = *d.terms().rbegin();   // largest key in lex order
    size_t budget = 1000 + 50 * (p.size() + 2) * (d.size() + 2);
    while (!r.is_zero()) {
        if (budget-- == 0)
            throw division_error("exact_divide: not divisible (step budget exhausted)");
        const auto& rl = *r.terms().rbegin();
        Weight shift = rl.first - lead.first;
        Rational coef = rl.second / lead.second;
        q.add_term(shift, coef);
        for (auto& [b, c] : d.terms()) r.add_term(b + shift, -(c * coef));
    }
    return q;
}

} // namespace daha

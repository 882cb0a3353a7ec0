#pragma once

#include <map>
#include <string>

#include "daha/root_system.hpp"

namespace daha {

// Exact parameter bases.  q and t_nu are never stored symbolically; instead
// we fix rational roots
//
//     v = q^{1/(2m)},   u_nu = t_nu^{1/(2 nu m)},
//
// where m is the lattice denominator of the type ((P,P) in (1/m)Z).  Every
// exponent produced by the pairings in scope is then an integer power of v
// and the u_nu:
//
//     q^{(a,b)}        = v^{2m(a,b)}              (a, b in P)
//     q^{(b,b)/2}      = v^{m(b,b)}
//     t_nu^{1/2}       = u_nu^{nu m}
//     q^{(rho_k, a)}   = prod_nu u_nu^{2m(rho_nu, a)}
//
// so rho_k and the k_nu themselves never need to be materialized as numbers.
class ParamSpec {
  public:
    ParamSpec(RootSystemPtr rs, const Rational& v, const std::map<int, Rational>& u)
        : rs_(std::move(rs)), v_(v), u_(u) {
        m_ = rs_->m;
        if (v_ == 0) throw non_generic_error("ParamSpec: v must be nonzero");
        for (int nu : nus()) {
            auto it = u_.find(nu);
            if (it == u_.end() || it->second == 0)
                throw non_generic_error("ParamSpec: missing or zero base u_" + std::to_string(nu));
        }
        q_ = rat_pow(v_, 2 * m_);
        if (q_ == 1 || q_ == 0) throw non_generic_error("ParamSpec: q in {0,1}");
        for (int nu : nus()) {
            Rational tv = rat_pow(u_.at(nu), 2 * nu * m_);
            if (tv == 0) throw non_generic_error("ParamSpec: t_nu = 0");
            t_[nu] = tv;
        }
        convergent_ = rat_abs(q_) < 1;
    }

    // Convenience: one base for all root lengths.
    ParamSpec(RootSystemPtr rs, const Rational& v, const Rational& u)
        : ParamSpec(rs, v, uniform(rs, u)) {}

    const RootSystem& rs() const { return *rs_; }
    RootSystemPtr rs_ptr() const { return rs_; }
    long m() const { return m_; }
    const Rational& v() const { return v_; }
    const Rational& u(int nu) const { return u_.at(nu); }
    const Rational& q() const { return q_; }
    const Rational& t(int nu) const { return t_.at(nu); }
    bool convergent() const { return convergent_; }

    std::vector<int> nus() const {
        std::vector<int> out;
        for (auto& [nu, w] : rs_->rho_nu) out.push_back(nu);
        return out;
    }

    Rational t_of_root(const Root& a) const { return t_.at(a.nu); }
    Rational q_of_root(const Root& a) const { return rat_pow(q_, a.nu); }

    // q^e for rational e with 2m e integral.
    Rational q_pow(const Rational& e) const {
        return rat_pow(v_, rat_to_long(Rational(2 * m_) * e, "q exponent (x 2m)"));
    }
    // t_nu^e for rational e with 2 nu m e integral.
    Rational t_pow(int nu, const Rational& e) const {
        return rat_pow(u_.at(nu), rat_to_long(Rational(2 * nu * m_) * e, "t exponent"));
    }
    Rational t_sqrt(int nu) const { return rat_pow(u_.at(nu), nu * m_); }

    // q^{sign (rho_k, a)} = prod_nu u_nu^{sign 2m (rho_nu, a)}.
    Rational rho_character(const Weight& a, int sign = 1) const {
        Rational out(1);
        for (auto& [nu, rn] : rs_->rho_nu) {
            Rational e = Rational(2 * m_) * rs_->pair(rn, a);
            out *= rat_pow(u_.at(nu), sign * rat_to_long(e, "rho character exponent"));
        }
        return out;
    }

    // Star conjugation q -> 1/q, t -> 1/t is recomputation at inverted bases.
    ParamSpec starred() const {
        std::map<int, Rational> ui;
        for (auto& [nu, x] : u_) ui[nu] = 1 / x;
        return ParamSpec(rs_, 1 / v_, ui);
    }

    std::string describe() const {
        std::string s = rs_->label + " v=" + rat_str(v_);
        for (auto& [nu, x] : u_) s += " u" + std::to_string(nu) + "=" + rat_str(x);
        return s;
    }

  private:
    static std::map<int, Rational> uniform(const RootSystemPtr& rs, const Rational& u) {
        std::map<int, Rational> m;
        for (auto& [nu, w] : rs->rho_nu) m[nu] = u;
        return m;
    }

    RootSystemPtr rs_;
    Rational v_;
    std::map<int, Rational> u_;
    std::map<int, Rational> t_;
    Rational q_;
    long m_ = 1;
    bool convergent_ = false;
};

} // namespace daha

#pragma once

#include <vector>

#include "daha/laurent.hpp"
#include "daha/params.hpp"

namespace daha {

// Multiplicative character of P, stored as a product of base^{functional}
// factors where each functional is rational-linear in the weight coordinates
// and integer-valued on the weights it is ever evaluated at.  Examples:
// plain numeric points X = (x_1..x_n), q^b, q^{+-rho_k}, q^{b#}, and the A1
// points Lambda_n = t^{1/2} q^{n/2}.
class SpectralPoint {
  public:
    struct Factor {
        Rational base;
        std::vector<Rational> functional;  // f(c) = sum_j functional[j] * c_j
    };

    SpectralPoint() = default;
    explicit SpectralPoint(int rank) : rank_(rank) {}

    int rank() const { return rank_; }
    const std::vector<Factor>& factors() const { return factors_; }

    void push(const Rational& base, std::vector<Rational> functional) {
        if (base == 0) throw non_generic_error("SpectralPoint: zero base");
        if (base == 1) return;
        factors_.push_back({base, std::move(functional)});
    }

    // The identity character.
    static SpectralPoint one(int rank) { return SpectralPoint(rank); }

    // Coordinates point: value(omega_j) = x_j.
    static SpectralPoint coordinates(const std::vector<Rational>& x) {
        SpectralPoint p(static_cast<int>(x.size()));
        for (size_t j = 0; j < x.size(); ++j) {
            std::vector<Rational> f(x.size(), Rational(0));
            f[j] = 1;
            p.push(x[j], std::move(f));
        }
        return p;
    }

    // c -> q^{(b,c)}; b need not be a lattice weight as long as 2m(b,c) stays
    // integral on every evaluated c.
    static SpectralPoint q_power(const ParamSpec& ps, const Weight& b) {
        const auto& rs = ps.rs();
        SpectralPoint p(rs.n);
        std::vector<Rational> f(static_cast<size_t>(rs.n), Rational(0));
        for (int j = 0; j < rs.n; ++j)
            f[static_cast<size_t>(j)] = Rational(2 * ps.m()) * rs.pair(b, Weight::fundamental(rs.n, j));
        p.push(ps.v(), std::move(f));
        return p;
    }

    // c -> q^{sign (rho_k, c)}.
    static SpectralPoint rho_point(const ParamSpec& ps, int sign) {
        const auto& rs = ps.rs();
        SpectralPoint p(rs.n);
        for (const auto& [nu, rn] : rs.rho_nu) {
            std::vector<Rational> f(static_cast<size_t>(rs.n), Rational(0));
            for (int j = 0; j < rs.n; ++j)
                f[static_cast<size_t>(j)] = Rational(sign * 2 * ps.m()) * rs.pair(rn, Weight::fundamental(rs.n, j));
            p.push(ps.u(nu), std::move(f));
        }
        return p;
    }

    // Spectral point q^{b#} with b# = b - u_b^{-1}(rho_k):
    //   c -> q^{(b,c)} * q^{-(rho_k, u_b(c))}.
    static SpectralPoint b_sharp(const ParamSpec& ps, const Weight& b) {
        const auto& rs = ps.rs();
        auto split = rs.dominant_split(b);
        SpectralPoint p = q_power(ps, b);
        for (const auto& [nu, rn] : rs.rho_nu) {
            std::vector<Rational> f(static_cast<size_t>(rs.n), Rational(0));
            for (int j = 0; j < rs.n; ++j) {
                Weight img = split.u.act(Weight::fundamental(rs.n, j));
                f[static_cast<size_t>(j)] = Rational(-2 * ps.m()) * rs.pair(rn, img);
            }
            p.push(ps.u(nu), std::move(f));
        }
        return p;
    }

    // q^{b - rho_k} for lattice b: the Lambda sample used by Xi tables.
    static SpectralPoint q_shifted(const ParamSpec& ps, const Weight& b) {
        SpectralPoint p = q_power(ps, b);
        SpectralPoint r = rho_point(ps, -1);
        return p * r;
    }

    Rational value(const Weight& c) const {
        if (c.rank() != rank_) throw usage_error("SpectralPoint: rank mismatch");
        Rational out(1);
        for (const auto& f : factors_) {
            Rational e(0);
            for (int j = 0; j < rank_; ++j)
                if (c.coords[static_cast<size_t>(j)] != 0)
                    e += f.functional[static_cast<size_t>(j)] * c.coords[static_cast<size_t>(j)];
            if (!rat_is_integer(e))
                throw usage_error("SpectralPoint: non-integral exponent at weight " + c.str());
            out *= rat_pow(f.base, rat_to_long(e, "character exponent"));
        }
        return out;
    }

    // Pointwise product of characters.
    SpectralPoint operator*(const SpectralPoint& o) const {
        SpectralPoint p = *this;
        for (const auto& f : o.factors_) p.factors_.push_back(f);
        return p;
    }

    SpectralPoint inverse() const {
        SpectralPoint p(rank_);
        for (const auto& f : factors_) p.push(1 / f.base, f.functional);
        return p;
    }

    // (w . pt)(c) = pt(w^{-1}(c)); substitution Lambda -> w(Lambda).
    SpectralPoint weyl_transform(const RootSystem& rs, const WeylElement& w) const {
        WeylElement winv = rs.inverse(w);
        SpectralPoint p(rank_);
        for (const auto& f : factors_) {
            std::vector<Rational> g(static_cast<size_t>(rank_), Rational(0));
            for (int j = 0; j < rank_; ++j) {
                Weight img = winv.act(Weight::fundamental(rank_, j));
                for (int k = 0; k < rank_; ++k)
                    g[static_cast<size_t>(j)] += f.functional[static_cast<size_t>(k)] * img.coords[static_cast<size_t>(k)];
            }
            p.push(f.base, std::move(g));
        }
        return p;
    }

    // pt^iota with iota(c) = -w0(c).
    SpectralPoint iota_transform(const RootSystem& rs) const {
        SpectralPoint p(rank_);
        for (const auto& f : factors_) {
            std::vector<Rational> g(static_cast<size_t>(rank_), Rational(0));
            for (int j = 0; j < rank_; ++j) {
                Weight img = -(rs.w0.act(Weight::fundamental(rank_, j)));
                for (int k = 0; k < rank_; ++k)
                    g[static_cast<size_t>(j)] += f.functional[static_cast<size_t>(k)] * img.coords[static_cast<size_t>(k)];
            }
            p.push(f.base, std::move(g));
        }
        return p;
    }

    // Rational envelope B_j >= sup over the j-th coordinate of |value| growth:
    // |value(c)| <= prod_j B_j^{|c_j|}.  Used by the theta tail bound.
    std::vector<Rational> coordinate_growth() const {
        std::vector<Rational> out(static_cast<size_t>(rank_), Rational(1));
        for (const auto& f : factors_) {
            Rational mag = rat_abs(f.base);
            if (mag < 1) mag = 1 / mag;
            for (int j = 0; j < rank_; ++j) {
                Rational e = rat_abs(f.functional[static_cast<size_t>(j)]);
                long ce = rat_floor(e);
                if (Rational(ce) < e) ++ce;
                out[static_cast<size_t>(j)] *= rat_pow(mag, ce);
            }
        }
        return out;
    }

  private:
    int rank_ = 0;
    std::vector<Factor> factors_;
};

inline Rational specialize(const LaurentPoly& p, const SpectralPoint& pt) {
    Rational out(0);
    for (const auto& [b, c] : p.terms()) out += c * pt.value(b);
    return out;
}

} // namespace daha

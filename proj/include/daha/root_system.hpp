#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "daha/rational.hpp"

namespace daha {

// Weights live in the fundamental-weight basis: b = sum_i coords[i] * omega_i.
// Lattice elements of P are exactly the weights with integral coordinates.
struct Weight {
    std::vector<Rational> coords;

    Weight() = default;
    explicit Weight(std::vector<Rational> c) : coords(std::move(c)) {}
    static Weight zero(int n) { return Weight(std::vector<Rational>(static_cast<size_t>(n), Rational(0))); }
    static Weight fundamental(int n, int i) {
        Weight w = zero(n);
        w.coords[static_cast<size_t>(i)] = 1;
        return w;
    }
    static Weight of_ints(std::vector<long> c) {
        std::vector<Rational> r(c.size());
        for (size_t i = 0; i < c.size(); ++i) r[i] = Rational(c[i]);
        return Weight(std::move(r));
    }

    int rank() const { return static_cast<int>(coords.size()); }

    bool is_lattice() const {
        for (const auto& c : coords)
            if (!rat_is_integer(c)) return false;
        return true;
    }
    bool is_zero() const {
        for (const auto& c : coords)
            if (c != 0) return false;
        return true;
    }

    Weight operator+(const Weight& o) const {
        Weight r = *this;
        for (size_t i = 0; i < coords.size(); ++i) r.coords[i] += o.coords[i];
        return r;
    }
    Weight operator-(const Weight& o) const {
        Weight r = *this;
        for (size_t i = 0; i < coords.size(); ++i) r.coords[i] -= o.coords[i];
        return r;
    }
    Weight operator-() const {
        Weight r = *this;
        for (auto& c : r.coords) c = -c;
        return r;
    }
    Weight operator*(const Rational& s) const {
        Weight r = *this;
        for (auto& c : r.coords) c *= s;
        return r;
    }

    bool operator==(const Weight& o) const { return coords == o.coords; }
    bool operator!=(const Weight& o) const { return !(*this == o); }
    bool operator<(const Weight& o) const {
        for (size_t i = 0; i < coords.size(); ++i) {
            int c = cmp(coords[i], o.coords[i]);
            if (c != 0) return c < 0;
        }
        return false;
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < coords.size(); ++i) {
            if (i) s += ",";
            s += coords[i].get_str();
        }
        return s + ")";
    }
};

// A Weyl group element is identified by its action matrix on weight
// coordinates; the reduced word is rebuilt from the matrix whenever a
// canonical word is required.
struct WeylElement {
    int n = 0;
    std::vector<long> mat;  // row-major n x n, integral on P
    std::vector<int> word;  // reduced word in product order, w = s_{word[0]} s_{word[1]} ...

    static WeylElement identity(int n) {
        WeylElement w;
        w.n = n;
        w.mat.assign(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i) w.mat[static_cast<size_t>(i) * n + i] = 1;
        return w;
    }
    bool is_identity() const {
        return *this == identity(n);
    }
    long at(int i, int j) const { return mat[static_cast<size_t>(i) * n + j]; }

    Weight act(const Weight& b) const {
        std::vector<Rational> out(static_cast<size_t>(n), Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (at(i, j) != 0) out[static_cast<size_t>(i)] += Rational(at(i, j)) * b.coords[static_cast<size_t>(j)];
        return Weight(std::move(out));
    }

    // (w1*w2)(b) = w1(w2(b))
    WeylElement operator*(const WeylElement& o) const {
        WeylElement r = identity(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long s = 0;
                for (int k = 0; k < n; ++k) s += at(i, k) * o.at(k, j);
                r.mat[static_cast<size_t>(i) * n + j] = s;
            }
        r.word = word;
        r.word.insert(r.word.end(), o.word.begin(), o.word.end());
        return r;
    }

    bool operator==(const WeylElement& o) const { return n == o.n && mat == o.mat; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }
    bool operator<(const WeylElement& o) const { return mat < o.mat; }
};

struct Root {
    Weight wt;     // omega-coordinates
    int nu = 1;    // (alpha,alpha)/2 in {1,2,3}
    std::vector<long> simple_coeffs;
};

struct DominantSplit {
    Weight b_minus;
    Weight b_plus;
    WeylElement u;  // minimal length with u(b) antidominant
};

// Reduced root system with the short-root normalization (alpha,alpha) = 2.
// Table-driven over the supported labels; everything else is derived from the
// Cartan data: Gram matrix of fundamental weights, positive roots, w0, the
// highest short root, the lattice denominator m with (P,P) in (1/m)Z.
class RootSystem {
  public:
    std::string label;
    int n = 0;
    std::vector<std::vector<long>> cartan;        // A[i][j] = (alpha_i, alpha_j^vee)
    std::vector<int> simple_nu;                   // nu of each simple root
    std::vector<std::vector<Rational>> gram;      // (omega_i, omega_j)
    std::vector<std::vector<Rational>> at_inv;    // (A^T)^{-1}, root-coefficient transform
    std::vector<Root> positive_roots;
    long m = 1;                                   // (P,P) subset (1/m)Z, minimal
    WeylElement w0;
    Weight theta_short;                           // highest short root
    std::map<int, Weight> rho_nu;                 // nu -> sum of omega_i over nu_i = nu
    Weight rho;

    static std::shared_ptr<const RootSystem> build(const std::string& type_label);

    // --- bilinear form -------------------------------------------------

    Rational pair(const Weight& a, const Weight& b) const {
        if (a.rank() != n || b.rank() != n) throw usage_error("pair: mismatched root systems");
        Rational s(0);
        for (int i = 0; i < n; ++i) {
            if (a.coords[static_cast<size_t>(i)] == 0) continue;
            for (int j = 0; j < n; ++j)
                if (b.coords[static_cast<size_t>(j)] != 0)
                    s += a.coords[static_cast<size_t>(i)] * gram[static_cast<size_t>(i)][static_cast<size_t>(j)] * b.coords[static_cast<size_t>(j)];
        }
        return s;
    }

    // (b, alpha^vee) = 2(b,alpha)/(alpha,alpha)
    Rational coroot_pair(const Weight& b, const Root& alpha) const {
        return pair(b, alpha.wt) / alpha.nu;
    }

    Rational norm2(const Weight& b) const { return pair(b, b); }

    // --- simple reflections and Weyl machinery -------------------------

    Weight simple_reflect(int i, const Weight& b) const {
        // s_i(b) = b - (b, alpha_i^vee) alpha_i; in omega-coordinates the
        // pairing with alpha_i^vee is just coordinate i.
        Weight r = b;
        Rational ci = b.coords[static_cast<size_t>(i)];
        if (ci == 0) return r;
        for (int j = 0; j < n; ++j)
            r.coords[static_cast<size_t>(j)] -= ci * cartan[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return r;
    }

    WeylElement simple_element(int i) const {
        WeylElement w = WeylElement::identity(n);
        for (int j = 0; j < n; ++j) {
            Weight img = simple_reflect(i, Weight::fundamental(n, j));
            for (int k = 0; k < n; ++k)
                w.mat[static_cast<size_t>(k) * n + j] = rat_to_long(img.coords[static_cast<size_t>(k)], "Weyl matrix entry");
        }
        w.word = {i};
        return w;
    }

    // Coefficients of b in the simple-root basis, if b lies in QR.
    std::vector<Rational> root_coeffs(const Weight& b) const {
        std::vector<Rational> out(static_cast<size_t>(n), Rational(0));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                out[static_cast<size_t>(i)] += at_inv[static_cast<size_t>(i)][static_cast<size_t>(j)] * b.coords[static_cast<size_t>(j)];
        }
        return out;
    }

    bool in_root_lattice(const Weight& b) const {
        for (const auto& c : root_coeffs(b))
            if (!rat_is_integer(c)) return false;
        return true;
    }

    // b in Q_+ (nonnegative integral combination of simple roots)?
    bool in_q_plus(const Weight& b) const {
        for (const auto& c : root_coeffs(b))
            if (!rat_is_integer(c) || c < 0) return false;
        return true;
    }

    bool is_dominant(const Weight& b) const {
        for (const auto& c : b.coords)
            if (c < 0) return false;
        return true;
    }
    bool is_antidominant(const Weight& b) const {
        for (const auto& c : b.coords)
            if (c > 0) return false;
        return true;
    }

    // A root is negative iff its simple-root coefficients are nonpositive.
    bool root_is_negative(const Weight& r) const {
        for (const auto& c : root_coeffs(r)) {
            if (c < 0) return true;
            if (c > 0) return false;
        }
        return false;
    }

    int length(const WeylElement& w) const {
        int l = 0;
        for (const auto& a : positive_roots)
            if (root_is_negative(w.act(a.wt))) ++l;
        return l;
    }

    // Canonical reduced word by right-stripping: w(alpha_i) < 0 iff w*s_i is
    // shorter.  Words are stored in product order, w = s_{word[0]} s_{word[1]} ...
    std::vector<int> reduced_word(WeylElement w) const {
        std::vector<int> word;
        while (true) {
            int found = -1;
            for (int i = 0; i < n; ++i) {
                if (root_is_negative(w.act(simple_root(i).wt))) { found = i; break; }
            }
            if (found < 0) break;
            w = w * simple_element(found);
            word.insert(word.begin(), found);
        }
        if (!w.is_identity()) throw usage_error("reduced_word: matrix is not a Weyl element");
        return word;
    }

    WeylElement from_word(const std::vector<int>& word) const {
        WeylElement w = WeylElement::identity(n);
        for (int i : word) w = w * simple_element(i);
        return w;
    }

    WeylElement inverse(const WeylElement& w) const {
        WeylElement inv = WeylElement::identity(n);
        std::vector<int> word = w.word.empty() ? reduced_word(w) : w.word;
        for (auto it = word.rbegin(); it != word.rend(); ++it) inv = inv * simple_element(*it);
        if (!((inv * w).is_identity())) throw usage_error("inverse: stored word does not match matrix");
        return inv;
    }

    const Root& simple_root(int i) const { return positive_roots[static_cast<size_t>(simple_index_[static_cast<size_t>(i)])]; }

    // Greedy descent to the antidominant chamber; lowest index first.  The
    // resulting word is reduced and u is the minimal-length element with
    // u(b) in P_-.
    DominantSplit dominant_split(const Weight& b) const {
        Weight g = b;
        WeylElement u = WeylElement::identity(n);
        std::vector<int> word;
        while (true) {
            int found = -1;
            for (int i = 0; i < n; ++i) {
                if (g.coords[static_cast<size_t>(i)] > 0) { found = i; break; }
            }
            if (found < 0) break;
            g = simple_reflect(found, g);
            u = simple_element(found) * u;
            word.insert(word.begin(), found);
        }
        u.word = word;
        DominantSplit out;
        out.b_minus = g;
        out.b_plus = w0.act(g);
        out.u = u;
        return out;
    }

    Weight dominant_representative(const Weight& b) const { return dominant_split(b).b_plus; }

    Weight iota(const Weight& b) const { return -(w0.act(b)); }

    // Full group, breadth-first; desk-scale only (|W| <= 1152 here).
    std::vector<WeylElement> all_elements() const {
        std::vector<WeylElement> out{WeylElement::identity(n)};
        std::vector<WeylElement> frontier = out;
        while (!frontier.empty()) {
            std::vector<WeylElement> next;
            for (const auto& w : frontier) {
                for (int i = 0; i < n; ++i) {
                    WeylElement c = w * simple_element(i);
                    if (std::find(out.begin(), out.end(), c) == out.end()) {
                        out.push_back(c);
                        next.push_back(c);
                    }
                }
            }
            frontier = std::move(next);
        }
        return out;
    }

    std::optional<const Root*> find_root(const Weight& w) const {
        for (const auto& r : positive_roots) {
            if (r.wt == w) return &r;
        }
        return std::nullopt;
    }

    // Positive rational gamma with (b,b) >= gamma * sum_j c_j^2 in the
    // fundamental-weight coordinates; max of the Gershgorin bound and
    // det/trace^{n-1}.
    Rational gram_lower_bound() const {
        Rational gersh;
        bool first = true;
        for (int i = 0; i < n; ++i) {
            Rational row = gram[static_cast<size_t>(i)][static_cast<size_t>(i)];
            for (int j = 0; j < n; ++j)
                if (j != i) row -= rat_abs(gram[static_cast<size_t>(i)][static_cast<size_t>(j)]);
            if (first || row < gersh) { gersh = row; first = false; }
        }
        // det / trace^{n-1}
        auto g = gram;
        Rational det(1);
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (g[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { piv = r; break; }
            if (piv < 0) { det = 0; break; }
            if (piv != col) { std::swap(g[static_cast<size_t>(piv)], g[static_cast<size_t>(col)]); det = -det; }
            det *= g[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int r = col + 1; r < n; ++r) {
                Rational f = g[static_cast<size_t>(r)][static_cast<size_t>(col)] / g[static_cast<size_t>(col)][static_cast<size_t>(col)];
                for (int c = col; c < n; ++c)
                    g[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * g[static_cast<size_t>(col)][static_cast<size_t>(c)];
            }
        }
        Rational trace(0);
        for (int i = 0; i < n; ++i) trace += gram[static_cast<size_t>(i)][static_cast<size_t>(i)];
        Rational ratio = (n == 1) ? trace : det / rat_pow(trace, n - 1);
        Rational best = (gersh > ratio) ? gersh : ratio;
        if (!(best > 0)) throw usage_error("gram_lower_bound: could not certify positivity for " + label);
        return best;
    }

  private:
    std::vector<int> simple_index_;

    friend std::shared_ptr<const RootSystem> build_root_system(const std::string&);

    static void invert_rational(const std::vector<std::vector<Rational>>& a,
                                std::vector<std::vector<Rational>>& inv) {
        int n = static_cast<int>(a.size());
        std::vector<std::vector<Rational>> aug(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(2 * n), Rational(0)));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) aug[static_cast<size_t>(i)][static_cast<size_t>(j)] = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
            aug[static_cast<size_t>(i)][static_cast<size_t>(n + i)] = 1;
        }
        for (int col = 0; col < n; ++col) {
            int piv = -1;
            for (int r = col; r < n; ++r)
                if (aug[static_cast<size_t>(r)][static_cast<size_t>(col)] != 0) { piv = r; break; }
            if (piv < 0) throw usage_error("singular matrix in root-system setup");
            std::swap(aug[static_cast<size_t>(piv)], aug[static_cast<size_t>(col)]);
            Rational d = aug[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (auto& x : aug[static_cast<size_t>(col)]) x /= d;
            for (int r = 0; r < n; ++r) {
                if (r == col) continue;
                Rational f = aug[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (f == 0) continue;
                for (int c = 0; c < 2 * n; ++c)
                    aug[static_cast<size_t>(r)][static_cast<size_t>(c)] -= f * aug[static_cast<size_t>(col)][static_cast<size_t>(c)];
            }
        }
        inv.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) inv[static_cast<size_t>(i)][static_cast<size_t>(j)] = aug[static_cast<size_t>(i)][static_cast<size_t>(n + j)];
    }
};

using RootSystemPtr = std::shared_ptr<const RootSystem>;

namespace detail {

struct TypeSeed {
    int n;
    std::vector<int> d;                       // nu of each simple root
    std::vector<std::array<long, 3>> edges;   // (i, j, (alpha_i,alpha_j))
    long expected_m;
    long expected_pos_roots;
};

inline TypeSeed type_seed(const std::string& label) {
    auto chain = [](int n, long v) {
        std::vector<std::array<long, 3>> e;
        for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1, v});
        return e;
    };
    if (label == "A1") return {1, {1}, {}, 2, 1};
    if (label == "A2") return {2, {1, 1}, chain(2, -1), 3, 3};
    if (label == "A3") return {3, {1, 1, 1}, chain(3, -1), 4, 6};
    if (label == "A4") return {4, {1, 1, 1, 1}, chain(4, -1), 5, 10};
    if (label == "B2") return {2, {2, 1}, {{{0, 1, -2}}}, 1, 4};
    if (label == "B3") return {3, {2, 2, 1}, {{{0, 1, -2}}, {{1, 2, -2}}}, 2, 9};
    if (label == "B4") return {4, {2, 2, 2, 1}, {{{0, 1, -2}}, {{1, 2, -2}}, {{2, 3, -2}}}, 1, 16};
    if (label == "C2") return {2, {1, 2}, {{{0, 1, -2}}}, 1, 4};
    if (label == "C3") return {3, {1, 1, 2}, {{{0, 1, -1}}, {{1, 2, -2}}}, 1, 9};
    if (label == "C4") return {4, {1, 1, 1, 2}, {{{0, 1, -1}}, {{1, 2, -1}}, {{2, 3, -2}}}, 1, 16};
    if (label == "D4") return {4, {1, 1, 1, 1}, {{{0, 1, -1}}, {{1, 2, -1}}, {{1, 3, -1}}}, 2, 12};
    if (label == "F4") return {4, {2, 2, 1, 1}, {{{0, 1, -2}}, {{1, 2, -2}}, {{2, 3, -1}}}, 1, 24};
    if (label == "G2") return {2, {1, 3}, {{{0, 1, -3}}}, 1, 6};
    throw usage_error("unsupported root system type (rank <= 4 required): " + label);
}

} // namespace detail

inline std::shared_ptr<const RootSystem> RootSystem::build(const std::string& type_label) {
    auto seed = detail::type_seed(type_label);
    auto rs = std::make_shared<RootSystem>();
    rs->label = type_label;
    rs->n = seed.n;
    rs->simple_nu = seed.d;
    const int n = seed.n;

    // Symmetric products (alpha_i, alpha_j), then the Cartan matrix.
    std::vector<std::vector<Rational>> S(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i) S[static_cast<size_t>(i)][static_cast<size_t>(i)] = 2 * seed.d[static_cast<size_t>(i)];
    for (const auto& e : seed.edges) {
        S[static_cast<size_t>(e[0])][static_cast<size_t>(e[1])] = e[2];
        S[static_cast<size_t>(e[1])][static_cast<size_t>(e[0])] = e[2];
    }
    rs->cartan.assign(static_cast<size_t>(n), std::vector<long>(static_cast<size_t>(n), 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational a = S[static_cast<size_t>(i)][static_cast<size_t>(j)] / seed.d[static_cast<size_t>(j)];
            rs->cartan[static_cast<size_t>(i)][static_cast<size_t>(j)] = rat_to_long(a, "Cartan entry");
        }

    // Gram matrix of fundamental weights: G A^T = diag(d).
    std::vector<std::vector<Rational>> at(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) at[static_cast<size_t>(i)][static_cast<size_t>(j)] = rs->cartan[static_cast<size_t>(j)][static_cast<size_t>(i)];
    RootSystem::invert_rational(at, rs->at_inv);
    rs->gram.assign(static_cast<size_t>(n), std::vector<Rational>(static_cast<size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            rs->gram[static_cast<size_t>(i)][static_cast<size_t>(j)] = seed.d[static_cast<size_t>(i)] * rs->at_inv[static_cast<size_t>(i)][static_cast<size_t>(j)];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (rs->gram[static_cast<size_t>(i)][static_cast<size_t>(j)] != rs->gram[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw usage_error("Gram matrix is not symmetric; bad seed for " + type_label);

    // Lattice denominator.
    mpz_class mm(1);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            mpz_lcm(mm.get_mpz_t(), mm.get_mpz_t(), rs->gram[static_cast<size_t>(i)][static_cast<size_t>(j)].get_den().get_mpz_t());
    if (!mm.fits_slong_p()) throw usage_error("lattice denominator overflow");
    rs->m = mm.get_si();
    if (rs->m != seed.expected_m)
        throw usage_error("lattice denominator table mismatch for " + type_label +
                          ": computed " + std::to_string(rs->m) +
                          ", table " + std::to_string(seed.expected_m));

    // Positive roots: close the simple roots under simple reflections.
    auto root_weight = [&](int i) {
        std::vector<Rational> c(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j) c[static_cast<size_t>(j)] = rs->cartan[static_cast<size_t>(i)][static_cast<size_t>(j)];
        return Weight(std::move(c));
    };
    std::vector<Weight> all;
    rs->simple_index_.assign(static_cast<size_t>(n), -1);
    for (int i = 0; i < n; ++i) all.push_back(root_weight(i));
    for (size_t k = 0; k < all.size(); ++k) {
        for (int i = 0; i < n; ++i) {
            Weight img = rs->simple_reflect(i, all[k]);
            if (std::find(all.begin(), all.end(), img) == all.end()) all.push_back(img);
        }
    }
    for (const auto& r : all) {
        if (rs->root_is_negative(r)) continue;
        Root root;
        root.wt = r;
        Rational nn = rs->pair(r, r) / 2;
        root.nu = static_cast<int>(rat_to_long(nn, "root length nu"));
        auto rc = rs->root_coeffs(r);
        for (const auto& c : rc) root.simple_coeffs.push_back(rat_to_long(c, "root coefficient"));
        rs->positive_roots.push_back(root);
    }
    std::sort(rs->positive_roots.begin(), rs->positive_roots.end(), [](const Root& a, const Root& b) {
        long ha = 0, hb = 0;
        for (long c : a.simple_coeffs) ha += c;
        for (long c : b.simple_coeffs) hb += c;
        if (ha != hb) return ha < hb;
        return a.wt < b.wt;
    });
    for (int i = 0; i < n; ++i) {
        Weight ai = root_weight(i);
        for (size_t k = 0; k < rs->positive_roots.size(); ++k)
            if (rs->positive_roots[k].wt == ai) rs->simple_index_[static_cast<size_t>(i)] = static_cast<int>(k);
    }
    if (static_cast<long>(rs->positive_roots.size()) != seed.expected_pos_roots)
        throw usage_error("positive-root count mismatch for " + type_label);

    // rho, rho_nu, w0, highest short root.
    rs->rho = Weight::zero(n);
    for (int i = 0; i < n; ++i) rs->rho = rs->rho + Weight::fundamental(n, i);
    for (int i = 0; i < n; ++i) {
        int nu = seed.d[static_cast<size_t>(i)];
        auto it = rs->rho_nu.find(nu);
        if (it == rs->rho_nu.end()) rs->rho_nu.emplace(nu, Weight::fundamental(n, i));
        else it->second = it->second + Weight::fundamental(n, i);
    }
    for (auto& [nu, w] : rs->rho_nu) {
        Weight half_sum = Weight::zero(n);
        for (const auto& r : rs->positive_roots)
            if (r.nu == nu) half_sum = half_sum + r.wt * Rational(1, 2);
        if (!(half_sum == w)) throw usage_error("rho_nu consistency check failed for " + type_label);
    }
    rs->w0 = WeylElement::identity(n);  // placeholder so dominant_split can run
    {
        // w0 = the minimal element sending rho to the antidominant chamber.
        Weight g = rs->rho;
        WeylElement u = WeylElement::identity(n);
        std::vector<int> word;
        while (true) {
            int found = -1;
            for (int i = 0; i < n; ++i)
                if (g.coords[static_cast<size_t>(i)] > 0) { found = i; break; }
            if (found < 0) break;
            g = rs->simple_reflect(found, g);
            u = rs->simple_element(found) * u;
            word.insert(word.begin(), found);
        }
        u.word = word;
        rs->w0 = u;
    }
    {
        int nu_min = 1;
        Weight best;
        bool got = false;
        for (const auto& r : rs->positive_roots) {
            if (r.nu != nu_min) continue;
            if (rs->is_dominant(r.wt)) {
                best = r.wt;
                got = true;
            }
        }
        if (!got) throw usage_error("no dominant short root found for " + type_label);
        rs->theta_short = best;
    }
    return rs;
}

inline RootSystemPtr build_root_system(const std::string& label) { return RootSystem::build(label); }

} // namespace daha

#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "naq/bidiff.hpp"
#include "naq/polynomial.hpp"

namespace naq {

/// A cotangent vector with exact rational components.
using Covector = std::vector<Rational>;

/// Antisymmetric bivector field P^{ij} with polynomial entries; the
/// antisymmetry P^{ij} = -P^{ji} (and zero diagonal) is enforced at
/// construction.
class Bivector {
public:
    Bivector(int dim, std::vector<Polynomial> entries) : dim_(dim), e_(std::move(entries)) {
        if (dim < 1) throw Error("bivector dimension must be >= 1");
        if (e_.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim))
            throw Error("bivector entry matrix must be dim x dim");
        for (const auto& p : e_)
            if (p.dim() != dim) throw Error("bivector entry dimension mismatch");
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j <= i; ++j)
                if (at(i, j) != -at(j, i))
                    throw Error("bivector must be antisymmetric (P[" + std::to_string(i + 1) + "][" +
                                std::to_string(j + 1) + "] != -P[" + std::to_string(j + 1) + "][" +
                                std::to_string(i + 1) + "])");
    }

    static Bivector zero(int dim) {
        return Bivector(dim, std::vector<Polynomial>(
                                 static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim),
                                 Polynomial(dim)));
    }

    /// Constant bivector from a rational matrix (validated antisymmetric).
    static Bivector constant(int dim, const std::vector<std::vector<Rational>>& m) {
        if (m.size() != static_cast<std::size_t>(dim)) throw Error("constant bivector matrix shape");
        std::vector<Polynomial> e;
        e.reserve(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim));
        for (const auto& row : m) {
            if (row.size() != static_cast<std::size_t>(dim))
                throw Error("constant bivector matrix shape");
            for (const auto& v : row) e.push_back(Polynomial::constant(dim, v));
        }
        return Bivector(dim, std::move(e));
    }

    /// Standard symplectic bivector on R^2: P^{12} = 1.
    static Bivector symplectic2() { return constant(2, {{0, 1}, {-1, 0}}); }

    /// Linear bivector from structure constants: P^{ij} = sum_k c[i][j][k] x_k.
    /// c must be antisymmetric in (i, j).
    static Bivector linear(int dim, const std::vector<std::vector<std::vector<Rational>>>& c) {
        std::vector<Polynomial> e(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim),
                                  Polynomial(dim));
        if (c.size() != static_cast<std::size_t>(dim)) throw Error("structure constant shape");
        for (int i = 0; i < dim; ++i) {
            if (c[static_cast<std::size_t>(i)].size() != static_cast<std::size_t>(dim))
                throw Error("structure constant shape");
            for (int j = 0; j < dim; ++j) {
                const auto& row = c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (row.size() != static_cast<std::size_t>(dim)) throw Error("structure constant shape");
                Polynomial p(dim);
                for (int k = 0; k < dim; ++k)
                    p += Polynomial::monomial(dim, MultiIndex::unit(dim, k), row[static_cast<std::size_t>(k)]);
                e[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(j)] = p;
            }
        }
        return Bivector(dim, std::move(e));
    }

    /// su(2) bivector on R^3: P^{ij} = epsilon_{ijk} x_k.
    static Bivector su2() {
        std::vector<std::vector<std::vector<Rational>>> c(
            3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) c[i][j][k] = epsilon(i, j, k);
        return linear(3, c);
    }

    /// Heisenberg bivector on R^3: {x1, x2} = x3, x3 central.
    static Bivector heisenberg() {
        std::vector<std::vector<std::vector<Rational>>> c(
            3, std::vector<std::vector<Rational>>(3, std::vector<Rational>(3, 0)));
        c[0][1][2] = 1;
        c[1][0][2] = -1;
        return linear(3, c);
    }

    /// Magnetic monopole bivector on phase space R^6 with coordinates
    /// (x1, x2, x3, p1, p2, p3) = (x1, ..., x6):
    ///   {x_i, x_j} = 0, {x_i, p_j} = delta_ij, {p_i, p_j} = epsilon_{ijk} B_k.
    /// The field components B_k are polynomials in the six phase-space
    /// coordinates (physically of the position block only).
    static Bivector monopole(const std::array<Polynomial, 3>& b) {
        const int n = 6;
        for (const auto& p : b)
            if (p.dim() != n) throw Error("monopole field components must have dimension 6");
        std::vector<Polynomial> e(36, Polynomial(n));
        auto set = [&](int i, int j, const Polynomial& p) {
            e[static_cast<std::size_t>(i) * 6 + static_cast<std::size_t>(j)] = p;
            e[static_cast<std::size_t>(j) * 6 + static_cast<std::size_t>(i)] = -p;
        };
        for (int i = 0; i < 3; ++i) set(i, i + 3, Polynomial::one(n));
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                Polynomial p(n);
                for (int k = 0; k < 3; ++k) {
                    Rational s = epsilon(i, j, k);
                    if (!s.is_zero()) p += s * b[static_cast<std::size_t>(k)];
                }
                set(i + 3, j + 3, p);
            }
        return Bivector(n, std::move(e));
    }

    /// Monopole bivector with B(x) = (x1, x2, x3).
    static Bivector monopole_linear() {
        return monopole({Polynomial::variable(6, 0), Polynomial::variable(6, 1),
                         Polynomial::variable(6, 2)});
    }

    int dim() const { return dim_; }

    const Polynomial& entry(int i, int j) const {
        if (i < 0 || i >= dim_ || j < 0 || j >= dim_) throw Error("bivector index out of range");
        return at(i, j);
    }

    bool is_zero() const {
        for (const auto& p : e_)
            if (!p.is_zero()) return false;
        return true;
    }

    bool is_constant() const {
        for (const auto& p : e_)
            if (p.degree() > 0) return false;
        return true;
    }

    int max_degree() const {
        int d = 0;
        for (const auto& p : e_) d = std::max(d, p.degree());
        return d;
    }

    /// Poisson bracket {f, g} = sum_ij P^{ij} d_i f d_j g.
    Polynomial bracket(const Polynomial& f, const Polynomial& g) const {
        if (f.dim() != dim_ || g.dim() != dim_) throw Error("bracket argument dimension mismatch");
        Polynomial r(dim_);
        std::vector<Polynomial> df, dg;
        df.reserve(static_cast<std::size_t>(dim_));
        dg.reserve(static_cast<std::size_t>(dim_));
        for (int i = 0; i < dim_; ++i) {
            df.push_back(f.partial(i));
            dg.push_back(g.partial(i));
        }
        for (int i = 0; i < dim_; ++i) {
            if (df[static_cast<std::size_t>(i)].is_zero()) continue;
            for (int j = 0; j < dim_; ++j) {
                const Polynomial& p = at(i, j);
                if (p.is_zero() || dg[static_cast<std::size_t>(j)].is_zero()) continue;
                r += p * df[static_cast<std::size_t>(i)] * dg[static_cast<std::size_t>(j)];
            }
        }
        return r;
    }

    /// The bracket as a bidifferential operator sum_ij P^{ij} d_i (x) d_j.
    BidiffOperator bracket_operator() const {
        BidiffOperator op(dim_);
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                const Polynomial& p = at(i, j);
                if (p.is_zero()) continue;
                op.add_term(p, MultiIndex::unit(dim_, i), MultiIndex::unit(dim_, j));
            }
        return op;
    }

    /// Exact contraction P^{ij}(x0) v1_i v4_j.
    Rational contract_at(const std::vector<Rational>& x0, const Covector& v1,
                         const Covector& v4) const {
        if (static_cast<int>(x0.size()) != dim_ || static_cast<int>(v1.size()) != dim_ ||
            static_cast<int>(v4.size()) != dim_)
            throw Error("contraction dimension mismatch");
        Rational r = 0;
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                const Polynomial& p = at(i, j);
                if (p.is_zero()) continue;
                Rational c = v1[static_cast<std::size_t>(i)] * v4[static_cast<std::size_t>(j)];
                if (c.is_zero()) continue;
                r += p.eval(x0) * c;
            }
        return r;
    }

    friend bool operator==(const Bivector& a, const Bivector& b) {
        return a.dim_ == b.dim_ && a.e_ == b.e_;
    }
    friend bool operator!=(const Bivector& a, const Bivector& b) { return !(a == b); }

    static Rational epsilon(int i, int j, int k) {
        if (i == j || j == k || i == k) return 0;
        // parity of the permutation (i j k) of (0 1 2)
        int inv = (i > j) + (i > k) + (j > k);
        return (inv % 2 == 0) ? 1 : -1;
    }

private:
    const Polynomial& at(int i, int j) const {
        return e_[static_cast<std::size_t>(i) * static_cast<std::size_t>(dim_) +
                  static_cast<std::size_t>(j)];
    }

    int dim_;
    std::vector<Polynomial> e_;
};

/// Totally antisymmetric rank-3 tensor of polynomials, stored by its
/// independent entries J^{ijk} with i < j < k.
class JacobiatorTensor {
public:
    explicit JacobiatorTensor(int dim) : dim_(dim) {}

    int dim() const { return dim_; }

    void set(int i, int j, int k, Polynomial p) {
        if (!(i < j && j < k)) throw Error("independent entries require i < j < k");
        if (p.is_zero()) return;
        indep_.insert_or_assign({i, j, k}, std::move(p));
    }

    /// Entry with full antisymmetry: sign of the permutation sorting (i,j,k).
    Polynomial entry(int i, int j, int k) const {
        if (i == j || j == k || i == k) return Polynomial(dim_);
        std::array<int, 3> s{i, j, k};
        int sign = 1;
        if (s[0] > s[1]) { std::swap(s[0], s[1]); sign = -sign; }
        if (s[1] > s[2]) { std::swap(s[1], s[2]); sign = -sign; }
        if (s[0] > s[1]) { std::swap(s[0], s[1]); sign = -sign; }
        auto it = indep_.find(s);
        if (it == indep_.end()) return Polynomial(dim_);
        return sign == 1 ? it->second : -it->second;
    }

    bool is_zero() const { return indep_.empty(); }

    const std::map<std::array<int, 3>, Polynomial>& independent_entries() const { return indep_; }

private:
    int dim_;
    std::map<std::array<int, 3>, Polynomial> indep_;
};

/// Jacobiator {f,g,h} = {f,{g,h}} + {h,{f,g}} + {g,{h,f}} by nested
/// bracket evaluation.
inline Polynomial jacobiator_fn(const Bivector& p, const Polynomial& f, const Polynomial& g,
                                const Polynomial& h) {
    return p.bracket(f, p.bracket(g, h)) + p.bracket(h, p.bracket(f, g)) +
           p.bracket(g, p.bracket(h, f));
}

/// Jacobiator tensor J^{ijk} = P^{il} d_l P^{jk} + P^{jl} d_l P^{ki}
///                           + P^{kl} d_l P^{ij}.
inline JacobiatorTensor jacobiator_tensor(const Bivector& p) {
    int n = p.dim();
    JacobiatorTensor t(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = j + 1; k < n; ++k) {
                Polynomial e(n);
                for (int l = 0; l < n; ++l) {
                    if (!p.entry(i, l).is_zero()) e += p.entry(i, l) * p.entry(j, k).partial(l);
                    if (!p.entry(j, l).is_zero()) e += p.entry(j, l) * p.entry(k, i).partial(l);
                    if (!p.entry(k, l).is_zero()) e += p.entry(k, l) * p.entry(i, j).partial(l);
                }
                t.set(i, j, k, std::move(e));
            }
    return t;
}

/// Contraction J^{ijk} d_i f d_j g d_k h of a Jacobiator tensor with three
/// gradients; the independent route for cross-checking jacobiator_fn.
inline Polynomial jacobiator_contract(const JacobiatorTensor& t, const Polynomial& f,
                                      const Polynomial& g, const Polynomial& h) {
    int n = t.dim();
    Polynomial r(n);
    std::vector<Polynomial> df, dg, dh;
    for (int i = 0; i < n; ++i) {
        df.push_back(f.partial(i));
        dg.push_back(g.partial(i));
        dh.push_back(h.partial(i));
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Polynomial e = t.entry(i, j, k);
                if (e.is_zero()) continue;
                const Polynomial& a = df[static_cast<std::size_t>(i)];
                const Polynomial& b = dg[static_cast<std::size_t>(j)];
                const Polynomial& c = dh[static_cast<std::size_t>(k)];
                if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
                r += e * a * b * c;
            }
    return r;
}

/// Exact pointwise contraction J^{ijk}(x0) v1_i v2_j v3_k.
inline Rational contract_jacobiator_at(const Bivector& p, const std::vector<Rational>& x0,
                                       const Covector& v1, const Covector& v2,
                                       const Covector& v3) {
    int n = p.dim();
    if (static_cast<int>(x0.size()) != n || static_cast<int>(v1.size()) != n ||
        static_cast<int>(v2.size()) != n || static_cast<int>(v3.size()) != n)
        throw Error("contraction dimension mismatch");
    JacobiatorTensor t = jacobiator_tensor(p);
    Rational r = 0;
    for (const auto& [idx, poly] : t.independent_entries()) {
        Rational base = poly.eval(x0);
        if (base.is_zero()) continue;
        // expand the six orderings of the antisymmetric entry
        std::array<int, 3> s = idx;
        const Covector* vs[3] = {&v1, &v2, &v3};
        int perm[6][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
        for (int pi = 0; pi < 6; ++pi) {
            int sign = pi < 3 ? 1 : -1;
            Rational c = (*vs[perm[pi][0]])[static_cast<std::size_t>(s[0])] *
                         (*vs[perm[pi][1]])[static_cast<std::size_t>(s[1])] *
                         (*vs[perm[pi][2]])[static_cast<std::size_t>(s[2])];
            if (!c.is_zero()) r += Rational(sign) * base * c;
        }
    }
    return r;
}

/// Exact pointwise contraction P(x0)(v1, v4).
inline Rational contract_bivector_at(const Bivector& p, const std::vector<Rational>& x0,
                                     const Covector& v1, const Covector& v4) {
    return p.contract_at(x0, v1, v4);
}

} // namespace naq

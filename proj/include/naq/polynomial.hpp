#pragma once

#include <map>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "naq/multi_index.hpp"
#include "naq/rational.hpp"

namespace naq {

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept normalized: no stored coefficient is zero, so two
/// polynomials are equal iff their term maps are equal. The term map is
/// ordered graded-lexicographically, which fixes iteration, printing and
/// leading-term extraction.
class Polynomial {
public:
    using TermMap = std::map<MultiIndex, Rational, GrlexLess>;

    explicit Polynomial(int dim) : dim_(dim) {
        if (dim < 1) throw Error("polynomial dimension must be >= 1");
    }

    static Polynomial constant(int dim, const Rational& c) {
        Polynomial p(dim);
        if (!c.is_zero()) p.terms_.emplace(MultiIndex(dim), c);
        return p;
    }

    static Polynomial one(int dim) { return constant(dim, 1); }

    /// The coordinate function for a 0-based axis.
    static Polynomial variable(int dim, int axis) {
        return monomial(dim, MultiIndex::unit(dim, axis), 1);
    }

    static Polynomial monomial(int dim, const MultiIndex& alpha, const Rational& c) {
        if (alpha.dim() != dim) throw Error("monomial exponent dimension mismatch");
        Polynomial p(dim);
        if (!c.is_zero()) p.terms_.emplace(alpha, c);
        return p;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    /// Total degree; -1 for the zero polynomial.
    int degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.order(); }

    Rational coeff(const MultiIndex& alpha) const {
        auto it = terms_.find(alpha);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Polynomial& operator+=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [a, c] : o.terms_) add_term(a, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& o) {
        check_dim(o);
        for (const auto& [a, c] : o.terms_) add_term(a, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r(a.dim_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.check_dim(b);
        Polynomial r(a.dim_);
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
        return r;
    }

    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    friend Polynomial operator*(const Rational& c, const Polynomial& a) {
        Polynomial r(a.dim_);
        if (c.is_zero()) return r;
        for (const auto& [m, t] : a.terms_) r.terms_.emplace(m, c * t);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Rational& c) { return c * a; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Formal partial derivative along a 0-based axis.
    Polynomial partial(int axis) const {
        if (axis < 0 || axis >= dim_) throw Error("axis out of range");
        Polynomial r(dim_);
        for (const auto& [m, c] : terms_) {
            std::uint32_t e = m[axis];
            if (e == 0) continue;
            MultiIndex shifted = m;
            shifted[axis] = e - 1;
            r.terms_.emplace(shifted, c * Rational(static_cast<long long>(e)));
        }
        return r;
    }

    /// Iterated partial derivative d^alpha, computed per term with falling
    /// factorials.
    Polynomial partial(const MultiIndex& alpha) const {
        if (alpha.dim() != dim_) throw Error("derivative multi-index dimension mismatch");
        Polynomial r(dim_);
        for (const auto& [m, c] : terms_) {
            if (!m.dominates(alpha)) continue;
            Integer scale = 1;
            for (int i = 0; i < dim_; ++i)
                for (std::uint32_t k = 0; k < alpha[i]; ++k) scale *= m[i] - k;
            r.add_term(m - alpha, c * Rational(scale));
        }
        return r;
    }

    /// Exact evaluation at a rational point.
    Rational eval(std::span<const Rational> point) const {
        if (static_cast<int>(point.size()) != dim_) throw Error("evaluation point length mismatch");
        Rational total = 0;
        for (const auto& [m, c] : terms_) {
            Rational term = c;
            for (int i = 0; i < dim_; ++i)
                for (std::uint32_t k = 0; k < m[i]; ++k) term *= point[static_cast<std::size_t>(i)];
            total += term;
        }
        return total;
    }

    Rational eval(const std::vector<Rational>& point) const {
        return eval(std::span<const Rational>(point));
    }

    /// Renders in the expression grammar (variables x1..xn, explicit '*',
    /// '^' powers), leading term first. The output re-parses to an equal
    /// polynomial.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rational& c = it->second;
            if (first) {
                if (c.sign() < 0) out << "-";
                first = false;
            } else {
                out << (c.sign() < 0 ? " - " : " + ");
            }
            out << term_str(it->first, c.abs());
        }
        return out.str();
    }

private:
    void check_dim(const Polynomial& o) const {
        if (dim_ != o.dim_) throw Error("polynomial dimension mismatch");
    }

    void add_term(const MultiIndex& m, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    static std::string term_str(const MultiIndex& m, const Rational& abs_coeff) {
        std::ostringstream out;
        bool has_vars = !m.is_zero();
        if (!has_vars || !abs_coeff.is_one()) {
            out << abs_coeff.str();
            if (has_vars) out << "*";
        }
        bool first = true;
        for (int i = 0; i < m.dim(); ++i) {
            if (m[i] == 0) continue;
            if (!first) out << "*";
            first = false;
            out << "x" << (i + 1);
            if (m[i] > 1) out << "^" << m[i];
        }
        return out.str();
    }

    int dim_;
    TermMap terms_;
};

} // namespace naq

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "naq/polynomial.hpp"

namespace naq {

/// Formal power series in the deformation parameter lambda, truncated at a
/// fixed order K: all arithmetic is performed modulo lambda^(K+1).
///
/// Mixing truncation orders is an error rather than an implicit
/// re-truncation; a silent change of K would corrupt downstream
/// certificates.
class LambdaSeries {
public:
    LambdaSeries(int dim, int truncation_order)
        : dim_(dim), coef_(static_cast<std::size_t>(truncation_order) + 1, Polynomial(dim)) {
        if (dim < 1) throw Error("series dimension must be >= 1");
        if (truncation_order < 0) throw Error("truncation order must be >= 0");
    }

    /// Embeds a polynomial at lambda-order 0.
    static LambdaSeries from_poly(const Polynomial& p, int truncation_order) {
        LambdaSeries s(p.dim(), truncation_order);
        s.coef_[0] = p;
        return s;
    }

    static LambdaSeries zero(int dim, int truncation_order) {
        return LambdaSeries(dim, truncation_order);
    }

    int dim() const { return dim_; }
    int truncation_order() const { return static_cast<int>(coef_.size()) - 1; }

    const Polynomial& coefficient(int r) const {
        if (r < 0 || r > truncation_order()) throw Error("lambda order out of range");
        return coef_[static_cast<std::size_t>(r)];
    }

    void set_coefficient(int r, Polynomial p) {
        if (r < 0 || r > truncation_order()) throw Error("lambda order out of range");
        if (p.dim() != dim_) throw Error("series coefficient dimension mismatch");
        coef_[static_cast<std::size_t>(r)] = std::move(p);
    }

    bool is_zero() const {
        for (const auto& p : coef_)
            if (!p.is_zero()) return false;
        return true;
    }

    /// Smallest r with a nonzero coefficient, together with that
    /// coefficient; nullopt when the series vanishes.
    std::optional<std::pair<int, Polynomial>> lowest_order() const {
        for (int r = 0; r <= truncation_order(); ++r)
            if (!coef_[static_cast<std::size_t>(r)].is_zero())
                return std::make_pair(r, coef_[static_cast<std::size_t>(r)]);
        return std::nullopt;
    }

    LambdaSeries& operator+=(const LambdaSeries& o) {
        check_compatible(o);
        for (std::size_t r = 0; r < coef_.size(); ++r) coef_[r] += o.coef_[r];
        return *this;
    }

    LambdaSeries& operator-=(const LambdaSeries& o) {
        check_compatible(o);
        for (std::size_t r = 0; r < coef_.size(); ++r) coef_[r] -= o.coef_[r];
        return *this;
    }

    friend LambdaSeries operator+(LambdaSeries a, const LambdaSeries& b) { return a += b; }
    friend LambdaSeries operator-(LambdaSeries a, const LambdaSeries& b) { return a -= b; }

    friend LambdaSeries operator-(const LambdaSeries& a) {
        LambdaSeries r(a.dim_, a.truncation_order());
        for (std::size_t i = 0; i < a.coef_.size(); ++i) r.coef_[i] = -a.coef_[i];
        return r;
    }

    friend LambdaSeries operator*(const Rational& c, const LambdaSeries& a) {
        LambdaSeries r(a.dim_, a.truncation_order());
        for (std::size_t i = 0; i < a.coef_.size(); ++i) r.coef_[i] = c * a.coef_[i];
        return r;
    }

    /// Pointwise (Cauchy) product modulo lambda^(K+1).
    friend LambdaSeries operator*(const LambdaSeries& a, const LambdaSeries& b) {
        a.check_compatible(b);
        LambdaSeries r(a.dim_, a.truncation_order());
        for (int t = 0; t <= a.truncation_order(); ++t)
            for (int s = 0; s <= t; ++s) {
                const Polynomial& pa = a.coef_[static_cast<std::size_t>(s)];
                const Polynomial& pb = b.coef_[static_cast<std::size_t>(t - s)];
                if (pa.is_zero() || pb.is_zero()) continue;
                r.coef_[static_cast<std::size_t>(t)] += pa * pb;
            }
        return r;
    }

    friend bool operator==(const LambdaSeries& a, const LambdaSeries& b) {
        return a.dim_ == b.dim_ && a.coef_ == b.coef_;
    }
    friend bool operator!=(const LambdaSeries& a, const LambdaSeries& b) { return !(a == b); }

    /// Renders as "(p0) + lambda*(p1) + lambda^2*(p2)", skipping zero
    /// coefficients; compatible with the star-expression grammar.
    std::string str() const {
        std::ostringstream out;
        bool first = true;
        for (int r = 0; r <= truncation_order(); ++r) {
            const Polynomial& p = coef_[static_cast<std::size_t>(r)];
            if (p.is_zero()) continue;
            if (!first) out << " + ";
            first = false;
            if (r == 0) {
                out << "(" << p.str() << ")";
            } else {
                out << "lambda";
                if (r > 1) out << "^" << r;
                out << "*(" << p.str() << ")";
            }
        }
        return first ? "0" : out.str();
    }

private:
    void check_compatible(const LambdaSeries& o) const {
        if (dim_ != o.dim_) throw Error("series dimension mismatch");
        if (coef_.size() != o.coef_.size()) throw Error("series truncation order mismatch");
    }

    int dim_;
    std::vector<Polynomial> coef_;
};

} // namespace naq

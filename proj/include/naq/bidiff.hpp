#pragma once

#include <algorithm>
#include <functional>
#include <utility>
#include <vector>

#include "naq/polynomial.hpp"

namespace naq {

/// One monomial term c(x) * d^alpha (x) d^beta of a bidifferential operator:
/// the coefficient polynomial and the derivative multi-indices for the left
/// and right argument slots.
struct BidiffTerm {
    Polynomial coeff;
    MultiIndex alpha;
    MultiIndex beta;
};

/// A bidifferential operator in expanded normal form: a finite list of
/// terms with pairwise distinct (alpha, beta) pairs and nonzero
/// coefficients, sorted by (alpha, beta). The normal form is faithful, so
/// syntactic equality coincides with equality as operators.
class BidiffOperator {
public:
    explicit BidiffOperator(int dim) : dim_(dim) {
        if (dim < 1) throw Error("operator dimension must be >= 1");
    }

    BidiffOperator(int dim, std::vector<BidiffTerm> terms) : BidiffOperator(dim) {
        for (auto& t : terms) {
            if (t.coeff.dim() != dim || t.alpha.dim() != dim || t.beta.dim() != dim)
                throw Error("bidiff term dimension mismatch");
            add_term(std::move(t.coeff), t.alpha, t.beta);
        }
    }

    static BidiffOperator zero(int dim) { return BidiffOperator(dim); }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<BidiffTerm>& terms() const { return terms_; }

    /// Sum over terms of coeff * d^alpha f * d^beta g.
    Polynomial apply(const Polynomial& f, const Polynomial& g) const {
        if (f.dim() != dim_ || g.dim() != dim_) throw Error("operator/argument dimension mismatch");
        Polynomial r(dim_);
        for (const auto& t : terms_) {
            Polynomial df = f.partial(t.alpha);
            if (df.is_zero()) continue;
            Polynomial dg = g.partial(t.beta);
            if (dg.is_zero()) continue;
            r += t.coeff * df * dg;
        }
        return r;
    }

    /// (max |alpha|, max |beta|) over terms; (0, 0) for the empty operator.
    std::pair<int, int> orders() const {
        int lo = 0, ro = 0;
        for (const auto& t : terms_) {
            lo = std::max(lo, t.alpha.order());
            ro = std::max(ro, t.beta.order());
        }
        return {lo, ro};
    }

    /// The operator (f, g) -> this(g, f).
    BidiffOperator swapped() const {
        BidiffOperator r(dim_);
        for (const auto& t : terms_) r.add_term(t.coeff, t.beta, t.alpha);
        return r;
    }

    /// Antisymmetrized part: (f, g) -> (this(f,g) - this(g,f)) / 2,
    /// realized term-by-term by swapping (alpha, beta).
    BidiffOperator antisymmetrized() const {
        Rational half(1, 2);
        BidiffOperator r(dim_);
        for (const auto& t : terms_) {
            r.add_term(half * t.coeff, t.alpha, t.beta);
            r.add_term(-half * t.coeff, t.beta, t.alpha);
        }
        return r;
    }

    BidiffOperator& operator+=(const BidiffOperator& o) {
        if (dim_ != o.dim_) throw Error("operator dimension mismatch");
        for (const auto& t : o.terms_) add_term(t.coeff, t.alpha, t.beta);
        return *this;
    }

    friend BidiffOperator operator+(BidiffOperator a, const BidiffOperator& b) { return a += b; }

    friend BidiffOperator operator-(const BidiffOperator& a) {
        BidiffOperator r(a.dim_);
        for (const auto& t : a.terms_) r.add_term(-t.coeff, t.alpha, t.beta);
        return r;
    }

    friend BidiffOperator operator-(BidiffOperator a, const BidiffOperator& b) {
        return a += -b;
    }

    friend BidiffOperator operator*(const Rational& c, const BidiffOperator& a) {
        BidiffOperator r(a.dim_);
        if (c.is_zero()) return r;
        for (const auto& t : a.terms_) r.add_term(c * t.coeff, t.alpha, t.beta);
        return r;
    }

    friend bool operator==(const BidiffOperator& a, const BidiffOperator& b) {
        if (a.dim_ != b.dim_ || a.terms_.size() != b.terms_.size()) return false;
        for (std::size_t i = 0; i < a.terms_.size(); ++i) {
            const auto& x = a.terms_[i];
            const auto& y = b.terms_[i];
            if (x.alpha != y.alpha || x.beta != y.beta || x.coeff != y.coeff) return false;
        }
        return true;
    }
    friend bool operator!=(const BidiffOperator& a, const BidiffOperator& b) { return !(a == b); }

    void add_term(Polynomial coeff, const MultiIndex& alpha, const MultiIndex& beta) {
        if (coeff.dim() != dim_ || alpha.dim() != dim_ || beta.dim() != dim_)
            throw Error("bidiff term dimension mismatch");
        if (coeff.is_zero()) return;
        auto pos = std::lower_bound(terms_.begin(), terms_.end(), std::make_pair(alpha, beta),
                                    [](const BidiffTerm& t, const std::pair<MultiIndex, MultiIndex>& k) {
                                        return pair_less(t.alpha, t.beta, k.first, k.second);
                                    });
        if (pos != terms_.end() && pos->alpha == alpha && pos->beta == beta) {
            pos->coeff += coeff;
            if (pos->coeff.is_zero()) terms_.erase(pos);
        } else {
            terms_.insert(pos, BidiffTerm{std::move(coeff), alpha, beta});
        }
    }

private:
    static bool pair_less(const MultiIndex& a1, const MultiIndex& b1,
                          const MultiIndex& a2, const MultiIndex& b2) {
        GrlexLess less;
        if (less(a1, a2)) return true;
        if (less(a2, a1)) return false;
        return less(b1, b2);
    }

    int dim_;
    std::vector<BidiffTerm> terms_;
};

/// Recovers the unique normal-form operator of orders <= (left_order,
/// right_order) from its action on monomial pairs. A bidifferential
/// operator of bounded order is determined by its action on monomials up
/// to that order, so the triangular solve below is exact.
///
/// `action(f, g)` must be bilinear and realized by such an operator;
/// pairs are processed in ascending graded order, subtracting the
/// contributions of already-known coefficients.
template <class Action>
BidiffOperator bidiff_from_action(int dim, int left_order, int right_order, Action&& action) {
    std::vector<MultiIndex> lefts = enumerate_multi_indices(dim, left_order);
    std::vector<MultiIndex> rights = enumerate_multi_indices(dim, right_order);

    auto falling = [](const MultiIndex& m, const MultiIndex& a) {
        Integer r = 1;
        for (int i = 0; i < m.dim(); ++i)
            for (std::uint32_t k = 0; k < a[i]; ++k) r *= m[i] - k;
        return r;
    };
    auto index_factorial = [](const MultiIndex& m) {
        Integer r = 1;
        for (int i = 0; i < m.dim(); ++i) r *= factorial(m[i]);
        return r;
    };

    std::vector<std::pair<std::pair<MultiIndex, MultiIndex>, Polynomial>> known;
    for (const auto& gamma : lefts) {
        Polynomial xg = Polynomial::monomial(dim, gamma, 1);
        for (const auto& delta : rights) {
            Polynomial value = action(xg, Polynomial::monomial(dim, delta, 1));
            for (const auto& [pair, coeff] : known) {
                const auto& [a, b] = pair;
                if (!gamma.dominates(a) || !delta.dominates(b)) continue;
                Integer scale = falling(gamma, a) * falling(delta, b);
                if (scale == 0) continue;
                value -= coeff * Rational(scale) *
                         Polynomial::monomial(dim, (gamma - a) + (delta - b), 1);
            }
            Rational inv(Integer(1), index_factorial(gamma) * index_factorial(delta));
            Polynomial c = value * inv;
            if (!c.is_zero()) known.emplace_back(std::make_pair(gamma, delta), std::move(c));
        }
    }

    BidiffOperator op(dim);
    for (auto& [pair, coeff] : known) op.add_term(std::move(coeff), pair.first, pair.second);
    return op;
}

} // namespace naq

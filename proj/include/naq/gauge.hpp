#pragma once

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "naq/bidiff.hpp"
#include "naq/star_product.hpp"

namespace naq {

/// Differential operator sum_mu c_mu(x) d^mu in normal form (distinct
/// multi-indices, nonzero coefficients).
class DiffOperator {
public:
    explicit DiffOperator(int dim) : dim_(dim) {
        if (dim < 1) throw Error("operator dimension must be >= 1");
    }

    DiffOperator(int dim, std::vector<std::pair<Polynomial, MultiIndex>> terms)
        : DiffOperator(dim) {
        for (auto& [c, mu] : terms) {
            if (c.dim() != dim || mu.dim() != dim) throw Error("diff operator term dimension mismatch");
            add_term(std::move(c), mu);
        }
    }

    static DiffOperator identity(int dim) {
        return DiffOperator(dim, {{Polynomial::one(dim), MultiIndex(dim)}});
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const std::vector<std::pair<Polynomial, MultiIndex>>& terms() const { return terms_; }

    int order() const {
        int o = 0;
        for (const auto& [c, mu] : terms_) o = std::max(o, mu.order());
        return o;
    }

    Polynomial apply(const Polynomial& f) const {
        if (f.dim() != dim_) throw Error("operator/argument dimension mismatch");
        Polynomial r(dim_);
        for (const auto& [c, mu] : terms_) {
            Polynomial df = f.partial(mu);
            if (!df.is_zero()) r += c * df;
        }
        return r;
    }

    /// Operator composition (this after inner), expanded by the Leibniz
    /// rule: c d^a (d u) = c sum_{g <= a} binom(a, g) d^g d * d^{a-g} u.
    DiffOperator compose(const DiffOperator& inner) const {
        if (dim_ != inner.dim_) throw Error("operator dimension mismatch");
        DiffOperator out(dim_);
        for (const auto& [c, alpha] : terms_)
            for (const auto& [d, beta] : inner.terms_) {
                // enumerate gamma <= alpha componentwise
                MultiIndex gamma(dim_);
                auto rec = [&](auto&& self, int axis) -> void {
                    if (axis == dim_) {
                        Polynomial dd = d.partial(gamma);
                        if (dd.is_zero()) return;
                        Integer scale = 1;
                        for (int i = 0; i < dim_; ++i) scale *= binomial(alpha[i], gamma[i]);
                        out.add_term(c * Rational(scale) * dd, (alpha - gamma) + beta);
                        return;
                    }
                    for (std::uint32_t v = 0; v <= alpha[axis]; ++v) {
                        gamma[axis] = v;
                        self(self, axis + 1);
                    }
                    gamma[axis] = 0;
                };
                rec(rec, 0);
            }
        return out;
    }

    DiffOperator& operator+=(const DiffOperator& o) {
        if (dim_ != o.dim_) throw Error("operator dimension mismatch");
        for (const auto& [c, mu] : o.terms_) add_term(c, mu);
        return *this;
    }

    friend DiffOperator operator-(const DiffOperator& a) {
        DiffOperator r(a.dim_);
        for (const auto& [c, mu] : a.terms_) r.add_term(-c, mu);
        return r;
    }

    friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
    friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a += -b; }

    friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }

    void add_term(Polynomial c, const MultiIndex& mu) {
        if (c.is_zero()) return;
        GrlexLess less;
        auto pos = std::lower_bound(
            terms_.begin(), terms_.end(), mu,
            [&](const std::pair<Polynomial, MultiIndex>& t, const MultiIndex& k) {
                return less(t.second, k);
            });
        if (pos != terms_.end() && pos->second == mu) {
            pos->first += c;
            if (pos->first.is_zero()) terms_.erase(pos);
        } else {
            terms_.insert(pos, {std::move(c), mu});
        }
    }

private:
    int dim_;
    std::vector<std::pair<Polynomial, MultiIndex>> terms_;
};

/// Kontsevich gauge transformation D = 1 + sum_{r>=1} lambda^r D_r, formally
/// invertible modulo lambda^(K+1) by construction.
class GaugeTransform {
public:
    GaugeTransform(int dim, int truncation_order, std::vector<DiffOperator> layers)
        : dim_(dim), k_(truncation_order), d_(std::move(layers)) {
        if (dim < 1) throw Error("gauge transform dimension must be >= 1");
        if (k_ < 0) throw Error("truncation order must be >= 0");
        if (d_.size() > static_cast<std::size_t>(k_))
            throw Error("more gauge layers than the truncation order admits");
        for (const auto& op : d_)
            if (op.dim() != dim) throw Error("gauge layer dimension mismatch");
        while (d_.size() < static_cast<std::size_t>(k_)) d_.emplace_back(dim);
    }

    static GaugeTransform identity(int dim, int truncation_order) {
        return GaugeTransform(dim, truncation_order, {});
    }

    int dim() const { return dim_; }
    int truncation_order() const { return k_; }

    /// D_r for 1 <= r <= K.
    const DiffOperator& layer(int r) const {
        if (r < 1 || r > k_) throw Error("gauge layer index out of range");
        return d_[static_cast<std::size_t>(r - 1)];
    }

    bool is_identity() const {
        for (const auto& op : d_)
            if (!op.is_zero()) return false;
        return true;
    }

    /// (D f)_t = f_t + sum_{r=1..t} D_r(f_{t-r}).
    LambdaSeries apply(const LambdaSeries& f) const {
        check(f);
        LambdaSeries out = f;
        for (int t = 0; t <= k_; ++t) {
            Polynomial acc = f.coefficient(t);
            for (int r = 1; r <= t; ++r) {
                const DiffOperator& op = d_[static_cast<std::size_t>(r - 1)];
                if (op.is_zero()) continue;
                acc += op.apply(f.coefficient(t - r));
            }
            out.set_coefficient(t, std::move(acc));
        }
        return out;
    }

    /// Solves D g = h order by order: g_t = h_t - sum_{r=1..t} D_r(g_{t-r}).
    LambdaSeries apply_inverse(const LambdaSeries& h) const {
        check(h);
        LambdaSeries g(dim_, k_);
        for (int t = 0; t <= k_; ++t) {
            Polynomial acc = h.coefficient(t);
            for (int r = 1; r <= t; ++r) {
                const DiffOperator& op = d_[static_cast<std::size_t>(r - 1)];
                if (op.is_zero()) continue;
                acc -= op.apply(g.coefficient(t - r));
            }
            g.set_coefficient(t, std::move(acc));
        }
        return g;
    }

    /// Materializes D^{-1} = 1 + sum lambda^r E_r through the recursion
    /// E_r = -D_r - sum_{s=1}^{r-1} D_s o E_{r-s}.
    GaugeTransform inverse() const {
        std::vector<DiffOperator> e;
        e.reserve(static_cast<std::size_t>(k_));
        for (int r = 1; r <= k_; ++r) {
            DiffOperator er = -d_[static_cast<std::size_t>(r - 1)];
            for (int s = 1; s < r; ++s) {
                const DiffOperator& ds = d_[static_cast<std::size_t>(s - 1)];
                const DiffOperator& ers = e[static_cast<std::size_t>(r - s - 1)];
                if (ds.is_zero() || ers.is_zero()) continue;
                er += -ds.compose(ers);
            }
            e.push_back(std::move(er));
        }
        return GaugeTransform(dim_, k_, std::move(e));
    }

    /// Largest total order achievable by chains of layers with lambda
    /// budget b (an unbounded knapsack; bounds the order of D- and
    /// D^{-1}-compositions appearing at lambda order b).
    int chain_order_bound(int b) const {
        std::vector<int> dp(static_cast<std::size_t>(b) + 1, 0);
        for (int t = 1; t <= b; ++t)
            for (int s = 1; s <= t && s <= k_; ++s) {
                const DiffOperator& op = d_[static_cast<std::size_t>(s - 1)];
                if (op.is_zero()) continue;
                dp[static_cast<std::size_t>(t)] =
                    std::max(dp[static_cast<std::size_t>(t)],
                             op.order() + dp[static_cast<std::size_t>(t - s)]);
            }
        return dp[static_cast<std::size_t>(b)];
    }

private:
    void check(const LambdaSeries& f) const {
        if (f.dim() != dim_) throw Error("gauge transform dimension mismatch");
        if (f.truncation_order() != k_) throw Error("gauge transform truncation order mismatch");
    }

    int dim_;
    int k_;
    std::vector<DiffOperator> d_;
};

/// Gauge-transformed product f *' g = D^{-1}((D f) * (D g)) mod
/// lambda^(K+1). The corrections C'_r are recovered in normal form by
/// interpolation on monomial pairs up to a structurally computed order
/// bound; correctness rests on the determination property of
/// bidifferential operators.
inline StarProduct gauge_transform(const StarProduct& s, const GaugeTransform& d) {
    if (s.dim() != d.dim()) throw Error("gauge transform dimension mismatch");
    if (s.truncation_order() != d.truncation_order())
        throw Error("gauge transform truncation order mismatch");
    int n = s.dim();
    int k = s.truncation_order();

    using Key = std::pair<MultiIndex, MultiIndex>;
    auto key_less = [](const Key& a, const Key& b) {
        GrlexLess less;
        if (less(a.first, b.first)) return true;
        if (less(b.first, a.first)) return false;
        return less(a.second, b.second);
    };
    std::map<Key, LambdaSeries, decltype(key_less)> cache(key_less);

    auto composite = [&](const MultiIndex& gamma, const MultiIndex& delta) -> const LambdaSeries& {
        Key key{gamma, delta};
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        LambdaSeries f = d.apply(LambdaSeries::from_poly(Polynomial::monomial(n, gamma, 1), k));
        LambdaSeries g = d.apply(LambdaSeries::from_poly(Polynomial::monomial(n, delta, 1), k));
        return cache.emplace(key, d.apply_inverse(s.star(f, g))).first->second;
    };

    std::vector<BidiffOperator> corrections;
    corrections.reserve(static_cast<std::size_t>(k));
    for (int t = 1; t <= k; ++t) {
        auto [lmax, rmax] = s.max_orders_up_to(t);
        int chain = d.chain_order_bound(t);
        corrections.push_back(bidiff_from_action(
            n, lmax + chain, rmax + chain,
            [&](const Polynomial& f, const Polynomial& g) {
                const MultiIndex& gamma = f.terms().begin()->first;
                const MultiIndex& delta = g.terms().begin()->first;
                return composite(gamma, delta).coefficient(t);
            }));
    }
    return StarProduct(s.bivector(), k, std::move(corrections));
}

} // namespace naq

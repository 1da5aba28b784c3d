#pragma once

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "naq/bidiff.hpp"
#include "naq/bivector.hpp"
#include "naq/lambda_series.hpp"

namespace naq {

/// Bracket extended orderwise to truncated series (the bracket consumes no
/// lambda): ({a, b})_t = sum_{s+u=t} {a_s, b_u}.
inline LambdaSeries bracket_series(const Bivector& p, const LambdaSeries& a,
                                   const LambdaSeries& b) {
    if (a.dim() != p.dim() || b.dim() != p.dim()) throw Error("bracket dimension mismatch");
    if (a.truncation_order() != b.truncation_order())
        throw Error("series truncation order mismatch");
    LambdaSeries r(p.dim(), a.truncation_order());
    for (int t = 0; t <= r.truncation_order(); ++t) {
        Polynomial acc(p.dim());
        for (int s = 0; s <= t; ++s) {
            const Polynomial& pa = a.coefficient(s);
            const Polynomial& pb = b.coefficient(t - s);
            if (pa.is_zero() || pb.is_zero()) continue;
            acc += p.bracket(pa, pb);
        }
        r.set_coefficient(t, std::move(acc));
    }
    return r;
}

enum class Assoc { left, right };

/// Star product f * g = f g + sum_{r=1..K} lambda^r C_r(f, g), truncated at
/// order K. C_0 is the pointwise product and is never stored, so the
/// classical limit (f*g)_(0) = f_(0) g_(0) holds by construction.
///
/// Construction validates that the antisymmetrized part of C_1 is exactly
/// the Poisson bracket operator of the source bivector; a symmetric part
/// in C_1 is allowed (it is gauge-removable).
class StarProduct {
public:
    StarProduct(Bivector p, int truncation_order, std::vector<BidiffOperator> corrections)
        : p_(std::move(p)), k_(truncation_order), c_(std::move(corrections)) {
        if (k_ < 0) throw Error("truncation order must be >= 0");
        if (c_.size() > static_cast<std::size_t>(k_))
            throw Error("more corrections than the truncation order admits");
        for (const auto& op : c_)
            if (op.dim() != p_.dim()) throw Error("correction dimension mismatch");
        while (c_.size() < static_cast<std::size_t>(k_)) c_.emplace_back(p_.dim());
        if (k_ >= 1) validate_first_correction();
    }

    int dim() const { return p_.dim(); }
    int truncation_order() const { return k_; }
    const Bivector& bivector() const { return p_; }

    /// C_r for 1 <= r <= K.
    const BidiffOperator& correction(int r) const {
        if (r < 1 || r > k_) throw Error("correction index out of range");
        return c_[static_cast<std::size_t>(r - 1)];
    }

    /// Largest left/right differential order over C_1..C_r (0 for r = 0).
    std::pair<int, int> max_orders_up_to(int r) const {
        int lo = 0, ro = 0;
        for (int i = 1; i <= r && i <= k_; ++i) {
            auto [l, rr] = correction(i).orders();
            lo = std::max(lo, l);
            ro = std::max(ro, rr);
        }
        return {lo, ro};
    }

    /// (f * g)_t = sum_{r+s+u=t} C_r(f_s, g_u) with C_0 the pointwise
    /// product, modulo lambda^(K+1).
    LambdaSeries star(const LambdaSeries& f, const LambdaSeries& g) const {
        if (f.dim() != dim() || g.dim() != dim()) throw Error("star argument dimension mismatch");
        if (f.truncation_order() != k_ || g.truncation_order() != k_)
            throw Error("star argument truncation order mismatch");
        LambdaSeries out(dim(), k_);
        for (int t = 0; t <= k_; ++t) {
            Polynomial acc(dim());
            for (int r = 0; r <= t; ++r) {
                const BidiffOperator* op = r == 0 ? nullptr : &c_[static_cast<std::size_t>(r - 1)];
                if (op && op->is_zero()) continue;
                for (int s = 0; s + r <= t; ++s) {
                    const Polynomial& fs = f.coefficient(s);
                    const Polynomial& gu = g.coefficient(t - r - s);
                    if (fs.is_zero() || gu.is_zero()) continue;
                    acc += op ? op->apply(fs, gu) : fs * gu;
                }
            }
            out.set_coefficient(t, std::move(acc));
        }
        return out;
    }

    LambdaSeries star(const Polynomial& f, const Polynomial& g) const {
        return star(LambdaSeries::from_poly(f, k_), LambdaSeries::from_poly(g, k_));
    }

    LambdaSeries commutator(const LambdaSeries& f, const LambdaSeries& g) const {
        return star(f, g) - star(g, f);
    }

    /// k-fold star power with the stated association; the flag matters in a
    /// non-associative algebra.
    LambdaSeries power(const LambdaSeries& f, int k, Assoc assoc) const {
        if (k < 1) throw Error("star power exponent must be >= 1");
        LambdaSeries acc = f;
        for (int i = 1; i < k; ++i) acc = assoc == Assoc::left ? star(acc, f) : star(f, acc);
        return acc;
    }

private:
    void validate_first_correction() {
        BidiffOperator want = p_.bracket_operator();
        BidiffOperator got = c_[0].antisymmetrized();
        if (got == want) return;
        // locate the first violating monomial pair for the error report
        auto [lo1, ro1] = want.orders();
        auto [lo2, ro2] = got.orders();
        int lo = std::max(lo1, lo2), ro = std::max(ro1, ro2);
        for (const auto& gamma : enumerate_multi_indices(dim(), lo))
            for (const auto& delta : enumerate_multi_indices(dim(), ro)) {
                Polynomial xg = Polynomial::monomial(dim(), gamma, 1);
                Polynomial xd = Polynomial::monomial(dim(), delta, 1);
                if (got.apply(xg, xd) != want.apply(xg, xd))
                    throw Error("antisymmetrized C_1 does not match the Poisson bracket "
                                "(first violating monomial pair: " +
                                xg.str() + ", " + xd.str() + ")");
            }
        throw Error("antisymmetrized C_1 does not match the Poisson bracket");
    }

    Bivector p_;
    int k_;
    std::vector<BidiffOperator> c_;
};

/// Moyal product of a constant bivector:
/// C_r(f,g) = (1/r!) P^{i1 j1} ... P^{ir jr} d_{i1..ir} f d_{j1..jr} g.
inline StarProduct make_moyal(const Bivector& p, int truncation_order) {
    if (!p.is_constant()) throw Error("Moyal product requires a constant bivector");
    int n = p.dim();

    std::vector<std::tuple<int, int, Rational>> entries;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Rational v = p.entry(i, j).coeff(MultiIndex(n));
            if (!v.is_zero()) entries.emplace_back(i, j, v);
        }

    using Key = std::pair<MultiIndex, MultiIndex>;
    auto key_less = [](const Key& a, const Key& b) {
        GrlexLess less;
        if (less(a.first, b.first)) return true;
        if (less(b.first, a.first)) return false;
        return less(a.second, b.second);
    };
    std::map<Key, Rational, decltype(key_less)> level(key_less);
    level.emplace(Key{MultiIndex(n), MultiIndex(n)}, Rational(1));

    std::vector<BidiffOperator> corrections;
    for (int r = 1; r <= truncation_order; ++r) {
        std::map<Key, Rational, decltype(key_less)> next(key_less);
        for (const auto& [key, c] : level)
            for (const auto& [i, j, v] : entries) {
                Key k{key.first + MultiIndex::unit(n, i), key.second + MultiIndex::unit(n, j)};
                auto [it, inserted] = next.emplace(k, c * v);
                if (!inserted) it->second += c * v;
            }
        Rational inv_r(Integer(1), Integer(r));
        BidiffOperator op(n);
        for (auto& [key, c] : next) {
            c *= inv_r;
            if (!c.is_zero()) op.add_term(Polynomial::constant(n, c), key.first, key.second);
        }
        level = std::move(next);
        corrections.push_back(std::move(op));
    }
    return StarProduct(p, truncation_order, std::move(corrections));
}

/// The flexible product f * g = f g + lambda {f, g}: C_1 is the bracket
/// operator and C_r = 0 for r >= 2. Flexible for any bivector.
inline StarProduct make_flexible(const Bivector& p, int truncation_order) {
    if (truncation_order < 1) throw Error("flexible product requires truncation order >= 1");
    return StarProduct(p, truncation_order, {p.bracket_operator()});
}

/// Star product from explicit corrections (zero-padded to K). The
/// antisymmetrized C_1 must match the bracket of P.
inline StarProduct make_custom(const Bivector& p, std::vector<BidiffOperator> corrections,
                               int truncation_order) {
    return StarProduct(p, truncation_order, std::move(corrections));
}

struct NilpotencyVerdict {
    enum class Status { pass, fail, inconclusive };
    Status status;
    int lowest_order = 0;   // r: lowest nonzero lambda order of f
    int exponent = 0;       // k
    Polynomial coefficient; // computed lambda^{rk} coefficient of f*^k

    bool conclusive() const { return status != Status::inconclusive; }
};

/// Instantiates the no-nilpotents argument: writes f = lambda^r f_(r) + ...,
/// computes f*^k under both associations and asserts the lambda^{rk}
/// coefficient equals the pointwise power f_(r)^k and is nonzero.
/// Inconclusive when rk exceeds the truncation order (reported, never
/// silently passed).
inline NilpotencyVerdict nilpotency_probe(const StarProduct& s, const LambdaSeries& f, int k) {
    if (f.is_zero()) throw Error("nilpotency probe requires a nonzero element");
    if (k < 1) throw Error("nilpotency probe exponent must be >= 1");
    auto low = f.lowest_order();
    int r = low->first;
    NilpotencyVerdict v{NilpotencyVerdict::Status::pass, r, k, Polynomial(f.dim())};
    if (r * k > s.truncation_order()) {
        v.status = NilpotencyVerdict::Status::inconclusive;
        return v;
    }
    Polynomial expected = Polynomial::one(f.dim());
    for (int i = 0; i < k; ++i) expected *= low->second;

    Polynomial left = s.power(f, k, Assoc::left).coefficient(r * k);
    Polynomial right = s.power(f, k, Assoc::right).coefficient(r * k);
    v.coefficient = left;
    if (left != expected || right != expected || expected.is_zero())
        v.status = NilpotencyVerdict::Status::fail;
    return v;
}

struct UnitalityVerdict {
    bool holds = true;
    // (r, left monomial exponent, right monomial exponent) of the first
    // violation: C_r applied to that pair is nonzero although one slot is
    // the constant 1.
    std::optional<std::tuple<int, MultiIndex, MultiIndex>> witness;
};

/// Verifies 1 * f = f * 1 = f on all monomials up to the orders of every
/// C_r; equivalently each correction annihilates a constant in either slot.
inline UnitalityVerdict unitality_check(const StarProduct& s) {
    int n = s.dim();
    Polynomial unit = Polynomial::one(n);
    for (int r = 1; r <= s.truncation_order(); ++r) {
        const BidiffOperator& op = s.correction(r);
        if (op.is_zero()) continue;
        auto [lo, ro] = op.orders();
        for (const auto& delta : enumerate_multi_indices(n, ro))
            if (!op.apply(unit, Polynomial::monomial(n, delta, 1)).is_zero())
                return {false, std::make_tuple(r, MultiIndex(n), delta)};
        for (const auto& gamma : enumerate_multi_indices(n, lo))
            if (!op.apply(Polynomial::monomial(n, gamma, 1), unit).is_zero())
                return {false, std::make_tuple(r, gamma, MultiIndex(n))};
    }
    return {};
}

} // namespace naq

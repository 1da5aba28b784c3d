#pragma once

#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "naq/expr.hpp"
#include "naq/star_product.hpp"
#include "naq/sweep.hpp"

namespace naq {

/// Per-slot structural certificate bound: the maximum total differential
/// order an expression can apply to each argument slot, accumulated along
/// root-to-leaf paths. Each star node adds max_{r<=K} order(C_r) on the
/// side the path descends through; each bracket node adds 1; pointwise
/// products and linear combinations add nothing. Checking all monomials of
/// per-slot degree <= bound then decides the identity for all polynomial
/// arguments.
inline std::vector<int> structural_slot_bounds(const ExprPtr& root, const StarProduct* s,
                                               int slot_count) {
    int star_l = 0, star_r = 0;
    if (s) {
        auto [l, r] = s->max_orders_up_to(s->truncation_order());
        star_l = l;
        star_r = r;
    }
    std::vector<int> bounds(static_cast<std::size_t>(slot_count), 0);
    auto walk = [&](auto&& self, const ExprPtr& e, int acc) -> void {
        switch (e->kind) {
        case Expr::Kind::slot:
            bounds[static_cast<std::size_t>(e->slot)] =
                std::max(bounds[static_cast<std::size_t>(e->slot)], acc);
            return;
        case Expr::Kind::star:
            self(self, e->children[0].second, acc + star_l);
            self(self, e->children[1].second, acc + star_r);
            return;
        case Expr::Kind::bracket:
            self(self, e->children[0].second, acc + 1);
            self(self, e->children[1].second, acc + 1);
            return;
        case Expr::Kind::mul:
        case Expr::Kind::sum:
            for (const auto& [c, child] : e->children) self(self, child, acc);
            return;
        }
    };
    walk(walk, root, 0);
    return bounds;
}

/// Refined per-slot bound that also charges the lambda budget: a star node
/// acting through C_r costs r powers of lambda, and only lambda orders
/// <= K survive truncation, so the orders applied along any path are
/// maximized by a knapsack over the path with budget K. Always <= the
/// structural bound and still a sound certificate degree.
inline std::vector<int> effective_slot_bounds(const ExprPtr& root, const StarProduct* s,
                                              int slot_count) {
    int k = s ? s->truncation_order() : 0;
    std::vector<int> side_l(static_cast<std::size_t>(k) + 1, 0);
    std::vector<int> side_r(static_cast<std::size_t>(k) + 1, 0);
    if (s)
        for (int r = 1; r <= k; ++r) {
            const BidiffOperator& op = s->correction(r);
            if (op.is_zero()) continue;
            auto [l, rr] = op.orders();
            side_l[static_cast<std::size_t>(r)] = l;
            side_r[static_cast<std::size_t>(r)] = rr;
        }

    std::vector<int> bounds(static_cast<std::size_t>(slot_count), 0);
    // budget[b] = max differential order already applied on the path using
    // lambda budget b at the nodes above
    std::vector<int> acc(static_cast<std::size_t>(k) + 1, 0);
    auto walk = [&](auto&& self, const ExprPtr& e, std::vector<int> from) -> void {
        switch (e->kind) {
        case Expr::Kind::slot: {
            int best = 0;
            for (int v : from) best = std::max(best, v);
            bounds[static_cast<std::size_t>(e->slot)] =
                std::max(bounds[static_cast<std::size_t>(e->slot)], best);
            return;
        }
        case Expr::Kind::star: {
            for (int side = 0; side < 2; ++side) {
                const auto& ord = side == 0 ? side_l : side_r;
                std::vector<int> next(from.size(), 0);
                for (int b = 0; b <= k; ++b) {
                    int best = from[static_cast<std::size_t>(b)]; // r = 0: pointwise slot
                    for (int r = 1; r <= b; ++r)
                        if (ord[static_cast<std::size_t>(r)] > 0)
                            best = std::max(best, from[static_cast<std::size_t>(b - r)] +
                                                      ord[static_cast<std::size_t>(r)]);
                    next[static_cast<std::size_t>(b)] = best;
                }
                self(self, e->children[static_cast<std::size_t>(side)].second, next);
            }
            return;
        }
        case Expr::Kind::bracket: {
            std::vector<int> next(from.size());
            for (std::size_t b = 0; b < from.size(); ++b) next[b] = from[b] + 1;
            self(self, e->children[0].second, next);
            self(self, e->children[1].second, std::move(next));
            return;
        }
        case Expr::Kind::mul:
        case Expr::Kind::sum:
            for (const auto& [c, child] : e->children) self(self, child, from);
            return;
        }
    };
    walk(walk, root, acc);
    return bounds;
}

/// Evaluation context for identity expressions: the product interprets
/// star nodes, the bivector interprets bracket nodes. Either may be null
/// when the expression does not use the corresponding node kind.
struct ExprContext {
    const StarProduct* product = nullptr;
    const Bivector* bivector = nullptr;
    int dim = 0;
    int truncation_order = 0;
};

/// Functional evaluator with one memo entry per node, keyed by the slot
/// indices the node actually depends on. Tuples are swept in odometer
/// order (last slot fastest), so subtrees touching only outer slots are
/// recomputed rarely.
class ExprEvaluator {
public:
    explicit ExprEvaluator(const ExprContext& ctx) : ctx_(ctx) {}

    /// Evaluates with explicit series arguments (no memoization).
    LambdaSeries eval(const ExprPtr& e, std::span<const LambdaSeries> args) {
        switch (e->kind) {
        case Expr::Kind::slot:
            return args[static_cast<std::size_t>(e->slot)];
        case Expr::Kind::star:
            return ctx_.product->star(eval(e->children[0].second, args),
                                      eval(e->children[1].second, args));
        case Expr::Kind::bracket:
            return bracket_series(*ctx_.bivector, eval(e->children[0].second, args),
                                  eval(e->children[1].second, args));
        case Expr::Kind::mul:
            return eval(e->children[0].second, args) * eval(e->children[1].second, args);
        case Expr::Kind::sum: {
            LambdaSeries acc(ctx_.dim, ctx_.truncation_order);
            for (const auto& [c, child] : e->children) acc += c * eval(child, args);
            return acc;
        }
        }
        throw Error("unreachable expression kind");
    }

    /// Evaluates on a tuple of per-slot basis elements, with memoization.
    const LambdaSeries& eval_indexed(const ExprPtr& e,
                                     std::span<const std::vector<LambdaSeries>> basis,
                                     std::span<const std::size_t> tuple) {
        if (e->kind == Expr::Kind::slot)
            return basis[static_cast<std::size_t>(e->slot)][tuple[static_cast<std::size_t>(e->slot)]];

        auto& entry = memo_[e->id];
        std::vector<std::size_t> key = project(e->slot_mask, tuple);
        if (entry.valid && entry.key == key) return entry.value;

        LambdaSeries value(ctx_.dim, ctx_.truncation_order);
        switch (e->kind) {
        case Expr::Kind::star:
            value = ctx_.product->star(eval_indexed(e->children[0].second, basis, tuple),
                                       eval_indexed(e->children[1].second, basis, tuple));
            break;
        case Expr::Kind::bracket:
            value = bracket_series(*ctx_.bivector,
                                   eval_indexed(e->children[0].second, basis, tuple),
                                   eval_indexed(e->children[1].second, basis, tuple));
            break;
        case Expr::Kind::mul:
            value = eval_indexed(e->children[0].second, basis, tuple) *
                    eval_indexed(e->children[1].second, basis, tuple);
            break;
        case Expr::Kind::sum:
            for (const auto& [c, child] : e->children)
                value += c * eval_indexed(child, basis, tuple);
            break;
        default:
            throw Error("unreachable expression kind");
        }
        entry.valid = true;
        entry.key = std::move(key);
        entry.value = std::move(value);
        return entry.value;
    }

private:
    static std::vector<std::size_t> project(std::uint32_t mask, std::span<const std::size_t> tuple) {
        std::vector<std::size_t> key;
        for (std::size_t i = 0; i < tuple.size(); ++i)
            if (mask & (1u << i)) key.push_back(tuple[i]);
        return key;
    }

    struct Memo {
        bool valid = false;
        std::vector<std::size_t> key;
        LambdaSeries value{1, 0};
    };

    ExprContext ctx_;
    std::unordered_map<std::uint64_t, Memo> memo_;
};

struct SweepResult {
    std::vector<std::size_t> tuple;       // violating tuple (per-slot monomial indices)
    std::vector<Polynomial> arguments;    // the monomials themselves
    LambdaSeries defect{1, 0};            // full defect series at the tuple
};

/// Sweeps all monomial tuples with per-slot degrees <= slot_degrees and
/// returns the first (odometer order, last slot fastest) on which the
/// defect expression is nonzero modulo lambda^(K+1).
inline std::optional<SweepResult> sweep_monomial_certificate(
    const ExprPtr& defect, const ExprContext& ctx, std::span<const int> slot_degrees,
    int threads = 0) {
    int slot_count = static_cast<int>(slot_degrees.size());
    std::vector<std::vector<LambdaSeries>> basis(static_cast<std::size_t>(slot_count));
    std::vector<std::vector<MultiIndex>> exponents(static_cast<std::size_t>(slot_count));
    std::vector<std::size_t> sizes(static_cast<std::size_t>(slot_count));
    for (int i = 0; i < slot_count; ++i) {
        exponents[static_cast<std::size_t>(i)] =
            enumerate_multi_indices(ctx.dim, slot_degrees[static_cast<std::size_t>(i)]);
        for (const auto& m : exponents[static_cast<std::size_t>(i)])
            basis[static_cast<std::size_t>(i)].push_back(
                LambdaSeries::from_poly(Polynomial::monomial(ctx.dim, m, 1), ctx.truncation_order));
        sizes[static_cast<std::size_t>(i)] = basis[static_cast<std::size_t>(i)].size();
    }

    auto make_pred = [&]() {
        auto eval = std::make_shared<ExprEvaluator>(ctx);
        return std::function<bool(std::span<const std::size_t>)>(
            [&, eval](std::span<const std::size_t> tuple) {
                return !eval->eval_indexed(defect, basis, tuple).is_zero();
            });
    };

    auto hit = sweep_first_violation(sizes, make_pred, threads);
    if (!hit) return std::nullopt;

    SweepResult res;
    res.tuple = *hit;
    std::vector<LambdaSeries> args;
    for (int i = 0; i < slot_count; ++i) {
        const MultiIndex& m = exponents[static_cast<std::size_t>(i)][res.tuple[static_cast<std::size_t>(i)]];
        res.arguments.push_back(Polynomial::monomial(ctx.dim, m, 1));
        args.push_back(LambdaSeries::from_poly(res.arguments.back(), ctx.truncation_order));
    }
    ExprEvaluator fresh(ctx);
    res.defect = fresh.eval(defect, args);
    if (res.defect.is_zero())
        throw Error("internal error: sweep violation did not re-evaluate to a nonzero defect");
    return res;
}

} // namespace naq

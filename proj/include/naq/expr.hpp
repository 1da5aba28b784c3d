#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "naq/rational.hpp"

namespace naq {

/// Identity expression tree over argument slots. Nodes are star products,
/// Poisson brackets, pointwise products and rational linear combinations;
/// composite expressions are evaluated functionally on arguments, never
/// materialized as polydifferential operators.
struct Expr {
    enum class Kind { slot, star, bracket, mul, sum };

    Kind kind;
    int slot = -1;
    // children with rational weights; weights are 1 except under sum
    std::vector<std::pair<Rational, std::shared_ptr<const Expr>>> children;
    std::uint64_t id;
    std::uint32_t slot_mask = 0;

    static std::uint64_t next_id() {
        static std::atomic<std::uint64_t> counter{0};
        return counter.fetch_add(1);
    }
};

using ExprPtr = std::shared_ptr<const Expr>;

inline ExprPtr make_slot(int i) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::slot;
    e->slot = i;
    e->id = Expr::next_id();
    e->slot_mask = 1u << i;
    return e;
}

namespace detail {

inline ExprPtr make_binary(Expr::Kind kind, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->id = Expr::next_id();
    e->slot_mask = a->slot_mask | b->slot_mask;
    e->children.emplace_back(Rational(1), std::move(a));
    e->children.emplace_back(Rational(1), std::move(b));
    return e;
}

} // namespace detail

inline ExprPtr make_star(ExprPtr a, ExprPtr b) {
    return detail::make_binary(Expr::Kind::star, std::move(a), std::move(b));
}

inline ExprPtr make_bracket(ExprPtr a, ExprPtr b) {
    return detail::make_binary(Expr::Kind::bracket, std::move(a), std::move(b));
}

inline ExprPtr make_mul(ExprPtr a, ExprPtr b) {
    return detail::make_binary(Expr::Kind::mul, std::move(a), std::move(b));
}

inline ExprPtr make_sum(std::vector<std::pair<Rational, ExprPtr>> terms) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::sum;
    e->id = Expr::next_id();
    for (const auto& [c, t] : terms) e->slot_mask |= t->slot_mask;
    e->children = std::move(terms);
    return e;
}

inline ExprPtr operator-(ExprPtr a, ExprPtr b) {
    return make_sum({{Rational(1), std::move(a)}, {Rational(-1), std::move(b)}});
}

inline ExprPtr operator+(ExprPtr a, ExprPtr b) {
    return make_sum({{Rational(1), std::move(a)}, {Rational(1), std::move(b)}});
}

/// Number of slots referenced (slots are expected to be 0..m-1).
inline int expr_slot_count(const ExprPtr& e) {
    std::uint32_t mask = e->slot_mask;
    int n = 0;
    while (mask) {
        ++n;
        mask &= mask - 1;
    }
    return n;
}

/// f * (g * h) - (f * g) * h over the given subexpressions.
inline ExprPtr associator_expr(ExprPtr f, ExprPtr g, ExprPtr h) {
    return make_star(f, make_star(g, h)) - make_star(make_star(f, g), h);
}

} // namespace naq

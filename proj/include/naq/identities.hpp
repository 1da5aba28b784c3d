#pragma once

#include <optional>
#include <string>
#include <vector>

#include "naq/certificates.hpp"
#include "naq/star_product.hpp"

namespace naq {

/// A(f, g, h) = f * (g * h) - (f * g) * h.
inline LambdaSeries associator(const StarProduct& s, const LambdaSeries& f, const LambdaSeries& g,
                               const LambdaSeries& h) {
    return s.star(f, s.star(g, h)) - s.star(s.star(f, g), h);
}

inline LambdaSeries associator(const StarProduct& s, const Polynomial& f, const Polynomial& g,
                               const Polynomial& h) {
    int k = s.truncation_order();
    return associator(s, LambdaSeries::from_poly(f, k), LambdaSeries::from_poly(g, k),
                      LambdaSeries::from_poly(h, k));
}

enum class IdentityName {
    associative,
    alternative,
    flexible,
    right_alternative,
    right_moufang,
    sandwich_eq19,
    sandwich_eq17,
};

inline const char* identity_label(IdentityName n) {
    switch (n) {
    case IdentityName::associative: return "associative";
    case IdentityName::alternative: return "alternative";
    case IdentityName::flexible: return "flexible";
    case IdentityName::right_alternative: return "right_alternative";
    case IdentityName::right_moufang: return "right_moufang";
    case IdentityName::sandwich_eq19: return "sandwich_eq19";
    case IdentityName::sandwich_eq17: return "sandwich_eq17";
    }
    return "?";
}

/// Defect expressions for one identity. Diagonal identities (a repeated
/// argument) are polarized into multilinear generators wherever the
/// monomial certificate needs it; over the rationals the polarized forms
/// are equivalent to the diagonal ones. The sandwich identities keep their
/// repeated commutator arguments as written.
struct IdentityExprs {
    std::vector<ExprPtr> generators;
    std::vector<std::string> slot_names;
};

inline IdentityExprs defect_expressions(IdentityName name) {
    ExprPtr f = make_slot(0), g = make_slot(1), h = make_slot(2);
    switch (name) {
    case IdentityName::associative:
        return {{associator_expr(f, g, h)}, {"f", "g", "h"}};
    case IdentityName::flexible:
        // polarization of A(f, g, f) = 0
        return {{associator_expr(f, g, h) + associator_expr(h, g, f)}, {"f", "g", "h"}};
    case IdentityName::right_alternative:
        // polarization of A(f, g, g) = 0
        return {{associator_expr(f, g, h) + associator_expr(f, h, g)}, {"f", "g", "h"}};
    case IdentityName::alternative:
        // total antisymmetry of A: both adjacent-transposition generators
        return {{associator_expr(f, g, h) + associator_expr(g, f, h),
                 associator_expr(f, g, h) + associator_expr(f, h, g)},
                {"f", "g", "h"}};
    case IdentityName::right_moufang: {
        // ((f*g)*h)*g = f*((g*h)*g), polarized in the repeated g
        ExprPtr g1 = make_slot(1), g2 = make_slot(3);
        auto lhs = [&](ExprPtr a, ExprPtr b) {
            return make_star(make_star(make_star(f, a), h), b);
        };
        auto rhs = [&](ExprPtr a, ExprPtr b) {
            return make_star(f, make_star(make_star(a, h), b));
        };
        ExprPtr defect = make_sum({{Rational(1), lhs(g1, g2)},
                                   {Rational(1), lhs(g2, g1)},
                                   {Rational(-1), rhs(g1, g2)},
                                   {Rational(-1), rhs(g2, g1)}});
        return {{defect}, {"f", "g1", "h", "g2"}};
    }
    case IdentityName::sandwich_eq19:
    case IdentityName::sandwich_eq17: {
        // A([g,h]*^2, r, s); the square w * w needs no association choice
        ExprPtr gg = make_slot(0), hh = make_slot(1), r = make_slot(2), ss = make_slot(3);
        ExprPtr w = make_star(gg, hh) - make_star(hh, gg);
        ExprPtr q = make_star(w, w);
        ExprPtr d19 = associator_expr(q, r, ss);
        if (name == IdentityName::sandwich_eq19) return {{d19}, {"g", "h", "r", "s"}};
        return {{make_star(d19, d19)}, {"g", "h", "r", "s"}};
    }
    }
    throw Error("unknown identity");
}

/// The structural certificate bound of an expression for a product, per
/// slot (see structural_slot_bounds).
inline std::vector<int> certificate_degree(const ExprPtr& expr, const StarProduct& s) {
    return structural_slot_bounds(expr, &s, expr_slot_count(expr));
}

enum class CheckStatus { holds_on_certificate, fails };

struct IdentityWitness {
    std::vector<Polynomial> arguments;    // in slot order
    int lambda_order = 0;                 // first nonzero order of the defect
    Polynomial defect = Polynomial(1);    // coefficient at that order
    int generator = 0;                    // which defect generator fired
};

struct IdentityVerdict {
    IdentityName identity = IdentityName::associative;
    CheckStatus status = CheckStatus::holds_on_certificate;
    std::vector<std::string> slot_names;
    std::vector<int> slot_degrees;   // per-slot monomial degree swept
    int certificate_degree = 0;      // max over slots
    int lambda_orders_checked = 0;   // defects vanish modulo lambda^(K+1)
    std::optional<IdentityWitness> witness;

    bool holds() const { return status == CheckStatus::holds_on_certificate; }
};

struct CheckOptions {
    std::optional<int> degree_override; // force every slot degree
    int threads = 0;                    // 0: NAQ_THREADS / hardware
};

namespace detail {

inline IdentityVerdict run_identity_check(IdentityName name, const StarProduct& s,
                                          const CheckOptions& opts) {
    IdentityExprs exprs = defect_expressions(name);
    int slots = static_cast<int>(exprs.slot_names.size());

    ExprContext ctx{&s, nullptr, s.dim(), s.truncation_order()};

    IdentityVerdict v;
    v.identity = name;
    v.slot_names = exprs.slot_names;
    v.slot_degrees.assign(static_cast<std::size_t>(slots), 0);
    v.lambda_orders_checked = s.truncation_order();

    for (std::size_t gi = 0; gi < exprs.generators.size(); ++gi) {
        const ExprPtr& defect = exprs.generators[gi];
        std::vector<int> degrees;
        if (opts.degree_override) {
            degrees.assign(static_cast<std::size_t>(slots), *opts.degree_override);
        } else {
            degrees = structural_slot_bounds(defect, &s, slots);
            std::vector<int> eff = effective_slot_bounds(defect, &s, slots);
            for (std::size_t i = 0; i < degrees.size(); ++i)
                degrees[i] = std::min(degrees[i], eff[i]);
        }
        for (std::size_t i = 0; i < degrees.size(); ++i)
            v.slot_degrees[i] = std::max(v.slot_degrees[i], degrees[i]);

        if (v.status == CheckStatus::fails) continue; // keep degrees of all generators

        auto hit = sweep_monomial_certificate(defect, ctx, degrees, opts.threads);
        if (hit) {
            auto low = hit->defect.lowest_order();
            IdentityWitness w;
            w.arguments = hit->arguments;
            w.lambda_order = low->first;
            w.defect = low->second;
            w.generator = static_cast<int>(gi);
            v.status = CheckStatus::fails;
            v.witness = std::move(w);
        }
    }
    for (int d : v.slot_degrees) v.certificate_degree = std::max(v.certificate_degree, d);
    return v;
}

} // namespace detail

/// Re-evaluates an identity defect on explicit polynomial arguments;
/// used to confirm stored witnesses.
inline LambdaSeries eval_identity_defect(IdentityName name, int generator, const StarProduct& s,
                                         std::span<const Polynomial> args) {
    IdentityExprs exprs = defect_expressions(name);
    ExprContext ctx{&s, nullptr, s.dim(), s.truncation_order()};
    ExprEvaluator eval(ctx);
    std::vector<LambdaSeries> lifted;
    for (const auto& p : args) lifted.push_back(LambdaSeries::from_poly(p, s.truncation_order()));
    return eval.eval(exprs.generators[static_cast<std::size_t>(generator)], lifted);
}

/// Associativity, Eq.-style A(f,g,h) == 0 on the monomial certificate.
inline IdentityVerdict check_associative(const StarProduct& s, const CheckOptions& opts = {}) {
    return detail::run_identity_check(IdentityName::associative, s, opts);
}

/// Flexibility in polarized form A(f,g,h) + A(h,g,f) == 0.
inline IdentityVerdict check_flexible(const StarProduct& s, const CheckOptions& opts = {}) {
    return detail::run_identity_check(IdentityName::flexible, s, opts);
}

/// Total antisymmetry of the associator via both adjacent transpositions.
inline IdentityVerdict check_alternative(const StarProduct& s, const CheckOptions& opts = {}) {
    return detail::run_identity_check(IdentityName::alternative, s, opts);
}

struct RightAlternativeReport {
    IdentityVerdict square;  // polarized A(f,g,g) = 0
    IdentityVerdict moufang; // right Moufang identity

    bool holds() const { return square.holds() && moufang.holds(); }
};

/// Right alternativity: the polarized square identity and the right
/// Moufang identity, reported separately.
inline RightAlternativeReport check_right_alternative(const StarProduct& s,
                                                      const CheckOptions& opts = {}) {
    return {detail::run_identity_check(IdentityName::right_alternative, s, opts),
            detail::run_identity_check(IdentityName::right_moufang, s, opts)};
}

struct SandwichReport {
    IdentityVerdict eq19; // A([g,h]*^2, r, s) = 0
    IdentityVerdict eq17; // (A([g,h]*^2, r, s))*^2 = 0

    bool holds() const { return eq19.holds() && eq17.holds(); }
};

/// The alternative-algebra sandwich identities. The squared identity is
/// decided by squaring the defect of the unsquared one: a holding defect
/// squares to zero outright, and a failing defect either squares to a
/// nonzero witness or is annihilated by truncation. The latter conclusion
/// is rigorous for K <= 7: a commutator has no lambda^0 part and the
/// associator of its square loses two more orders (the pointwise and
/// Leibniz cancellations), so the unsquared defect sits at lambda order
/// >= 4 and its star square at >= 8. Beyond K = 7 the squared identity is
/// swept directly.
inline SandwichReport check_sandwich_identity(const StarProduct& s,
                                              const CheckOptions& opts = {}) {
    SandwichReport rep;
    rep.eq19 = detail::run_identity_check(IdentityName::sandwich_eq19, s, opts);
    rep.eq17 = rep.eq19;
    rep.eq17.identity = IdentityName::sandwich_eq17;
    rep.eq17.status = CheckStatus::holds_on_certificate;
    rep.eq17.witness.reset();
    if (rep.eq19.holds()) return rep;

    LambdaSeries defect = eval_identity_defect(IdentityName::sandwich_eq19, 0, s,
                                               rep.eq19.witness->arguments);
    LambdaSeries squared = s.star(defect, defect);
    if (!squared.is_zero()) {
        auto low = squared.lowest_order();
        rep.eq17.status = CheckStatus::fails;
        rep.eq17.witness = IdentityWitness{rep.eq19.witness->arguments, low->first, low->second, 0};
        return rep;
    }
    if (s.truncation_order() >= 8)
        rep.eq17 = detail::run_identity_check(IdentityName::sandwich_eq17, s, opts);
    return rep;
}

struct Lemma2Report {
    int passes = 0;
    int inconclusive = 0;
    int failures = 0;
    std::vector<NilpotencyVerdict> results;

    bool clean() const { return failures == 0; }
};

/// Runs the nilpotency probe over a corpus for k = 2..max (bounded by the
/// truncation order); an algebraic failure would be an engine bug, since
/// no deformation quantization algebra has nilpotent elements.
inline Lemma2Report cross_check_lemma2(const StarProduct& s,
                                       std::span<const LambdaSeries> corpus) {
    Lemma2Report rep;
    for (const auto& f : corpus) {
        int r = f.lowest_order()->first;
        int kmax = r > 0 ? s.truncation_order() / r : std::max(2, s.truncation_order());
        kmax = std::max(kmax, 2);
        for (int k = 2; k <= kmax; ++k) {
            NilpotencyVerdict v = nilpotency_probe(s, f, k);
            switch (v.status) {
            case NilpotencyVerdict::Status::pass: ++rep.passes; break;
            case NilpotencyVerdict::Status::inconclusive: ++rep.inconclusive; break;
            case NilpotencyVerdict::Status::fail: ++rep.failures; break;
            }
            rep.results.push_back(std::move(v));
        }
    }
    return rep;
}

} // namespace naq

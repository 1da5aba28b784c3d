#pragma once

#include <span>

#include "naq/bracket_checks.hpp"
#include "naq/identities.hpp"
#include "naq/random.hpp"

namespace naq {

/// Result of a randomized soundness backstop: defect evaluations on random
/// argument tuples of degree strictly above the certificate bound. Any
/// violation after a holds-on-certificate verdict would expose an unsound
/// bound.
struct BackstopResult {
    int tuples = 0;
    int violations = 0;

    bool clean() const { return violations == 0; }
};

/// Backstop for an identity verdict: random polynomial tuples with
/// per-slot degree slot_degrees[i] + 1.
inline BackstopResult identity_backstop(IdentityName name, const StarProduct& s,
                                        std::span<const int> slot_degrees, Rng& rng, int tuples) {
    IdentityExprs exprs = defect_expressions(name);
    ExprContext ctx{&s, nullptr, s.dim(), s.truncation_order()};
    ExprEvaluator eval(ctx);
    BackstopResult res{tuples, 0};
    for (int t = 0; t < tuples; ++t) {
        std::vector<LambdaSeries> args;
        for (std::size_t i = 0; i < slot_degrees.size(); ++i)
            args.push_back(LambdaSeries::from_poly(
                random_nonzero_polynomial(rng, s.dim(), slot_degrees[i] + 1),
                s.truncation_order()));
        for (const auto& gen : exprs.generators)
            if (!eval.eval(gen, args).is_zero()) {
                ++res.violations;
                break;
            }
    }
    return res;
}

/// Backstop for the Malcev identity on random polynomial triples (h, f, g)
/// of degree bound + 1, evaluated on the diagonal form (random polynomials
/// exercise the cross terms the monomial diagonal cannot).
inline BackstopResult malcev_backstop(const Bivector& p, int degree_bound, Rng& rng, int tuples) {
    JacobiatorTensor t = jacobiator_tensor(p);
    BackstopResult res{tuples, 0};
    for (int i = 0; i < tuples; ++i) {
        Polynomial h = random_nonzero_polynomial(rng, p.dim(), degree_bound + 1);
        Polynomial f = random_nonzero_polynomial(rng, p.dim(), degree_bound + 1);
        Polynomial g = random_nonzero_polynomial(rng, p.dim(), degree_bound + 1);
        Polynomial defect =
            detail::jac3(t, h, f, p.bracket(h, g)) - p.bracket(detail::jac3(t, h, f, g), h);
        if (!defect.is_zero()) ++res.violations;
    }
    return res;
}

/// Backstop for the Shestakov identities on random polynomial tuples of
/// degree bound + 1.
inline BackstopResult shestakov_backstop(const Bivector& p, int degree_bound, Rng& rng,
                                         int tuples) {
    JacobiatorTensor t = jacobiator_tensor(p);
    BackstopResult res{tuples, 0};
    for (int i = 0; i < tuples; ++i) {
        Polynomial f = random_nonzero_polynomial(rng, p.dim(), degree_bound + 1);
        Polynomial g = random_nonzero_polynomial(rng, p.dim(), degree_bound + 1);
        Polynomial h = random_nonzero_polynomial(rng, p.dim(), degree_bound + 1);
        Polynomial d = random_nonzero_polynomial(rng, p.dim(), degree_bound + 1);
        Polynomial e11 = detail::jac3(t, f, g, h) * p.bracket(f, g);
        Polynomial e12 = detail::jac3(t, f, g, h) * p.bracket(f, d) +
                         detail::jac3(t, f, d, h) * p.bracket(f, g);
        if (!e11.is_zero() || !e12.is_zero()) ++res.violations;
    }
    return res;
}

} // namespace naq

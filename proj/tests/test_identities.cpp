#include "naq/identities.hpp"

#include <gtest/gtest.h>

#include "naq/backstop.hpp"
#include "naq/random.hpp"
#include "naq_testing.hpp"

using namespace naq;
using naq::testing::lift;
using naq::testing::naive_bracket;
using naq::testing::poly;
using naq::testing::var;

namespace {

// reverifies a fails-witness: the stored defect must reproduce exactly
void expect_witness_sound(const IdentityVerdict& v, const StarProduct& s) {
    ASSERT_TRUE(v.witness.has_value());
    LambdaSeries defect =
        eval_identity_defect(v.identity, v.witness->generator, s, v.witness->arguments);
    auto low = defect.lowest_order();
    ASSERT_TRUE(low.has_value());
    EXPECT_EQ(low->first, v.witness->lambda_order);
    EXPECT_EQ(low->second, v.witness->defect);
    EXPECT_FALSE(v.witness->defect.is_zero());
}

} // namespace

TEST(Associator, Examples) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 3);
    Rng rng(3);
    for (int i = 0; i < 25; ++i) {
        Polynomial f = random_polynomial(rng, 2, 4);
        Polynomial g = random_polynomial(rng, 2, 4);
        Polynomial h = random_polynomial(rng, 2, 4);
        EXPECT_TRUE(associator(moyal, f, g, h).is_zero());
    }

    // flexible: A = lambda^2 ({f,{g,h}} - {{f,g},h})
    Bivector su2 = Bivector::su2();
    StarProduct flex = make_flexible(su2, 2);
    Polynomial f = poly("x1^2", 3), g = var(3, 1), h = var(3, 2);
    LambdaSeries a = associator(flex, f, g, h);
    LambdaSeries want(3, 2);
    want.set_coefficient(2, naive_bracket(su2, f, naive_bracket(su2, g, h)) -
                                naive_bracket(su2, naive_bracket(su2, f, g), h));
    EXPECT_EQ(a, want);

    // unitality: A(1, g, h) = 0
    for (int i = 0; i < 10; ++i) {
        Polynomial gg = random_polynomial(rng, 3, 3);
        Polynomial hh = random_polynomial(rng, 3, 3);
        EXPECT_TRUE(associator(flex, Polynomial::one(3), gg, hh).is_zero());
    }
}

TEST(CertificateDegree, SpecExamples) {
    // associator of the flexible product (C_1 of order (1,1), K = 2):
    // two nested first-order operators per slot
    StarProduct flex = make_flexible(Bivector::su2(), 2);
    IdentityExprs assoc = defect_expressions(IdentityName::associative);
    EXPECT_EQ(certificate_degree(assoc.generators[0], flex), (std::vector<int>{2, 2, 2}));

    // a bare bracket expression: one first-order node per slot
    ExprPtr br = make_bracket(make_slot(0), make_slot(1));
    EXPECT_EQ(certificate_degree(br, flex), (std::vector<int>{1, 1}));

    // right Moufang with Moyal at K = 2: three star nodes on the deepest
    // path, each contributing max_r order(C_r) = 2, for every slot
    StarProduct moyal2 = make_moyal(Bivector::symplectic2(), 2);
    IdentityExprs mouf = defect_expressions(IdentityName::right_moufang);
    EXPECT_EQ(certificate_degree(mouf.generators[0], moyal2), (std::vector<int>{6, 6, 6, 6}));
}

TEST(CertificateDegree, EffectiveBoundsChargeTheLambdaBudget) {
    // Moyal: order(C_r) = r, so along any path the applied order is at
    // most the lambda budget K
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 4);
    IdentityExprs mouf = defect_expressions(IdentityName::right_moufang);
    EXPECT_EQ(effective_slot_bounds(mouf.generators[0], &moyal, 4), (std::vector<int>{4, 4, 4, 4}));
    EXPECT_EQ(structural_slot_bounds(mouf.generators[0], &moyal, 4),
              (std::vector<int>{12, 12, 12, 12}));

    // flexible: only C_1 of order 1 exists; a three-node path at K = 2
    // can apply at most two first-order steps
    StarProduct flex = make_flexible(Bivector::su2(), 2);
    EXPECT_EQ(effective_slot_bounds(mouf.generators[0], &flex, 4), (std::vector<int>{2, 2, 2, 2}));
}

TEST(Checkers, MoyalPassesEverything) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 3);
    EXPECT_TRUE(check_associative(moyal).holds());
    EXPECT_TRUE(check_flexible(moyal).holds());
    EXPECT_TRUE(check_alternative(moyal).holds());
    RightAlternativeReport ra = check_right_alternative(moyal);
    EXPECT_TRUE(ra.square.holds());
    EXPECT_TRUE(ra.moufang.holds());
    SandwichReport sw = check_sandwich_identity(moyal);
    EXPECT_TRUE(sw.eq19.holds());
    EXPECT_TRUE(sw.eq17.holds());
}

TEST(Checkers, FlexibleDichotomyOnSu2) {
    // flexible for any bivector, yet not associative even though su(2)
    // satisfies Jacobi
    StarProduct flex = make_flexible(Bivector::su2(), 2);
    EXPECT_TRUE(check_flexible(flex).holds());

    IdentityVerdict assoc = check_associative(flex);
    ASSERT_FALSE(assoc.holds());
    expect_witness_sound(assoc, flex);
    EXPECT_EQ(assoc.witness->lambda_order, 2);

    IdentityVerdict alt = check_alternative(flex);
    ASSERT_FALSE(alt.holds());
    expect_witness_sound(alt, flex);
}

TEST(Checkers, FlexibleMonopoleFailsRightAlternative) {
    StarProduct flex = make_flexible(Bivector::monopole_linear(), 2);
    EXPECT_TRUE(check_flexible(flex).holds());
    RightAlternativeReport ra = check_right_alternative(flex);
    ASSERT_FALSE(ra.square.holds());
    expect_witness_sound(ra.square, flex);
    ASSERT_FALSE(ra.moufang.holds());
    expect_witness_sound(ra.moufang, flex);
}

TEST(Checkers, SandwichOnFlexibleMonopole) {
    // the eq19 defect first appears at lambda^4; its star square is
    // truncated away at K = 4, so eq17 holds in the truncated algebra
    StarProduct flex = make_flexible(Bivector::monopole_linear(), 4);
    SandwichReport sw = check_sandwich_identity(flex);
    ASSERT_FALSE(sw.eq19.holds());
    expect_witness_sound(sw.eq19, flex);
    EXPECT_EQ(sw.eq19.witness->lambda_order, 4);
    EXPECT_TRUE(sw.eq17.holds());
}

TEST(Checkers, StressCustomSecondCorrection) {
    // C_2(f, g) = d1 f . g on top of the Moyal C_1: the polarized flexible
    // defect evaluates to -g d1(f h) at lambda^2, so the check fails
    Bivector p = Bivector::symplectic2();
    StarProduct moyal = make_moyal(p, 2);
    BidiffOperator c2(2);
    c2.add_term(Polynomial::one(2), MultiIndex{1, 0}, MultiIndex(2));
    StarProduct stress = make_custom(p, {moyal.correction(1), c2}, 2);

    IdentityVerdict v = check_flexible(stress);
    ASSERT_FALSE(v.holds());
    expect_witness_sound(v, stress);
    EXPECT_EQ(v.witness->lambda_order, 2);
}

TEST(Checkers, ZeroBivectorPointwiseProductHoldsEverything) {
    StarProduct pointwise = make_custom(Bivector::zero(2), {}, 2);
    EXPECT_TRUE(check_associative(pointwise).holds());
    EXPECT_TRUE(check_flexible(pointwise).holds());
    EXPECT_TRUE(check_alternative(pointwise).holds());
    EXPECT_TRUE(check_right_alternative(pointwise).holds());
    EXPECT_TRUE(check_sandwich_identity(pointwise).holds());
}

TEST(Checkers, DefectsAreMultilinearInEachSlot) {
    StarProduct flex = make_flexible(Bivector::su2(), 2);
    Rng rng(17);
    for (IdentityName name : {IdentityName::associative, IdentityName::flexible,
                              IdentityName::alternative, IdentityName::right_alternative,
                              IdentityName::right_moufang}) {
        IdentityExprs exprs = defect_expressions(name);
        std::size_t slots = exprs.slot_names.size();
        for (const auto& gen : exprs.generators) {
            ExprContext ctx{&flex, nullptr, 3, 2};
            ExprEvaluator eval(ctx);
            for (std::size_t slot = 0; slot < slots; ++slot) {
                std::vector<LambdaSeries> a, b;
                for (std::size_t i = 0; i < slots; ++i) {
                    Polynomial pi = random_polynomial(rng, 3, 2);
                    a.push_back(lift(pi, 2));
                    b.push_back(lift(pi, 2));
                }
                Polynomial extra = random_polynomial(rng, 3, 2);
                b[slot] = lift(extra, 2);
                std::vector<LambdaSeries> sum = a;
                sum[slot] = a[slot] + b[slot];
                EXPECT_EQ(eval.eval(gen, sum), eval.eval(gen, a) + eval.eval(gen, b));
            }
        }
    }
}

TEST(Checkers, AssociativeImpliesWholeCatalogue) {
    for (const StarProduct& s : {make_moyal(Bivector::symplectic2(), 2),
                                 make_moyal(Bivector::symplectic2(), 4),
                                 make_custom(Bivector::zero(2), {}, 3)}) {
        if (!check_associative(s).holds()) continue;
        EXPECT_TRUE(check_flexible(s).holds());
        EXPECT_TRUE(check_alternative(s).holds());
        EXPECT_TRUE(check_right_alternative(s).holds());
        EXPECT_TRUE(check_sandwich_identity(s).holds());
    }
}

TEST(Checkers, HoldsVerdictsSurviveRandomizedBackstop) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 3);
    Rng rng(23);
    for (IdentityName name : {IdentityName::associative, IdentityName::flexible,
                              IdentityName::right_moufang, IdentityName::sandwich_eq19}) {
        IdentityVerdict v = detail::run_identity_check(name, moyal, {});
        ASSERT_TRUE(v.holds());
        EXPECT_TRUE(identity_backstop(name, moyal, v.slot_degrees, rng, 60).clean());
    }
}

TEST(Lemma2, CrossCheckCorpusHasNoFailures) {
    // {x1, 1 + lambda x2, lambda^2 x3} under flexible and Moyal products
    StarProduct flex = make_flexible(Bivector::su2(), 4);
    std::vector<LambdaSeries> corpus;
    corpus.push_back(lift(var(3, 0), 4));
    LambdaSeries mixed(3, 4);
    mixed.set_coefficient(0, Polynomial::one(3));
    mixed.set_coefficient(1, var(3, 1));
    corpus.push_back(mixed);
    LambdaSeries high(3, 4);
    high.set_coefficient(2, var(3, 2));
    corpus.push_back(high);

    Lemma2Report rep = cross_check_lemma2(flex, corpus);
    EXPECT_EQ(rep.failures, 0);
    EXPECT_GT(rep.passes, 0);

    StarProduct moyal = make_moyal(Bivector::symplectic2(), 4);
    std::vector<LambdaSeries> corpus2;
    Rng rng(29);
    for (int i = 0; i < 10; ++i) corpus2.push_back(random_series(rng, 2, 4, 3));
    Lemma2Report rep2 = cross_check_lemma2(moyal, corpus2);
    EXPECT_EQ(rep2.failures, 0);
}

TEST(Checkers, DegreeOverrideIsRespected) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 2);
    CheckOptions opts;
    opts.degree_override = 3;
    IdentityVerdict v = check_associative(moyal, opts);
    EXPECT_TRUE(v.holds());
    EXPECT_EQ(v.certificate_degree, 3);
    EXPECT_EQ(v.slot_degrees, (std::vector<int>{3, 3, 3}));
}

TEST(Checkers, RightAlternativeImpliesAlternativeOnCorpus) {
    // shadow of the Kleinfeld theorem: every corpus product that passes
    // the right-alternativity checks also passes alternativity
    std::vector<StarProduct> corpus{make_moyal(Bivector::symplectic2(), 2),
                                    make_moyal(Bivector::symplectic2(), 3),
                                    make_flexible(Bivector::su2(), 2),
                                    make_flexible(Bivector::monopole_linear(), 2),
                                    make_custom(Bivector::zero(2), {}, 2)};
    for (const auto& s : corpus) {
        RightAlternativeReport ra = check_right_alternative(s);
        if (ra.square.holds() && ra.moufang.holds())
            EXPECT_TRUE(check_alternative(s).holds());
    }
}

TEST(Checkers, AlternativeImpliesAssociativeOnCorpus) {
    // shadow of the alternativity-forces-associativity theorem, tested on
    // concrete products rather than proved
    std::vector<StarProduct> corpus{make_moyal(Bivector::symplectic2(), 2),
                                    make_moyal(Bivector::symplectic2(), 4),
                                    make_flexible(Bivector::su2(), 2),
                                    make_flexible(Bivector::heisenberg(), 3),
                                    make_flexible(Bivector::monopole_linear(), 2),
                                    make_custom(Bivector::zero(2), {}, 2)};
    for (const auto& s : corpus)
        if (check_alternative(s).holds()) EXPECT_TRUE(check_associative(s).holds());
}

TEST(Checkers, ParallelSweepIsDeterministic) {
    StarProduct flex = make_flexible(Bivector::su2(), 2);
    CheckOptions serial;
    serial.threads = 1;
    CheckOptions parallel;
    parallel.threads = 4;
    IdentityVerdict a = check_associative(flex, serial);
    IdentityVerdict b = check_associative(flex, parallel);
    ASSERT_FALSE(a.holds());
    ASSERT_FALSE(b.holds());
    ASSERT_TRUE(a.witness && b.witness);
    EXPECT_EQ(a.witness->arguments.size(), b.witness->arguments.size());
    for (std::size_t i = 0; i < a.witness->arguments.size(); ++i)
        EXPECT_EQ(a.witness->arguments[i], b.witness->arguments[i]);
    EXPECT_EQ(a.witness->defect, b.witness->defect);
    EXPECT_EQ(a.witness->lambda_order, b.witness->lambda_order);
}

TEST(Checkers, MoufangPlusUnitalityImpliesRightAlternative) {
    // products that pass the Moufang identity and unitality also pass the
    // polarized square identity
    for (const StarProduct& s : {make_moyal(Bivector::symplectic2(), 2),
                                 make_moyal(Bivector::symplectic2(), 3),
                                 make_custom(Bivector::zero(2), {}, 2)}) {
        RightAlternativeReport ra = check_right_alternative(s);
        if (ra.moufang.holds() && unitality_check(s).holds) EXPECT_TRUE(ra.square.holds());
    }
}

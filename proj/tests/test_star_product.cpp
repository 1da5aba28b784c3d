#include "naq/star_product.hpp"

#include <gtest/gtest.h>

#include "naq/random.hpp"
#include "naq_testing.hpp"

using namespace naq;
using naq::testing::lift;
using naq::testing::poly;
using naq::testing::var;

namespace {

LambdaSeries series2(const Polynomial& c0, const Polynomial& c1, const Polynomial& c2) {
    LambdaSeries s(c0.dim(), 2);
    s.set_coefficient(0, c0);
    s.set_coefficient(1, c1);
    s.set_coefficient(2, c2);
    return s;
}

} // namespace

TEST(Moyal, ConstructionExamples) {
    StarProduct s = make_moyal(Bivector::symplectic2(), 2);

    // x1 * x2 = x1 x2 + lambda
    LambdaSeries prod = s.star(var(2, 0), var(2, 1));
    EXPECT_EQ(prod, series2(poly("x1*x2", 2), poly("1", 2), Polynomial(2)));

    // [x1, x2] = 2 lambda: the antisymmetry of C_1 doubles the bracket
    LambdaSeries comm = s.commutator(lift(var(2, 0), 2), lift(var(2, 1), 2));
    EXPECT_EQ(comm, series2(Polynomial(2), poly("2", 2), Polynomial(2)));

    // f * 1 = f: all corrections differentiate the constant slot to zero
    Polynomial f = poly("x1^3 - 1/2*x1*x2", 2);
    EXPECT_EQ(s.star(f, Polynomial::one(2)), lift(f, 2));
    EXPECT_EQ(s.star(Polynomial::one(2), f), lift(f, 2));

    // x1 * x1 = x1^2
    EXPECT_EQ(s.star(var(2, 0), var(2, 0)), lift(poly("x1^2", 2), 2));
}

TEST(Moyal, RequiresConstantBivector) {
    EXPECT_THROW(make_moyal(Bivector::su2(), 2), Error);
}

TEST(Moyal, SecondOrderCorrectionValue) {
    // C_2(x1^2, x2^2) = (1/2) P^{12} P^{12} d1 d1 (x1^2) d2 d2 (x2^2) = 2
    StarProduct s = make_moyal(Bivector::symplectic2(), 2);
    EXPECT_EQ(s.correction(2).apply(poly("x1^2", 2), poly("x2^2", 2)), poly("2", 2));
    EXPECT_EQ(s.correction(2).orders(), std::make_pair(2, 2));
}

TEST(Flexible, ConstructionExamples) {
    Bivector su2 = Bivector::su2();
    StarProduct s = make_flexible(su2, 2);

    Rng rng(11);
    for (int i = 0; i < 40; ++i) {
        Polynomial f = random_polynomial(rng, 3, 3);
        Polynomial g = random_polynomial(rng, 3, 3);
        // f * g - f g = lambda {f, g}
        LambdaSeries diff = s.star(f, g) - lift(f * g, 2);
        LambdaSeries want(3, 2);
        want.set_coefficient(1, su2.bracket(f, g));
        EXPECT_EQ(diff, want);
    }

    Polynomial f = poly("x1*x2 - x3^2", 3);
    EXPECT_EQ(s.star(f, Polynomial::one(3)), lift(f, 2));
    EXPECT_THROW(make_flexible(su2, 0), Error);
}

TEST(Flexible, AssociatorIsLambdaSquaredBracketDefect) {
    // A(f,g,h) = lambda^2 ({f,{g,h}} - {{f,g},h}); the lambda^1 part
    // cancels by the Leibniz rule
    Bivector mono = Bivector::monopole_linear();
    StarProduct s = make_flexible(mono, 3);
    Rng rng(13);
    for (int i = 0; i < 25; ++i) {
        Polynomial f = random_polynomial(rng, 6, 2);
        Polynomial g = random_polynomial(rng, 6, 2);
        Polynomial h = random_polynomial(rng, 6, 2);
        LambdaSeries a = s.star(lift(f, 3), s.star(lift(g, 3), lift(h, 3))) -
                         s.star(s.star(lift(f, 3), lift(g, 3)), lift(h, 3));
        EXPECT_TRUE(a.coefficient(0).is_zero());
        EXPECT_TRUE(a.coefficient(1).is_zero());
        EXPECT_EQ(a.coefficient(2),
                  naq::testing::naive_bracket(mono, f, naq::testing::naive_bracket(mono, g, h)) -
                      naq::testing::naive_bracket(mono, naq::testing::naive_bracket(mono, f, g), h));
        EXPECT_TRUE(a.coefficient(3).is_zero());
    }
}

TEST(Custom, BracketCorrectionMatchesFlexible) {
    Bivector su2 = Bivector::su2();
    StarProduct flex = make_flexible(su2, 2);
    StarProduct custom = make_custom(su2, {su2.bracket_operator()}, 2);
    Rng rng(19);
    for (int i = 0; i < 30; ++i) {
        LambdaSeries f = random_series(rng, 3, 2, 3);
        LambdaSeries g = random_series(rng, 3, 2, 3);
        EXPECT_EQ(flex.star(f, g), custom.star(f, g));
    }
}

TEST(Custom, MoyalCorrectionsReproduceMoyal) {
    Bivector p = Bivector::symplectic2();
    StarProduct moyal = make_moyal(p, 3);
    std::vector<BidiffOperator> corr;
    for (int r = 1; r <= 3; ++r) corr.push_back(moyal.correction(r));
    StarProduct custom = make_custom(p, corr, 3);
    for (int r = 1; r <= 3; ++r) EXPECT_EQ(custom.correction(r), moyal.correction(r));
}

TEST(Custom, SymmetricOnlyFirstCorrectionRejected) {
    // C_1 = d1 (x) d1 is symmetric; its antisymmetrization is zero, which
    // cannot match a nonzero bracket
    Bivector p = Bivector::symplectic2();
    BidiffOperator sym(2);
    sym.add_term(Polynomial::one(2), MultiIndex::unit(2, 0), MultiIndex::unit(2, 0));
    EXPECT_THROW(make_custom(p, {sym}, 2), Error);
}

TEST(Custom, SymmetricPartOnTopOfBracketAccepted) {
    Bivector p = Bivector::symplectic2();
    BidiffOperator c1 = p.bracket_operator();
    c1.add_term(Polynomial::one(2), MultiIndex::unit(2, 0), MultiIndex::unit(2, 0));
    EXPECT_NO_THROW(make_custom(p, {c1}, 2));
}

TEST(Custom, TooManyCorrectionsRejected) {
    Bivector p = Bivector::symplectic2();
    StarProduct moyal = make_moyal(p, 3);
    std::vector<BidiffOperator> corr;
    for (int r = 1; r <= 3; ++r) corr.push_back(moyal.correction(r));
    EXPECT_THROW(make_custom(p, corr, 2), Error);
}

TEST(Star, UnitActsAsUnity) {
    for (const StarProduct& s :
         {make_moyal(Bivector::symplectic2(), 3), make_flexible(Bivector::su2(), 3)}) {
        Rng rng(29);
        for (int i = 0; i < 30; ++i) {
            LambdaSeries g = random_series(rng, s.dim(), 3, 3);
            LambdaSeries one = lift(Polynomial::one(s.dim()), 3);
            EXPECT_EQ(s.star(one, g), g);
            EXPECT_EQ(s.star(g, one), g);
        }
    }
}

TEST(Star, FlexibleFirstOrderExample) {
    // flexible, K = 1: x1 * x2 = x1 x2 + lambda P^{12}
    Bivector p = Bivector::symplectic2();
    StarProduct s = make_flexible(p, 1);
    LambdaSeries prod = s.star(var(2, 0), var(2, 1));
    EXPECT_EQ(prod.coefficient(0), poly("x1*x2", 2));
    EXPECT_EQ(prod.coefficient(1), poly("1", 2));
}

TEST(Star, ClassicalLimitAndBilinearity) {
    StarProduct s = make_moyal(Bivector::symplectic2(), 3);
    Rng rng(31);
    for (int i = 0; i < 40; ++i) {
        LambdaSeries f = random_series(rng, 2, 3, 3);
        LambdaSeries g = random_series(rng, 2, 3, 3);
        LambdaSeries h = random_series(rng, 2, 3, 3);
        EXPECT_EQ(s.star(f, g).coefficient(0), f.coefficient(0) * g.coefficient(0));
        EXPECT_EQ(s.star(f + g, h), s.star(f, h) + s.star(g, h));
        Rational c = random_rational(rng);
        EXPECT_EQ(s.star(c * f, h), c * s.star(f, h));
    }
}

TEST(Star, SemiclassicalCommutator) {
    // when C_1 is exactly the bracket, the lambda^1 part of [f, g] on
    // order-0 series is 2 {f_0, g_0}
    for (const StarProduct& s :
         {make_moyal(Bivector::symplectic2(), 2), make_flexible(Bivector::monopole_linear(), 2)}) {
        Rng rng(37);
        for (int i = 0; i < 25; ++i) {
            Polynomial f = random_polynomial(rng, s.dim(), 3);
            Polynomial g = random_polynomial(rng, s.dim(), 3);
            LambdaSeries comm = s.commutator(lift(f, 2), lift(g, 2));
            EXPECT_EQ(comm.coefficient(1), Rational(2) * s.bivector().bracket(f, g));
        }
    }
}

TEST(StarPower, Examples) {
    StarProduct s = make_flexible(Bivector::su2(), 2);
    Rng rng(41);
    LambdaSeries f = random_series(rng, 3, 2, 2); // arbitrary nonzero element
    EXPECT_EQ(s.power(f, 1, Assoc::left), f);

    // pure truncation: (lambda x1)^3 at K = 2 vanishes, not algebraic nilpotency
    LambdaSeries lx(3, 2);
    lx.set_coefficient(1, var(3, 0));
    EXPECT_TRUE(s.power(lx, 3, Assoc::left).is_zero());
    EXPECT_TRUE(s.power(lx, 3, Assoc::right).is_zero());

    // (x1 + lambda x2)^2 = x1^2 + 2 lambda x1 x2 + lambda^2 x2^2
    LambdaSeries mixed(3, 2);
    mixed.set_coefficient(0, var(3, 0));
    mixed.set_coefficient(1, var(3, 1));
    EXPECT_EQ(s.power(mixed, 2, Assoc::left),
              series2(poly("x1^2", 3), poly("2*x1*x2", 3), poly("x2^2", 3)));

    EXPECT_THROW(s.power(f, 0, Assoc::left), Error);
}

TEST(NilpotencyProbe, Examples) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 2);

    // f = x1, k = 3: lambda^0 coefficient x1^3 != 0
    NilpotencyVerdict v = nilpotency_probe(moyal, lift(var(2, 0), 2), 3);
    EXPECT_EQ(v.status, NilpotencyVerdict::Status::pass);
    EXPECT_EQ(v.coefficient, poly("x1^3", 2));
    EXPECT_EQ(v.lowest_order, 0);

    // f = lambda (x1 + 1), k = 2 at K >= 2: lambda^2 coefficient (x1+1)^2
    LambdaSeries f(2, 2);
    f.set_coefficient(1, poly("x1 + 1", 2));
    NilpotencyVerdict v2 = nilpotency_probe(moyal, f, 2);
    EXPECT_EQ(v2.status, NilpotencyVerdict::Status::pass);
    EXPECT_EQ(v2.coefficient, poly("x1^2 + 2*x1 + 1", 2));

    // f = lambda x1, k = 2, K = 1: inconclusive by truncation
    StarProduct k1 = make_moyal(Bivector::symplectic2(), 1);
    LambdaSeries lx(2, 1);
    lx.set_coefficient(1, var(2, 0));
    EXPECT_EQ(nilpotency_probe(k1, lx, 2).status, NilpotencyVerdict::Status::inconclusive);

    EXPECT_THROW(nilpotency_probe(moyal, LambdaSeries::zero(2, 2), 2), Error);
}

TEST(Unitality, Examples) {
    EXPECT_TRUE(unitality_check(make_moyal(Bivector::symplectic2(), 3)).holds);
    EXPECT_TRUE(unitality_check(make_flexible(Bivector::monopole_linear(), 2)).holds);

    // C_1 += (f, g -> f g) breaks unitality with witness (1, 1)
    Bivector p = Bivector::symplectic2();
    BidiffOperator c1 = p.bracket_operator();
    c1.add_term(Polynomial::one(2), MultiIndex(2), MultiIndex(2));
    StarProduct bad = make_custom(p, {c1}, 2);
    UnitalityVerdict v = unitality_check(bad);
    ASSERT_FALSE(v.holds);
    ASSERT_TRUE(v.witness.has_value());
    auto [r, gamma, delta] = *v.witness;
    EXPECT_EQ(r, 1);
    EXPECT_TRUE(gamma.is_zero());
    EXPECT_TRUE(delta.is_zero());
    // 1 * 1 = 1 + lambda
    LambdaSeries one_one = bad.star(Polynomial::one(2), Polynomial::one(2));
    EXPECT_EQ(one_one.coefficient(1), poly("1", 2));
}

TEST(BracketSeries, ConsumesNoLambda) {
    Bivector su2 = Bivector::su2();
    LambdaSeries a(3, 2), b(3, 2);
    a.set_coefficient(0, var(3, 0));
    a.set_coefficient(1, var(3, 1));
    b.set_coefficient(0, var(3, 1));
    LambdaSeries r = bracket_series(su2, a, b);
    EXPECT_EQ(r.coefficient(0), var(3, 2));            // {x1, x2}
    EXPECT_TRUE(r.coefficient(1).is_zero());           // {x2, x2}
    EXPECT_TRUE(r.coefficient(2).is_zero());
}

TEST(Star, MismatchRejected) {
    StarProduct s = make_moyal(Bivector::symplectic2(), 2);
    EXPECT_THROW(s.star(lift(var(2, 0), 1), lift(var(2, 1), 2)), Error);
    EXPECT_THROW(s.star(lift(var(3, 0), 2), lift(var(3, 1), 2)), Error);
}

#include "naq/gauge.hpp"

#include <gtest/gtest.h>

#include "naq/identities.hpp"
#include "naq/random.hpp"
#include "naq_testing.hpp"

using namespace naq;
using naq::testing::lift;
using naq::testing::poly;
using naq::testing::var;

namespace {

// D_1 = d1^2, D_2 = x2 d2^2: second-order layers give a visibly deformed
// product while keeping the corrections small
GaugeTransform sample_transform(int k) {
    DiffOperator d1(2, {{Polynomial::one(2), MultiIndex{2, 0}}});
    DiffOperator d2(2, {{var(2, 1), MultiIndex{0, 2}}});
    std::vector<DiffOperator> layers{d1, d2};
    layers.resize(static_cast<std::size_t>(k), DiffOperator(2));
    return GaugeTransform(2, k, std::move(layers));
}

} // namespace

TEST(DiffOperator, ApplyAndCompose) {
    DiffOperator d(2, {{var(2, 0), MultiIndex{1, 0}}}); // x1 d1
    EXPECT_EQ(d.apply(poly("x1^3", 2)), poly("3*x1^3", 2));
    EXPECT_EQ(d.order(), 1);

    // (d1) o (x1 d1) = x1 d1^2 + d1       (Leibniz)
    DiffOperator outer(2, {{Polynomial::one(2), MultiIndex{1, 0}}});
    DiffOperator composed = outer.compose(d);
    Rng rng(3);
    for (int i = 0; i < 40; ++i) {
        Polynomial f = random_polynomial(rng, 2, 5);
        EXPECT_EQ(composed.apply(f), outer.apply(d.apply(f)));
    }
    DiffOperator want(2, {{var(2, 0), MultiIndex{2, 0}}, {Polynomial::one(2), MultiIndex{1, 0}}});
    EXPECT_EQ(composed, want);
}

TEST(GaugeTransform, ApplyMatchesDefinition) {
    GaugeTransform d = sample_transform(3);
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        LambdaSeries f = random_series(rng, 2, 3, 3);
        LambdaSeries df = d.apply(f);
        for (int t = 0; t <= 3; ++t) {
            Polynomial want = f.coefficient(t);
            for (int r = 1; r <= t; ++r) want += d.layer(r).apply(f.coefficient(t - r));
            EXPECT_EQ(df.coefficient(t), want);
        }
    }
}

TEST(GaugeTransform, InverseRecursion) {
    GaugeTransform d = sample_transform(3);
    GaugeTransform e = d.inverse();
    Rng rng(11);
    for (int i = 0; i < 30; ++i) {
        LambdaSeries f = random_series(rng, 2, 3, 3);
        EXPECT_EQ(d.apply(e.apply(f)), f);
        EXPECT_EQ(e.apply(d.apply(f)), f);
        EXPECT_EQ(d.apply_inverse(f), e.apply(f));
    }
}

TEST(GaugeTransform, IdentityTransformFixesProduct) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 3);
    StarProduct same = gauge_transform(moyal, GaugeTransform::identity(2, 3));
    for (int r = 1; r <= 3; ++r) EXPECT_EQ(same.correction(r), moyal.correction(r));
}

TEST(GaugeTransform, TransformedProductMatchesComposite) {
    // the extracted normal form must agree with the functional composite
    // D^{-1}((Df) * (Dg)) on arbitrary series
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 3);
    GaugeTransform d = sample_transform(3);
    StarProduct s2 = gauge_transform(moyal, d);
    Rng rng(13);
    for (int i = 0; i < 20; ++i) {
        LambdaSeries f = random_series(rng, 2, 3, 4);
        LambdaSeries g = random_series(rng, 2, 3, 4);
        LambdaSeries composite = d.apply_inverse(moyal.star(d.apply(f), d.apply(g)));
        EXPECT_EQ(s2.star(f, g), composite);
    }
}

TEST(GaugeTransform, PreservesAntisymmetrizedFirstCorrection) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 3);
    GaugeTransform d = sample_transform(3);
    StarProduct s2 = gauge_transform(moyal, d);
    EXPECT_EQ(s2.correction(1).antisymmetrized(), moyal.correction(1).antisymmetrized());
    // the transform is nontrivial: C'_1 itself differs by a symmetric part
    EXPECT_NE(s2.correction(1), moyal.correction(1));
}

TEST(GaugeTransform, TransformedMoyalStaysAssociative) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 3);
    StarProduct s2 = gauge_transform(moyal, sample_transform(3));
    EXPECT_TRUE(check_associative(s2).holds());
    EXPECT_TRUE(unitality_check(s2).holds);
}

TEST(GaugeTransform, RoundTripRecoversCorrections) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 3);
    GaugeTransform d = sample_transform(3);
    StarProduct there = gauge_transform(moyal, d);
    StarProduct back = gauge_transform(there, d.inverse());
    for (int r = 1; r <= 3; ++r) EXPECT_EQ(back.correction(r), moyal.correction(r));
}

TEST(GaugeTransform, MismatchRejected) {
    StarProduct moyal = make_moyal(Bivector::symplectic2(), 3);
    EXPECT_THROW(gauge_transform(moyal, GaugeTransform::identity(2, 2)), Error);
    EXPECT_THROW(gauge_transform(moyal, GaugeTransform::identity(3, 3)), Error);
}

TEST(GaugeTransform, ChainOrderBound) {
    GaugeTransform d = sample_transform(3);
    // layers have orders 2 (D_1) and 2 (D_2); with budget 3 the best chain
    // is D_1 three times
    EXPECT_EQ(d.chain_order_bound(0), 0);
    EXPECT_EQ(d.chain_order_bound(1), 2);
    EXPECT_EQ(d.chain_order_bound(2), 4);
    EXPECT_EQ(d.chain_order_bound(3), 6);
}

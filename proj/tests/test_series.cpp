#include "naq/lambda_series.hpp"

#include <gtest/gtest.h>

#include "naq/random.hpp"
#include "naq_testing.hpp"

using namespace naq;
using naq::testing::lift;
using naq::testing::poly;

TEST(LambdaSeries, AdditionExamples) {
    // (f + lambda g) + (-lambda g) = f
    LambdaSeries a(2, 2);
    a.set_coefficient(0, poly("x1^2", 2));
    a.set_coefficient(1, poly("x2", 2));
    LambdaSeries b(2, 2);
    b.set_coefficient(1, poly("-x2", 2));
    EXPECT_EQ(a + b, lift(poly("x1^2", 2), 2));

    EXPECT_EQ(a + LambdaSeries::zero(2, 2), a);

    LambdaSeries p(2, 2), q(2, 2);
    p.set_coefficient(2, poly("x1", 2));
    q.set_coefficient(2, poly("x2", 2));
    LambdaSeries want(2, 2);
    want.set_coefficient(2, poly("x1 + x2", 2));
    EXPECT_EQ(p + q, want);
}

TEST(LambdaSeries, PointwiseProductExamples) {
    // (1 + lambda x1)(1 - lambda x1) = 1 - lambda^2 x1^2 at K = 2
    LambdaSeries a(2, 2), b(2, 2);
    a.set_coefficient(0, poly("1", 2));
    a.set_coefficient(1, poly("x1", 2));
    b.set_coefficient(0, poly("1", 2));
    b.set_coefficient(1, poly("-x1", 2));
    LambdaSeries want(2, 2);
    want.set_coefficient(0, poly("1", 2));
    want.set_coefficient(2, poly("-x1^2", 2));
    EXPECT_EQ(a * b, want);

    EXPECT_EQ(a * lift(poly("1", 2), 2), a);

    // truncation: (lambda x1)(lambda x2) = 0 at K = 1
    LambdaSeries u(2, 1), v(2, 1);
    u.set_coefficient(1, poly("x1", 2));
    v.set_coefficient(1, poly("x2", 2));
    EXPECT_TRUE((u * v).is_zero());
}

TEST(LambdaSeries, LowestOrderExamples) {
    LambdaSeries a(2, 3);
    a.set_coefficient(2, poly("x1", 2));
    a.set_coefficient(3, poly("x2", 2));
    auto low = a.lowest_order();
    ASSERT_TRUE(low.has_value());
    EXPECT_EQ(low->first, 2);
    EXPECT_EQ(low->second, poly("x1", 2));

    EXPECT_FALSE(LambdaSeries::zero(2, 3).lowest_order().has_value());

    LambdaSeries b(2, 3);
    b.set_coefficient(0, poly("3", 2));
    b.set_coefficient(1, poly("x1", 2));
    auto low2 = b.lowest_order();
    EXPECT_EQ(low2->first, 0);
    EXPECT_EQ(low2->second, poly("3", 2));
}

TEST(LambdaSeries, MixedTruncationOrdersRejected) {
    LambdaSeries a(2, 2), b(2, 3);
    EXPECT_THROW(a + b, Error);
    EXPECT_THROW(a * b, Error);
    LambdaSeries c(3, 2);
    EXPECT_THROW(a + c, Error);
}

TEST(LambdaSeries, ProductAssociativeCommutativeModuloTruncation) {
    Rng rng(2024);
    for (int i = 0; i < 100; ++i) {
        LambdaSeries a = random_series(rng, 2, 3, 3);
        LambdaSeries b = random_series(rng, 2, 3, 3);
        LambdaSeries c = random_series(rng, 2, 3, 3);
        EXPECT_EQ(a * b, b * a);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * (b + c), a * b + a * c);
    }
}

TEST(LambdaSeries, Rendering) {
    LambdaSeries a(2, 2);
    a.set_coefficient(0, poly("x1", 2));
    a.set_coefficient(2, poly("x2^2", 2));
    EXPECT_EQ(a.str(), "(x1) + lambda^2*(x2^2)");
    EXPECT_EQ(LambdaSeries::zero(2, 1).str(), "0");
}

#include "hurwitz/qseries.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hurwitz;

namespace {

QSeries from_ints(std::vector<long> v, Rational w = 0) {
    std::vector<Rational> c;
    for (auto x : v) c.emplace_back(x);
    return QSeries(std::move(c), w);
}

}  // namespace

TEST(QSeries, ArithmeticTruncatesToShorter) {
    const auto a = from_ints({1, 2, 3, 4});
    const auto b = from_ints({5, 6, 7});
    EXPECT_EQ(a + b, from_ints({6, 8, 10}));
    EXPECT_EQ(a - b, from_ints({-4, -4, -4}));
    EXPECT_EQ(Rational(1, 2) * a, QSeries({Rational(1, 2), 1, Rational(3, 2), 2}));
}

TEST(QSeries, ProductMatchesNaiveConvolution) {
    const auto a = from_ints({1, 0, -2, 0, 3, 1, 0, 0, 5}, Rational{3, 2});
    const auto b = from_ints({0, 1, 0, 4, 0, 0, 2, 7, 1}, Rational{1, 2});
    const auto c = a * b;
    for (std::size_t n = 0; n <= 8; ++n) {
        Rational s = 0;
        for (std::size_t i = 0; i <= n; ++i) s += a[i] * b[n - i];
        EXPECT_EQ(c[n], s);
    }
    EXPECT_EQ(c.weight(), 2);
}

TEST(QSeries, Theta) {
    const auto th = theta_series(0, 0, 1, 20);
    EXPECT_EQ(th, from_ints({1, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0}));
    EXPECT_EQ(th.weight(), Rational(1, 2));
    const auto t1 = theta_series(1, 1, 3, 20);  // n = 1, -2, 4: q - 2 q^4 + 4 q^16
    EXPECT_EQ(t1[1], 1);
    EXPECT_EQ(t1[4], -2);
    EXPECT_EQ(t1[16], 4);
    EXPECT_EQ(t1[0], 0);
    EXPECT_EQ(t1.weight(), Rational(3, 2));
    EXPECT_THROW(theta_series(0, 0, 0, 10), std::invalid_argument);
}

TEST(QSeries, UAndV) {
    const auto a = from_ints({1, 2, 3, 4, 5, 6, 7});
    EXPECT_EQ(u_operator(a, 2), from_ints({1, 3, 5, 7}));
    EXPECT_EQ(v_operator(from_ints({1, 2, 3}), 3), from_ints({1, 0, 0, 2, 0, 0, 3}));
    EXPECT_EQ(u_operator(v_operator(a, 4), 4), a);
    EXPECT_EQ(v_operator(a, 4, 10).precision(), 10u);
    EXPECT_THROW(u_operator(a, 0), std::invalid_argument);
}

TEST(QSeries, GeneralizedBinomial) {
    EXPECT_EQ(generalized_binomial(Rational(3, 2), 2), Rational(3, 8));
    EXPECT_EQ(generalized_binomial(Rational(1, 2), 3), Rational(1, 16));
    EXPECT_EQ(generalized_binomial(Rational(5), 2), 10);
    EXPECT_EQ(generalized_binomial(Rational(2), 3), 0);
}

TEST(QSeries, RankinCohenLowOrders) {
    const auto f = from_ints({1, 3, -1, 0, 2, 5, 0, 1});
    const auto g = from_ints({2, 0, 1, 1, 0, 3, 4, 0});
    const Rational w1{3, 2}, w2{1, 2};
    EXPECT_EQ(rankin_cohen(f, w1, g, w2, 0), f * g);
    // [f, g]_1 = w1 f g' - w2 f' g
    const auto expect = w1 * (f * derivative(g, 1)) - w2 * (derivative(f, 1) * g);
    EXPECT_EQ(rankin_cohen(f, w1, g, w2, 1), expect);
    EXPECT_EQ(rankin_cohen(f, w1, g, w2, 2).weight(), 6);
    EXPECT_THROW(rankin_cohen(f, w1, g, w2, -1), std::invalid_argument);
}

TEST(QSeries, RankinCohenSecondOrder) {
    // [f, g]_2 = C(w1+1,2) f g'' - (w1+1)(w2+1) f' g' + C(w2+1,2) f'' g
    const auto f = from_ints({0, 1, 4, -2, 0, 1});
    const auto g = from_ints({1, 0, 2, 0, 0, 3});
    const Rational w1{3, 2}, w2{5, 2};
    const auto expect = ((w1 + 1) * w1 / 2) * (f * derivative(g, 2)) -
                        ((w1 + 1) * (w2 + 1)) * (derivative(f, 1) * derivative(g, 1)) +
                        ((w2 + 1) * w2 / 2) * (derivative(f, 2) * g);
    EXPECT_EQ(rankin_cohen(f, w1, g, w2, 2), expect);
}

TEST(QSeries, HurwitzGeneratingFunction) {
    const auto table = hurwitz_table(100);
    const auto H = hurwitz_gf(100, table);
    EXPECT_EQ(H[0], Rational(-1, 12));
    EXPECT_EQ(H[3], Rational(1, 3));
    EXPECT_EQ(H[5], 0);
    EXPECT_EQ(H.weight(), Rational(3, 2));
    EXPECT_THROW(hurwitz_gf(101, table), bound_error);
}

TEST(QSeries, GrowthAuditOnKnownPowers) {
    std::vector<Rational> c(2001);
    for (std::size_t n = 1; n <= 2000; ++n) c[n] = Rational{static_cast<long>(n * n)};
    const QSeries F(std::move(c));
    EXPECT_NEAR(growth_audit(F, 2.0).fit.slope, 0.0, 1e-9);
    EXPECT_NEAR(growth_audit(F, 1.5).fit.slope, 0.5, 0.02);
    EXPECT_TRUE(growth_audit(QSeries::zero(100), 1.0).degenerate);
    EXPECT_THROW(growth_audit(QSeries::zero(63), 1.0), std::invalid_argument);
}

TEST(QSeries, CsvRoundTrip) {
    const QSeries F({Rational(-1, 12), 0, Rational(7, 3), -5});
    std::stringstream ss;
    write_series_csv(ss, F);
    EXPECT_EQ(ss.str(), "n,numerator,denominator\n0,-1,12\n1,0,1\n2,7,3\n3,-5,1\n");
    EXPECT_EQ(read_series_csv(ss), F);
    std::istringstream bad("n,num\n");
    EXPECT_THROW(read_series_csv(bad), std::runtime_error);
}

#include "hurwitz/classnum.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace hurwitz;

namespace {

// Kronecker-Hurwitz relation: sum_t H(4n - t^2) = 2 sigma(n) - sum_{d | n} min(d, n/d).
// Independent of the form enumeration, so it checks the table as a whole.
Rational kronecker_hurwitz_rhs(std::int64_t n) {
    std::int64_t s = 0, lam = 0;
    for (std::int64_t d = 1; d <= n; ++d) {
        if (n % d) continue;
        s += d;
        lam += std::min(d, n / d);
    }
    return Rational{2 * s - lam};
}

}  // namespace

TEST(ClassNumber, KnownValues) {
    EXPECT_EQ(hurwitz::hurwitz(0), Rational(-1, 12));
    EXPECT_EQ(hurwitz::hurwitz(3), Rational(1, 3));
    EXPECT_EQ(hurwitz::hurwitz(4), Rational(1, 2));
    EXPECT_EQ(hurwitz::hurwitz(7), 1);
    EXPECT_EQ(hurwitz::hurwitz(8), 1);
    EXPECT_EQ(hurwitz::hurwitz(11), 1);
    EXPECT_EQ(hurwitz::hurwitz(12), Rational(4, 3));
    EXPECT_EQ(hurwitz::hurwitz(15), 2);
    EXPECT_EQ(hurwitz::hurwitz(16), Rational(3, 2));
    EXPECT_EQ(hurwitz::hurwitz(20), 2);
    EXPECT_EQ(hurwitz::hurwitz(23), 3);
    EXPECT_EQ(hurwitz::hurwitz(27), Rational(4, 3));
    EXPECT_EQ(hurwitz::hurwitz(5), 0);
    EXPECT_EQ(hurwitz::hurwitz(6), 0);
    EXPECT_EQ(hurwitz::hurwitz(-4), 0);
}

TEST(ClassNumber, ReducedFormsAreReduced) {
    for (std::uint64_t n = 3; n < 400; ++n)
        for (const auto& f : reduced_forms(n)) {
            ASSERT_TRUE(f.is_reduced());
            ASSERT_EQ(f.discriminant(), -static_cast<std::int64_t>(n));
        }
    const auto forms = reduced_forms(20);
    ASSERT_EQ(forms.size(), 2u);
    EXPECT_EQ(forms[0], (ReducedForm{1, 0, 5}));
    EXPECT_EQ(forms[1], (ReducedForm{2, 2, 3}));
}

TEST(ClassNumber, TableMatchesEnumeration) {
    const auto table = hurwitz_table(6000);
    for (std::int64_t n = 0; n <= 6000; ++n) ASSERT_EQ(table.twelve_h(n), hurwitz12(n)) << n;
}

TEST(ClassNumber, TableSatisfiesKroneckerHurwitz) {
    const auto table = hurwitz_table(4 * 800);
    for (std::int64_t n = 1; n <= 800; ++n) {
        Rational lhs = 0;
        for (std::int64_t t = -2 * n; t <= 2 * n; ++t)
            if (t * t <= 4 * n) lhs += table.value(4 * n - t * t);
        ASSERT_EQ(lhs, kronecker_hurwitz_rhs(n)) << n;
    }
}

TEST(ClassNumber, WorkerCountDoesNotChangeTable) {
    const auto a = hurwitz_table(50000, 1);
    const auto b = hurwitz_table(50000, 3);
    ASSERT_EQ(a.limit(), b.limit());
    for (std::uint64_t n = 0; n <= a.limit(); ++n) ASSERT_EQ(a[n], b[n]);
}

TEST(ClassNumber, CohenRelation) {
    const auto table = hurwitz_table(5000);
    for (std::int64_t n = 3; n <= 5000; ++n) {
        if (n % 4 == 1 || n % 4 == 2) {
            EXPECT_THROW(hurwitz_cohen(n), std::invalid_argument);
            continue;
        }
        ASSERT_EQ(hurwitz_cohen(n), table.value(n)) << n;
    }
}

TEST(ClassNumber, P2Lemma) {
    for (std::int64_t d = 3; d <= 1500; ++d) {
        if (d % 4 == 1 || d % 4 == 2) continue;
        for (std::int64_t p : {3, 5, 7, 11, 13}) ASSERT_TRUE(verify_p2_lemma(-d, p).holds) << d << ' ' << p;
    }
    const auto r = verify_p2_lemma(-3 * 25, 5);  // ord_5 = 2, so D_p = -3
    EXPECT_EQ(r.alpha, 1u);
    EXPECT_EQ(r.D_p, -3);
    EXPECT_THROW(verify_p2_lemma(-5, 3), std::invalid_argument);
    EXPECT_THROW(verify_p2_lemma(-3, 2), std::invalid_argument);
    EXPECT_THROW(verify_p2_lemma(-3, 9), std::invalid_argument);
}

TEST(ClassNumber, SiegelEnvelope) {
    // The constants are heuristic: small class numbers (e.g. H(2683) = 5)
    // dip under 0.1 sqrt(n), so only a rare lower-side miss is tolerated.
    const auto table = hurwitz_table(100000);
    const auto misses = siegel_envelope(table, 1000, 100000);
    EXPECT_LT(misses.size(), 250u);
    for (const auto& v : misses) EXPECT_GT(v.normalized, 0.05) << v.n;
    EXPECT_EQ(siegel_envelope(table, 163, 163).size(), 1u);
}

TEST(ClassNumber, BoundsAndErrors) {
    const auto table = hurwitz_table(100);
    EXPECT_THROW(table.twelve_h(101), bound_error);
    EXPECT_EQ(table.twelve_h(-7), 0);
    EXPECT_THROW(table.require(101, "test"), bound_error);
    EXPECT_THROW(hurwitz_table(0), std::invalid_argument);
    EXPECT_THROW(hurwitz_table(1001, 1, 1000), bound_error);
}

TEST(ClassNumber, TableCsv) {
    std::ostringstream os;
    write_table_csv(os, hurwitz_table(8));
    EXPECT_EQ(os.str(), "n,twelve_h\n0,-1\n3,4\n4,6\n7,12\n8,12\n");
}

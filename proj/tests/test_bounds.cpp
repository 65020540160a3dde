#include <gtest/gtest.h>

#include <cmath>

#include "ia/bounds.hpp"
#include "ia/errors.hpp"

using namespace ia;

TEST(Bounds, SmallTable) {
    EXPECT_EQ(dof_upper_bound(1).dof, 1);
    EXPECT_EQ(dof_upper_bound(2).dof, 1);
    EXPECT_EQ(dof_upper_bound(2).r_star, 1);
    EXPECT_EQ(dof_upper_bound(4).dof, Rational(4, 3));
    EXPECT_EQ(dof_upper_bound(4).r_star, 2);
    EXPECT_EQ(dof_upper_bound(9).dof, Rational(9, 5));
    EXPECT_EQ(dof_upper_bound(4).per_r_curve.size(), 4u);
    EXPECT_TRUE(dof_upper_bound(4, false).per_r_curve.empty());
}

TEST(Bounds, RStarMatchesDefinition) {
    for (long K = 1; K <= 20000; ++K) {
        long r = 1;
        while (r * r + r < K) ++r;
        ASSERT_EQ(r_star(K), r) << K;
    }
}

TEST(Bounds, OptimizerIsLocalMaximumForAllKUpToOneMillion) {
    // d(r) > d(r') iff K r (r'^2 - r' + K) > K r' (r^2 - r + K), so the
    // comparison reduces to integers.
    auto ge = [](long K, long a, long b) {
        const __int128 lhs = static_cast<__int128>(a) * (b * b - b + K);
        const __int128 rhs = static_cast<__int128>(b) * (a * a - a + K);
        return lhs >= rhs;
    };
    for (long K = 1; K <= 1000000; ++K) {
        const long r = r_star(K);
        if (r > 1) ASSERT_TRUE(ge(K, r, r - 1)) << K;
        ASSERT_TRUE(ge(K, r, r + 1)) << K;
    }
    // Spot-check the integer comparison against the rational one.
    for (long K : {3L, 10L, 99L, 12345L}) {
        const long r = r_star(K);
        EXPECT_GE(d_of_r(K, r), d_of_r(K, r + 1));
        if (r > 1) EXPECT_GE(d_of_r(K, r), d_of_r(K, r - 1));
    }
}

TEST(Bounds, CountsMatchTheClosedForm) {
    for (long K = 2; K <= 64; ++K) {
        for (long r = 1; r < K; ++r) {
            SchemeCounts c = scheme_counts(K, r);
            Rational total(c.desired_per_rx * K, c.n);
            total.canonicalize();
            ASSERT_EQ(total, d_of_r(K, r)) << K << "," << r;
            ASSERT_EQ(c.total_dof, d_of_r(K, r));
        }
    }
    SchemeCounts c = scheme_counts(4, 3);
    EXPECT_EQ(c.n, 10);
    EXPECT_EQ(c.desired_per_rx, 3);
    EXPECT_EQ(scheme_counts(9, 3).total_dof, Rational(9, 5));
}

TEST(Bounds, PerfectSquareAsymptote) {
    for (long m = 2; m <= 1000; m += 7) {
        const long K = m * m;
        const Rational d = dof_upper_bound(K, false).dof;
        Rational want(K, 2 * m - 1);
        want.canonicalize();
        EXPECT_EQ(d, want);
        const Rational ratio = d / Rational(m, 2);
        EXPECT_GT(ratio, 1);
        EXPECT_LE(ratio, Rational(2 * m, 2 * m - 1));
    }
}

TEST(Bounds, Curve) {
    auto pts = curve_f(4, {Rational(2), Rational(1), Rational(0), Rational(-1), Rational(1, 2)});
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[0].second, Rational(4, 3));
    EXPECT_EQ(pts[1].second, 1);
    EXPECT_EQ(pts[2].second, Rational(8, 15));
}

TEST(Bounds, InputErrors) {
    EXPECT_THROW(dof_upper_bound(0), InputError);
    EXPECT_THROW(scheme_counts(4, 4), InputError);
    EXPECT_THROW(scheme_counts(4, 0), InputError);
}

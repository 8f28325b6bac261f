#include "ffml/core.hpp"
#include "ffml/quadrature.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using ffml::DomainError;

TEST(Gamma, IntegersAreExactFactorials) {
    EXPECT_EQ(ffml::gamma(1.0), 1.0);
    EXPECT_EQ(ffml::gamma(2.0), 1.0);
    EXPECT_EQ(ffml::gamma(5.0), 24.0);
    EXPECT_EQ(ffml::gamma(11.0), 3628800.0);
}

TEST(Gamma, HalfIsSqrtPi) {
    EXPECT_NEAR(ffml::gamma(0.5), std::sqrt(std::numbers::pi), 1e-13 * std::sqrt(std::numbers::pi));
}

namespace {

// The power term amplifies rounding by about x log x.
double gamma_tolerance(double x) { return std::max(1e-13, 4e-16 * x * std::log(x)); }

} // namespace

// Reference values from a 30-digit mpmath evaluation.
TEST(Gamma, MatchesHighPrecisionValues) {
    const struct {
        double x;
        double value;
    } cases[] = {
        {0.1, 9.51350769866873183629},   {1e-3, 999.423772484595466115},
        {2.5, 1.32934038817913702047},   {7.3, 1271.42363366390927306},
        {33.3, 7.48757759652270660799e35}, {100.5, 9.32096310408271660835e156},
        {170.5, 5.56209241455999961071e305}, {171.0, 7.25741561530799896740e306},
    };
    for (const auto& c : cases) {
        EXPECT_NEAR(ffml::gamma(c.x) / c.value, 1.0, gamma_tolerance(c.x)) << "x = " << c.x;
    }
}

TEST(Gamma, AgreesWithLibmOnDenseGrid) {
    for (double x = 0.003; x < 171; x *= 1.0137) {
        EXPECT_NEAR(ffml::gamma(x) / std::tgamma(x), 1.0, gamma_tolerance(x)) << "x = " << x;
    }
}

TEST(Gamma, RejectsOutOfDomain) {
    EXPECT_THROW((void)ffml::gamma(0.0), DomainError);
    EXPECT_THROW((void)ffml::gamma(-1.5), DomainError);
    EXPECT_THROW((void)ffml::gamma(171.5), DomainError);
}

TEST(AbCoefficient, KnownValues) {
    EXPECT_EQ(ffml::ab_coefficient(1.0), 1.0);
    // 0.5 + 0.5 / sqrt(pi)
    EXPECT_NEAR(ffml::ab_coefficient(0.5), 0.782094791773878143, 1e-14);
    const double near_one = ffml::ab_coefficient(0.99);
    EXPECT_GT(near_one, 0.99);
    EXPECT_LT(near_one, 1.0);
}

TEST(AbCoefficient, BoundedBelowAndContinuous) {
    double previous = ffml::ab_coefficient(1e-6);
    for (double theta = 1e-6; theta <= 1.0; theta += 1e-4) {
        const double value = ffml::ab_coefficient(theta);
        // Minimum is 0.778557348607811 near theta = 0.4409.
        EXPECT_GE(value, 0.7785573486);
        EXPECT_LE(value, 1.0 + 1e-15);
        EXPECT_LT(std::abs(value - previous), 1e-3);
        previous = value;
    }
}

TEST(AbCoefficient, RejectsOutOfDomain) {
    EXPECT_THROW((void)ffml::ab_coefficient(0.0), DomainError);
    EXPECT_THROW((void)ffml::ab_coefficient(1.01), DomainError);
}

TEST(Power, ZeroConventions) {
    EXPECT_EQ(ffml::power(0.0, 0.7), 0.0);
    EXPECT_EQ(ffml::power(0.0, 0.0), 1.0);
    EXPECT_EQ(ffml::fractal_factor(0.0, 0.6), 0.0);
    EXPECT_EQ(ffml::fractal_factor(0.0, 1.0), 1.0);
    EXPECT_NEAR(ffml::fractal_factor(4.0, 0.5), 0.25, 1e-15);
}

TEST(AbmWeights, DiagonalIsTwoPlusThetaAndOne) {
    for (const double theta : {0.3, 0.7, 1.0}) {
        for (Eigen::Index k = 1; k <= 20; ++k) {
            const auto w = ffml::abm_weights(k, k, theta);
            EXPECT_DOUBLE_EQ(w.y1, 2 + theta);
            EXPECT_DOUBLE_EQ(w.y2, 1.0);
        }
    }
}

TEST(AbmWeights, MatchDirectEvaluation) {
    const auto w = ffml::abm_weights(5, 1, 0.5);
    EXPECT_NEAR(w.y1, 0.534441853748633027, 1e-14);
    EXPECT_NEAR(w.y2, 0.180339887498948482, 1e-14);
}

TEST(AbmWeights, RejectOutOfRangeIndices) {
    EXPECT_THROW((void)ffml::abm_weights<double>(3, 0, 0.5), DomainError);
    EXPECT_THROW((void)ffml::abm_weights<double>(3, 4, 0.5), DomainError);
    EXPECT_THROW((void)ffml::abm_weights<double>(3, 2, 1.5), DomainError);
}

TEST(NpmWeights, DiagonalValues) {
    for (const double theta : {0.2, 0.85, 1.0}) {
        const auto w = ffml::npm_weights(7, 7, theta);
        EXPECT_DOUBLE_EQ(w.psi1, 1.0);
        EXPECT_DOUBLE_EQ(w.psi2, 3 + 2 * theta);
        EXPECT_DOUBLE_EQ(w.psi3, 2 * theta * theta + 9 * theta + 12);
    }
}

TEST(NpmWeights, MatchDirectEvaluation) {
    const auto w = ffml::npm_weights(6, 3, 0.85);
    EXPECT_NEAR(w.psi1, 0.704798933783891497, 1e-14);
    EXPECT_NEAR(w.psi2, 3.26437273624107152, 1e-13);
    EXPECT_NEAR(w.psi3, 14.2983395815787216, 1e-12);
}

TEST(NpmWeights, RejectOutOfRangeIndices) {
    EXPECT_THROW((void)ffml::npm_weights<double>(3, 1, 0.5), DomainError);
    EXPECT_THROW((void)ffml::npm_weights<double>(3, 4, 0.5), DomainError);
}

TEST(WeightProperties, ClassicalLimitAtThetaOne) {
    for (Eigen::Index m = 0; m <= 100; ++m) {
        const auto a = ffml::abm_weights_at_lag(m, 1.0);
        const auto n = ffml::npm_weights_at_lag(m, 1.0);
        EXPECT_NEAR(a.y1, 3, 1e-12);
        EXPECT_NEAR(a.y2, 1, 1e-12);
        EXPECT_NEAR(n.psi1, 1, 1e-12);
        EXPECT_NEAR(n.psi2, 5, 1e-12);
        EXPECT_NEAR(n.psi3, 23, 1e-12);
    }
}

TEST(WeightProperties, LeadingWeightsArePositive) {
    for (double theta = 0.01; theta <= 1.0; theta += 0.0275) {
        for (Eigen::Index m = 0; m <= 1000; ++m) {
            const auto a = ffml::abm_weights_at_lag(m, theta);
            const auto n = ffml::npm_weights_at_lag(m, theta);
            ASSERT_GT(a.y1, 0) << "theta " << theta << " m " << m;
            ASSERT_GT(a.y2, 0) << "theta " << theta << " m " << m;
            ASSERT_GT(n.psi1, 0) << "theta " << theta << " m " << m;
        }
    }
}

TEST(WeightProperties, Psi1Telescopes) {
    for (const double theta : {0.15, 0.5, 0.85, 1.0}) {
        for (Eigen::Index k : {2, 3, 10, 257, 1000}) {
            double sum = 0;
            for (Eigen::Index l = 2; l <= k; ++l) sum += ffml::npm_weights(k, l, theta).psi1;
            const double expected = std::pow(double(k - 1), theta);
            EXPECT_NEAR(sum / expected, 1.0, 1e-12) << "theta " << theta << " k " << k;
        }
    }
}

TEST(FFOrder, ValidatesRange) {
    EXPECT_NO_THROW(ffml::FFOrder<double>(1.0, 1.0));
    EXPECT_THROW(ffml::FFOrder<double>(0.0, 0.5), DomainError);
    EXPECT_THROW(ffml::FFOrder<double>(0.5, 1.2), DomainError);
}

TEST(GridSpec, NodeCountFloorsWithoutRoundingLoss) {
    EXPECT_EQ(ffml::GridSpec<double>(0.1, 10.0).node_count(), 100);
    EXPECT_EQ(ffml::GridSpec<double>(0.01, 10.0).node_count(), 1000);
    EXPECT_EQ(ffml::GridSpec<double>(0.3, 1.0).node_count(), 3);
    EXPECT_EQ(ffml::GridSpec<double>(0.1, 0.1).node_count(), 1);
    const ffml::GridSpec<double> g(0.07, 2.0);
    EXPECT_LE(g.step() * double(g.node_count()), g.horizon());
    EXPECT_LT(g.horizon(), g.step() * double(g.node_count() + 1));
    EXPECT_THROW(ffml::GridSpec<double>(0.0, 1.0), DomainError);
    EXPECT_THROW(ffml::GridSpec<double>(0.5, 0.1), DomainError);
}

TEST(GaussJacobi, IntegratesBetaMoments) {
    // (1 + x)/2 is Beta(beta + 1, alpha + 1) distributed under the weight.
    const double alpha = -0.3;
    const double beta = -0.45;
    const auto rule = ffml::gauss_jacobi<double>(10, alpha, beta);
    const double mass = rule.weights.sum();
    const double expected_mass = std::pow(2.0, alpha + beta + 1) * std::tgamma(alpha + 1) * std::tgamma(beta + 1)
                               / std::tgamma(alpha + beta + 2);
    EXPECT_NEAR(mass, expected_mass, 1e-13);
    // First moment: E[x] under the Jacobi weight is (beta - alpha)/(alpha + beta + 2).
    const double first = rule.weights.dot(rule.nodes) / mass;
    EXPECT_NEAR(first, (beta - alpha) / (alpha + beta + 2), 1e-13);
}

TEST(GaussJacobi, LegendreReproducesPolynomials) {
    const auto rule = ffml::gauss_jacobi<double>(6, 0.0, 0.0);
    const Eigen::VectorXd x8 = rule.nodes.array().pow(8);
    EXPECT_NEAR(rule.weights.dot(x8), 2.0 / 9.0, 1e-14);
}

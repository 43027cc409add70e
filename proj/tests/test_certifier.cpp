#include <hilfer/certifier.hpp>
#include <hilfer/gamma.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "demo_problems.hpp"

using namespace hilfer;

namespace {

Problem with_nonlin(Problem p, NonlinSpec n) {
    p.nonlin = std::move(n);
    return p;
}

TEST(ClosedForms, LinearStateCoefficientIsExact) {
    auto prob = with_nonlin(demo::sine_demo(),
                            NonlinSpec::linear(0.3 * Eigen::MatrixXd::Identity(2, 2)));
    const auto cert = estimate_constants(prob, Budget{});
    EXPECT_TRUE(cert.delta.proved);
    EXPECT_DOUBLE_EQ(cert.delta.value, 0.3);
    EXPECT_TRUE(cert.zeta2.proved);
    EXPECT_DOUBLE_EQ(cert.zeta2.value, 0.0);
}

TEST(ClosedForms, IdentityDelayBoundIsOne) {
    auto prob = demo::sine_demo();
    prob.delay = DelaySpec::identity();
    const auto cert = estimate_constants(prob, Budget{});
    EXPECT_TRUE(cert.b.proved);
    EXPECT_DOUBLE_EQ(cert.b.value, 1.0);
}

TEST(ClosedForms, AbsentNonlocalTermGivesZeroConstants) {
    auto prob = demo::sine_demo();
    prob.nonlocal = NonlocalSpec::none();
    const auto cert = estimate_constants(prob, Budget{});
    EXPECT_TRUE(cert.lambda.proved);
    EXPECT_DOUBLE_EQ(cert.lambda.value, 0.0);
    EXPECT_DOUBLE_EQ(cert.zeta3.value, 0.0);
}

TEST(ClosedForms, ClassicalScalarFamilyBoundIsOne) {
    auto prob = demo::classical_homogeneous();
    const auto cert = estimate_constants(prob, Budget{});
    EXPECT_TRUE(cert.zeta1.proved);
    EXPECT_DOUBLE_EQ(cert.zeta1.value, 1.0);
}

TEST(ClosedForms, SlopeBoundsForSineAndPolynomialKinds) {
    const auto base = demo::sine_demo();
    {
        const auto cert = estimate_constants(base, Budget{});
        EXPECT_TRUE(cert.delta.proved);
        EXPECT_DOUBLE_EQ(cert.delta.value, 0.275);
    }
    {
        // p(u) = 0.1 + 0.05 u - 0.2 u^2, max |p'| on [-1, 1] sits at u = -1
        auto prob = with_nonlin(base, NonlinSpec::polynomial({0.1, 0.05, -0.2}));
        const auto cert = estimate_constants(prob, Budget{});
        EXPECT_TRUE(cert.delta.proved);
        EXPECT_NEAR(cert.delta.value, 0.45, 1e-13);
        EXPECT_DOUBLE_EQ(cert.zeta2.value, 0.1 * std::sqrt(2.0));
    }
    {
        // cubic term: the endpoint bound is no longer provably the maximum
        auto prob = with_nonlin(base, NonlinSpec::polynomial({0.1, 0.05, -0.2, 0.01}));
        const auto cert = estimate_constants(prob, Budget{});
        EXPECT_FALSE(cert.delta.proved);
    }
    {
        // nontrivial weight: the reachable range exceeds the tested interval
        auto prob = with_nonlin(demo::weighted_demo(),
                                NonlinSpec::polynomial({0.0, 0.05, -0.02}));
        const auto cert = estimate_constants(prob, Budget{});
        EXPECT_FALSE(cert.delta.proved);
    }
}

TEST(Sampling, AgreesWithClosedFormWithinTwoPercent) {
    const Budget budget{10000, 42};
    {
        const auto prob = demo::sine_demo();
        const double sampled = sampled_delta(prob, budget);
        EXPECT_NEAR(sampled, 0.275, 0.02 * 0.275);
        EXPECT_LE(sampled, 0.275 * (1.0 + 1e-12));
    }
    {
        auto prob = with_nonlin(demo::sine_demo(),
                                NonlinSpec::linear(0.3 * Eigen::MatrixXd::Identity(2, 2)));
        EXPECT_NEAR(sampled_delta(prob, budget), 0.3, 0.02 * 0.3);
    }
    {
        auto prob = with_nonlin(demo::sine_demo(),
                                NonlinSpec::polynomial({0.1, 0.05, -0.2}));
        EXPECT_NEAR(sampled_delta(prob, budget), 0.45, 0.02 * 0.45);
    }
}

TEST(Sampling, EstimateIsMonotoneInBudget) {
    const auto prob = with_nonlin(demo::sine_demo(),
                                  NonlinSpec::polynomial({0.1, 0.05, -0.2}));
    const double d100 = sampled_delta(prob, Budget{100, 42});
    const double d1000 = sampled_delta(prob, Budget{1000, 42});
    const double d10000 = sampled_delta(prob, Budget{10000, 42});
    EXPECT_LE(d100, d1000);
    EXPECT_LE(d1000, d10000);

    auto skew = demo::sine_demo();
    skew.gen.A.resize(2, 2);
    skew.gen.A << 1.0, 0.8, 0.0, 1.0;
    const auto coarse = estimate_constants(skew, Budget{200, 42});
    const auto fine = estimate_constants(skew, Budget{2000, 42});
    EXPECT_FALSE(coarse.zeta1.proved);
    EXPECT_LE(coarse.zeta1.value, fine.zeta1.value);
    EXPECT_GE(coarse.zeta1.value, recip_gamma(skew.gamma()) * (1.0 - 1e-12));
}

TEST(Sampling, RejectsTinyBudget) {
    const auto prob = demo::sine_demo();
    EXPECT_THROW(estimate_constants(prob, Budget{99, 42}), BudgetTooSmall);
    EXPECT_THROW(sampled_delta(prob, Budget{50, 42}), BudgetTooSmall);
}

TEST(Certificates, DemoProblemConstantsAndDecision) {
    const auto prob = demo::sine_demo();
    const auto cert = estimate_constants(prob, Budget{});

    EXPECT_TRUE(cert.zeta1.proved);
    EXPECT_DOUBLE_EQ(cert.zeta1.value, 1.0);
    EXPECT_NEAR(cert.lambda.value, 0.05, 1e-16);
    EXPECT_NEAR(cert.delta.value, 0.275, 1e-16);
    EXPECT_DOUBLE_EQ(cert.b.value, 0.5);

    EXPECT_NEAR(cert.q, 0.6, 1e-15);
    EXPECT_NEAR(cert.cond6_lhs, 0.7, 1e-14);
    EXPECT_NEAR(cert.feasible_r, 1.0 / 3.0, 1e-14);
    EXPECT_LE(cert.feasible_r, cert.r);

    // the reported q must be reproducible from the reported constants alone
    const double recomputed = cert.zeta1.value * cert.lambda.value +
                              cert.zeta1.value * cert.delta.value * cert.horizon /
                                  cert.b.value;
    EXPECT_DOUBLE_EQ(cert.q, recomputed);
    // unit radius makes the ball bound coincide with the Lipschitz constant,
    // so both reported contraction forms agree here
    EXPECT_DOUBLE_EQ(cert.q_proof_form, cert.q);

    const auto rep = check_conditions(cert, cert.r);
    EXPECT_TRUE(rep.overall);
    EXPECT_NEAR(rep.margin, 0.3, 1e-14);
    for (bool p : rep.passes) EXPECT_TRUE(p);
    EXPECT_EQ(cert.passes, rep.passes);
}

TEST(Certificates, WeightedDemoPasses) {
    const auto prob = demo::weighted_demo();
    const auto cert = estimate_constants(prob, Budget{});
    EXPECT_TRUE(cert.zeta1.proved);
    EXPECT_DOUBLE_EQ(cert.zeta1.value, recip_gamma(0.75));
    EXPECT_LT(cert.q, 1.0);
    EXPECT_LE(cert.cond6_lhs, cert.r);
    EXPECT_TRUE(check_conditions(cert, cert.r).overall);
}

TEST(Certificates, RadiusSweepTracksInvariance) {
    const auto cert = estimate_constants(demo::sine_demo(), Budget{});
    const auto tight = check_conditions(cert, 0.1);
    EXPECT_FALSE(tight.passes[5]);
    EXPECT_LT(tight.margin, 0.0);
    EXPECT_NE(tight.messages[5].find("invariance"), std::string::npos);

    const auto at_threshold =
        check_conditions(cert, cert.feasible_r * (1.0 + 1e-12));
    EXPECT_TRUE(at_threshold.passes[5]);
    EXPECT_GE(at_threshold.margin, 0.0);
}

TEST(Certificates, LagDelayFailsPositivityCondition) {
    auto prob = demo::sine_demo();
    prob.delay = DelaySpec::lag(0.3);
    const auto cert = estimate_constants(prob, Budget{});
    EXPECT_DOUBLE_EQ(cert.b.value, 0.0);
    EXPECT_FALSE(cert.passes[1]);
    EXPECT_FALSE(cert.passes[5]);
    EXPECT_TRUE(std::isinf(cert.q));

    const auto rep = check_conditions(cert, cert.r);
    EXPECT_FALSE(rep.overall);
    EXPECT_NE(rep.messages[1].find("fails to be positive"), std::string::npos);
}

TEST(Certificates, SupercriticalContractionNamesTheConstant) {
    auto prob = with_nonlin(demo::sine_demo(), NonlinSpec::sine(2.0));
    prob.delay = DelaySpec::identity();
    const auto cert = estimate_constants(prob, Budget{});
    // q = 1 * 0.05 + 1 * 2.0 * 1 / 1 = 2.05
    EXPECT_NEAR(cert.q, 2.05, 1e-14);
    EXPECT_FALSE(cert.passes[5]);

    const auto rep = check_conditions(cert, cert.r);
    EXPECT_FALSE(rep.overall);
    EXPECT_NE(rep.messages[5].find("contraction constant q"), std::string::npos);
}

}  // namespace

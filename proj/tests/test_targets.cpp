#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace lowdisc;

TEST(NormalCdf, KnownValues) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_cdf(8.0), 1.0, 1e-15);
  EXPECT_NEAR(normal_cdf(1.0), 0.841344746068543, 1e-15);
}

TEST(NormalCdf, MatchesQuadratureOfDensity) {
  for (double x : {-3.0, -0.7, 0.4, 1.0, 2.5}) {
    const double q = integrate([](double t) { return normal_pdf(t); }, -12.0, x, {}, 1e-14);
    EXPECT_NEAR(normal_cdf(x), q, 1e-14) << x;
  }
}

TEST(NormalQuantile, KnownValues) {
  EXPECT_DOUBLE_EQ(normal_quantile(0.5), 0.0);
  EXPECT_NEAR(normal_quantile(0.841344746068543), 1.0, 1e-9);
  EXPECT_NEAR(normal_quantile(1.0 / 100.0), -2.3263478740408408, 1e-12);
  EXPECT_NEAR(normal_quantile(0.975), 1.959963984540054, 1e-12);
  EXPECT_NEAR(normal_quantile(1e-15), -7.941345326170998, 1e-10);
}

TEST(NormalQuantile, RejectsOutsideOpenInterval) {
  for (double p : {0.0, 1.0, -0.1, 1.5, std::nan("")}) EXPECT_THROW((void)normal_quantile(p), DomainError);
}

TEST(NormalQuantile, RoundTripAndSymmetry) {
  for (int k = 0; k < 10000; ++k) {
    const double p = 1e-9 + (1.0 - 2e-9) * k / 9999.0;
    EXPECT_NEAR(normal_cdf(normal_quantile(p)), p, 1e-12) << p;
  }
  for (double p = 1e-3; p < 0.999; p += 1e-3)
    EXPECT_NEAR(normal_quantile(p), -normal_quantile(1.0 - p), 1e-12) << p;
}

TEST(NormalH, Values) {
  EXPECT_DOUBLE_EQ(normal_h(0.0), 0.0);
  EXPECT_NEAR(normal_h(100.0), kInvSqrt2Pi, 1e-12);
  for (double x : {-2.0, -0.3, 1.0, 3.7}) {
    const double q = integrate([x](double t) { return ktilde_origin(t, x) * normal_pdf(t); }, -8.0,
                               8.0, {0.0, x}, 1e-14);
    EXPECT_NEAR(normal_h(x), q, 1e-13) << x;
  }
}

TEST(NormalH, EvenAndBounded) {
  for (double x = 0.0; x < 10.0; x += 0.37) {
    EXPECT_DOUBLE_EQ(normal_h(x), normal_h(-x));
    EXPECT_GE(normal_h(x), 0.0);
    EXPECT_LE(normal_h(x), kInvSqrt2Pi + 1e-15);
  }
}

TEST(UniformCenteredH, Values) {
  EXPECT_DOUBLE_EQ(uniform_centered_h(0.5), 0.0);
  // at the boundary |u - 1/2| = 1/2, so h = (1/2)(1/2 - 1/4) = 1/8, its maximum
  EXPECT_NEAR(uniform_centered_h(1e-15), 0.125, 1e-14);
  EXPECT_NEAR(uniform_centered_h(1.0 - 1e-15), 0.125, 1e-14);
  for (double u = 0.01; u < 1.0; u += 0.01) EXPECT_LE(uniform_centered_h(u), 0.125);
  EXPECT_DOUBLE_EQ(uniform_centered_h(0.25), 0.09375);
  EXPECT_THROW((void)uniform_centered_h(0.0), DomainError);
  EXPECT_THROW((void)uniform_centered_h(1.0), DomainError);
  for (double u : {0.1, 0.25, 0.6, 0.93}) {
    const KernelSpec k(KernelBase::CenteredL2);
    const double q =
        integrate([&](double v) { return k.ktilde(v, u); }, 0.0, 1.0, {0.5, u}, 1e-14);
    EXPECT_NEAR(uniform_centered_h(u), q, 1e-14) << u;
  }
}

TEST(TargetSpec, ConstantIsMeanOfH) {
  const double normal = integrate([](double x) { return normal_h(x) * normal_pdf(x); }, -8.0, 8.0,
                                  {0.0}, 1e-14);
  EXPECT_NEAR(TargetSpec::standard_normal(1).c(), normal, 1e-13);
  EXPECT_NEAR(kNormalOriginC, std::sqrt(2.0 / std::numbers::pi) - 1.0 / std::sqrt(std::numbers::pi),
              1e-16);
  const double unit = integrate([](double u) { return uniform_centered_h(u); }, 1e-300, 1.0, {0.5}, 1e-14);
  EXPECT_NEAR(TargetSpec::unit_uniform(1).c(), unit, 1e-14);
  EXPECT_NEAR(1.0 + unit, 13.0 / 12.0, 1e-14);
}

TEST(TargetSpec, DomainsAndQuantiles) {
  EXPECT_THROW(TargetSpec(TargetKind::UnitUniform, 0), ContractViolation);
  const auto c = TargetSpec::centered_uniform(2);
  EXPECT_EQ(c.domain(), Domain::CenteredCube);
  EXPECT_DOUBLE_EQ(c.quantile(0.75), 0.25);
  EXPECT_DOUBLE_EQ(c.h(0.0), 0.0);
  EXPECT_FALSE(c.in_support(0.5));
  const auto n = TargetSpec::standard_normal(3);
  EXPECT_TRUE(n.in_support(-40.0));
  EXPECT_FALSE(n.in_support(INFINITY));
  EXPECT_THROW((void)n.quantile(0.0), DomainError);
  EXPECT_DOUBLE_EQ(TargetSpec::unit_uniform(1).cdf(0.3), 0.3);
}

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support.hpp"

using namespace lowdisc;

TEST(Integrand, ZeroAndRadialSymmetry) {
  const std::vector<double> zero(10, 0.0);
  EXPECT_DOUBLE_EQ(integrand_example(zero), 0.0);
  const std::vector<double> a{1.0, -2.0, 0.5}, b{-0.5, 1.0, 2.0};
  EXPECT_DOUBLE_EQ(integrand_example(a), integrand_example(b));
  const std::vector<double> huge{1e6, 1e6};
  EXPECT_LT(integrand_example(huge), 1e8);
}

TEST(ReferenceMu, HighPrecisionValues) {
  // E[s / (1 + 1e-8 s)], s ~ chi-square(d), from 30-digit mpmath quadrature
  EXPECT_NEAR(reference_mu(10), 9.99999880000017, 1e-12);
  EXPECT_NEAR(reference_mu(1), 0.9999999700000014, 1e-13);
}

TEST(ReferenceMu, UndampedGivesTheDimension) {
  for (std::size_t d : {1U, 2U, 5U, 10U, 30U}) EXPECT_NEAR(reference_mu(d, 0.0), static_cast<double>(d), 1e-11 * d);
  EXPECT_THROW((void)reference_mu(0), ContractViolation);
}

TEST(ReferenceMu, AgreesWithMonteCarlo) {
  std::mt19937_64 rng(61);
  std::normal_distribution<double> z;
  const int m = 1000000;
  double s = 0.0, s2 = 0.0;
  for (int k = 0; k < m; ++k) {
    const double x = z(rng);
    const double f = integrand_example(std::span<const double>(&x, 1));
    s += f;
    s2 += f * f;
  }
  const double mean = s / m, sd = std::sqrt((s2 / m - mean * mean) / m);
  EXPECT_LE(std::abs(mean - reference_mu(1)), 4.0 * sd);
}

TEST(Cubature, EstimateOfSinglePoint) {
  const Design x(1, 3, {0.0, 0.0, 0.0}, Domain::RealSpace);
  EXPECT_DOUBLE_EQ(cubature_estimate(x), 0.0);
}

TEST(Cubature, ExampleOrdering) {
  const auto ex = run_cubature_example(2024);
  EXPECT_EQ(ex.first.size(), 512U);
  EXPECT_EQ(ex.first.dimension(), 10U);
  for (std::size_t j = 0; j < 10; ++j) EXPECT_DOUBLE_EQ(ex.second(ex.moved_index, j), 1e-15);
  const auto& a = ex.first_result;
  const auto& b = ex.second_result;
  EXPECT_GE(a.relative_error, 0.0);
  EXPECT_LT(std::abs(a.discrepancy_uniform - b.discrepancy_uniform), 0.1 * a.discrepancy_uniform);
  EXPECT_GE(b.discrepancy_normal, 2.0 * a.discrepancy_normal);
  EXPECT_GE(b.relative_error, 10.0 * a.relative_error);
  EXPECT_LE(a.relative_error, 0.01);
  EXPECT_NEAR(a.discrepancy_normal, make_report(discrepancy_sq_normal_closed(transform_to_target(
                                                    ex.first, TargetSpec::standard_normal(10))))
                                        .value,
              1e-12);
}

TEST(Cubature, ClosestRules) {
  const Design u(3, 2, {0.45, 0.52, 0.9, 0.1, 0.6, 0.6}, Domain::UnitCube);
  EXPECT_EQ(closest_point(u, ClosestRule::PreTransformCenter), 0U);
  EXPECT_EQ(closest_point(u, ClosestRule::PostTransformOrigin), 0U);
}

TEST(Correlation, PearsonAndDegenerateFlag) {
  const std::vector<double> x{1, 2, 3, 4}, y{2, 4, 6, 8.5}, flat{3, 3, 3, 3};
  bool degenerate = true;
  EXPECT_GT(pearson(x, y, &degenerate), 0.99);
  EXPECT_FALSE(degenerate);
  EXPECT_TRUE(std::isnan(pearson(x, flat, &degenerate)));
  EXPECT_TRUE(degenerate);

  // Two identical designs: both discrepancy samples are constant.
  StudyConfig config{StudyKind::Correlation, {2}, {10}, 2, 0};
  const auto a = generate_rand(10, 2, 1);
  std::vector<double> du{discrepancy_sq_centered_l2(a), discrepancy_sq_centered_l2(a)};
  std::vector<double> dn{1.0, 2.0};
  EXPECT_TRUE(std::isnan(pearson(du, dn, &degenerate)));
  EXPECT_TRUE(degenerate);
  EXPECT_NO_THROW(config.validate());
}

TEST(Correlation, SmallStudyIsPositive) {
  StudyConfig config{StudyKind::Correlation, {1, 3}, {50}, 100, 7};
  const auto rows = run_correlation_study(config);
  ASSERT_EQ(rows.size(), 2U);
  for (const auto& r : rows) {
    EXPECT_FALSE(r.degenerate);
    EXPECT_GT(r.correlation, 0.0);
  }
  const auto again = run_correlation_study(config);
  EXPECT_EQ(again[1].correlation, rows[1].correlation);
}

TEST(Compare, SmallStudyRowsAndSpotChecks) {
  StudyConfig config{StudyKind::Compare, {2}, {16}, 3, 5};
  const auto rows = run_compare_study(config);
  ASSERT_EQ(rows.size(), 12U);
  for (std::size_t k = 0; k < rows.size(); k += 4) {
    EXPECT_EQ(rows[k].family, Family::Rand);
    EXPECT_EQ(rows[k + 3].family, Family::CE);
    EXPECT_LE(rows[k + 3].discrepancy, rows[k + 2].discrepancy + 1e-15);
    EXPECT_DOUBLE_EQ(rows[k + 3].start_discrepancy, rows[k + 2].discrepancy);
    EXPECT_TRUE(rows[k + 3].monotone);
  }
  const auto again = run_compare_study(config);
  for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_EQ(again[k].discrepancy, rows[k].discrepancy);

  const std::uint64_t s = derive_seed(derive_seed(5, 2 * 100003 + 16), 0);
  const auto rand = transform_to_target(generate_rand(16, 2, s), TargetSpec::standard_normal(2));
  EXPECT_NEAR(rows[0].discrepancy,
              discrepancy(rand, TargetSpec::standard_normal(2), KernelSpec()).value, 1e-12);
}

TEST(StudyConfig, Validation) {
  EXPECT_THROW((StudyConfig{StudyKind::Compare, {2, 3}, {16}, 3, 0}.validate()), ContractViolation);
  EXPECT_THROW((StudyConfig{StudyKind::Compare, {2}, {16}, 0, 0}.validate()), ContractViolation);
  EXPECT_THROW((StudyConfig{StudyKind::Correlation, {}, {16}, 3, 0}.validate()), ContractViolation);
  EXPECT_EQ(StudyConfig::compare_defaults().replicates, 500U);
}

TEST(Appendix, SingleIntegralAtZeroIsOne) {
  EXPECT_NEAR(detail::kernel_against_normal(0.0), 1.0, 1e-14);
}

TEST(Appendix, QuadratureAgreesWithTheCorrectedConstant) {
  for (std::size_t d : {1U, 2U}) {
    const auto rep = verify_appendix(d);
    EXPECT_TRUE(rep.single_ok) << rep.max_single_error;
    EXPECT_TRUE(rep.double_closed_ok) << rep.double_integral;
    EXPECT_NEAR(rep.double_closed, std::pow(1.2336949772551091, static_cast<double>(d)), 1e-14);
  }
  EXPECT_THROW((void)verify_appendix(3), ContractViolation);
}

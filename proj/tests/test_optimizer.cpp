#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "support.hpp"

using namespace lowdisc;
using lowdisc::oracle::pick;
using lowdisc::oracle::random_normal;
using lowdisc::oracle::rel_err;

namespace {

const KernelSpec kOrigin{KernelBase::OriginAnchored};

double replaced_squared(Design x, std::size_t i, std::size_t j, double v) {
  x.set(i, j, v);
  return discrepancy_sq_generic(x, TargetSpec::standard_normal(x.dimension()), kOrigin);
}

Design esobol_normal(std::size_t n, std::size_t d, std::uint64_t seed) {
  return transform_to_target(generate_uniform({GeneratorKind::ESobol, n, d, seed, std::nullopt}),
                             TargetSpec::standard_normal(d));
}

}  // namespace

TEST(Delta, ZeroAtCurrentValue) {
  std::mt19937_64 rng(41);
  const auto x = random_normal(rng, 6, 3);
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_NEAR(delta_full(x, TargetSpec::standard_normal(3), kOrigin, i, j, x(i, j)), 0.0, 1e-15);
}

TEST(Delta, MatchesFullRecomputation) {
  std::mt19937_64 rng(42);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t d = pick(rng, 1, 3), n = pick(rng, 1, 8);
    const auto x = random_normal(rng, n, d);
    const auto t = TargetSpec::standard_normal(d);
    const std::size_t i = pick(rng, 0, n - 1), j = pick(rng, 0, d - 1);
    const double full = discrepancy_sq_generic(x, t, kOrigin);
    for (int k = 0; k < 5; ++k) {
      const double v = 2.0 * z(rng);
      const double expected = full - replaced_squared(x, i, j, v);
      const double got = delta_full(x, t, kOrigin, i, j, v);
      EXPECT_LE(std::abs(got - expected), 1e-9 * std::max(std::abs(expected), full));
      const ProductModel model(t, kOrigin);
      const ExchangeContext ctx(model, x, i, j);
      EXPECT_LE(std::abs(ctx.delta(v) - expected), 1e-9 * std::max(std::abs(expected), full));
    }
  }
}

TEST(Delta, ReducedObjectiveIsAffineInDelta) {
  std::mt19937_64 rng(43);
  std::normal_distribution<double> z;
  for (int rep = 0; rep < 20; ++rep) {
    const std::size_t d = pick(rng, 2, 3), n = pick(rng, 2, 8);
    const auto x = random_normal(rng, n, d);
    const auto t = TargetSpec::standard_normal(d);
    const ProductModel model(t, kOrigin);
    const std::size_t i = pick(rng, 0, n - 1), j = pick(rng, 0, d - 1);
    const ExchangeContext ctx(model, x, i, j);
    const double base = ctx.reduced(x(i, j));
    for (int k = 0; k < 20; ++k) {
      const double v = 2.0 * z(rng);
      const double lhs = (ctx.reduced(v) - base) / static_cast<double>(n);
      const double rhs = delta_full(x, t, kOrigin, i, j, v);
      EXPECT_LE(std::abs(lhs - rhs), 1e-9 * std::max(std::abs(rhs), 1e-3));
    }
  }
}

TEST(Delta, SinglePointDesign) {
  const Design x(1, 1, {0.7}, Domain::RealSpace);
  const auto t = TargetSpec::standard_normal(1);
  for (double v : {-1.0, 0.0, 0.3, 2.0}) {
    const Design y(1, 1, {v}, Domain::RealSpace);
    EXPECT_NEAR(delta_full(x, t, kOrigin, 0, 0, v),
                discrepancy_sq_generic(x, t, kOrigin) - discrepancy_sq_generic(y, t, kOrigin), 1e-14);
  }
  EXPECT_THROW((void)delta_full(x, t, kOrigin, 0, 0, INFINITY), DomainError);
  EXPECT_THROW((void)delta_full(x, t, kOrigin, 1, 0, 0.0), ContractViolation);
}

TEST(Delta, UniformTargetsToo) {
  std::mt19937_64 rng(44);
  const auto u = oracle::random_unit(rng, 6, 2);
  const auto t = TargetSpec::unit_uniform(2);
  const KernelSpec k(KernelBase::CenteredL2);
  auto y = u;
  y.set(2, 1, 0.123);
  EXPECT_NEAR(delta_full(u, t, k, 2, 1, 0.123),
              discrepancy_sq_generic(u, t, k) - discrepancy_sq_generic(y, t, k), 1e-14);
}

TEST(MaximizeDelta, FindsTheBestGridValue) {
  std::mt19937_64 rng(45);
  const auto x = random_normal(rng, 8, 2);
  const auto t = TargetSpec::standard_normal(2);
  const ProductModel model(t, kOrigin);
  const ExchangeContext ctx(model, x, 3, 1);
  const auto best = maximize_delta(ctx, model, x, {});
  const auto [lo, hi] = search_interval(model, x, 1, {});
  EXPECT_GE(best.x, lo);
  EXPECT_LE(best.x, hi);
  EXPECT_GE(best.delta, 0.0);
  for (int k = 0; k <= 2000; ++k) {
    const double v = lo + (hi - lo) * k / 2000.0;
    EXPECT_LE(ctx.delta_closed(v), best.delta + 1e-12);
  }
}

TEST(MaximizeDelta, FlatObjectiveStillTerminates) {
  const Design x(4, 2, {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}, Domain::RealSpace);
  ExchangeConfig config;
  config.max_iters = 50;
  const auto r = coordinate_exchange(x, TargetSpec::standard_normal(2), kOrigin, config);
  EXPECT_LE(r.trace.steps.size(), 50U);
}

TEST(CoordinateExchange, MonotoneDescentAndDeterminism) {
  std::mt19937_64 rng(46);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t d = pick(rng, 2, 3), n = pick(rng, 2, 8);
    const auto x = random_normal(rng, n, d);
    const auto t = TargetSpec::standard_normal(d);
    ExchangeConfig config;
    config.max_iters = 30;
    const auto r = coordinate_exchange(x, t, kOrigin, config);
    EXPECT_LE(r.trace.steps.size(), config.max_iters);
    double prev = r.trace.initial_discrepancy;
    EXPECT_NEAR(prev, std::sqrt(discrepancy_sq_generic(x, t, kOrigin)), 1e-12);
    auto y = x;
    for (const auto& s : r.trace.steps) {
      EXPECT_GT(s.delta, config.tol);
      EXPECT_LE(s.discrepancy_after, prev);
      const double before = discrepancy_sq_generic(y, t, kOrigin);
      EXPECT_DOUBLE_EQ(y(s.i, s.j), s.old_coord);
      y.set(s.i, s.j, s.new_coord);
      const double after = discrepancy_sq_generic(y, t, kOrigin);
      EXPECT_LE(std::abs((before - after) - s.delta), 1e-9 * std::max(s.delta, before));
      EXPECT_NEAR(s.discrepancy_after, std::sqrt(after), 1e-12);
      prev = s.discrepancy_after;
    }
    EXPECT_EQ(y, r.design);
    EXPECT_NEAR(r.trace.final_discrepancy, std::sqrt(discrepancy_sq_generic(r.design, t, kOrigin)), 1e-12);
    const auto again = coordinate_exchange(x, t, kOrigin, config);
    EXPECT_EQ(again.design, r.design);
    EXPECT_EQ(again.trace.steps.size(), r.trace.steps.size());
  }
}

TEST(CoordinateExchange, PicksArgmaxOfDeletionScores) {
  std::mt19937_64 rng(47);
  const auto x = random_normal(rng, 8, 3);
  const auto t = TargetSpec::standard_normal(3);
  ExchangeConfig config;
  config.max_iters = 1;
  const auto r = coordinate_exchange(x, t, kOrigin, config);
  ASSERT_EQ(r.trace.steps.size(), 1U);
  const auto dp = point_deletion_scores(x, t, kOrigin);
  const auto dc = coord_deletion_scores(x, t, kOrigin);
  EXPECT_EQ(r.trace.steps[0].i, static_cast<std::size_t>(std::max_element(dp.begin(), dp.end()) - dp.begin()));
  EXPECT_EQ(r.trace.steps[0].j, static_cast<std::size_t>(std::max_element(dc.begin(), dc.end()) - dc.begin()));
  EXPECT_EQ(r.trace.terminated_by, Termination::MaxIters);
}

TEST(CoordinateExchange, LocalOptimumGivesNoSteps) {
  const auto x = esobol_normal(32, 2, 1);
  const auto t = TargetSpec::standard_normal(2);
  const auto first = coordinate_exchange(x, t, kOrigin);
  ASSERT_EQ(first.trace.terminated_by, Termination::Tol);
  const auto second = coordinate_exchange(first.design, t, kOrigin);
  EXPECT_TRUE(second.trace.steps.empty());
  EXPECT_EQ(second.trace.terminated_by, Termination::Tol);
  EXPECT_EQ(second.design, first.design);
}

TEST(CoordinateExchange, SmallCaseConvergesQuickly) {
  const auto t = TargetSpec::standard_normal(2);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto r = coordinate_exchange(esobol_normal(32, 2, seed), t, kOrigin);
    EXPECT_EQ(r.trace.terminated_by, Termination::Tol);
    EXPECT_LE(r.trace.steps.size(), 20U);
    EXPECT_LE(r.trace.final_discrepancy, r.trace.initial_discrepancy);
  }
}

TEST(CoordinateExchange, Contracts) {
  const auto t = TargetSpec::standard_normal(2);
  const Design one(1, 2, {0.0, 0.0}, Domain::RealSpace);
  EXPECT_THROW((void)coordinate_exchange(one, t, kOrigin), ContractViolation);
  const Design col(2, 1, {0.0, 1.0}, Domain::RealSpace);
  EXPECT_THROW((void)coordinate_exchange(col, TargetSpec::standard_normal(1), kOrigin), ContractViolation);
  ExchangeConfig bad;
  bad.tol = 0.0;
  EXPECT_THROW(bad.validate(), ContractViolation);
  bad = {};
  bad.max_iters = 0;
  EXPECT_THROW(bad.validate(), ContractViolation);
}

TEST(MultiStart, KeepsTheBestStart) {
  const auto t = TargetSpec::standard_normal(2);
  std::mt19937_64 rng(48);
  std::vector<Design> starts{random_normal(rng, 16, 2), esobol_normal(16, 2, 3), random_normal(rng, 16, 2)};
  ExchangeConfig config;
  config.max_iters = 10;
  const auto [best, index] = multistart_exchange(starts, t, kOrigin, config);
  for (const auto& s : starts)
    EXPECT_LE(best.trace.final_discrepancy,
              coordinate_exchange(s, t, kOrigin, config).trace.final_discrepancy);
  EXPECT_LT(index, starts.size());
  EXPECT_THROW((void)multistart_exchange({}, t, kOrigin), ContractViolation);
}

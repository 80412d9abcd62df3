#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "swinf/distributions.hpp"
#include "swinf/error.hpp"
#include "swinf/inference.hpp"
#include "swinf/normal.hpp"

namespace swinf {
namespace {

constexpr double kZ975 = 1.95996398454005385560;

TEST(EffectiveRate, Definition) {
  // n = m = 8 gives r = 4; k = 4 gives k r / (k + r) = 2.
  EXPECT_DOUBLE_EQ(effective_rate(8, 8, 4), std::sqrt(2.0));
  EXPECT_THROW(effective_rate(0, 8, 4), InvalidArgument);
}

TEST(TestStatistic, Examples) {
  EXPECT_EQ(test_statistic(1.3, 1.3, 10, 10, 10, 2.0), 0.0);
  // k r / (k + r) = 4 with n = m = 16 (r = 8), k = 8.
  EXPECT_DOUBLE_EQ(test_statistic(1.0 + 0.5, 1.0, 16, 16, 8, 0.25), 2.0);
  EXPECT_THROW(test_statistic(1.0, 0.0, 10, 10, 10, 0.0), DegenerateVariance);
}

TEST(PValue, Examples) {
  EXPECT_EQ(two_sided_pvalue(0.0), 1.0);
  EXPECT_NEAR(two_sided_pvalue(kZ975), 0.05, 1e-12);
  EXPECT_NEAR(two_sided_pvalue(3.0), 0.0026997960632601890533, 1e-15);
  EXPECT_THROW(two_sided_pvalue(INFINITY), InvalidArgument);
}

TEST(PValue, EvenAndDecreasing) {
  double prev = 1.0;
  for (double t = 0.05; t < 8.0; t += 0.05) {
    const double p = two_sided_pvalue(t);
    EXPECT_EQ(p, two_sided_pvalue(-t));
    EXPECT_LT(p, prev);
    prev = p;
  }
}

TEST(ConfidenceInterval, Examples) {
  const auto degenerate = confidence_interval(0.7, 10, 10, 10, 0.0, 0.95);
  EXPECT_EQ(degenerate.low, 0.7);
  EXPECT_EQ(degenerate.high, 0.7);
  // n = m = 4, k = 2: r = 2, k r / (k + r) = 1.
  const auto ci = confidence_interval(3.0, 4, 4, 2, 1.0, 0.95);
  EXPECT_NEAR(ci.low, 3.0 - 1.959964, 1e-5);
  EXPECT_NEAR(ci.high, 3.0 + 1.959964, 1e-5);
  EXPECT_THROW(confidence_interval(0.0, 4, 4, 2, 1.0, 1.0), InvalidArgument);
  EXPECT_THROW(confidence_interval(0.0, 4, 4, 2, -1.0, 0.9), InvalidArgument);
}

TEST(ConfidenceInterval, WidensWithLevel) {
  double prev_width = 0.0;
  for (double level : {0.5, 0.8, 0.9, 0.95, 0.99, 0.999}) {
    const auto ci = confidence_interval(1.0, 300, 200, 100, 0.7, level);
    EXPECT_GT(ci.high - ci.low, prev_width);
    prev_width = ci.high - ci.low;
  }
}

TEST(ConfidenceInterval, DualToTheTest) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int trial = 0; trial < 2000; ++trial) {
    const double est = u(rng), var = 0.1 + u(rng), delta = u(rng);
    const double level = 0.5 + 0.49 * u(rng) / 3.0;
    const auto ci = confidence_interval(est, 500, 300, 400, var, level);
    const double p = two_sided_pvalue(test_statistic(est, delta, 500, 300, 400, var));
    const bool inside = ci.low < delta && delta < ci.high;
    if (std::abs(p - (1.0 - level)) > 1e-12) EXPECT_EQ(inside, p > 1.0 - level);
  }
}

class InferTest : public ::testing::Test {
 protected:
  SampleMatrix x = sample_gaussian({{0.0, 0.0, 0.0}, 1.0}, 300, 1, 0);
  SampleMatrix y = sample_gaussian({{1.0, 0.0, 0.0}, 1.0}, 200, 1, 1);
};

TEST_F(InferTest, ReportIsConsistent) {
  const auto dirs = sample_directions(3, 100, 1, 2);
  InferenceOptions opts;
  opts.delta = 0.25;
  const auto rep = infer(x, y, dirs, 2.0, opts);
  ASSERT_TRUE(rep.statistic.has_value());
  EXPECT_LE(rep.ci_low, rep.estimate);
  EXPECT_GE(rep.ci_high, rep.estimate);
  EXPECT_DOUBLE_EQ(*rep.statistic, rep.effective_rate * (rep.estimate - rep.delta) /
                                       std::sqrt(rep.variance.combined));
  EXPECT_DOUBLE_EQ(*rep.p_value, two_sided_pvalue(*rep.statistic));
  EXPECT_EQ(rep.reject(), std::abs(*rep.statistic) > kZ975);
  EXPECT_GT(rep.variance.v_hat_pq_sq, 0.0);
  EXPECT_GT(rep.variance.v_hat_qp_sq, 0.0);
  EXPECT_FALSE(rep.w_only);
}

TEST_F(InferTest, NullAtEstimateGivesZeroStatistic) {
  const auto dirs = sample_directions(3, 50, 2, 2);
  const auto first = infer(x, y, dirs, 2.0, {});
  InferenceOptions opts;
  opts.delta = first.estimate;
  const auto rep = infer(x, y, dirs, 2.0, opts);
  EXPECT_EQ(*rep.statistic, 0.0);
  EXPECT_EQ(*rep.p_value, 1.0);
}

TEST_F(InferTest, OtherPRequiresOptInAndFewDirections) {
  InferenceOptions opts;
  EXPECT_THROW(infer(x, y, sample_directions(3, 10, 1, 2), 3.0, opts), Unsupported);
  opts.allow_w_only = true;
  // r = 120, so k must be at most 12.
  EXPECT_THROW(infer(x, y, sample_directions(3, 13, 1, 2), 3.0, opts), Unsupported);
  const auto rep = infer(x, y, sample_directions(3, 12, 1, 2), 3.0, opts);
  EXPECT_TRUE(rep.w_only);
  EXPECT_EQ(rep.variance.combined, rep.variance.w_hat_sq);
}

TEST_F(InferTest, IdenticalOneDimensionalSamplesAreDegenerate) {
  const auto line = sample_gaussian({{0.0}, 1.0}, 50, 3, 0);
  // With d = 1 every direction yields the same zero distance, so w^2 = 0;
  // v^2 is still positive because of the discrete potential.
  const auto rep = infer(line, line, sample_directions(1, 4, 1, 2), 2.0, {});
  EXPECT_EQ(rep.estimate, 0.0);
  EXPECT_EQ(rep.variance.w_hat_sq, 0.0);
  EXPECT_LE(rep.ci_low, 0.0);
  EXPECT_GE(rep.ci_high, 0.0);
}

}  // namespace
}  // namespace swinf

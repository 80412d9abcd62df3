#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "swinf/distributions.hpp"
#include "swinf/error.hpp"
#include "swinf/estimators.hpp"
#include "swinf/inference.hpp"
#include "swinf/parallel.hpp"
#include "test_support.hpp"

namespace swinf {
namespace {

SampleMatrix random_matrix(std::mt19937_64& rng, std::size_t n, std::size_t d, double shift = 0.0) {
  std::normal_distribution<double> z;
  std::vector<double> data(n * d);
  for (auto& v : data) v = z(rng) + shift;
  return SampleMatrix(n, d, data);
}

SlicedEstimate with_values(std::vector<double> v) {
  SlicedEstimate est;
  est.per_direction = std::move(v);
  est.k = est.per_direction.size();
  est.sw_pp = mean(est.per_direction);
  return est;
}

TEST(SlicedEstimate, IdenticalSamplesGiveZero) {
  std::mt19937_64 rng(1);
  const auto x = random_matrix(rng, 60, 4);
  const auto dirs = sample_directions(4, 30, 2, 0);
  for (double p : {1.5, 2.0, 3.0}) {
    const auto est = sliced_estimate(x, x, dirs, p);
    EXPECT_EQ(est.sw_pp, 0.0);
    for (double w : est.per_direction) EXPECT_EQ(w, 0.0);
  }
}

TEST(SlicedEstimate, OneDimensionIgnoresDirections) {
  std::mt19937_64 rng(2);
  const auto x = random_matrix(rng, 37, 1);
  const auto y = random_matrix(rng, 23, 1, 0.7);
  std::vector<double> xs(x.data().begin(), x.data().end()), ys(y.data().begin(), y.data().end());
  const double want = testing::dense_wasserstein_pp(testing::sorted(xs), testing::sorted(ys), 2.5);
  for (std::size_t k : {1u, 2u, 9u}) {
    const auto est = sliced_estimate(x, y, sample_directions(1, k, 5, 0), 2.5);
    EXPECT_NEAR(est.sw_pp, want, 1e-12 * want);
  }
}

TEST(SlicedEstimate, MeanOfPerDirectionValues) {
  std::mt19937_64 rng(3);
  const auto x = random_matrix(rng, 40, 3);
  const auto y = random_matrix(rng, 45, 3, 0.5);
  const auto est = sliced_estimate(x, y, sample_directions(3, 25, 1, 0), 2.0);
  ASSERT_EQ(est.per_direction.size(), 25u);
  double naive = 0.0;
  for (double w : est.per_direction) {
    EXPECT_GE(w, 0.0);
    naive += w;
  }
  EXPECT_NEAR(est.sw_pp, naive / 25.0, 1e-12);
  EXPECT_EQ(est.n, 40u);
  EXPECT_EQ(est.m, 45u);
  EXPECT_EQ(est.k, 25u);
}

TEST(SlicedEstimate, RowPermutationInvariant) {
  std::mt19937_64 rng(4);
  const auto x = random_matrix(rng, 30, 3);
  const auto y = random_matrix(rng, 20, 3, 1.0);
  std::vector<std::size_t> order(30);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<double> shuffled;
  for (auto i : order) shuffled.insert(shuffled.end(), x.row(i).begin(), x.row(i).end());
  const SampleMatrix xp(30, 3, shuffled);
  const auto dirs = sample_directions(3, 12, 8, 0);
  const auto a = sliced_estimate(x, y, dirs, 2.0);
  const auto b = sliced_estimate(xp, y, dirs, 2.0);
  EXPECT_EQ(a.per_direction, b.per_direction);
}

TEST(SlicedEstimate, RejectsBadInput) {
  std::mt19937_64 rng(5);
  const auto x = random_matrix(rng, 10, 3);
  const auto y = random_matrix(rng, 10, 2);
  EXPECT_THROW(sliced_estimate(x, y, sample_directions(3, 4, 1, 0), 2.0), InvalidArgument);
  EXPECT_THROW(sliced_estimate(x, x, sample_directions(2, 4, 1, 0), 2.0), InvalidArgument);
  EXPECT_THROW(sliced_estimate(x, x, sample_directions(3, 4, 1, 0), 1.0), InvalidArgument);
}

TEST(SlicedEstimate, GaussianMeanShiftMatchesAnalyticValue) {
  const std::size_t d = 4;
  const double shift = 1.5;
  GaussianSpec p{std::vector<double>(d, 0.0), 1.0};
  GaussianSpec q = p;
  q.mean[0] = shift;
  const auto x = sample_gaussian(p, 1500, 77, 0);
  const auto y = sample_gaussian(q, 1500, 77, 1);
  const auto rep = infer(x, y, sample_directions(d, 500, 77, 2), 2.0, {});
  const double truth = shift * shift / d;
  EXPECT_LE(std::abs(rep.estimate - truth),
            3.0 * std::sqrt(rep.variance.combined) / rep.effective_rate);
}

TEST(WHatSq, Examples) {
  // Raw moments leave a rounding residue of order 1e-17 here.
  EXPECT_NEAR(w_hat_sq(with_values({0.3, 0.3, 0.3})).value, 0.0, 1e-15);
  const auto two = w_hat_sq(with_values({0.0, 2.0}));
  EXPECT_EQ(two.value, 1.0);
  EXPECT_FALSE(two.clamped);
  EXPECT_THROW(w_hat_sq(with_values({1.0})), InvalidArgument);
}

TEST(WHatSq, ClampsRoundingNegatives) {
  // Raw moments of this constant vector cancel to -8.9e-16 in double.
  const auto w = w_hat_sq(with_values(std::vector<double>(3, 1.4302060167127721)));
  EXPECT_EQ(w.value, 0.0);
  EXPECT_TRUE(w.clamped);
}

TEST(WHatSq, EqualsTwoPassVariance) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = testing::random_vector(rng, 2 + trial, 0.0, 2.0);
    double mu = 0.0;
    for (double x : v) mu += x;
    mu /= v.size();
    double var = 0.0;
    for (double x : v) var += (x - mu) * (x - mu);
    var /= v.size();
    EXPECT_NEAR(w_hat_sq(with_values(v)).value, var, 1e-12);
  }
}

TEST(VHatSq, RowMeanCollapseEqualsCovarianceDoubleSum) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 2 + trial % 49;
    const std::size_t m = 1 + (trial * 7) % 50;
    const std::size_t k = 1 + trial % 10;
    const auto x = random_matrix(rng, n, 3);
    const auto y = random_matrix(rng, std::max<std::size_t>(m, 2), 3, 0.8);
    const auto dirs = sample_directions(3, k, trial, 0);
    const auto table = potential_table(x, y, dirs);
    std::vector<std::vector<double>> rows;
    for (std::size_t l = 0; l < k; ++l) rows.emplace_back(table.row(l).begin(), table.row(l).end());
    const double oracle = testing::covariance_double_sum(rows);
    EXPECT_NEAR(v_hat_sq(table), oracle, 1e-12 * (1.0 + oracle));
    EXPECT_NEAR(v_hat_sq(x, y, dirs), oracle, 1e-12 * (1.0 + oracle));
  }
}

TEST(VHatSq, ConstantShiftInvariance) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  const auto x = random_matrix(rng, 50, 2);
  const auto y = random_matrix(rng, 40, 2, -0.5);
  const auto dirs = sample_directions(2, 10, 4, 0);
  auto table = potential_table(x, y, dirs);
  const double before = v_hat_sq(table);
  for (std::size_t l = 0; l < table.k(); ++l) {
    const double c = 5.0 * z(rng);
    for (double& v : table.row(l)) v += c;
  }
  EXPECT_LE(std::abs(v_hat_sq(table) - before), 1e-12);
}

TEST(VHatSq, SingleDirectionIsRowVariance) {
  std::mt19937_64 rng(9);
  const auto x = random_matrix(rng, 33, 2);
  const auto y = random_matrix(rng, 21, 2, 1.0);
  const auto dirs = sample_directions(2, 1, 6, 0);
  const auto table = potential_table(x, y, dirs);
  EXPECT_EQ(v_hat_sq(x, y, dirs), population_variance(table.row(0)));
}

TEST(VHatSq, NonnegativeForIdenticalSamples) {
  std::mt19937_64 rng(10);
  const auto x = random_matrix(rng, 25, 3);
  EXPECT_GE(v_hat_sq(x, x, sample_directions(3, 8, 1, 0)), 0.0);
}

TEST(VHatSq, OneDimensionalShiftRecoversFourMuSquared) {
  // For N(0,1) -> N(mu,1) the optimal potential is -2 mu x + const, so
  // Var_P(phi) = 4 mu^2.
  const double mu = 1.0;
  const auto x = sample_gaussian({{0.0}, 1.0}, 20000, 5, 0);
  const auto y = sample_gaussian({{mu}, 1.0}, 20000, 5, 1);
  const double v = v_hat_sq(x, y, sample_directions(1, 2, 5, 2));
  EXPECT_NEAR(v, 4.0 * mu * mu, 0.2);
}

TEST(VHatSq, RejectsOtherP) {
  std::mt19937_64 rng(11);
  const auto x = random_matrix(rng, 10, 2);
  const auto a = analyze(x, x, sample_directions(2, 3, 1, 0), 3.0);
  EXPECT_FALSE(a.v_pq.has_value());
}

TEST(CombinedVariance, LimitsAndBlend) {
  const auto many = combined_variance(10, 10, 1000000000, 7.0, 2.0, 3.0);
  EXPECT_NEAR(many.combined, 0.5 * 2.0 + 0.5 * 3.0, 1e-6 * 2.5);
  EXPECT_DOUBLE_EQ(many.lambda_hat, 0.5);

  const auto few = combined_variance(1000000, 1000000, 1, 7.0, 2.0, 3.0);
  EXPECT_NEAR(few.combined, 7.0, 1e-5);

  const auto half = combined_variance(20, 20, 10, 4.0, 1.0, 1.0);
  EXPECT_DOUBLE_EQ(half.tau_hat, 0.5);
  EXPECT_DOUBLE_EQ(half.combined, 2.5);
}

TEST(CombinedVariance, FieldsFollowDefinitions) {
  const auto vc = combined_variance(30, 70, 15, 1.25, 0.5, 2.0);
  const double r = 30.0 * 70.0 / 100.0;
  EXPECT_DOUBLE_EQ(vc.tau_hat, 15.0 / (15.0 + r));
  EXPECT_DOUBLE_EQ(vc.lambda_hat, 0.3);
  const double inner = 0.7 * 0.5 + 0.3 * 2.0;
  EXPECT_NEAR(vc.combined, (1 - vc.tau_hat) * 1.25 + vc.tau_hat * inner, 1e-15);
}

TEST(CombinedVariance, ConvexCombinationProperty) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  std::uniform_int_distribution<std::size_t> sz(1, 5000);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = sz(rng), m = sz(rng), k = sz(rng);
    const double w = u(rng), a = u(rng), b = u(rng);
    const auto vc = combined_variance(n, m, k, w, a, b);
    const double inner = (1 - vc.lambda_hat) * a + vc.lambda_hat * b;
    EXPECT_GE(vc.combined, std::min(w, inner) - 1e-12);
    EXPECT_LE(vc.combined, std::max(w, inner) + 1e-12);
  }
}

TEST(Analyze, BitIdenticalAcrossThreadCounts) {
  std::mt19937_64 rng(13);
  const auto x = random_matrix(rng, 120, 3);
  const auto y = random_matrix(rng, 90, 3, 0.4);
  const auto dirs = sample_directions(3, 150, 2, 0);
  const auto a = analyze(x, y, dirs, 2.0, 1);
  const auto b = analyze(x, y, dirs, 2.0, 7);
  EXPECT_EQ(a.estimate.per_direction, b.estimate.per_direction);
  EXPECT_EQ(a.estimate.sw_pp, b.estimate.sw_pp);
  EXPECT_EQ(a.w.value, b.w.value);
  EXPECT_EQ(*a.v_pq, *b.v_pq);
  EXPECT_EQ(*a.v_qp, *b.v_qp);
}

TEST(Analyze, SwappedRolesGiveTargetSideVariance) {
  std::mt19937_64 rng(14);
  const auto x = random_matrix(rng, 44, 2);
  const auto y = random_matrix(rng, 31, 2, 0.9);
  const auto dirs = sample_directions(2, 9, 3, 0);
  const auto a = analyze(x, y, dirs, 2.0);
  EXPECT_NEAR(*a.v_qp, v_hat_sq(potential_table(y, x, dirs)), 1e-12);
  EXPECT_NEAR(*a.v_pq, v_hat_sq(potential_table(x, y, dirs)), 1e-12);
}

}  // namespace
}  // namespace swinf

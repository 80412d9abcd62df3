#pragma once

#include <cstddef>
#include <optional>

#include "swinf/estimators.hpp"

namespace swinf {

/// sqrt(k r / (k + r)) with r = nm/(n+m): the rate at which the sliced
/// estimate concentrates when both the samples and the directions are random.
double effective_rate(std::size_t n, std::size_t m, std::size_t k);

/// rate * (estimate - delta) / sqrt(combined_variance).
/// Throws DegenerateVariance when combined_variance is not positive.
double test_statistic(double estimate, double delta, std::size_t n, std::size_t m, std::size_t k,
                      double combined_variance);

/// 2 (1 - Phi(|T|)).
double two_sided_pvalue(double statistic);

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// estimate -/+ z_{(1+level)/2} sqrt(combined_variance) / rate.
Interval confidence_interval(double estimate, std::size_t n, std::size_t m, std::size_t k,
                             double combined_variance, double level);

struct InferenceOptions {
  double delta = 0.0;
  double level = 0.95;
  /// For p != 2 no sampling-variance estimate exists. Setting this accepts
  /// w^2 alone as the variance, which is only meaningful when k << nm/(n+m);
  /// the request is still refused unless k <= nm/(n+m) / 10.
  bool allow_w_only = false;
  unsigned threads = 1;
};

struct InferenceReport {
  double p = 2.0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t d = 0;
  double estimate = 0.0;
  double delta = 0.0;
  double level = 0.95;
  VarianceComponents variance;
  double effective_rate = 0.0;
  std::optional<double> statistic;  ///< empty when the variance is zero
  std::optional<double> p_value;
  double ci_low = 0.0;
  double ci_high = 0.0;
  bool w_only = false;
  bool w_clamped = false;

  /// |T| > z_{(1+level)/2}; false when the statistic is undefined.
  bool reject() const;
};

/// Full two-sample analysis at null value options.delta. Throws Unsupported
/// for p != 2 unless the w^2-only mode is requested and admissible.
InferenceReport infer(const SampleMatrix& x, const SampleMatrix& y, const DirectionSet& dirs,
                      double p, const InferenceOptions& options);

}  // namespace swinf

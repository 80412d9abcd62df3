#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "swinf/geometry.hpp"

namespace swinf {

/// N(mean, sigma2 * I_d).
struct GaussianSpec {
  std::vector<double> mean;
  double sigma2 = 1.0;
};

/// n i.i.d. rows mean + sigma * z. Row i is drawn from the substream keyed by
/// (seed, stream_id, i). Throws InvalidArgument for sigma2 <= 0, empty mean or n < 2.
SampleMatrix sample_gaussian(const GaussianSpec& spec, std::size_t n, std::uint64_t seed,
                             std::uint64_t stream_id);

/// SW_2^2 between N(a, I) and N(a + delta, I): every projection is a pure
/// shift by <theta, delta>, and E[<theta, delta>^2] = |delta|^2 / d.
double gaussian_sw2_meanshift(std::span<const double> delta);

/// t -> f(F^{-1}(t)) split into the two tails so that points arbitrarily
/// close to t = 1 stay representable: lower(t) is evaluated at t, upper(u)
/// at 1 - u, both for arguments in (0, 1/2].
struct QuantileDensity {
  std::function<double(double)> lower;
  std::function<double(double)> upper;
};

/// Wraps a single function; upper(u) = f(1 - u), which loses resolution
/// for u below ~1e-16.
QuantileDensity make_quantile_density(std::function<double(double)> f);

/// Density symmetric about the median: upper(u) = lower(u).
QuantileDensity make_symmetric_quantile_density(std::function<double(double)> f);

QuantileDensity standard_normal_quantile_density();
QuantileDensity uniform_quantile_density();

struct QuadratureConfig {
  /// Integration is done on (eps, 1 - eps) for each entry. Strictly
  /// decreasing, inside (0, 1/2).
  std::vector<double> epsilons{1e-2, 1e-4, 1e-8, 1e-16, 1e-32, 1e-64, 1e-128, 1e-256};
  /// Simpson subintervals per ladder step (rounded up to even).
  std::size_t points_per_level = 2000;
  /// Successive truncated integrals closer than this (relative) count as converged.
  double tolerance = 1e-6;
};

enum class JAlphaStatus { kConverged, kDiverging };

struct JAlphaResult {
  double value = 0.0;  ///< last truncated integral computed
  JAlphaStatus status = JAlphaStatus::kDiverging;
  std::vector<double> ladder;  ///< truncated integral for each epsilon reached
};

/// J_alpha = int_0^1 (t(1-t))^{alpha/2} / f(F^{-1}(t))^alpha dt.
/// Each tail is integrated in the variable -log(t), accumulating one
/// epsilon step at a time; the result is "converged" as soon as two
/// consecutive truncations agree to cfg.tolerance, "diverging" if the
/// ladder is exhausted first. Throws InvalidArgument for alpha < 1, bad
/// configs, or non-positive density values.
JAlphaResult j_alpha(const QuantileDensity& density, double alpha, const QuadratureConfig& cfg = {});

}  // namespace swinf

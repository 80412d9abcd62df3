#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "swinf/geometry.hpp"
#include "swinf/potentials.hpp"

namespace swinf {

/// Monte Carlo sliced estimate: the mean over k random directions of
/// W_p^p between the projected empirical measures.
struct SlicedEstimate {
  double sw_pp = 0.0;
  std::vector<double> per_direction;
  double p = 2.0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t k = 0;
};

SlicedEstimate sliced_estimate(const SampleMatrix& x, const SampleMatrix& y,
                               const DirectionSet& dirs, double p, unsigned threads = 1);

struct WHatSq {
  double value = 0.0;
  bool clamped = false;  ///< raw value was negative from rounding and was set to 0
};

/// Slicing variance: mean of squared per-direction values minus the squared
/// mean. Requires k >= 2.
WHatSq w_hat_sq(const SlicedEstimate& est);

/// Sampling variance from the source side (p = 2): population variance over
/// source points of the direction-averaged optimal potential. Equal to
/// (1/k^2) sum_{a,b} Cov_{P_n}(phi_a, phi_b). Swap the arguments for the
/// target side.
double v_hat_sq(const SampleMatrix& source, const SampleMatrix& target, const DirectionSet& dirs,
                unsigned threads = 1);

/// Same quantity from an explicit table of potentials.
double v_hat_sq(const PotentialTable& table);

struct VarianceComponents {
  double w_hat_sq = 0.0;
  double v_hat_pq_sq = 0.0;
  double v_hat_qp_sq = 0.0;
  double tau_hat = 0.0;     ///< k / (k + nm/(n+m))
  double lambda_hat = 0.0;  ///< n / (n+m)
  double combined = 0.0;
};

/// (1 - tau) w^2 + tau ((1 - lambda) v_pq^2 + lambda v_qp^2).
VarianceComponents combined_variance(std::size_t n, std::size_t m, std::size_t k, double w_hat_sq,
                                     double v_hat_pq_sq, double v_hat_qp_sq);

/// Everything computable from one pass over the directions. Potentials (and
/// so v_pq, v_qp) are only produced for p = 2.
struct SliceAnalysis {
  SlicedEstimate estimate;
  WHatSq w;
  std::optional<double> v_pq;
  std::optional<double> v_qp;
};

/// Projects and sorts each direction once and derives the estimate, w^2 and,
/// when p = 2 and `with_potentials` is set, both v^2 components. Results are
/// identical for every `threads` value.
SliceAnalysis analyze(const SampleMatrix& x, const SampleMatrix& y, const DirectionSet& dirs,
                      double p, unsigned threads = 1, bool with_potentials = true);

}  // namespace swinf

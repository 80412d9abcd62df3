#pragma once

// c-concave optimal potentials for the quadratic cost between two projected
// empirical measures.
//
// For c(x, y) = |x - y|^2 every c-concave potential has the form
// phi(x) = x^2 - 2 * psi(x) with psi convex. We use the piecewise linear psi
// with psi(s_(0)) = 0 whose slope on (s_(i), s_(i+1)) is t_(r(i)), where r(i)
// is the last target block touching source block i. Its subgradient contains
// the support of the quantile coupling, which makes phi optimal. Only values
// at the source points are ever needed.

#include <cstddef>
#include <span>
#include <vector>

#include "swinf/geometry.hpp"
#include "swinf/ot1d.hpp"

namespace swinf {

/// r[i] = ceil((i+1) * m / n) - 1, the largest 0-based target block with
/// positive overlap with source block i. Nondecreasing, r[n-1] = m - 1.
std::vector<std::size_t> row_assignment(std::size_t n, std::size_t m);

/// psi at the sorted source points, anchored at psi(s_(0)) = 0.
std::vector<double> convex_potential(std::span<const double> s_sorted,
                                     std::span<const double> t_sorted);

/// phi(s_(i)) = s_(i)^2 - 2 psi(s_(i)) at the sorted source points.
std::vector<double> potential_values(std::span<const double> s_sorted,
                                     std::span<const double> t_sorted);

/// phi^c(y) = min_i (|s_(i) - y|^2 - phi(s_(i))) for each entry of t_points.
/// Runs a lower hull of (s_(i), s_(i)^2 - phi_i) against the targets in
/// increasing order, using that the minimizing index is nondecreasing in y.
/// t_points need not be sorted; output follows input order.
std::vector<double> c_conjugate(std::span<const double> phi_at_s, std::span<const double> s_sorted,
                                std::span<const double> t_points);

/// Reference O(n*m) evaluation of the same minimum.
std::vector<double> c_conjugate_brute(std::span<const double> phi_at_s,
                                      std::span<const double> s_sorted,
                                      std::span<const double> t_points);

/// W_2^2(s, t) minus the dual objective mean(phi) + mean(phi^c).
/// Zero up to rounding when the potential is optimal.
double duality_gap(std::span<const double> s_sorted, std::span<const double> t_sorted);

/// Optimal potentials for k directions, phi(l, i) evaluated at the i-th
/// source point in its original (unsorted) order.
class PotentialTable {
 public:
  PotentialTable(std::size_t k, std::size_t n) : k_(k), n_(n), phi_(k * n, 0.0) {}

  std::size_t k() const noexcept { return k_; }
  std::size_t n() const noexcept { return n_; }

  std::span<double> row(std::size_t l) { return {phi_.data() + l * n_, n_}; }
  std::span<const double> row(std::size_t l) const { return {phi_.data() + l * n_, n_}; }

 private:
  std::size_t k_;
  std::size_t n_;
  std::vector<double> phi_;
};

/// Writes phi at the source points, un-sorted back through s.perm.
void potential_row(const SortedProjection& s, std::span<const double> t_sorted,
                   std::span<double> out);

/// Potentials from the projections of `source` to those of `target` along
/// every direction. Rows are filled independently on up to `threads` workers.
PotentialTable potential_table(const SampleMatrix& source, const SampleMatrix& target,
                               const DirectionSet& dirs, unsigned threads = 1);

}  // namespace swinf

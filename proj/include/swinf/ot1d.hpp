#pragma once

// Exact optimal transport between two uniform empirical measures on the line.
//
// Source block i (0-based) covers the quantile interval (i/n, (i+1)/n] and
// target block j covers (j/m, (j+1)/m]. The optimal (quantile) coupling puts
// mass |block_i ∩ block_j| on the pair (s_(i), t_(j)). Block boundaries are
// compared as integers i*m vs j*n, so the cell structure is exact.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "swinf/error.hpp"

namespace swinf {

/// Sorted copy of a sample plus the permutation back to input order:
/// values[r] == input[perm[r]]. Ties keep their input order.
struct SortedProjection {
  std::vector<double> values;
  std::vector<std::size_t> perm;

  std::size_t size() const noexcept { return values.size(); }
};

/// Stable sort. Throws InvalidArgument on NaN.
SortedProjection sort_projection(std::span<const double> values);

/// In-place ascending sort of finite values when the permutation is not needed.
void sort_values(std::span<double> values);

struct CouplingCell {
  std::size_t i;  ///< source order index, 0-based
  std::size_t j;  ///< target order index, 0-based
  double mass;
};

namespace detail {
inline void check_coupling_sizes(std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw InvalidArgument("coupling: sample sizes must be positive");
  if (n > 0xffffffffULL || m > 0xffffffffULL) {
    throw InvalidArgument("coupling: sample sizes must be below 2^32");
  }
}
}  // namespace detail

/// Visits the positive-mass cells of the n x m quantile coupling in increasing
/// quantile order as fn(i, j, units), where the cell mass is units / (n*m).
/// `units` is an exact integer. At most n + m - 1 cells are visited.
template <class Fn>
void for_each_coupling_unit(std::size_t n, std::size_t m, Fn&& fn) {
  detail::check_coupling_sizes(n, m);
  const std::uint64_t nn = n;
  const std::uint64_t mm = m;
  std::uint64_t i = 0;
  std::uint64_t j = 0;
  std::uint64_t lo = 0;
  while (i < nn && j < mm) {
    const std::uint64_t end_i = (i + 1) * mm;
    const std::uint64_t end_j = (j + 1) * nn;
    const std::uint64_t hi = end_i < end_j ? end_i : end_j;
    fn(static_cast<std::size_t>(i), static_cast<std::size_t>(j), hi - lo);
    if (end_i == hi) ++i;
    if (end_j == hi) ++j;
    lo = hi;
  }
}

/// Materialized list of coupling cells; mass is correctly rounded.
std::vector<CouplingCell> coupling_cells(std::size_t n, std::size_t m);

/// W_p^p between the empirical measures of two sorted samples:
/// sum over cells of mass * |s_(i) - t_(j)|^p. Requires p > 1.
double wasserstein_pp(std::span<const double> s_sorted, std::span<const double> t_sorted, double p);

double wasserstein_pp(const SortedProjection& s, const SortedProjection& t, double p);

/// Left-continuous empirical quantile s_(ceil(u*n)) for u in (0, 1).
double quantile(const SortedProjection& s, double u);

}  // namespace swinf

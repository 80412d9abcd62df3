#include "swinf/ot1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include <boost/sort/pdqsort/pdqsort.hpp>

namespace swinf {

SortedProjection sort_projection(std::span<const double> values) {
  std::vector<std::pair<double, std::size_t>> keyed(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (std::isnan(values[i])) throw InvalidArgument("sort_projection: NaN entry");
    keyed[i] = {values[i], i};
  }
  // Lexicographic on (value, index): equivalent to a stable sort on value.
  boost::sort::pdqsort_branchless(keyed.begin(), keyed.end());
  SortedProjection out;
  out.values.resize(keyed.size());
  out.perm.resize(keyed.size());
  for (std::size_t r = 0; r < keyed.size(); ++r) {
    out.values[r] = keyed[r].first;
    out.perm[r] = keyed[r].second;
  }
  return out;
}

namespace {

void insertion_sort(double* first, double* last) {
  for (double* it = first + 1; it < last; ++it) {
    const double v = *it;
    double* j = it;
    for (; j > first && *(j - 1) > v; --j) *j = *(j - 1);
    *j = v;
  }
}

}  // namespace

// One distribution pass into about n/2 equal-width buckets, then small
// per-bucket sorts. The bucket index is monotone in the value, so the
// concatenation is sorted. Crowded buckets (heavy tails, clusters) fall
// back to pdqsort, which keeps the worst case at O(n log n).
void sort_values(std::span<double> values) {
  const std::size_t n = values.size();
  constexpr std::size_t kMinBucketed = 64;
  constexpr std::size_t kInsertionLimit = 24;
  if (n < kMinBucketed || n > 0xffffffffULL) {
    boost::sort::pdqsort_branchless(values.begin(), values.end());
    return;
  }
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double width = *hi_it - lo;
  if (!(width > 0.0) || !std::isfinite(width)) {
    boost::sort::pdqsort_branchless(values.begin(), values.end());
    return;
  }
  const std::size_t buckets = n / 2;
  const double scale = static_cast<double>(buckets) / width;

  // Reused per thread; this runs once per direction and sample.
  thread_local std::vector<std::uint32_t> key;
  thread_local std::vector<std::uint32_t> start;
  thread_local std::vector<std::uint32_t> fill;
  thread_local std::vector<double> scratch;
  key.resize(n);
  start.assign(buckets + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = std::min(static_cast<std::size_t>((values[i] - lo) * scale), buckets - 1);
    key[i] = static_cast<std::uint32_t>(b);
    ++start[b + 1];
  }
  for (std::size_t b = 0; b < buckets; ++b) start[b + 1] += start[b];
  fill.assign(start.begin(), start.end() - 1);
  scratch.resize(n);
  for (std::size_t i = 0; i < n; ++i) scratch[fill[key[i]]++] = values[i];

  for (std::size_t b = 0; b < buckets; ++b) {
    double* first = scratch.data() + start[b];
    double* last = scratch.data() + start[b + 1];
    if (last - first > static_cast<std::ptrdiff_t>(kInsertionLimit)) {
      boost::sort::pdqsort_branchless(first, last);
    } else if (last - first > 1) {
      insertion_sort(first, last);
    }
  }
  std::copy(scratch.begin(), scratch.end(), values.begin());
}

std::vector<CouplingCell> coupling_cells(std::size_t n, std::size_t m) {
  std::vector<CouplingCell> cells;
  cells.reserve(n + m - 1);
  const double total = static_cast<double>(n) * static_cast<double>(m);
  for_each_coupling_unit(n, m, [&](std::size_t i, std::size_t j, std::uint64_t units) {
    cells.push_back({i, j, static_cast<double>(units) / total});
  });
  return cells;
}

double wasserstein_pp(std::span<const double> s, std::span<const double> t, double p) {
  if (!(p > 1.0)) throw InvalidArgument("wasserstein_pp: p must exceed 1");
  const std::size_t n = s.size();
  const std::size_t m = t.size();
  double acc = 0.0;
  if (p == 2.0) {
    for_each_coupling_unit(n, m, [&](std::size_t i, std::size_t j, std::uint64_t units) {
      const double diff = s[i] - t[j];
      acc += static_cast<double>(units) * (diff * diff);
    });
  } else {
    for_each_coupling_unit(n, m, [&](std::size_t i, std::size_t j, std::uint64_t units) {
      acc += static_cast<double>(units) * std::pow(std::abs(s[i] - t[j]), p);
    });
  }
  return acc / (static_cast<double>(n) * static_cast<double>(m));
}

double wasserstein_pp(const SortedProjection& s, const SortedProjection& t, double p) {
  return wasserstein_pp(std::span<const double>(s.values), std::span<const double>(t.values), p);
}

double quantile(const SortedProjection& s, double u) {
  if (!(u > 0.0 && u < 1.0)) throw InvalidArgument("quantile: u must lie in (0, 1)");
  if (s.values.empty()) throw InvalidArgument("quantile: empty sample");
  const double n = static_cast<double>(s.size());
  auto rank = static_cast<std::size_t>(std::ceil(u * n));
  rank = std::clamp<std::size_t>(rank, 1, s.size());
  return s.values[rank - 1];
}

}  // namespace swinf

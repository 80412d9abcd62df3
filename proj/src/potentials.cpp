#include "swinf/potentials.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "swinf/error.hpp"
#include "swinf/parallel.hpp"

namespace swinf {

std::vector<std::size_t> row_assignment(std::size_t n, std::size_t m) {
  detail::check_coupling_sizes(n, m);
  std::vector<std::size_t> r(n);
  const std::uint64_t nn = n;
  const std::uint64_t mm = m;
  for (std::uint64_t i = 0; i < nn; ++i) {
    r[i] = static_cast<std::size_t>(((i + 1) * mm + nn - 1) / nn - 1);
  }
  return r;
}

std::vector<double> convex_potential(std::span<const double> s, std::span<const double> t) {
  if (s.empty() || t.empty()) throw InvalidArgument("convex_potential: empty sample");
  const auto r = row_assignment(s.size(), t.size());
  std::vector<double> psi(s.size());
  psi[0] = 0.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    psi[i + 1] = psi[i] + t[r[i]] * (s[i + 1] - s[i]);
  }
  return psi;
}

std::vector<double> potential_values(std::span<const double> s, std::span<const double> t) {
  auto phi = convex_potential(s, t);
  for (std::size_t i = 0; i < s.size(); ++i) phi[i] = s[i] * s[i] - 2.0 * phi[i];
  return phi;
}

namespace {

void check_conjugate_args(std::span<const double> phi, std::span<const double> s) {
  if (phi.size() != s.size()) throw InvalidArgument("c_conjugate: phi and s lengths differ");
  if (s.empty()) throw InvalidArgument("c_conjugate: empty source");
  if (!std::is_sorted(s.begin(), s.end())) {
    throw InvalidArgument("c_conjugate: source points must be sorted");
  }
}

}  // namespace

std::vector<double> c_conjugate_brute(std::span<const double> phi, std::span<const double> s,
                                      std::span<const double> t) {
  check_conjugate_args(phi, s);
  std::vector<double> out(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) {
    double best = (s[0] - t[j]) * (s[0] - t[j]) - phi[0];
    for (std::size_t i = 1; i < s.size(); ++i) {
      best = std::min(best, (s[i] - t[j]) * (s[i] - t[j]) - phi[i]);
    }
    out[j] = best;
  }
  return out;
}

std::vector<double> c_conjugate(std::span<const double> phi, std::span<const double> s,
                                std::span<const double> t) {
  check_conjugate_args(phi, s);

  // (|s - y|^2 - phi) = y^2 + (s^2 - phi) - 2 s y: only points on the lower
  // convex hull of (s, s^2 - phi) can be minimizers.
  std::vector<std::size_t> hull;
  hull.reserve(s.size());
  auto height = [&](std::size_t i) { return s[i] * s[i] - phi[i]; };
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!hull.empty() && s[hull.back()] == s[i]) {
      if (height(i) >= height(hull.back())) continue;
      hull.pop_back();
    }
    while (hull.size() >= 2) {
      const std::size_t o = hull[hull.size() - 2];
      const std::size_t a = hull.back();
      const double cross =
          (s[a] - s[o]) * (height(i) - height(o)) - (height(a) - height(o)) * (s[i] - s[o]);
      if (cross > 0.0) break;
      hull.pop_back();
    }
    hull.push_back(i);
  }

  std::vector<std::size_t> order(t.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (!std::is_sorted(t.begin(), t.end())) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return t[a] < t[b]; });
  }

  std::vector<double> out(t.size());
  std::size_t h = 0;
  auto cost = [&](std::size_t hull_pos, double y) {
    const std::size_t i = hull[hull_pos];
    return (s[i] - y) * (s[i] - y) - phi[i];
  };
  for (std::size_t idx : order) {
    const double y = t[idx];
    double best = cost(h, y);
    while (h + 1 < hull.size()) {
      const double next = cost(h + 1, y);
      if (next > best) break;
      best = next;
      ++h;
    }
    out[idx] = best;
  }
  return out;
}

double duality_gap(std::span<const double> s, std::span<const double> t) {
  const double primal = wasserstein_pp(s, t, 2.0);
  const auto phi = potential_values(s, t);
  const auto phi_c = c_conjugate(phi, s, t);
  const double dual = mean(phi) + mean(phi_c);
  return primal - dual;
}

void potential_row(const SortedProjection& s, std::span<const double> t_sorted,
                   std::span<double> out) {
  if (out.size() != s.size()) throw InvalidArgument("potential_row: output length mismatch");
  const auto phi = potential_values(s.values, t_sorted);
  for (std::size_t r = 0; r < phi.size(); ++r) out[s.perm[r]] = phi[r];
}

PotentialTable potential_table(const SampleMatrix& source, const SampleMatrix& target,
                               const DirectionSet& dirs, unsigned threads) {
  if (source.d() != dirs.d() || target.d() != dirs.d()) {
    throw InvalidArgument("potential_table: dimension mismatch");
  }
  PotentialTable table(dirs.k(), source.n());
  parallel_for(dirs.k(), threads, [&](std::size_t l) {
    const auto s = sort_projection(project(source, dirs.direction(l)));
    auto t = project(target, dirs.direction(l));
    sort_values(t);
    potential_row(s, t, table.row(l));
  });
  return table;
}

}  // namespace swinf

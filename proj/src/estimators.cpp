#include "swinf/estimators.hpp"

#include <algorithm>

#include "swinf/error.hpp"
#include "swinf/parallel.hpp"

namespace swinf {

namespace {

// Directions are grouped into fixed-size blocks; each block accumulates its
// potential sums sequentially and blocks are reduced in index order, so the
// floating point result does not depend on the worker count.
constexpr std::size_t kDirectionBlock = 32;

void check_dims(const SampleMatrix& x, const SampleMatrix& y, const DirectionSet& dirs) {
  if (x.d() != dirs.d() || y.d() != dirs.d()) {
    throw InvalidArgument("dimension mismatch: x has d=" + std::to_string(x.d()) +
                          ", y has d=" + std::to_string(y.d()) +
                          ", directions have d=" + std::to_string(dirs.d()));
  }
}

void check_p(double p) {
  if (!(p > 1.0)) throw InvalidArgument("p must exceed 1");
}

struct BlockSums {
  std::vector<double> x;
  std::vector<double> y;
};

}  // namespace

SliceAnalysis analyze(const SampleMatrix& x, const SampleMatrix& y, const DirectionSet& dirs,
                      double p, unsigned threads, bool with_potentials) {
  check_dims(x, y, dirs);
  check_p(p);
  const bool potentials = with_potentials && p == 2.0;
  const std::size_t k = dirs.k();
  const std::size_t n = x.n();
  const std::size_t m = y.n();

  SliceAnalysis out;
  out.estimate.p = p;
  out.estimate.n = n;
  out.estimate.m = m;
  out.estimate.k = k;
  out.estimate.per_direction.assign(k, 0.0);

  const std::size_t blocks = (k + kDirectionBlock - 1) / kDirectionBlock;
  std::vector<BlockSums> sums(potentials ? blocks : 0);

  parallel_for(blocks, threads, [&](std::size_t b) {
    const std::size_t first = b * kDirectionBlock;
    const std::size_t last = std::min(k, first + kDirectionBlock);
    std::vector<double> s(n);
    std::vector<double> t(m);
    std::vector<double> row_x;
    std::vector<double> row_y;
    if (potentials) {
      sums[b].x.assign(n, 0.0);
      sums[b].y.assign(m, 0.0);
      row_x.resize(n);
      row_y.resize(m);
    }
    for (std::size_t l = first; l < last; ++l) {
      project_into(x, dirs.direction(l), s);
      project_into(y, dirs.direction(l), t);
      if (potentials) {
        const auto ss = sort_projection(s);
        const auto ts = sort_projection(t);
        out.estimate.per_direction[l] = wasserstein_pp(ss, ts, p);
        potential_row(ss, ts.values, row_x);
        potential_row(ts, ss.values, row_y);
        for (std::size_t i = 0; i < n; ++i) sums[b].x[i] += row_x[i];
        for (std::size_t j = 0; j < m; ++j) sums[b].y[j] += row_y[j];
      } else {
        sort_values(s);
        sort_values(t);
        out.estimate.per_direction[l] = wasserstein_pp(s, t, p);
      }
    }
  });

  out.estimate.sw_pp = mean(out.estimate.per_direction);
  if (k >= 2) out.w = w_hat_sq(out.estimate);

  if (potentials) {
    std::vector<double> gx(n, 0.0);
    std::vector<double> gy(m, 0.0);
    for (const auto& block : sums) {
      for (std::size_t i = 0; i < n; ++i) gx[i] += block.x[i];
      for (std::size_t j = 0; j < m; ++j) gy[j] += block.y[j];
    }
    const double inv_k = 1.0 / static_cast<double>(k);
    for (double& v : gx) v *= inv_k;
    for (double& v : gy) v *= inv_k;
    out.v_pq = population_variance(gx);
    out.v_qp = population_variance(gy);
  }
  return out;
}

SlicedEstimate sliced_estimate(const SampleMatrix& x, const SampleMatrix& y,
                               const DirectionSet& dirs, double p, unsigned threads) {
  return analyze(x, y, dirs, p, threads, false).estimate;
}

WHatSq w_hat_sq(const SlicedEstimate& est) {
  const auto& w = est.per_direction;
  if (w.size() < 2) throw InvalidArgument("w_hat_sq: need at least 2 directions");
  std::vector<double> sq(w.size());
  for (std::size_t l = 0; l < w.size(); ++l) sq[l] = w[l] * w[l];
  const double mu = mean(w);
  const double raw = mean(sq) - mu * mu;
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

double v_hat_sq(const SampleMatrix& source, const SampleMatrix& target, const DirectionSet& dirs,
                unsigned threads) {
  if (source.n() < 2) throw InvalidArgument("v_hat_sq: need at least 2 source points");
  return *analyze(source, target, dirs, 2.0, threads, true).v_pq;
}

double v_hat_sq(const PotentialTable& table) {
  if (table.n() < 2) throw InvalidArgument("v_hat_sq: need at least 2 source points");
  if (table.k() < 1) throw InvalidArgument("v_hat_sq: empty potential table");
  std::vector<double> g(table.n(), 0.0);
  for (std::size_t l = 0; l < table.k(); ++l) {
    const auto row = table.row(l);
    for (std::size_t i = 0; i < table.n(); ++i) g[i] += row[i];
  }
  for (double& v : g) v /= static_cast<double>(table.k());
  return population_variance(g);
}

VarianceComponents combined_variance(std::size_t n, std::size_t m, std::size_t k, double w_hat_sq,
                                     double v_hat_pq_sq, double v_hat_qp_sq) {
  if (n == 0 || m == 0 || k == 0) throw InvalidArgument("combined_variance: sizes must be positive");
  if (w_hat_sq < 0.0 || v_hat_pq_sq < 0.0 || v_hat_qp_sq < 0.0) {
    throw InvalidArgument("combined_variance: variance components must be nonnegative");
  }
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  const double kd = static_cast<double>(k);
  const double r = nd * md / (nd + md);
  VarianceComponents vc;
  vc.w_hat_sq = w_hat_sq;
  vc.v_hat_pq_sq = v_hat_pq_sq;
  vc.v_hat_qp_sq = v_hat_qp_sq;
  vc.tau_hat = kd / (kd + r);
  vc.lambda_hat = nd / (nd + md);
  const double inner = (1.0 - vc.lambda_hat) * v_hat_pq_sq + vc.lambda_hat * v_hat_qp_sq;
  vc.combined = (1.0 - vc.tau_hat) * w_hat_sq + vc.tau_hat * inner;
  return vc;
}

}  // namespace swinf

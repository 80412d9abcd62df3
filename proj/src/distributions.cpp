#include "swinf/distributions.hpp"

#include <cmath>

#include "swinf/error.hpp"
#include "swinf/normal.hpp"
#include "swinf/rng.hpp"

namespace swinf {

SampleMatrix sample_gaussian(const GaussianSpec& spec, std::size_t n, std::uint64_t seed,
                             std::uint64_t stream_id) {
  if (spec.mean.empty()) throw InvalidArgument("sample_gaussian: empty mean");
  if (!(spec.sigma2 > 0.0)) throw InvalidArgument("sample_gaussian: sigma2 must be positive");
  const std::size_t d = spec.mean.size();
  const double sigma = std::sqrt(spec.sigma2);
  std::vector<double> data(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    RandomStream rng(
        derive_seed(seed, static_cast<std::uint64_t>(StreamRole::kGaussianRows), stream_id, i));
    for (std::size_t c = 0; c < d; ++c) data[i * d + c] = spec.mean[c] + sigma * rng.normal();
  }
  return SampleMatrix(n, d, std::move(data));
}

double gaussian_sw2_meanshift(std::span<const double> delta) {
  if (delta.empty()) throw InvalidArgument("gaussian_sw2_meanshift: empty shift");
  double norm2 = 0.0;
  for (double v : delta) norm2 += v * v;
  return norm2 / static_cast<double>(delta.size());
}

QuantileDensity make_quantile_density(std::function<double(double)> f) {
  return {f, [f](double u) { return f(1.0 - u); }};
}

QuantileDensity make_symmetric_quantile_density(std::function<double(double)> f) {
  return {f, f};
}

QuantileDensity standard_normal_quantile_density() {
  return make_symmetric_quantile_density([](double t) { return normal_pdf(normal_quantile(t)); });
}

QuantileDensity uniform_quantile_density() {
  return make_symmetric_quantile_density([](double) { return 1.0; });
}

namespace {

// Integrand of one tail in x = -log(u), u in (0, 1/2]:
// (u(1-u))^{alpha/2} / f^alpha * u, evaluated in log space.
double tail_integrand(const std::function<double(double)>& f, double alpha, double x) {
  const double u = std::exp(-x);
  const double fu = f(u);
  if (!(fu > 0.0) || !std::isfinite(fu)) {
    throw InvalidArgument("j_alpha: quantile density must be positive and finite, got " +
                          std::to_string(fu) + " at " + std::to_string(u));
  }
  const double log_u = -x;
  return std::exp(0.5 * alpha * (log_u + std::log1p(-u)) - alpha * std::log(fu) + log_u);
}

double simpson(const std::function<double(double)>& f, double alpha, double a, double b,
               std::size_t intervals) {
  const double h = (b - a) / static_cast<double>(intervals);
  double acc = tail_integrand(f, alpha, a) + tail_integrand(f, alpha, b);
  for (std::size_t i = 1; i < intervals; ++i) {
    const double w = (i % 2 == 1) ? 4.0 : 2.0;
    acc += w * tail_integrand(f, alpha, a + h * static_cast<double>(i));
  }
  return acc * h / 3.0;
}

}  // namespace

JAlphaResult j_alpha(const QuantileDensity& density, double alpha, const QuadratureConfig& cfg) {
  if (!(alpha >= 1.0)) throw InvalidArgument("j_alpha: alpha must be at least 1");
  if (cfg.epsilons.empty()) throw InvalidArgument("j_alpha: empty epsilon ladder");
  for (std::size_t i = 0; i < cfg.epsilons.size(); ++i) {
    const double e = cfg.epsilons[i];
    if (!(e > 0.0 && e < 0.5)) throw InvalidArgument("j_alpha: epsilons must lie in (0, 1/2)");
    if (i > 0 && !(e < cfg.epsilons[i - 1])) {
      throw InvalidArgument("j_alpha: epsilons must be strictly decreasing");
    }
  }
  if (!density.lower || !density.upper) throw InvalidArgument("j_alpha: missing density");
  const std::size_t intervals = cfg.points_per_level + cfg.points_per_level % 2;
  if (intervals == 0) throw InvalidArgument("j_alpha: points_per_level must be positive");

  JAlphaResult result;
  double x_prev = std::log(2.0);
  double total = 0.0;
  for (double eps : cfg.epsilons) {
    const double x_next = -std::log(eps);
    total += simpson(density.lower, alpha, x_prev, x_next, intervals);
    total += simpson(density.upper, alpha, x_prev, x_next, intervals);
    x_prev = x_next;
    result.ladder.push_back(total);
    result.value = total;
    if (!std::isfinite(total)) break;
    if (result.ladder.size() >= 2) {
      const double prev = result.ladder[result.ladder.size() - 2];
      if (std::abs(total - prev) < cfg.tolerance * std::abs(total)) {
        result.status = JAlphaStatus::kConverged;
        return result;
      }
    }
  }
  result.status = JAlphaStatus::kDiverging;
  return result;
}

}  // namespace swinf

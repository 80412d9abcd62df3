#include "swinf/inference.hpp"

#include <cmath>
#include <string>

#include "swinf/error.hpp"
#include "swinf/normal.hpp"

namespace swinf {

namespace {

double harmonic_size(std::size_t n, std::size_t m) {
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return nd * md / (nd + md);
}

void check_level(double level) {
  if (!(level > 0.0 && level < 1.0)) throw InvalidArgument("level must lie in (0, 1)");
}

}  // namespace

double effective_rate(std::size_t n, std::size_t m, std::size_t k) {
  if (n == 0 || m == 0 || k == 0) throw InvalidArgument("effective_rate: sizes must be positive");
  const double r = harmonic_size(n, m);
  const double kd = static_cast<double>(k);
  return std::sqrt(kd * r / (kd + r));
}

double test_statistic(double estimate, double delta, std::size_t n, std::size_t m, std::size_t k,
                      double combined_variance) {
  if (!(combined_variance > 0.0)) {
    throw DegenerateVariance("estimated variance is zero; the studentized statistic is undefined");
  }
  return effective_rate(n, m, k) * (estimate - delta) / std::sqrt(combined_variance);
}

double two_sided_pvalue(double statistic) {
  if (!std::isfinite(statistic)) throw InvalidArgument("two_sided_pvalue: statistic must be finite");
  return 2.0 * normal_sf(std::abs(statistic));
}

Interval confidence_interval(double estimate, std::size_t n, std::size_t m, std::size_t k,
                             double combined_variance, double level) {
  check_level(level);
  if (combined_variance < 0.0) throw InvalidArgument("confidence_interval: negative variance");
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double half = z * std::sqrt(combined_variance) / effective_rate(n, m, k);
  return {estimate - half, estimate + half};
}

bool InferenceReport::reject() const {
  if (!statistic) return false;
  return std::abs(*statistic) > normal_quantile(0.5 * (1.0 + level));
}

InferenceReport infer(const SampleMatrix& x, const SampleMatrix& y, const DirectionSet& dirs,
                      double p, const InferenceOptions& options) {
  check_level(options.level);
  const bool w_only = p != 2.0;
  if (w_only) {
    if (!options.allow_w_only) {
      throw Unsupported("inference for p != 2 has no sampling-variance estimate; "
                        "opt into the w^2-only mode to proceed");
    }
    const double r = harmonic_size(x.n(), y.n());
    if (static_cast<double>(dirs.k()) * 10.0 > r) {
      throw Unsupported("w^2-only mode requires k <= nm/(n+m)/10 (k = " +
                        std::to_string(dirs.k()) + ", nm/(n+m) = " + std::to_string(r) + ")");
    }
  }
  if (dirs.k() < 2) throw InvalidArgument("inference needs at least 2 directions");

  const auto analysis = analyze(x, y, dirs, p, options.threads, !w_only);

  InferenceReport rep;
  rep.p = p;
  rep.n = x.n();
  rep.m = y.n();
  rep.k = dirs.k();
  rep.d = dirs.d();
  rep.estimate = analysis.estimate.sw_pp;
  rep.delta = options.delta;
  rep.level = options.level;
  rep.w_only = w_only;
  rep.w_clamped = analysis.w.clamped;
  if (w_only) {
    rep.variance = combined_variance(rep.n, rep.m, rep.k, analysis.w.value, 0.0, 0.0);
    rep.variance.combined = analysis.w.value;
  } else {
    rep.variance =
        combined_variance(rep.n, rep.m, rep.k, analysis.w.value, *analysis.v_pq, *analysis.v_qp);
  }
  rep.effective_rate = effective_rate(rep.n, rep.m, rep.k);
  const auto ci =
      confidence_interval(rep.estimate, rep.n, rep.m, rep.k, rep.variance.combined, rep.level);
  rep.ci_low = ci.low;
  rep.ci_high = ci.high;
  if (rep.variance.combined > 0.0) {
    rep.statistic = test_statistic(rep.estimate, rep.delta, rep.n, rep.m, rep.k,
                                   rep.variance.combined);
    rep.p_value = two_sided_pvalue(*rep.statistic);
  }
  return rep;
}

}  // namespace swinf

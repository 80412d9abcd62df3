#pragma once

// Monte Carlo study of the studentized statistic for Gaussian mean shifts:
// P = N(0, I_d) against Q_h = N((sqrt(d) + h) e_1, I_d), tested at a fixed
// null value, over a grid of direction counts k and shifts h.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace swinf {

struct SimulationPlan {
  double p = 2.0;
  std::size_t d = 8;
  std::size_t n = 500;
  std::size_t m = 300;
  std::vector<std::size_t> k_values{400};
  std::vector<double> h_values{0.0};
  double delta = 1.0;
  std::size_t replications = 1000;
  /// Nominal significance: reject when |T| > q_{1 - level/2}.
  double level = 0.05;
  std::uint64_t master_seed = 0;
  /// Draw one direction set per cell instead of one per replication.
  bool reuse_directions = false;
  std::size_t bin_count = 40;
};

/// Throws InvalidArgument when a field is out of range (p != 2 included).
void validate(const SimulationPlan& plan);

struct Histogram {
  std::vector<double> edges;  ///< bin_count + 1 increasing edges
  std::vector<std::size_t> counts;
};

/// Equal-width bins over [min, max]; the last bin is closed. A constant
/// vector lands entirely in the first bin. Rejects empty input and
/// bin_count == 0; NaN entries are ignored.
Histogram histogram(const std::vector<double>& values, std::size_t bin_count);

struct CellResult {
  std::size_t k = 0;
  double h = 0.0;
  /// One entry per replication; NaN where the variance was degenerate.
  std::vector<double> statistics;
  std::size_t excluded = 0;
  /// Rejections over non-excluded replications.
  double rejection_rate = 0.0;
  Histogram histogram;
};

struct SimulationResult {
  SimulationPlan plan;
  std::vector<CellResult> cells;  ///< k-major: cell = k_index * h_values.size() + h_index
};

/// Threshold q_{1 - level/2}.
double rejection_threshold(double level);

/// Rejection rate recomputed from a statistics vector (NaN entries skipped).
double rejection_rate(const std::vector<double>& statistics, double level);

/// Runs every (cell, replication) pair. Replication r of cell c draws its
/// samples and directions from substreams of (master_seed, c, r), so the
/// result is bit-identical for any `threads`.
SimulationResult run_plan(const SimulationPlan& plan, unsigned threads = 1);

/// One row per replication: cell,k,h,replication,statistic,reject,excluded.
void write_simulation_csv(const SimulationResult& result, std::ostream& out);

/// Plan echo plus per-cell summary and histogram.
void write_simulation_json(const SimulationResult& result, std::ostream& out);

/// Parses a plan from JSON text; unknown keys are rejected. "k" may be an
/// integer or an array, "h" a number or an array. Throws ParseError.
SimulationPlan parse_plan(const std::string& json_text);

}  // namespace swinf

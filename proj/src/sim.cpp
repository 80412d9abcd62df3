#include "swinf/sim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "swinf/distributions.hpp"
#include "swinf/error.hpp"
#include "swinf/format.hpp"
#include "swinf/inference.hpp"
#include "swinf/normal.hpp"
#include "swinf/parallel.hpp"
#include "swinf/rng.hpp"

namespace swinf {

using nlohmann::json;

void validate(const SimulationPlan& plan) {
  if (plan.p != 2.0) throw InvalidArgument("simulation requires p = 2");
  if (plan.d < 1) throw InvalidArgument("plan: d must be positive");
  if (plan.n < 2 || plan.m < 2) throw InvalidArgument("plan: n and m must be at least 2");
  if (plan.k_values.empty()) throw InvalidArgument("plan: no k values");
  for (auto k : plan.k_values) {
    if (k < 2) throw InvalidArgument("plan: every k must be at least 2");
  }
  if (plan.h_values.empty()) throw InvalidArgument("plan: no h values");
  for (double h : plan.h_values) {
    if (!std::isfinite(h)) throw InvalidArgument("plan: h values must be finite");
  }
  if (!std::isfinite(plan.delta)) throw InvalidArgument("plan: delta must be finite");
  if (plan.replications < 1) throw InvalidArgument("plan: replications must be at least 1");
  if (!(plan.level > 0.0 && plan.level < 1.0)) throw InvalidArgument("plan: level must lie in (0, 1)");
  if (plan.bin_count < 1) throw InvalidArgument("plan: bin_count must be positive");
}

Histogram histogram(const std::vector<double>& values, std::size_t bin_count) {
  if (bin_count == 0) throw InvalidArgument("histogram: bin_count must be positive");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double v : values) {
    if (std::isnan(v)) continue;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  if (!(lo <= hi)) throw InvalidArgument("histogram: no values");

  Histogram out;
  out.counts.assign(bin_count, 0);
  out.edges.resize(bin_count + 1);
  const double width = (hi - lo) / static_cast<double>(bin_count);
  for (std::size_t b = 0; b <= bin_count; ++b) out.edges[b] = lo + width * static_cast<double>(b);
  out.edges[bin_count] = hi;
  for (double v : values) {
    if (std::isnan(v)) continue;
    std::size_t b = 0;
    if (width > 0.0) {
      b = static_cast<std::size_t>((v - lo) / width);
      b = std::min(b, bin_count - 1);
    }
    ++out.counts[b];
  }
  return out;
}

double rejection_threshold(double level) { return normal_quantile(1.0 - 0.5 * level); }

double rejection_rate(const std::vector<double>& statistics, double level) {
  const double q = rejection_threshold(level);
  std::size_t valid = 0;
  std::size_t rejected = 0;
  for (double t : statistics) {
    if (std::isnan(t)) continue;
    ++valid;
    if (std::abs(t) > q) ++rejected;
  }
  return valid == 0 ? std::numeric_limits<double>::quiet_NaN()
                    : static_cast<double>(rejected) / static_cast<double>(valid);
}

SimulationResult run_plan(const SimulationPlan& plan, unsigned threads) {
  validate(plan);
  SimulationResult result;
  result.plan = plan;
  const std::size_t hs = plan.h_values.size();
  const std::size_t cells = plan.k_values.size() * hs;
  const std::size_t reps = plan.replications;

  result.cells.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    result.cells[c].k = plan.k_values[c / hs];
    result.cells[c].h = plan.h_values[c % hs];
    result.cells[c].statistics.assign(reps, std::numeric_limits<double>::quiet_NaN());
  }

  const auto sim_role = static_cast<std::uint64_t>(StreamRole::kSimulation);
  GaussianSpec source{std::vector<double>(plan.d, 0.0), 1.0};

  std::vector<DirectionSet> shared;
  if (plan.reuse_directions) {
    for (std::size_t c = 0; c < cells; ++c) {
      shared.push_back(sample_directions(plan.d, result.cells[c].k,
                                         derive_seed(plan.master_seed, sim_role, c), 2));
    }
  }

  parallel_for(cells * reps, threads, [&](std::size_t task) {
    const std::size_t c = task / reps;
    const std::size_t r = task % reps;
    CellResult& cell = result.cells[c];
    const std::uint64_t key = derive_seed(plan.master_seed, sim_role, c, r);

    GaussianSpec target{std::vector<double>(plan.d, 0.0), 1.0};
    target.mean[0] = std::sqrt(static_cast<double>(plan.d)) + cell.h;
    const auto x = sample_gaussian(source, plan.n, key, 0);
    const auto y = sample_gaussian(target, plan.m, key, 1);

    InferenceOptions opts;
    opts.delta = plan.delta;
    opts.level = 1.0 - plan.level;
    opts.threads = 1;
    const auto rep = plan.reuse_directions
                         ? infer(x, y, shared[c], plan.p, opts)
                         : infer(x, y, sample_directions(plan.d, cell.k, key, 2), plan.p, opts);
    if (rep.statistic) cell.statistics[r] = *rep.statistic;
  });

  for (auto& cell : result.cells) {
    cell.excluded = static_cast<std::size_t>(
        std::count_if(cell.statistics.begin(), cell.statistics.end(),
                      [](double t) { return std::isnan(t); }));
    cell.rejection_rate = rejection_rate(cell.statistics, plan.level);
    if (cell.excluded < cell.statistics.size()) {
      cell.histogram = histogram(cell.statistics, plan.bin_count);
    }
  }
  return result;
}

void write_simulation_csv(const SimulationResult& result, std::ostream& out) {
  const double q = rejection_threshold(result.plan.level);
  out << "cell,k,h,replication,statistic,reject,excluded\n";
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    const auto& cell = result.cells[c];
    for (std::size_t r = 0; r < cell.statistics.size(); ++r) {
      const double t = cell.statistics[r];
      const bool excluded = std::isnan(t);
      out << c << ',' << cell.k << ',' << format_double(cell.h) << ',' << r << ','
          << (excluded ? std::string("nan") : format_double(t)) << ','
          << (!excluded && std::abs(t) > q ? 1 : 0) << ',' << (excluded ? 1 : 0) << '\n';
    }
  }
}

namespace {

json plan_to_json(const SimulationPlan& plan) {
  return json{{"p", plan.p},
              {"d", plan.d},
              {"n", plan.n},
              {"m", plan.m},
              {"k", plan.k_values},
              {"h", plan.h_values},
              {"delta", plan.delta},
              {"replications", plan.replications},
              {"level", plan.level},
              {"master_seed", plan.master_seed},
              {"reuse_directions", plan.reuse_directions},
              {"bin_count", plan.bin_count}};
}

std::size_t get_count(const json& value) {
  if (!value.is_number_unsigned()) throw ParseError("expected a nonnegative integer, got " + value.dump());
  return value.get<std::size_t>();
}

}  // namespace

void write_simulation_json(const SimulationResult& result, std::ostream& out) {
  json cells = json::array();
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    const auto& cell = result.cells[c];
    std::vector<double> valid;
    for (double t : cell.statistics) {
      if (!std::isnan(t)) valid.push_back(t);
    }
    json entry{{"cell", c},
               {"k", cell.k},
               {"h", cell.h},
               {"replications", cell.statistics.size()},
               {"excluded", cell.excluded}};
    if (valid.empty()) {
      entry["rejection_rate"] = nullptr;
      entry["mean_statistic"] = nullptr;
      entry["variance_statistic"] = nullptr;
      entry["histogram"] = nullptr;
    } else {
      entry["rejection_rate"] = cell.rejection_rate;
      entry["mean_statistic"] = mean(valid);
      entry["variance_statistic"] = population_variance(valid);
      entry["histogram"] = json{{"edges", cell.histogram.edges}, {"counts", cell.histogram.counts}};
    }
    cells.push_back(std::move(entry));
  }
  json doc{{"command", "simulate"},
           {"gaussian_method", kGaussianMethod},
           {"rejection_threshold", rejection_threshold(result.plan.level)},
           {"plan", plan_to_json(result.plan)},
           {"cells", std::move(cells)}};
  out << doc.dump(2) << '\n';
}

SimulationPlan parse_plan(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("plan is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("plan must be a JSON object");

  SimulationPlan plan;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "p") {
        plan.p = value.get<double>();
      } else if (key == "d") {
        plan.d = get_count(value);
      } else if (key == "n") {
        plan.n = get_count(value);
      } else if (key == "m") {
        plan.m = get_count(value);
      } else if (key == "k") {
        plan.k_values.clear();
        if (value.is_array()) {
          for (const auto& k : value) plan.k_values.push_back(get_count(k));
        } else {
          plan.k_values.push_back(get_count(value));
        }
      } else if (key == "h") {
        plan.h_values = value.is_array() ? value.get<std::vector<double>>()
                                         : std::vector<double>{value.get<double>()};
      } else if (key == "delta") {
        plan.delta = value.get<double>();
      } else if (key == "replications") {
        plan.replications = get_count(value);
      } else if (key == "level") {
        plan.level = value.get<double>();
      } else if (key == "master_seed") {
        plan.master_seed = get_count(value);
      } else if (key == "reuse_directions") {
        plan.reuse_directions = value.get<bool>();
      } else if (key == "bin_count") {
        plan.bin_count = get_count(value);
      } else {
        throw ParseError("plan: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("plan: ") + e.what());
  }
  try {
    validate(plan);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
  return plan;
}

}  // namespace swinf

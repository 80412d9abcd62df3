#include "swinf/cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "swinf/error.hpp"
#include "swinf/estimators.hpp"
#include "swinf/format.hpp"
#include "swinf/inference.hpp"
#include "swinf/io.hpp"
#include "swinf/sim.hpp"

namespace swinf {

namespace {

// Substream ids under --seed.
constexpr std::uint64_t kDirectionStream = 0;

struct RunConfig {
  std::string x_path;
  std::string y_path;
  std::string plan_path;
  double p = 2.0;
  std::size_t k = 500;
  double delta = 0.0;
  double level = 0.95;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  ReportFormat format = ReportFormat::kJson;
  std::string out_path;
  bool allow_w_only = false;
};

void write_to(const std::string& path, std::ostream& fallback,
              const std::function<void(std::ostream&)>& writer) {
  if (path.empty() || path == "-") {
    writer(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ParseError("cannot open '" + path + "' for writing");
  writer(file);
  if (!file) throw Error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int cmd_two_sample(const RunConfig& cfg, bool is_test, std::ostream& out, std::ostream& err) {
  const auto x = read_sample_csv(cfg.x_path);
  const auto y = read_sample_csv(cfg.y_path);
  if (x.d() != y.d()) {
    throw InvalidArgument("dimension mismatch: '" + cfg.x_path + "' has d=" + std::to_string(x.d()) +
                          ", '" + cfg.y_path + "' has d=" + std::to_string(y.d()));
  }
  if (!(cfg.p > 1.0)) throw InvalidArgument("--p must exceed 1");
  if (cfg.k < 2) throw InvalidArgument("--k must be at least 2");
  if (!(cfg.level > 0.0 && cfg.level < 1.0)) throw InvalidArgument("--level must lie in (0, 1)");
  const auto dirs = sample_directions(x.d(), cfg.k, cfg.seed, kDirectionStream);

  Report report;
  report.command = is_test ? "test" : "estimate";
  report.seed = cfg.seed;
  report.include_test = is_test;

  InferenceOptions opts;
  opts.delta = cfg.delta;
  opts.level = cfg.level;
  opts.allow_w_only = cfg.allow_w_only;
  opts.threads = cfg.threads;

  if (cfg.p != 2.0 && !cfg.allow_w_only) {
    if (is_test) {
      throw Unsupported("test with p != 2 needs --allow-w-only (variance from slicing only)");
    }
    // Point estimate and slicing variance only; no studentization.
    const auto analysis = analyze(x, y, dirs, cfg.p, cfg.threads, false);
    auto& r = report.inference;
    r.p = cfg.p;
    r.n = x.n();
    r.m = y.n();
    r.k = dirs.k();
    r.d = x.d();
    r.estimate = analysis.estimate.sw_pp;
    r.level = cfg.level;
    r.w_only = true;
    r.w_clamped = analysis.w.clamped;
    r.variance = combined_variance(r.n, r.m, r.k, analysis.w.value, 0.0, 0.0);
    r.effective_rate = effective_rate(r.n, r.m, r.k);
    report.has_variance = false;
  } else {
    report.inference = infer(x, y, dirs, cfg.p, opts);
  }

  if (is_test && !report.inference.statistic) {
    throw DegenerateVariance("estimated variance is zero; cannot studentize");
  }
  write_to(cfg.out_path, out, [&](std::ostream& o) { write_report(report, cfg.format, o); });
  (void)err;
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg, bool seed_given, std::ostream& out) {
  auto plan = parse_plan(read_file(cfg.plan_path));
  if (seed_given) plan.master_seed = cfg.seed;
  const auto result = run_plan(plan, cfg.threads);
  const std::string prefix = cfg.out_path.empty() ? "simulation" : cfg.out_path;
  write_to(prefix + ".csv", out, [&](std::ostream& o) { write_simulation_csv(result, o); });
  write_to(prefix + ".json", out, [&](std::ostream& o) { write_simulation_json(result, o); });

  out << "cell      k         h      r  excluded\n";
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    const auto& cell = result.cells[c];
    out << std::setw(4) << c << std::setw(7) << cell.k << std::setw(10) << cell.h << std::setw(7)
        << std::fixed << std::setprecision(4) << cell.rejection_rate << std::defaultfloat
        << std::setprecision(6) << std::setw(10) << cell.excluded << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sliced Wasserstein estimation and two-sample inference"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  RunConfig cfg;
  std::string format = "json";
  const std::map<std::string, ReportFormat> formats{{"json", ReportFormat::kJson},
                                                    {"csv", ReportFormat::kCsv}};

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "Master seed for every random stream")->envname("SWINF_SEED");
    sub->add_option("--threads", cfg.threads, "Worker threads")
        ->envname("SWINF_THREADS")
        ->check(CLI::Range(1u, 1024u));
    sub->add_option("--out", cfg.out_path, "Output path (prefix for simulate)")->envname("SWINF_OUT");
  };
  auto add_samples = [&](CLI::App* sub) {
    sub->add_option("--x", cfg.x_path, "Source sample CSV")->required()->envname("SWINF_X");
    sub->add_option("--y", cfg.y_path, "Target sample CSV")->required()->envname("SWINF_Y");
    sub->add_option("--p", cfg.p, "Cost exponent p > 1")->envname("SWINF_P");
    sub->add_option("--k", cfg.k, "Number of random directions")->envname("SWINF_K");
    sub->add_option("--level", cfg.level, "Confidence level")->envname("SWINF_LEVEL");
    sub->add_option("--format", format, "csv or json")
        ->envname("SWINF_FORMAT")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--allow-w-only", cfg.allow_w_only,
                  "For p != 2, studentize with the slicing variance alone (requires k << nm/(n+m))")
        ->envname("SWINF_ALLOW_W_ONLY");
    add_common(sub);
  };

  auto* estimate = app.add_subcommand("estimate", "Point estimate, variance components and CI");
  add_samples(estimate);
  auto* test = app.add_subcommand("test", "Studentized test of H0: SW_p^p = delta");
  add_samples(test);
  test->add_option("--delta", cfg.delta, "Null value")->required()->envname("SWINF_DELTA");
  auto* simulate = app.add_subcommand("simulate", "Run a simulation plan");
  simulate->add_option("--plan", cfg.plan_path, "Plan JSON")->required()->envname("SWINF_PLAN");
  add_common(simulate);

  std::vector<char*> argv;
  std::vector<std::string> storage(args.begin(), args.end());
  if (storage.empty()) storage.emplace_back("swinf");
  for (auto& a : storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  cfg.format = formats.at(format);

  try {
    if (estimate->parsed()) return cmd_two_sample(cfg, false, out, err);
    if (test->parsed()) return cmd_two_sample(cfg, true, out, err);
    const bool seed_given = simulate->count("--seed") > 0 || std::getenv("SWINF_SEED") != nullptr;
    return cmd_simulate(cfg, seed_given, out);
  } catch (const DegenerateVariance& e) {
    err << "error: " << e.what() << '\n';
    return kExitDegenerate;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const Unsupported& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace swinf

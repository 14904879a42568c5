// SPDX-License-Identifier: Apache-2.0
#include "bbgwo/cli.hpp"

#include "bbgwo/benchmarks.hpp"
#include "bbgwo/distmath.hpp"
#include "bbgwo/harness.hpp"
#include "bbgwo/optimizers.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace bbgwo::cli {

namespace {

/// Input problems detected before any computation starts (exit 1).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonFlags {
  std::uint64_t seed = 0;
  std::string output;
};

struct OptimizeFlags {
  std::string optimizer = "bbgwo";
  int function_id = 0;
  int population = 20;
  int iterations = 500;
  std::string leader_policy = "elitist";
  std::string f12_params;
};

struct TableFlags {
  std::vector<int> functions;
  int trials = 30;
  int population = 20;
  int iterations = 500;
  double tolerance = 1e-3;
  bool include_12 = false;
  std::string f12_params;
  std::string json_output;
  std::string format = "csv";
  std::string leader_policy = "elitist";
  int threads = 1;
};

struct UpdateParams {
  double a = 2.0;
  double x = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  int samples = 100000;
};

struct VerifyFlags {
  UpdateParams params;
  int grid_points = 4096;
};

struct HistogramFlags {
  UpdateParams params;
  int bins = 80;
};

struct ListFlags {
  std::string format = "csv";
};

void add_update_params(CLI::App* cmd, UpdateParams& p) {
  cmd->add_option("--a", p.a, "Step parameter a")->check(CLI::NonNegativeNumber);
  cmd->add_option("--x", p.x, "Current position component")->required();
  cmd->add_option("--p1", p.p1, "First leader component")->required();
  cmd->add_option("--p2", p.p2, "Second leader component")->required();
  cmd->add_option("--p3", p.p3, "Third leader component")->required();
  cmd->add_option("--samples", p.samples, "Monte Carlo sample size")
      ->check(CLI::Range(1, 100000000));
}

void validate_update_params(const UpdateParams& p) {
  for (double v : {p.a, p.x, p.p1, p.p2, p.p3}) {
    if (!std::isfinite(v)) throw ValidationError("parameters must be finite");
  }
  const bool degenerate = p.a == 0.0 || (p.x == 0.0 && p.p1 == 0.0 &&
                                         p.p2 == 0.0 && p.p3 == 0.0);
  if (degenerate) {
    throw ValidationError(
        "degenerate distribution: the update is a point mass (a = 0 or all-zero "
        "x, p1, p2, p3)");
  }
}

Fn12Constants load_fn12(const std::string& path) {
  Fn12Constants c;
  if (path.empty()) return c;
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open --f12-params file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
    const auto p = doc.at("p").get<std::vector<double>>();
    const auto q = doc.at("q").get<std::vector<double>>();
    if (p.size() != 6 || q.size() != 6) {
      throw ValidationError("--f12-params: p and q must each have 6 entries");
    }
    std::copy(p.begin(), p.end(), c.p.begin());
    std::copy(q.begin(), q.end(), c.q.begin());
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("--f12-params: ") + e.what());
  }
  return c;
}

void write_output(const std::string& path, const std::string& content,
                  std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write '" + path + "'");
  file << content;
  if (!file) throw std::runtime_error("write to '" + path + "' failed");
}

std::string num(double v) { return format_number(v); }

int cmd_optimize(const CommonFlags& common, const OptimizeFlags& flags,
                 std::ostream& out) {
  RunConfig config;
  BenchmarkSpec spec;
  try {
    config.optimizer = parse_optimizer(flags.optimizer);
    config.leader_policy = parse_leader_policy(flags.leader_policy);
    config.population_size = flags.population;
    config.max_iterations = flags.iterations;
    config.seed = common.seed;
    config.validate();
    spec = benchmark(flags.function_id, load_fn12(flags.f12_params));
  } catch (const std::logic_error& e) {
    throw ValidationError(e.what());
  }

  const RunResult result = run(config, spec);
  nlohmann::ordered_json doc;
  doc["optimizer"] = to_string(config.optimizer);
  doc["function_id"] = spec.id;
  doc["function_name"] = spec.name;
  doc["seed"] = config.seed;
  doc["population_size"] = config.population_size;
  doc["max_iterations"] = config.max_iterations;
  doc["leader_policy"] = to_string(config.leader_policy);
  doc["best_fitness"] = result.best_fitness;
  doc["best_position"] = std::vector<double>(
      result.best_position.data(),
      result.best_position.data() + result.best_position.size());
  doc["evaluations_used"] = result.evaluations_used;
  doc["fitness_trace"] = result.fitness_trace;

  const std::string path = common.output.empty() ? "result.json" : common.output;
  write_output(path, doc.dump(2) + "\n", out);
  if (path != "-") out << "best_fitness " << num(result.best_fitness) << '\n';
  return kOk;
}

int cmd_table(const CommonFlags& common, const TableFlags& flags,
              std::ostream& out) {
  ExperimentPlan plan;
  try {
    std::vector<int> ids = flags.functions;
    if (ids.empty()) {
      ids = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
      if (flags.include_12) ids.push_back(12);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    for (int id : ids) {
      if (id < 1 || id > 12) {
        throw ValidationError("unknown benchmark function id " + std::to_string(id) +
                              " (valid: 1-12)");
      }
      if (id == 12 && !flags.include_12) {
        throw ValidationError("function 12 needs --include-12 (its constants are "
                              "user supplied, see --f12-params)");
      }
    }
    plan = ExperimentPlan::standard(ids);
    plan.trials = flags.trials;
    plan.base_seed = common.seed;
    plan.population_size = flags.population;
    plan.max_iterations = flags.iterations;
    plan.tolerance = flags.tolerance;
    plan.leader_policy = parse_leader_policy(flags.leader_policy);
    plan.threads = flags.threads;
    plan.fn12 = load_fn12(flags.f12_params);
    plan.validate();
  } catch (const std::logic_error& e) {
    throw ValidationError(e.what());
  }

  const auto stats = run_experiment(plan);
  const ResultsTable table = results_table(plan, stats, plan.fn12);
  const std::string body = flags.format == "json"
                               ? experiment_json(plan, stats, table).dump(2) + "\n"
                               : to_csv(table);
  write_output(common.output, body, out);
  if (!flags.json_output.empty()) {
    write_output(flags.json_output,
                 experiment_json(plan, stats, table).dump(2) + "\n", out);
  }
  return kOk;
}

int cmd_verify_dist(const CommonFlags& common, const VerifyFlags& flags,
                    std::ostream& out) {
  const UpdateParams& p = flags.params;
  validate_update_params(p);
  const std::array<LeaderUpdateDist, 3> leaders{make_leader_dist(p.a, p.x, p.p1),
                                                make_leader_dist(p.a, p.x, p.p2),
                                                make_leader_dist(p.a, p.x, p.p3)};
  const DensityGrid h =
      h_pdf_numeric(leaders[0], leaders[1], leaders[2], flags.grid_points);
  const NormalParams np = update_moments(p.a, p.x, p.p1, p.p2, p.p3);

  RngStream rng(common.seed);
  const auto samples = sample_gwo_update(p.a, p.x, p.p1, p.p2, p.p3, rng, p.samples);

  // Empirical density on the h cells.
  const Eigen::Index cells = h.u.size();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(cells), 0);
  const double first_edge = h.u[0] - 0.5 * h.spacing;
  for (double s : samples) {
    const double t = std::floor((s - first_edge) / h.spacing);
    if (t >= 0.0 && t < static_cast<double>(cells)) ++counts[static_cast<std::size_t>(t)];
  }
  const double n = static_cast<double>(samples.size());

  std::ostringstream csv;
  csv << "u,analytic_h,normal_pdf,empirical_frequency_density\n";
  for (Eigen::Index i = 0; i < cells; ++i) {
    csv << num(h.u[i]) << ',' << num(h.density[i]) << ','
        << num(normal_pdf(h.u[i], np.mu, np.sigma)) << ','
        << num(static_cast<double>(counts[static_cast<std::size_t>(i)]) / (n * h.spacing))
        << '\n';
  }

  double mc_mean = 0.0;
  for (double s : samples) mc_mean += s;
  mc_mean /= n;
  double mc_var = 0.0;
  for (double s : samples) mc_var += (s - mc_mean) * (s - mc_mean);
  mc_var /= n;

  const double h_integral = h.integral();
  std::array<double, 3> g_integrals{};
  for (std::size_t k = 0; k < 3; ++k) {
    g_integrals[k] = leaders[k].degenerate()
                         ? 1.0
                         : integrate_against_g(leaders[k], [](double) { return 1.0; });
  }
  const double ks_h = ks_distance(samples, [&h](double u) { return h.cdf(u); });
  const double ks_normal = ks_distance(
      samples, [&np](double u) { return normal_cdf(u, np.mu, np.sigma); });

  write_output(common.output.empty() ? "verify_dist.csv" : common.output, csv.str(),
               out);

  bool normalized = std::abs(h_integral - 1.0) <= 0.01;
  out << "h_integral " << num(h_integral) << '\n';
  for (std::size_t k = 0; k < 3; ++k) {
    out << "g" << k + 1 << "_integral " << num(g_integrals[k]) << '\n';
    normalized = normalized && std::abs(g_integrals[k] - 1.0) <= 0.01;
  }
  out << "analytic_mean " << num(np.mu) << '\n'
      << "analytic_variance " << num(np.sigma * np.sigma) << '\n'
      << "monte_carlo_mean " << num(mc_mean) << '\n'
      << "monte_carlo_variance " << num(mc_var) << '\n'
      << "ks_h_vs_monte_carlo " << num(ks_h) << '\n'
      << "ks_normal_vs_monte_carlo " << num(ks_normal) << '\n'
      << "normalization " << (normalized ? "ok" : "FAILED") << '\n';
  return normalized ? kOk : kRuntimeError;
}

int cmd_histogram(const CommonFlags& common, const HistogramFlags& flags,
                  std::ostream& out) {
  const UpdateParams& p = flags.params;
  validate_update_params(p);
  const NormalParams np = update_moments(p.a, p.x, p.p1, p.p2, p.p3);
  RngStream rng(common.seed);
  const auto samples = sample_gwo_update(p.a, p.x, p.p1, p.p2, p.p3, rng, p.samples);
  const Histogram hist = build_histogram(samples, flags.bins);

  std::ostringstream csv;
  csv << "bin_center,bin_lo,bin_hi,count,frequency_density,normal_pdf\n";
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double density = static_cast<double>(hist.counts[i]) /
                           (static_cast<double>(hist.total) * hist.width(i));
    csv << num(hist.center(i)) << ',' << num(hist.bin_edges[i]) << ','
        << num(hist.bin_edges[i + 1]) << ',' << hist.counts[i] << ',' << num(density)
        << ',' << num(normal_pdf(hist.center(i), np.mu, np.sigma)) << '\n';
  }
  write_output(common.output, csv.str(), out);
  return kOk;
}

int cmd_list_benchmarks(const CommonFlags& common, const ListFlags& flags,
                        std::ostream& out) {
  const auto specs = registry();
  std::string body;
  if (flags.format == "json") {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& s : specs) {
      doc.push_back({{"id", s.id},
                     {"name", s.name},
                     {"dimension", s.dimension},
                     {"lower", s.bounds.lower()[0]},
                     {"upper", s.bounds.upper()[0]},
                     {"minimum", s.reference_minimum},
                     {"multimodal", s.multimodal}});
    }
    body = doc.dump(2) + "\n";
  } else {
    std::ostringstream csv;
    csv << "id,name,dimension,lower,upper,minimum,multimodal\n";
    for (const auto& s : specs) {
      csv << s.id << ',' << s.name << ',' << s.dimension << ','
          << num(s.bounds.lower()[0]) << ',' << num(s.bounds.upper()[0]) << ','
          << num(s.reference_minimum) << ',' << (s.multimodal ? "yes" : "no") << '\n';
    }
    body = csv.str();
  }
  write_output(common.output, body, out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grey wolf optimizer toolkit: GWO, bare-bones GWO, bare-bones PSO "
               "and update-distribution checks"};
  app.require_subcommand(1);

  CommonFlags common;
  const auto add_common = [&common](CLI::App* cmd, const std::string& output_help) {
    cmd->add_option("--seed", common.seed, "Base random seed")->capture_default_str();
    cmd->add_option("-o,--output", common.output, output_help);
  };

  OptimizeFlags optimize;
  auto* opt_cmd = app.add_subcommand("optimize", "Single optimizer run, JSON result");
  opt_cmd->add_option("--optimizer", optimize.optimizer, "gwo, bbgwo or bbpso")
      ->capture_default_str();
  opt_cmd->add_option("-f,--function", optimize.function_id, "Benchmark id (1-12)")
      ->required();
  opt_cmd->add_option("-N,--population", optimize.population, "Population size")
      ->check(CLI::Range(3, 1000000))
      ->capture_default_str();
  opt_cmd->add_option("-T,--iterations", optimize.iterations, "Maximum iterations")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  opt_cmd->add_option("--leader-policy", optimize.leader_policy,
                      "elitist, current or sequential")
      ->capture_default_str();
  opt_cmd->add_option("--f12-params", optimize.f12_params,
                      "JSON file with p and q (6 entries each) for function 12");
  add_common(opt_cmd, "JSON result path (default result.json, '-' for stdout)");

  TableFlags table;
  auto* table_cmd = app.add_subcommand("table", "Repeated-trial GWO vs BBGWO table");
  table_cmd->add_option("--functions", table.functions, "Function ids, e.g. 1,2")
      ->delimiter(',');
  table_cmd->add_option("--trials", table.trials, "Trials per cell")
      ->check(CLI::Range(1, 1000000))
      ->capture_default_str();
  table_cmd->add_option("-N,--population", table.population, "Population size")
      ->check(CLI::Range(3, 1000000))
      ->capture_default_str();
  table_cmd->add_option("-T,--iterations", table.iterations, "Maximum iterations")
      ->check(CLI::Range(1, 100000000))
      ->capture_default_str();
  table_cmd->add_option("--tol", table.tolerance, "Success tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  table_cmd->add_flag("--include-12", table.include_12, "Add function 12");
  table_cmd->add_option("--f12-params", table.f12_params,
                        "JSON file with p and q (6 entries each) for function 12");
  table_cmd->add_option("--format", table.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  table_cmd->add_option("--json", table.json_output, "Also write the JSON document here");
  table_cmd->add_option("--leader-policy", table.leader_policy,
                        "elitist, current or sequential")
      ->capture_default_str();
  table_cmd->add_option("--threads", table.threads, "Worker threads per cell")
      ->check(CLI::Range(1, 1024))
      ->capture_default_str();
  add_common(table_cmd, "Table path (default stdout)");

  VerifyFlags verify;
  auto* verify_cmd = app.add_subcommand(
      "verify-dist", "Compare exact, normal and Monte Carlo update densities");
  add_update_params(verify_cmd, verify.params);
  verify_cmd->add_option("--grid-points", verify.grid_points, "Convolution grid size")
      ->check(CLI::Range(256, 1 << 20))
      ->capture_default_str();
  add_common(verify_cmd, "CSV path (default verify_dist.csv, '-' for stdout)");

  HistogramFlags hist;
  auto* hist_cmd = app.add_subcommand(
      "histogram", "Monte Carlo histogram of the GWO update with normal PDF");
  add_update_params(hist_cmd, hist.params);
  hist_cmd->add_option("--bins", hist.bins, "Number of bins")
      ->check(CLI::Range(1, 10000000))
      ->capture_default_str();
  add_common(hist_cmd, "CSV path (default stdout)");

  ListFlags list;
  auto* list_cmd = app.add_subcommand("list-benchmarks", "Benchmark catalogue");
  list_cmd->add_option("--format", list.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  add_common(list_cmd, "Output path (default stdout)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  }

  try {
    if (opt_cmd->parsed()) return cmd_optimize(common, optimize, out);
    if (table_cmd->parsed()) return cmd_table(common, table, out);
    if (verify_cmd->parsed()) return cmd_verify_dist(common, verify, out);
    if (hist_cmd->parsed()) return cmd_histogram(common, hist, out);
    if (list_cmd->parsed()) return cmd_list_benchmarks(common, list, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kValidationError;
}

}  // namespace bbgwo::cli

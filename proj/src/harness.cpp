// SPDX-License-Identifier: Apache-2.0
#include "bbgwo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bbgwo {

void ExperimentPlan::validate() const {
  if (cells.empty()) throw std::invalid_argument("experiment plan has no cells");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  for (const auto& cell : cells) {
    if (cell.function_id < 1 || cell.function_id > 12) {
      throw std::out_of_range("unknown benchmark function id " +
                              std::to_string(cell.function_id) + " (valid: 1-12)");
    }
  }
  RunConfig probe;
  probe.population_size = population_size;
  probe.max_iterations = max_iterations;
  probe.validate();
}

ExperimentPlan ExperimentPlan::standard(std::vector<int> function_ids) {
  ExperimentPlan plan;
  for (int id : function_ids) {
    plan.cells.push_back({id, OptimizerId::GWO});
    plan.cells.push_back({id, OptimizerId::BBGWO});
  }
  return plan;
}

int success_count(std::span<const double> best_values, double reference_min,
                  double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("success_count: tol must be > 0");
  return static_cast<int>(std::count_if(
      best_values.begin(), best_values.end(),
      [&](double v) { return v - reference_min < tol; }));
}

TrialStats summarize(int function_id, OptimizerId optimizer,
                     std::vector<double> per_trial_best, double reference_min,
                     double tol) {
  TrialStats s;
  s.function_id = function_id;
  s.optimizer = optimizer;
  s.trials = static_cast<int>(per_trial_best.size());
  s.success_count = success_count(per_trial_best, reference_min, tol);
  if (!per_trial_best.empty()) {
    // Sum in sorted order so the result does not depend on trial order.
    std::vector<double> sorted(per_trial_best);
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double sum = 0.0;
    for (double v : sorted) sum += v;
    s.mean_best = sum / n;
    double sq = 0.0;
    for (double v : sorted) sq += (v - s.mean_best) * (v - s.mean_best);
    s.variance_best = sq / n;
  }
  s.per_trial_best = std::move(per_trial_best);
  return s;
}

TrialStats run_trials(const TrialCell& cell, const RunConfig& base,
                      std::span<const std::uint64_t> seeds, double tol,
                      const Fn12Constants& fn12, int threads) {
  if (seeds.empty()) throw std::invalid_argument("run_trials: trials must be >= 1");
  const BenchmarkSpec spec = benchmark(cell.function_id, fn12);
  RunConfig config = base;
  config.optimizer = cell.optimizer;
  config.validate();

  std::vector<double> best(seeds.size());
  const auto one_trial = [&](std::size_t i) {
    RunConfig trial = config;
    trial.seed = seeds[i];
    best[i] = run(trial, spec).best_fitness;
  };

  const auto workers = static_cast<std::size_t>(std::max(threads, 1));
  if (workers < 2 || seeds.size() < 2) {
    for (std::size_t i = 0; i < seeds.size(); ++i) one_trial(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_lock;
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < std::min(workers, seeds.size()); ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < seeds.size(); i = next++) {
            try {
              one_trial(i);
            } catch (...) {
              std::lock_guard guard(failure_lock);
              if (!failure) failure = std::current_exception();
            }
          }
        });
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  return summarize(cell.function_id, cell.optimizer, std::move(best),
                   spec.reference_minimum, tol);
}

TrialStats run_trials(const TrialCell& cell, const RunConfig& base,
                      std::uint64_t base_seed, int trials, double tol,
                      const Fn12Constants& fn12, int threads) {
  if (trials < 1) throw std::invalid_argument("run_trials: trials must be >= 1");
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = base_seed + i;
  return run_trials(cell, base, seeds, tol, fn12, threads);
}

std::vector<TrialStats> run_experiment(const ExperimentPlan& plan) {
  plan.validate();
  RunConfig base;
  base.population_size = plan.population_size;
  base.max_iterations = plan.max_iterations;
  base.leader_policy = plan.leader_policy;
  std::vector<TrialStats> out;
  out.reserve(plan.cells.size());
  for (const auto& cell : plan.cells) {
    out.push_back(run_trials(cell, base, plan.base_seed, plan.trials,
                             plan.tolerance, plan.fn12, plan.threads));
  }
  return out;
}

ResultsTable results_table(const ExperimentPlan& plan,
                           const std::vector<TrialStats>& stats,
                           const Fn12Constants& fn12) {
  std::map<int, TableRow> rows;
  for (const auto& cell : plan.cells) {
    if (cell.optimizer == OptimizerId::BBPSO) {
      throw std::invalid_argument("results table has no bbpso columns");
    }
    const auto it = std::find_if(stats.begin(), stats.end(), [&](const TrialStats& s) {
      return s.function_id == cell.function_id && s.optimizer == cell.optimizer;
    });
    if (it == stats.end()) {
      throw std::invalid_argument("missing stats for function " +
                                  std::to_string(cell.function_id) + " / " +
                                  to_string(cell.optimizer));
    }
    TableRow& row = rows[cell.function_id];
    row.function_id = cell.function_id;
    row.minimum = benchmark(cell.function_id, fn12).reference_minimum;
    const TableEntry entry{it->mean_best, it->variance_best, it->success_count};
    (cell.optimizer == OptimizerId::GWO ? row.gwo : row.bbgwo) = entry;
  }
  ResultsTable table;
  for (auto& [id, row] : rows) table.rows.push_back(row);
  return table;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const ResultsTable& table) {
  std::ostringstream out;
  out << kTableCsvHeader << '\n';
  const auto entry = [&out](const std::optional<TableEntry>& e) {
    if (e) {
      out << ',' << format_number(e->mean) << ',' << format_number(e->variance)
          << ',' << e->successes;
    } else {
      out << ",,,";
    }
  };
  for (const auto& row : table.rows) {
    out << row.function_id << ',' << format_number(row.minimum);
    entry(row.gwo);
    entry(row.bbgwo);
    out << '\n';
  }
  return out.str();
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

int parse_int(const std::string& s) {
  std::size_t used = 0;
  const int v = std::stoi(s, &used);
  if (used != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

std::optional<TableEntry> parse_entry(const std::vector<std::string>& f,
                                      std::size_t at) {
  if (f[at].empty() && f[at + 1].empty() && f[at + 2].empty()) return std::nullopt;
  return TableEntry{parse_double(f[at]), parse_double(f[at + 1]), parse_int(f[at + 2])};
}

}  // namespace

ResultsTable parse_table_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != kTableCsvHeader) {
    throw std::invalid_argument("table CSV: missing or unexpected header");
  }
  ResultsTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 8) {
      throw std::invalid_argument("table CSV: expected 8 fields, got " +
                                  std::to_string(f.size()));
    }
    TableRow row;
    row.function_id = parse_int(f[0]);
    row.minimum = parse_double(f[1]);
    row.gwo = parse_entry(f, 2);
    row.bbgwo = parse_entry(f, 5);
    table.rows.push_back(row);
  }
  return table;
}

nlohmann::json to_json(const TrialStats& s) {
  return {{"function_id", s.function_id},
          {"optimizer", to_string(s.optimizer)},
          {"trials", s.trials},
          {"mean_best", s.mean_best},
          {"variance_best", s.variance_best},
          {"success_count", s.success_count},
          {"per_trial_best", s.per_trial_best}};
}

nlohmann::json to_json(const ResultsTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  const auto entry = [](const std::optional<TableEntry>& e) -> nlohmann::json {
    if (!e) return nullptr;
    return {{"mean", e->mean}, {"variance", e->variance}, {"successes", e->successes}};
  };
  for (const auto& row : table.rows) {
    rows.push_back({{"function_id", row.function_id},
                    {"min", row.minimum},
                    {"gwo", entry(row.gwo)},
                    {"bbgwo", entry(row.bbgwo)}});
  }
  return rows;
}

nlohmann::json experiment_json(const ExperimentPlan& plan,
                               const std::vector<TrialStats>& stats,
                               const ResultsTable& table) {
  nlohmann::json cells = nlohmann::json::array();
  for (const auto& s : stats) cells.push_back(to_json(s));
  return {{"population_size", plan.population_size},
          {"max_iterations", plan.max_iterations},
          {"trials", plan.trials},
          {"base_seed", plan.base_seed},
          {"tolerance", plan.tolerance},
          {"leader_policy", to_string(plan.leader_policy)},
          {"stats", cells},
          {"table", to_json(table)}};
}

}  // namespace bbgwo

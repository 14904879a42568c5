// SPDX-License-Identifier: Apache-2.0
//
// Repeated-trial experiments and the averaged results table.
#pragma once

#include "bbgwo/benchmarks.hpp"
#include "bbgwo/optimizers.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace bbgwo {

struct TrialCell {
  int function_id = 1;
  OptimizerId optimizer = OptimizerId::GWO;
};

struct TrialStats {
  int function_id = 0;
  OptimizerId optimizer = OptimizerId::GWO;
  int trials = 0;
  double mean_best = 0.0;
  /// Population variance (divisor = trials).
  double variance_best = 0.0;
  int success_count = 0;
  std::vector<double> per_trial_best;
};

struct ExperimentPlan {
  std::vector<TrialCell> cells;
  int trials = 30;
  std::uint64_t base_seed = 0;
  int population_size = 20;
  int max_iterations = 500;
  double tolerance = 1e-3;
  LeaderPolicy leader_policy = LeaderPolicy::Elitist;
  Fn12Constants fn12;
  /// Worker threads per cell; values < 2 run trials sequentially.
  int threads = 1;

  void validate() const;

  /// GWO and BBGWO on the given functions (default 1..11).
  static ExperimentPlan standard(std::vector<int> function_ids = {1, 2, 3, 4, 5, 6,
                                                                   7, 8, 9, 10, 11});
};

/// Number of v with v - reference_min < tol. Throws if tol <= 0.
int success_count(std::span<const double> best_values, double reference_min,
                  double tol);

/// Statistics over the given per-trial bests. Invariant to their order.
TrialStats summarize(int function_id, OptimizerId optimizer,
                     std::vector<double> per_trial_best, double reference_min,
                     double tol);

/// Trial i runs with seed seeds[i]; per_trial_best keeps that order.
TrialStats run_trials(const TrialCell& cell, const RunConfig& base,
                      std::span<const std::uint64_t> seeds, double tol,
                      const Fn12Constants& fn12 = {}, int threads = 1);

/// Trial i runs with seed base_seed + i.
TrialStats run_trials(const TrialCell& cell, const RunConfig& base,
                      std::uint64_t base_seed, int trials, double tol,
                      const Fn12Constants& fn12 = {}, int threads = 1);

std::vector<TrialStats> run_experiment(const ExperimentPlan& plan);

struct TableEntry {
  double mean = 0.0;
  double variance = 0.0;
  int successes = 0;

  bool operator==(const TableEntry&) const = default;
};

struct TableRow {
  int function_id = 0;
  double minimum = 0.0;
  std::optional<TableEntry> gwo;
  std::optional<TableEntry> bbgwo;

  bool operator==(const TableRow&) const = default;
};

struct ResultsTable {
  std::vector<TableRow> rows;

  bool operator==(const ResultsTable&) const = default;
};

/// One row per function of the plan (ascending id). Throws if a plan cell has
/// no stats or a cell uses an optimizer without table columns.
ResultsTable results_table(const ExperimentPlan& plan,
                           const std::vector<TrialStats>& stats,
                           const Fn12Constants& fn12 = {});

inline constexpr const char* kTableCsvHeader =
    "function_id,min,gwo_mean,gwo_var,gwo_success,bbgwo_mean,bbgwo_var,"
    "bbgwo_success";

/// Header row plus one line per row; absent optimizer columns left empty.
std::string to_csv(const ResultsTable& table);
ResultsTable parse_table_csv(const std::string& csv);

nlohmann::json to_json(const TrialStats& stats);
nlohmann::json to_json(const ResultsTable& table);
nlohmann::json experiment_json(const ExperimentPlan& plan,
                               const std::vector<TrialStats>& stats,
                               const ResultsTable& table);

/// %.17g
std::string format_number(double v);

}  // namespace bbgwo

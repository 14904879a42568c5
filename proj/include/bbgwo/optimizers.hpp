// SPDX-License-Identifier: Apache-2.0
//
// GWO, bare-bones GWO and bare-bones PSO sharing one synchronous loop:
// every agent is moved from the same frozen guide (leaders or bests), clamped
// to the box, then the whole population is evaluated and the guides refreshed.
#pragma once

#include "bbgwo/benchmarks.hpp"
#include "bbgwo/core.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace bbgwo {

enum class OptimizerId { GWO, BBGWO, BBPSO };

std::string to_string(OptimizerId id);
/// Case-insensitive "gwo" / "bbgwo" / "bbpso". Throws std::invalid_argument.
OptimizerId parse_optimizer(const std::string& name);

/// How p1..p3 are refreshed after each evaluation sweep.
enum class LeaderPolicy {
  /// Best three of {previous leaders} U {current agents}; leaders win ties.
  Elitist,
  /// Best three of the current agents only.
  Current,
  /// Agents visited in index order; each one replaces the first leader it
  /// strictly beats (alpha, else beta, else delta) without demoting the
  /// displaced leader. This is the bookkeeping of the widely circulated
  /// reference GWO code.
  Sequential,
};

std::string to_string(LeaderPolicy policy);
LeaderPolicy parse_leader_policy(const std::string& name);

/// N >= 3 and T >= 0 (T = 0 returns the best initial agent).
struct RunConfig {
  OptimizerId optimizer = OptimizerId::BBGWO;
  int population_size = 20;
  int max_iterations = 500;
  std::uint64_t seed = 0;
  LeaderPolicy leader_policy = LeaderPolicy::Elitist;
  /// Holds the step parameter constant instead of the 2 -> 0 schedule.
  std::optional<double> fixed_step;

  void validate() const;
};

struct RunResult {
  Vector best_position;
  double best_fitness = 0.0;
  /// Best-so-far after initialisation (index 0) and after each iteration.
  std::vector<double> fitness_trace;
  std::int64_t evaluations_used = 0;
};

/// a = 2 (1 - t / T).
double step_parameter(int t, int max_iterations);

/// Indices of the three smallest fitnesses in non-decreasing order, ties to
/// the lower index. NaN ranks last.
std::array<std::size_t, 3> select_leaders(std::span<const double> fitness);

/// Re-selects pop.leaders under the given policy. Leaders with an empty
/// position are treated as unset (the first call after initialisation).
void refresh_leaders(Population& pop, LeaderPolicy policy);

/// Per dimension: (1/3) sum_k [p_kj + A_kj |C_kj p_kj - x_j|] with fresh
/// A ~ U[-a, a], C ~ U[0, 2] for every (k, j).
Vector gwo_step(const Vector& x, const Vector& p1, const Vector& p2,
                const Vector& p3, double a, RngStream& rng);

/// Per dimension: one normal draw with the moments of the GWO update.
Vector bbgwo_step(const Vector& x, const Vector& p1, const Vector& p2,
                  const Vector& p3, double a, RngStream& rng);

struct BbpsoMemory {
  std::vector<Vector> personal_best;
  std::vector<double> personal_fitness;
  std::size_t global_index = 0;

  const Vector& global_best() const { return personal_best[global_index]; }
  /// Adopts `position` as agent i's best if strictly better.
  void offer(std::size_t i, const Vector& position, double fitness);
  /// Points global_index at the best personal entry (lowest index on ties).
  void refresh_global();
};

/// Per dimension: N((pb_ij + gb_j) / 2, |gb_j - pb_ij|).
Vector bbpso_step(std::size_t agent_index, const BbpsoMemory& memory,
                  RngStream& rng);

RunResult run(const RunConfig& config, const Objective& objective,
              const Bounds& bounds, RngStream& rng);
RunResult run(const RunConfig& config, const BenchmarkSpec& spec, RngStream& rng);
/// Uses a stream seeded from config.seed.
RunResult run(const RunConfig& config, const BenchmarkSpec& spec);

}  // namespace bbgwo

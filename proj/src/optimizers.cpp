// SPDX-License-Identifier: Apache-2.0
#include "bbgwo/optimizers.hpp"

#include "bbgwo/distmath.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bbgwo {

namespace {

// Orders NaN after every number.
double rank_key(double fitness) {
  return std::isnan(fitness) ? std::numeric_limits<double>::infinity() : fitness;
}

void require_same_size(const Vector& x, const Vector& p1, const Vector& p2,
                       const Vector& p3, const char* where) {
  if (p1.size() != x.size() || p2.size() != x.size() || p3.size() != x.size()) {
    throw std::invalid_argument(std::string(where) + ": vector length mismatch");
  }
}

Vector random_position(const Bounds& bounds, RngStream& rng) {
  Vector x(bounds.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    x[j] = rng.uniform(bounds.lower()[j], bounds.upper()[j]);
  }
  return x;
}

RunResult run_leader_based(const RunConfig& config, const Objective& objective,
                           const Bounds& bounds, RngStream& rng) {
  const auto n_agents = static_cast<std::size_t>(config.population_size);
  Population pop;
  pop.agents.resize(n_agents);
  for (auto& agent : pop.agents) {
    agent.position = random_position(bounds, rng);
    agent.fitness = objective(agent.position);
    agent.evaluated = true;
  }
  refresh_leaders(pop, LeaderPolicy::Current);

  RunResult result;
  result.evaluations_used = static_cast<std::int64_t>(n_agents);
  result.best_position = pop.leaders[0].position;
  result.best_fitness = pop.leaders[0].fitness;
  result.fitness_trace.reserve(static_cast<std::size_t>(config.max_iterations) + 1);
  result.fitness_trace.push_back(result.best_fitness);

  std::vector<Vector> moved(n_agents);
  for (int t = 0; t < config.max_iterations; ++t) {
    const double a = config.fixed_step.value_or(step_parameter(t, config.max_iterations));
    const Vector& p1 = pop.leaders[0].position;
    const Vector& p2 = pop.leaders[1].position;
    const Vector& p3 = pop.leaders[2].position;
    for (std::size_t i = 0; i < n_agents; ++i) {
      const Vector& x = pop.agents[i].position;
      moved[i] = config.optimizer == OptimizerId::GWO
                     ? gwo_step(x, p1, p2, p3, a, rng)
                     : bbgwo_step(x, p1, p2, p3, a, rng);
    }
    for (std::size_t i = 0; i < n_agents; ++i) {
      auto& agent = pop.agents[i];
      agent.position = clamp_to_bounds(moved[i], bounds);
      agent.fitness = objective(agent.position);
    }
    result.evaluations_used += static_cast<std::int64_t>(n_agents);
    refresh_leaders(pop, config.leader_policy);
    if (rank_key(pop.leaders[0].fitness) < rank_key(result.best_fitness)) {
      result.best_fitness = pop.leaders[0].fitness;
      result.best_position = pop.leaders[0].position;
    }
    result.fitness_trace.push_back(result.best_fitness);
  }
  return result;
}

RunResult run_bbpso(const RunConfig& config, const Objective& objective,
                    const Bounds& bounds, RngStream& rng) {
  const auto n_agents = static_cast<std::size_t>(config.population_size);
  BbpsoMemory memory;
  memory.personal_best.resize(n_agents);
  memory.personal_fitness.resize(n_agents);
  for (std::size_t i = 0; i < n_agents; ++i) {
    memory.personal_best[i] = random_position(bounds, rng);
    memory.personal_fitness[i] = objective(memory.personal_best[i]);
  }
  memory.refresh_global();

  RunResult result;
  result.evaluations_used = static_cast<std::int64_t>(n_agents);
  result.fitness_trace.reserve(static_cast<std::size_t>(config.max_iterations) + 1);
  result.fitness_trace.push_back(memory.personal_fitness[memory.global_index]);

  std::vector<Vector> moved(n_agents);
  for (int t = 0; t < config.max_iterations; ++t) {
    for (std::size_t i = 0; i < n_agents; ++i) {
      moved[i] = clamp_to_bounds(bbpso_step(i, memory, rng), bounds);
    }
    for (std::size_t i = 0; i < n_agents; ++i) {
      memory.offer(i, moved[i], objective(moved[i]));
    }
    memory.refresh_global();
    result.evaluations_used += static_cast<std::int64_t>(n_agents);
    result.fitness_trace.push_back(memory.personal_fitness[memory.global_index]);
  }
  result.best_position = memory.global_best();
  result.best_fitness = memory.personal_fitness[memory.global_index];
  return result;
}

}  // namespace

std::string to_string(OptimizerId id) {
  switch (id) {
    case OptimizerId::GWO:
      return "gwo";
    case OptimizerId::BBGWO:
      return "bbgwo";
    case OptimizerId::BBPSO:
      return "bbpso";
  }
  return "unknown";
}

std::string to_string(LeaderPolicy policy) {
  switch (policy) {
    case LeaderPolicy::Elitist:
      return "elitist";
    case LeaderPolicy::Current:
      return "current";
    case LeaderPolicy::Sequential:
      return "sequential";
  }
  return "unknown";
}

LeaderPolicy parse_leader_policy(const std::string& name) {
  if (name == "elitist") return LeaderPolicy::Elitist;
  if (name == "current") return LeaderPolicy::Current;
  if (name == "sequential") return LeaderPolicy::Sequential;
  throw std::invalid_argument("unknown leader policy '" + name +
                              "' (expected elitist, current or sequential)");
}

OptimizerId parse_optimizer(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "gwo") return OptimizerId::GWO;
  if (lower == "bbgwo") return OptimizerId::BBGWO;
  if (lower == "bbpso") return OptimizerId::BBPSO;
  throw std::invalid_argument("unknown optimizer '" + name +
                              "' (expected gwo, bbgwo or bbpso)");
}

void RunConfig::validate() const {
  if (population_size < 3) {
    throw std::invalid_argument("population size must be >= 3, got " +
                                std::to_string(population_size));
  }
  if (max_iterations < 0) {
    throw std::invalid_argument("max iterations must be >= 0, got " +
                                std::to_string(max_iterations));
  }
  if (fixed_step && !(*fixed_step >= 0.0)) {
    throw std::invalid_argument("fixed step parameter must be >= 0");
  }
}

double step_parameter(int t, int max_iterations) {
  if (max_iterations < 1 || t < 0 || t > max_iterations) {
    throw std::out_of_range("step_parameter: need 0 <= t <= T and T >= 1 (t=" +
                            std::to_string(t) + ", T=" +
                            std::to_string(max_iterations) + ")");
  }
  return 2.0 * (1.0 - static_cast<double>(t) / static_cast<double>(max_iterations));
}

std::array<std::size_t, 3> select_leaders(std::span<const double> fitness) {
  if (fitness.size() < 3) {
    throw std::invalid_argument("select_leaders: need at least 3 agents");
  }
  std::vector<std::size_t> order(fitness.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + 3, order.end(),
                    [&](std::size_t lhs, std::size_t rhs) {
                      const double fl = rank_key(fitness[lhs]);
                      const double fr = rank_key(fitness[rhs]);
                      return fl < fr || (fl == fr && lhs < rhs);
                    });
  return {order[0], order[1], order[2]};
}

namespace {

void sequential_update(Population& pop) {
  auto& leaders = pop.leaders;
  for (const auto& agent : pop.agents) {
    const double f = rank_key(agent.fitness);
    for (auto& leader : leaders) {
      if (f < rank_key(leader.fitness)) {
        leader = Leader{agent.position, agent.fitness};
        break;
      }
    }
  }
}

}  // namespace

void refresh_leaders(Population& pop, LeaderPolicy policy) {
  const bool initialised = pop.leaders[0].position.size() > 0;
  if (policy == LeaderPolicy::Sequential && initialised) {
    sequential_update(pop);
    return;
  }
  const bool keep_previous = policy == LeaderPolicy::Elitist && initialised;
  std::vector<double> fitness;
  std::vector<const Vector*> positions;
  fitness.reserve(pop.agents.size() + 3);
  positions.reserve(pop.agents.size() + 3);
  if (keep_previous) {
    for (const auto& leader : pop.leaders) {
      fitness.push_back(leader.fitness);
      positions.push_back(&leader.position);
    }
  }
  for (const auto& agent : pop.agents) {
    fitness.push_back(agent.fitness);
    positions.push_back(&agent.position);
  }
  const auto picked = select_leaders(fitness);
  std::array<Leader, 3> next;
  for (std::size_t k = 0; k < 3; ++k) {
    next[k] = Leader{*positions[picked[k]], fitness[picked[k]]};
  }
  pop.leaders = std::move(next);
}

Vector gwo_step(const Vector& x, const Vector& p1, const Vector& p2,
                const Vector& p3, double a, RngStream& rng) {
  if (!(a >= 0.0)) throw std::invalid_argument("gwo_step: a must be >= 0");
  require_same_size(x, p1, p2, p3, "gwo_step");
  Vector out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    out[j] = sample_gwo_component(a, x[j], p1[j], p2[j], p3[j], rng);
  }
  return out;
}

Vector bbgwo_step(const Vector& x, const Vector& p1, const Vector& p2,
                  const Vector& p3, double a, RngStream& rng) {
  require_same_size(x, p1, p2, p3, "bbgwo_step");
  Vector out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const NormalParams np = update_moments(a, x[j], p1[j], p2[j], p3[j]);
    out[j] = rng.normal(np.mu, np.sigma);
  }
  return out;
}

void BbpsoMemory::offer(std::size_t i, const Vector& position, double fitness) {
  if (rank_key(fitness) < rank_key(personal_fitness[i])) {
    personal_best[i] = position;
    personal_fitness[i] = fitness;
  }
}

void BbpsoMemory::refresh_global() {
  std::size_t best = 0;
  for (std::size_t i = 1; i < personal_fitness.size(); ++i) {
    if (rank_key(personal_fitness[i]) < rank_key(personal_fitness[best])) best = i;
  }
  global_index = best;
}

Vector bbpso_step(std::size_t agent_index, const BbpsoMemory& memory,
                  RngStream& rng) {
  const Vector& own = memory.personal_best.at(agent_index);
  const Vector& swarm = memory.global_best();
  Vector out(own.size());
  for (Eigen::Index j = 0; j < own.size(); ++j) {
    out[j] = rng.normal(0.5 * (own[j] + swarm[j]), std::abs(swarm[j] - own[j]));
  }
  return out;
}

RunResult run(const RunConfig& config, const Objective& objective,
              const Bounds& bounds, RngStream& rng) {
  config.validate();
  if (config.optimizer == OptimizerId::BBPSO) {
    return run_bbpso(config, objective, bounds, rng);
  }
  return run_leader_based(config, objective, bounds, rng);
}

RunResult run(const RunConfig& config, const BenchmarkSpec& spec, RngStream& rng) {
  const Objective checked = [&spec](const Vector& x) { return evaluate(spec, x); };
  return run(config, checked, spec.bounds, rng);
}

RunResult run(const RunConfig& config, const BenchmarkSpec& spec) {
  RngStream rng(config.seed);
  return run(config, spec, rng);
}

}  // namespace bbgwo

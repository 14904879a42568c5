// SPDX-License-Identifier: Apache-2.0
//
// Shared vector types, the seeded random stream and box-bound handling.
#pragma once

#include <Eigen/Core>

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbgwo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Axis-aligned box domain. lower[j] < upper[j] for every j.
class Bounds {
 public:
  Bounds() = default;
  Bounds(Vector lower, Vector upper);

  /// [lo, hi]^dim
  static Bounds cube(Eigen::Index dim, double lo, double hi);

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Eigen::Index size() const { return lower_.size(); }

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& x) const {
    return x.size() == size() && (x.array() >= lower_.array()).all() &&
           (x.array() <= upper_.array()).all();
  }

 private:
  Vector lower_;
  Vector upper_;
};

/// Deterministic random stream. Backed by std::mt19937_64, whose output
/// sequence is fixed by the standard; the conversions to uniform and normal
/// variates are done here so results do not depend on the standard library.
///
/// Single owner only. Copying a stream forks it (both copies replay the same
/// sequence).
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double canonical();

  /// Uniform on [lo, hi). lo == hi returns lo. One draw is consumed either way.
  double uniform(double lo, double hi);

  /// Normal(mu, sigma). sigma == 0 returns mu exactly (still consumes a draw).
  double normal(double mu, double sigma);

 private:
  double standard_normal();

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline RngStream make_rng(std::uint64_t seed) { return RngStream(seed); }

/// Component-wise clip of x into the box.
template <typename Derived>
Vector clamp_to_bounds(const Eigen::MatrixBase<Derived>& x, const Bounds& b) {
  if (x.size() != b.size()) {
    throw std::invalid_argument("clamp_to_bounds: length " +
                                std::to_string(x.size()) + " vs bounds " +
                                std::to_string(b.size()));
  }
  return x.cwiseMax(b.lower()).cwiseMin(b.upper());
}

/// Candidate solution with cached objective value.
struct AgentState {
  Vector position;
  double fitness = 0.0;
  bool evaluated = false;
};

/// Evaluated leader position (p1, p2 or p3).
struct Leader {
  Vector position;
  double fitness = 0.0;
};

/// Agents plus the three best-known positions, ordered f(p1) <= f(p2) <= f(p3).
struct Population {
  std::vector<AgentState> agents;
  std::array<Leader, 3> leaders;
};

}  // namespace bbgwo

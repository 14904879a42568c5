// SPDX-License-Identifier: Apache-2.0
//
// The twelve classical test functions used by the experiment protocol.
#pragma once

#include "bbgwo/core.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bbgwo {

using Objective = std::function<double(const Vector&)>;

struct BenchmarkSpec {
  int id = 0;
  std::string name;
  Eigen::Index dimension = 0;
  Bounds bounds;
  double reference_minimum = 0.0;
  std::optional<Vector> argmin;
  bool multimodal = false;
  Objective function;
};

/// Constants p_i, q_i of function 12 (n = 6). The defaults satisfy q = 2p,
/// which puts a zero of the objective at x = p.
struct Fn12Constants {
  std::array<double, 6> p{1.0, 2.0, 3.0, 4.0, 5.0, 6.0};
  std::array<double, 6> q{2.0, 4.0, 6.0, 8.0, 10.0, 12.0};
};

/// Checks shape and finiteness, then evaluates. Throws std::invalid_argument.
double evaluate(const BenchmarkSpec& spec, const Vector& x);

/// Functions 1..12 in id order.
std::vector<BenchmarkSpec> registry(const Fn12Constants& fn12 = {});

/// Lookup by id; throws std::out_of_range for ids outside 1..12.
BenchmarkSpec benchmark(int id, const Fn12Constants& fn12 = {});

namespace functions {

template <typename Derived>
double sphere(const Eigen::MatrixBase<Derived>& x) {
  return x.squaredNorm();
}

template <typename Derived>
double schwefel_2_22(const Eigen::MatrixBase<Derived>& x) {
  const auto ax = x.cwiseAbs();
  return ax.sum() + ax.prod();
}

template <typename Derived>
double schwefel_1_2(const Eigen::MatrixBase<Derived>& x) {
  double running = 0.0;
  double total = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    running += x[j];
    total += running * running;
  }
  return total;
}

template <typename Derived>
double rosenbrock(const Eigen::MatrixBase<Derived>& x) {
  double total = 0.0;
  for (Eigen::Index j = 0; j + 1 < x.size(); ++j) {
    const double r = x[j + 1] - x[j] * x[j];
    const double s = x[j] - 1.0;
    total += 100.0 * r * r + s * s;
  }
  return total;
}

template <typename Derived>
double step(const Eigen::MatrixBase<Derived>& x) {
  return (x.array() + 0.5).floor().square().sum();
}

template <typename Derived>
double schwefel_2_26(const Eigen::MatrixBase<Derived>& x) {
  return -(x.array() * x.array().abs().sqrt().sin()).sum();
}

template <typename Derived>
double rastrigin(const Eigen::MatrixBase<Derived>& x) {
  constexpr double two_pi = 6.283185307179586;
  return (x.array().square() - 10.0 * (two_pi * x.array()).cos() + 10.0).sum();
}

template <typename Derived>
double ackley(const Eigen::MatrixBase<Derived>& x) {
  constexpr double two_pi = 6.283185307179586;
  constexpr double e = 2.718281828459045;
  const double d = static_cast<double>(x.size());
  const double rms = std::sqrt(x.squaredNorm() / d);
  const double cos_mean = (two_pi * x.array()).cos().sum() / d;
  return 20.0 + e - 20.0 * std::exp(-0.2 * rms) - std::exp(cos_mean);
}

template <typename Derived>
double griewank(const Eigen::MatrixBase<Derived>& x) {
  double prod = 1.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    prod *= std::cos(x[j] / std::sqrt(static_cast<double>(j + 1)));
  }
  return 1.0 + x.squaredNorm() / 4000.0 - prod;
}

// Michalewicz with exponent 20.
template <typename Derived>
double michalewicz(const Eigen::MatrixBase<Derived>& x) {
  constexpr double pi = 3.141592653589793;
  double total = 0.0;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double s = std::sin(static_cast<double>(j + 1) * x[j] * x[j] / pi);
    total += std::sin(x[j]) * std::pow(s, 20);
  }
  return -total;
}

template <typename Derived>
double six_hump_camel(const Eigen::MatrixBase<Derived>& x) {
  const double x1 = x[0];
  const double x2 = x[1];
  const double x1s = x1 * x1;
  const double x2s = x2 * x2;
  return 4.0 * x1s - 2.1 * x1s * x1s + x1s * x1s * x1s / 3.0 + x1 * x2 -
         4.0 * x2s + 4.0 * x2s * x2s;
}

/// Function 12 as printed: sum_i [q_i - x_i e^{+r_i} - x_i e^{-r_i}]^2 with
/// r_i = (p_i - x_i)^2 / (2 x_i^2). Overflow (x_i -> 0) yields +inf.
double fn12(const Vector& x, const Fn12Constants& c);

}  // namespace functions
}  // namespace bbgwo

// SPDX-License-Identifier: Apache-2.0
#include "bbgwo/benchmarks.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bbgwo {

namespace functions {

double fn12(const Vector& x, const Fn12Constants& c) {
  double total = 0.0;
  for (Eigen::Index i = 0; i < x.size() && i < 6; ++i) {
    const double d = c.p[i] - x[i];
    const double r = d * d / (2.0 * x[i] * x[i]);
    const double term = c.q[i] - x[i] * std::exp(r) - x[i] * std::exp(-r);
    total += term * term;
  }
  return std::isnan(total) ? std::numeric_limits<double>::infinity() : total;
}

}  // namespace functions

namespace {

BenchmarkSpec make(int id, std::string name, Eigen::Index dim, double lo,
                   double hi, double minimum, std::optional<Vector> argmin,
                   bool multimodal, Objective f) {
  BenchmarkSpec s;
  s.id = id;
  s.name = std::move(name);
  s.dimension = dim;
  s.bounds = Bounds::cube(dim, lo, hi);
  s.reference_minimum = minimum;
  s.argmin = std::move(argmin);
  s.multimodal = multimodal;
  s.function = std::move(f);
  return s;
}

}  // namespace

double evaluate(const BenchmarkSpec& spec, const Vector& x) {
  if (x.size() != spec.dimension) {
    throw std::invalid_argument("benchmark " + std::to_string(spec.id) +
                                ": expected dimension " +
                                std::to_string(spec.dimension) + ", got " +
                                std::to_string(x.size()));
  }
  if (!x.allFinite()) {
    throw std::invalid_argument("benchmark " + std::to_string(spec.id) +
                                ": non-finite input component");
  }
  return spec.function(x);
}

std::vector<BenchmarkSpec> registry(const Fn12Constants& fn12) {
  using namespace functions;
  const Vector zero30 = Vector::Zero(30);
  const Vector camel_min = (Vector(2) << 0.08984201368301331, -0.7126564032704135)
                               .finished();
  Vector fn12_argmin(6);
  for (int i = 0; i < 6; ++i) fn12_argmin[i] = fn12.p[i];
  bool fn12_known = true;
  for (int i = 0; i < 6; ++i) {
    fn12_known = fn12_known && fn12.q[i] == 2.0 * fn12.p[i] &&
                 fn12.p[i] >= 0.0 && fn12.p[i] <= 10.0;
  }

  std::vector<BenchmarkSpec> specs;
  specs.reserve(12);
  specs.push_back(make(1, "sphere", 30, -100, 100, 0.0, zero30, false,
                       [](const Vector& x) { return sphere(x); }));
  specs.push_back(make(2, "schwefel_2_22", 30, -10, 10, 0.0, zero30, false,
                       [](const Vector& x) { return schwefel_2_22(x); }));
  specs.push_back(make(3, "schwefel_1_2", 30, -100, 100, 0.0, zero30, false,
                       [](const Vector& x) { return schwefel_1_2(x); }));
  specs.push_back(make(4, "rosenbrock", 30, -30, 30, 0.0, Vector::Ones(30),
                       false, [](const Vector& x) { return rosenbrock(x); }));
  specs.push_back(make(5, "step", 30, -100, 100, 0.0, zero30, false,
                       [](const Vector& x) { return step(x); }));
  // The listed minimum is not attained by the D = 30 function; no argmin.
  specs.push_back(make(6, "schwefel_2_26", 30, -500, 500, -7286.2,
                       std::nullopt, true,
                       [](const Vector& x) { return schwefel_2_26(x); }));
  specs.push_back(make(7, "rastrigin", 30, -10, 10, 0.0, zero30, true,
                       [](const Vector& x) { return rastrigin(x); }));
  specs.push_back(make(8, "ackley", 30, -20, 20, 0.0, zero30, true,
                       [](const Vector& x) { return ackley(x); }));
  specs.push_back(make(9, "griewank", 30, -600, 600, 0.0, zero30, true,
                       [](const Vector& x) { return griewank(x); }));
  specs.push_back(make(10, "michalewicz", 30, 0, 3.141592653589793, -29.6248,
                       std::nullopt, true,
                       [](const Vector& x) { return michalewicz(x); }));
  specs.push_back(make(11, "six_hump_camel", 2, -5, 5, -1.0316, camel_min, true,
                       [](const Vector& x) { return six_hump_camel(x); }));
  specs.push_back(make(12, "fn12", 6, 0, 10, 0.0,
                       fn12_known ? std::optional<Vector>(fn12_argmin)
                                  : std::nullopt,
                       true, [fn12](const Vector& x) {
                         return functions::fn12(x, fn12);
                       }));
  return specs;
}

BenchmarkSpec benchmark(int id, const Fn12Constants& fn12) {
  if (id < 1 || id > 12) {
    throw std::out_of_range("unknown benchmark function id " +
                            std::to_string(id) + " (valid: 1-12)");
  }
  return registry(fn12)[static_cast<std::size_t>(id - 1)];
}

}  // namespace bbgwo

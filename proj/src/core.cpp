// SPDX-License-Identifier: Apache-2.0
#include "bbgwo/core.hpp"

#include <cmath>
#include <limits>

namespace bbgwo {

Bounds::Bounds(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size()) {
    throw std::invalid_argument("Bounds: lower and upper differ in length");
  }
  if (!(lower_.array() < upper_.array()).all()) {
    throw std::invalid_argument("Bounds: lower[j] < upper[j] violated");
  }
}

Bounds Bounds::cube(Eigen::Index dim, double lo, double hi) {
  return Bounds(Vector::Constant(dim, lo), Vector::Constant(dim, hi));
}

RngStream::RngStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

double RngStream::canonical() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi) {
  if (lo > hi) {
    throw std::invalid_argument("uniform: lo > hi");
  }
  const double u = canonical();
  if (lo == hi) return lo;
  const double v = lo + (hi - lo) * u;
  // Rounding can land exactly on hi.
  return v < hi ? v : std::nextafter(hi, lo);
}

double RngStream::standard_normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // Marsaglia polar method.
  double u, v, s;
  do {
    u = 2.0 * canonical() - 1.0;
    v = 2.0 * canonical() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

double RngStream::normal(double mu, double sigma) {
  if (!(sigma >= 0.0)) {
    throw std::invalid_argument("normal: sigma must be >= 0");
  }
  const double z = standard_normal();
  if (sigma == 0.0) return mu;
  return mu + sigma * z;
}

}  // namespace bbgwo

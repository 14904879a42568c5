// SPDX-License-Identifier: Apache-2.0
//
// Distribution of the GWO position update for one dimension.
//
// With the leaders p_k and the current component x held fixed, one leader's
// contribution is x'_k = p_k + A_k |C_k p_k - x| with A_k ~ U[-a, a] and
// C_k ~ U[0, 2]. Its density g_k is piecewise logarithmic on [p_k - n_k,
// p_k + n_k]; the full update (x'_1 + x'_2 + x'_3) / 3 has density
// h(u) = 3 (g_1 * g_2 * g_3)(3u).
#pragma once

#include "bbgwo/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace bbgwo {

/// Raised when a density is requested for a zero-width (point mass) law.
class DegenerateDistribution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct MnParams {
  double m = 0.0;
  double n = 0.0;
};

/// m = a(-|p| + |x - p|), n = a(|p| + |x - p|). Requires a >= 0.
MnParams mn_params(double a, double x, double p);

/// Law of a single leader's contribution p + A|Cp - x|.
struct LeaderUpdateDist {
  double a = 0.0;
  double x = 0.0;
  double p = 0.0;
  double m = 0.0;
  double n = 0.0;

  /// Zero-width support: a = 0, or x = p = 0.
  bool degenerate() const { return n == 0.0; }
};

LeaderUpdateDist make_leader_dist(double a, double x, double p);

/// Density at offset v = u - p. Even in v; +inf at v = 0 when m <= 0.
double g_density_offset(double v, const LeaderUpdateDist& d);

/// Density of x'_k at u. Throws DegenerateDistribution when n = 0.
double g_pdf(double u, const LeaderUpdateDist& d);

/// P(x'_k <= u) by adaptive quadrature of g_pdf. Exactly 1/2 at u = p,
/// exactly 0 / 1 outside the support.
double g_cdf(double u, const LeaderUpdateDist& d);

/// Closed-form probability of x'_k in [p + lo, p + hi] (offsets from p).
/// A degenerate law is a point mass at offset 0.
double g_offset_mass(double lo, double hi, const LeaderUpdateDist& d);

/// Integral of f(u) g(u) du over the support, split at p and p +- |m|.
double integrate_against_g(const LeaderUpdateDist& d,
                           const std::function<double(double)>& f);

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// mean = p, variance = (a^2 / 3) [(x - p)^2 + p^2 / 3].
Moments leader_moments(const LeaderUpdateDist& d);

struct NormalParams {
  double mu = 0.0;
  double sigma = 0.0;
};

/// Mean and standard deviation of the averaged three-leader update:
/// mu = (p1 + p2 + p3) / 3, sigma = a / (3 sqrt 3) sqrt(sum[(x - p_k)^2 + p_k^2 / 3]).
NormalParams update_moments(double a, double x, double p1, double p2, double p3);

/// Density of the averaged update tabulated on a uniform grid centred on the
/// mean. Cell i is centred at u[i] with width `spacing` and carries
/// probability mass[i]; density[i] = mass[i] / spacing.
struct DensityGrid {
  Vector u;
  Vector density;
  Vector mass;
  Vector cumulative;  // cumulative[i] = mass of cells [0, i); size + 1 entries
  double spacing = 0.0;

  /// CDF, linear within each cell.
  double cdf(double value) const;
  /// Trapezoidal integral of density over the grid.
  double integral() const;
};

/// Numerical h on roughly grid_points cells (within +-3). Each g_k is reduced
/// to exact cell masses on a lattice centred at p_k, the three mass vectors are
/// convolved, and the sum is rescaled by 1/3 onto the u axis. A single
/// degenerate leader enters as a point mass; all three degenerate throws.
DensityGrid h_pdf_numeric(const LeaderUpdateDist& d1, const LeaderUpdateDist& d2,
                          const LeaderUpdateDist& d3, int grid_points = 4096);

/// One draw of p + A|Cp - x| (A drawn first, then C).
double sample_leader_term(double a, double x, double p, RngStream& rng);

/// One draw of the averaged three-leader update.
double sample_gwo_component(double a, double x, double p1, double p2, double p3,
                            RngStream& rng);

std::vector<double> sample_gwo_update(double a, double x, double p1, double p2,
                                      double p3, RngStream& rng, int count);

struct Histogram {
  std::vector<double> bin_edges;
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;

  std::size_t bins() const { return counts.size(); }
  double center(std::size_t i) const {
    return 0.5 * (bin_edges[i] + bin_edges[i + 1]);
  }
  double width(std::size_t i) const { return bin_edges[i + 1] - bin_edges[i]; }
};

/// Equal-width bins over [min, max] of the samples; the maximum lands in the
/// last bin. Constant samples get the range [v - 0.5, v + 0.5].
Histogram build_histogram(std::span<const double> samples, int bins);

struct DistComparison {
  double ks_distance = 0.0;
  double total_variation = 0.0;
  std::int64_t sample_size = 0;
};

/// KS distance over the bin edges and total variation against N(mu, sigma^2).
/// Normal mass outside the histogram range counts towards total variation.
DistComparison compare_to_normal(const Histogram& hist, double mu, double sigma);

double normal_pdf(double u, double mu, double sigma);
double normal_cdf(double u, double mu, double sigma);

/// Exact KS statistic sup|F_n - F| of a sample against a continuous CDF.
template <typename Cdf>
double ks_distance(std::vector<double> samples, Cdf&& cdf) {
  if (samples.empty()) throw std::invalid_argument("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    worst = std::max({worst, std::abs(f - static_cast<double>(i) / n),
                      std::abs(static_cast<double>(i + 1) / n - f)});
  }
  return worst;
}

}  // namespace bbgwo

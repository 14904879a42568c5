// SPDX-License-Identifier: Apache-2.0
#include "bbgwo/distmath.hpp"

#include "bbgwo/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace bbgwo {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_nonnegative_step(double a, const char* where) {
  if (!(a >= 0.0) || !std::isfinite(a)) {
    throw std::invalid_argument(std::string(where) +
                                ": step parameter a must be finite and >= 0");
  }
}

void require_nondegenerate(const LeaderUpdateDist& d, const char* where) {
  if (d.degenerate()) {
    throw DegenerateDistribution(std::string(where) +
                                 ": zero-width support (a = 0 or x = p = 0)");
  }
}

// n - m, computed without cancellation.
double support_gap(const LeaderUpdateDist& d) {
  return 2.0 * d.a * std::abs(d.p);
}

// w ln(c / w) + w, the primitive of ln(c / t) on [0, w].
double log_primitive(double w, double c) {
  return w > 0.0 ? w * std::log(c / w) + w : 0.0;
}

// Probability of offset in [0, w], w >= 0. Non-degenerate laws only.
double offset_primitive(double w, const LeaderUpdateDist& d) {
  const double n = d.n;
  const double m = d.m;
  if (w >= n) return 0.5;
  const double gap = support_gap(d);
  if (gap == 0.0) return w / (2.0 * n);
  const double inv = 1.0 / gap;
  if (m <= 0.0) {
    const double inner = -m;
    const double peak = std::sqrt(-m * n);
    if (w <= inner) return inv * log_primitive(w, peak);
    return inv * log_primitive(inner, peak) +
           0.5 * inv * (log_primitive(w, n) - log_primitive(inner, n));
  }
  const double plateau = 0.5 * inv * std::log1p(gap / m);
  if (w <= m) return plateau * w;
  return plateau * m + 0.5 * inv * (log_primitive(w, n) - log_primitive(m, n));
}

double signed_primitive(double v, const LeaderUpdateDist& d) {
  return v < 0.0 ? -offset_primitive(-v, d) : offset_primitive(v, d);
}

std::vector<double> convolve(const std::vector<double>& a,
                             const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

MnParams mn_params(double a, double x, double p) {
  require_nonnegative_step(a, "mn_params");
  const double dist = std::abs(x - p);
  return {a * (-std::abs(p) + dist), a * (std::abs(p) + dist)};
}

LeaderUpdateDist make_leader_dist(double a, double x, double p) {
  if (!std::isfinite(x) || !std::isfinite(p)) {
    throw std::invalid_argument("make_leader_dist: x and p must be finite");
  }
  const MnParams mn = mn_params(a, x, p);
  return {a, x, p, mn.m, mn.n};
}

double g_density_offset(double v, const LeaderUpdateDist& d) {
  require_nondegenerate(d, "g_pdf");
  const double w = std::abs(v);
  const double n = d.n;
  const double m = d.m;
  if (w >= n) return 0.0;
  const double gap = support_gap(d);
  if (gap == 0.0) return 1.0 / (2.0 * n);  // p = 0: A|x| is uniform
  if (m <= 0.0) {
    if (w == 0.0) return kInf;
    if (w < -m) return std::log(std::sqrt(-m * n) / w) / gap;
    return 0.5 * std::log(n / w) / gap;
  }
  if (w < m) return 0.5 * std::log1p(gap / m) / gap;
  return 0.5 * std::log(n / w) / gap;
}

double g_pdf(double u, const LeaderUpdateDist& d) {
  return g_density_offset(u - d.p, d);
}

double g_cdf(double u, const LeaderUpdateDist& d) {
  require_nondegenerate(d, "g_cdf");
  const double v = u - d.p;
  if (v == 0.0) return 0.5;
  const double w = std::abs(v);
  if (w >= d.n) return v > 0.0 ? 1.0 : 0.0;
  std::vector<double> cuts{0.0};
  const double kink = std::abs(d.m);
  if (kink > 0.0 && kink < w) cuts.push_back(kink);
  cuts.push_back(w);
  const double half_mass =
      quadrature::integrate_pieces(
          [&d](double t) { return g_density_offset(t, d); }, cuts)
          .value;
  return v > 0.0 ? 0.5 + half_mass : 0.5 - half_mass;
}

double g_offset_mass(double lo, double hi, const LeaderUpdateDist& d) {
  if (hi <= lo) return 0.0;
  if (d.degenerate()) return (lo <= 0.0 && 0.0 < hi) ? 1.0 : 0.0;
  return signed_primitive(hi, d) - signed_primitive(lo, d);
}

double integrate_against_g(const LeaderUpdateDist& d,
                           const std::function<double(double)>& f) {
  require_nondegenerate(d, "integrate_against_g");
  const double kink = std::abs(d.m);
  std::vector<double> cuts{d.p - d.n};
  if (kink > 0.0 && kink < d.n) cuts.push_back(d.p - kink);
  cuts.push_back(d.p);
  if (kink > 0.0 && kink < d.n) cuts.push_back(d.p + kink);
  cuts.push_back(d.p + d.n);
  return quadrature::integrate_pieces(
             [&](double u) { return f(u) * g_pdf(u, d); }, cuts, 1e-14, 1e-13)
      .value;
}

Moments leader_moments(const LeaderUpdateDist& d) {
  require_nonnegative_step(d.a, "leader_moments");
  const double r = d.x - d.p;
  return {d.p, d.a * d.a / 3.0 * (r * r + d.p * d.p / 3.0)};
}

NormalParams update_moments(double a, double x, double p1, double p2,
                            double p3) {
  require_nonnegative_step(a, "update_moments");
  const auto term = [x](double p) {
    const double r = x - p;
    return r * r + p * p / 3.0;
  };
  const double spread = term(p1) + term(p2) + term(p3);
  return {(p1 + p2 + p3) / 3.0,
          a / (3.0 * std::numbers::sqrt3) * std::sqrt(spread)};
}

double DensityGrid::cdf(double value) const {
  const Eigen::Index cells = mass.size();
  const double first_edge = u[0] - 0.5 * spacing;
  const double t = (value - first_edge) / spacing;
  if (!(t > 0.0)) return 0.0;
  if (t >= static_cast<double>(cells)) return cumulative[cells];
  const auto k = static_cast<Eigen::Index>(std::floor(t));
  return cumulative[k] + (t - static_cast<double>(k)) * mass[k];
}

double DensityGrid::integral() const {
  const Eigen::Index last = density.size() - 1;
  return spacing * (density.sum() - 0.5 * (density[0] + density[last]));
}

DensityGrid h_pdf_numeric(const LeaderUpdateDist& d1, const LeaderUpdateDist& d2,
                          const LeaderUpdateDist& d3, int grid_points) {
  if (grid_points < 256) {
    throw std::invalid_argument("h_pdf_numeric: grid_points must be >= 256");
  }
  const std::array<const LeaderUpdateDist*, 3> leaders{&d1, &d2, &d3};
  double total_reach = 0.0;
  for (const auto* d : leaders) total_reach += d->n;
  if (total_reach == 0.0) {
    throw DegenerateDistribution(
        "h_pdf_numeric: all three leader terms are point masses");
  }

  // Lattice spacing on the summed axis s = x'_1 + x'_2 + x'_3.
  const double step = 2.0 * total_reach / (grid_points - 1);
  std::vector<double> masses{1.0};
  Eigen::Index half_width = 0;
  for (const auto* d : leaders) {
    const auto reach = static_cast<Eigen::Index>(
        d->n > 0.0 ? std::max(0.0, std::ceil(d->n / step - 0.5)) : 0.0);
    std::vector<double> cell_mass(static_cast<std::size_t>(2 * reach + 1));
    for (Eigen::Index i = -reach; i <= reach; ++i) {
      const double lo = (static_cast<double>(i) - 0.5) * step;
      const double hi = (static_cast<double>(i) + 0.5) * step;
      cell_mass[static_cast<std::size_t>(i + reach)] = g_offset_mass(lo, hi, *d);
    }
    masses = convolve(masses, cell_mass);
    half_width += reach;
  }

  DensityGrid grid;
  const auto cells = static_cast<Eigen::Index>(masses.size());
  grid.spacing = step / 3.0;
  const double center = (d1.p + d2.p + d3.p) / 3.0;
  grid.u.resize(cells);
  grid.mass.resize(cells);
  grid.cumulative.resize(cells + 1);
  grid.cumulative[0] = 0.0;
  for (Eigen::Index i = 0; i < cells; ++i) {
    grid.u[i] = center + static_cast<double>(i - half_width) * grid.spacing;
    grid.mass[i] = masses[static_cast<std::size_t>(i)];
    grid.cumulative[i + 1] = grid.cumulative[i] + grid.mass[i];
  }
  grid.density = grid.mass / grid.spacing;
  return grid;
}

double sample_leader_term(double a, double x, double p, RngStream& rng) {
  const double coeff_a = rng.uniform(-a, a);
  const double coeff_c = rng.uniform(0.0, 2.0);
  return p + coeff_a * std::abs(coeff_c * p - x);
}

double sample_gwo_component(double a, double x, double p1, double p2, double p3,
                            RngStream& rng) {
  const double t1 = sample_leader_term(a, x, p1, rng);
  const double t2 = sample_leader_term(a, x, p2, rng);
  const double t3 = sample_leader_term(a, x, p3, rng);
  return (t1 + t2 + t3) / 3.0;
}

std::vector<double> sample_gwo_update(double a, double x, double p1, double p2,
                                      double p3, RngStream& rng, int count) {
  if (count < 1) throw std::invalid_argument("sample_gwo_update: count < 1");
  require_nonnegative_step(a, "sample_gwo_update");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (auto& v : out) v = sample_gwo_component(a, x, p1, p2, p3, rng);
  return out;
}

Histogram build_histogram(std::span<const double> samples, int bins) {
  if (samples.empty()) throw std::invalid_argument("build_histogram: no samples");
  if (bins < 1) throw std::invalid_argument("build_histogram: bins < 1");
  const auto [min_it, max_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *min_it;
  double hi = *max_it;
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("build_histogram: non-finite sample");
  }
  if (lo == hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  Histogram h;
  const double width = (hi - lo) / bins;
  h.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int i = 0; i < bins; ++i) h.bin_edges[i] = lo + i * width;
  h.bin_edges.back() = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double v : samples) {
    auto idx = static_cast<long>(std::floor((v - lo) / width));
    idx = std::clamp(idx, 0L, static_cast<long>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  h.total = static_cast<std::int64_t>(samples.size());
  return h;
}

double normal_pdf(double u, double mu, double sigma) {
  const double z = (u - mu) / sigma;
  return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

double normal_cdf(double u, double mu, double sigma) {
  return 0.5 * std::erfc(-(u - mu) / (sigma * std::numbers::sqrt2));
}

DistComparison compare_to_normal(const Histogram& hist, double mu, double sigma) {
  if (!(sigma > 0.0)) {
    throw DegenerateDistribution("compare_to_normal: sigma must be > 0");
  }
  if (hist.total <= 0 || hist.counts.empty()) {
    throw std::invalid_argument("compare_to_normal: empty histogram");
  }
  const double total = static_cast<double>(hist.total);
  DistComparison out;
  out.sample_size = hist.total;
  double running = 0.0;
  double abs_diff = 0.0;
  double prev_cdf = normal_cdf(hist.bin_edges.front(), mu, sigma);
  out.ks_distance = prev_cdf;
  const double below = prev_cdf;
  for (std::size_t i = 0; i < hist.bins(); ++i) {
    const double freq = static_cast<double>(hist.counts[i]) / total;
    running += freq;
    const double next_cdf = normal_cdf(hist.bin_edges[i + 1], mu, sigma);
    abs_diff += std::abs(freq - (next_cdf - prev_cdf));
    out.ks_distance = std::max(out.ks_distance, std::abs(running - next_cdf));
    prev_cdf = next_cdf;
  }
  const double above = 1.0 - prev_cdf;
  out.total_variation = std::min(1.0, 0.5 * (abs_diff + below + above));
  out.ks_distance = std::min(1.0, out.ks_distance);
  return out;
}

}  // namespace bbgwo

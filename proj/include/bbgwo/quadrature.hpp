// SPDX-License-Identifier: Apache-2.0
//
// Globally adaptive Gauss-Kronrod (7/15) quadrature. Integrable endpoint
// singularities (e.g. ln|v| at v = 0) are fine: nodes never touch the
// interval ends and the worst interval is bisected first.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <utility>
#include <vector>

namespace bbgwo::quadrature {

struct Result {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
};

namespace detail {

// Kronrod abscissae on [-1, 1] (non-negative half) and weights; every other
// abscissa starting at index 1 is a Gauss node.
inline constexpr std::array<double, 8> kXgk{
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk{
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg{
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo, hi, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <typename F>
Segment gk15(F& f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int i = 0; i < 7; ++i) {
    const double dx = half * kXgk[i];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[i] * sum;
    if (i % 2 == 1) gauss += kWg[i / 2] * sum;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Integrates f over [lo, hi] until the summed error estimate drops below
/// max(abs_tol, rel_tol * |value|) or max_intervals is reached.
template <typename F>
Result integrate(F&& f, double lo, double hi, double abs_tol = 1e-13,
                 double rel_tol = 1e-12, int max_intervals = 4000) {
  if (lo == hi) return {};
  if (hi < lo) {
    Result r = integrate(f, hi, lo, abs_tol, rel_tol, max_intervals);
    r.value = -r.value;
    return r;
  }
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gk15(f, lo, hi));
  double value = heap.top().value;
  double error = heap.top().error;
  while (static_cast<int>(heap.size()) < max_intervals &&
         error > std::max(abs_tol, rel_tol * std::abs(value))) {
    const detail::Segment worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) break;
    heap.pop();
    const detail::Segment left = detail::gk15(f, worst.lo, mid);
    const detail::Segment right = detail::gk15(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  Result r;
  r.intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    r.value += heap.top().value;
    r.error += heap.top().error;
    heap.pop();
  }
  return r;
}

/// Sums integrate() over consecutive pieces [cuts[i], cuts[i+1]].
template <typename F>
Result integrate_pieces(F&& f, const std::vector<double>& cuts,
                        double abs_tol = 1e-13, double rel_tol = 1e-12) {
  Result total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Result r = integrate(f, cuts[i], cuts[i + 1], abs_tol, rel_tol);
    total.value += r.value;
    total.error += r.error;
    total.intervals += r.intervals;
  }
  return total;
}

}  // namespace bbgwo::quadrature

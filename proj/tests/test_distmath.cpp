// SPDX-License-Identifier: Apache-2.0
#include "bbgwo/distmath.hpp"

#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

namespace bbgwo {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

TEST(MnParams, Examples) {
  auto mn = mn_params(2.0, 1.0, 1.0);
  EXPECT_EQ(mn.m, -2.0);
  EXPECT_EQ(mn.n, 2.0);
  mn = mn_params(2.0, 3.0, 1.0);
  EXPECT_EQ(mn.m, 2.0);
  EXPECT_EQ(mn.n, 6.0);
  mn = mn_params(1.0, 0.0, 0.0);
  EXPECT_EQ(mn.m, 0.0);
  EXPECT_EQ(mn.n, 0.0);
  EXPECT_THROW(mn_params(-1.0, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(mn_params(kInf, 0.0, 1.0), std::invalid_argument);
}

TEST(GPdf, WorkedValues) {
  // a = 2, x = p = 1: support [-1, 3], density (1/4) ln(2/|v|).
  const auto d = make_leader_dist(2.0, 1.0, 1.0);
  EXPECT_NEAR(g_pdf(0.0, d), 0.25 * std::log(2.0), 1e-14);
  EXPECT_NEAR(g_pdf(2.0, d), 0.25 * std::log(2.0), 1e-14);
  EXPECT_EQ(g_pdf(1.0, d), kInf);
  EXPECT_EQ(g_pdf(3.5, d), 0.0);
  EXPECT_EQ(g_pdf(-1.5, d), 0.0);

  // a = 2, x = 3, p = 1: m = 2, n = 6, flat (1/8) ln 3 on |v| <= 2.
  const auto e = make_leader_dist(2.0, 3.0, 1.0);
  EXPECT_NEAR(g_pdf(1.0, e), 0.125 * std::log(3.0), 1e-14);
  EXPECT_NEAR(g_pdf(2.5, e), g_pdf(1.0, e), 1e-14);
}

TEST(GPdf, PZeroIsUniform) {
  const auto d = make_leader_dist(2.0, 3.0, 0.0);
  EXPECT_DOUBLE_EQ(g_pdf(0.0, d), 1.0 / 12.0);
  EXPECT_DOUBLE_EQ(g_pdf(5.9, d), 1.0 / 12.0);
  EXPECT_EQ(g_pdf(6.1, d), 0.0);
}

TEST(GPdf, DegenerateThrows) {
  EXPECT_THROW(g_pdf(0.0, make_leader_dist(0.0, 1.0, 2.0)), DegenerateDistribution);
  EXPECT_THROW(g_pdf(0.0, make_leader_dist(2.0, 0.0, 0.0)), DegenerateDistribution);
}

TEST(GPdf, MatchesMonteCarloDensity) {
  struct Case {
    double a, x, p;
    std::vector<double> probes;
  };
  const std::vector<Case> cases = {
      {2.0, 1.0, 1.0, {0.0, 2.0, -0.5, 2.8}},
      {2.0, 3.0, 1.0, {0.0, 2.5, 4.5, -3.0}},
      {1.3, -2.0, 0.7, {0.0, 1.5, -1.0, 3.0}},
  };
  const int n = 2000000;
  for (const auto& c : cases) {
    const auto d = make_leader_dist(c.a, c.x, c.p);
    const auto draws = oracle::leader_term_draws(c.a, c.x, c.p, n, 17);
    for (double u : c.probes) {
      SCOPED_TRACE(u);
      const double half = 0.02;
      const double mc = oracle::window_density(draws, u, half);
      const double exact = g_offset_mass(u - c.p - half, u - c.p + half, d) / (2 * half);
      const double se = std::sqrt(exact / (n * 2 * half));
      EXPECT_NEAR(mc, exact, 5 * se + 1e-4);
      EXPECT_NEAR(g_pdf(u, d), exact, 0.02 * exact + 1e-3);
    }
  }
}

TEST(GCdf, MatchesClosedForm) {
  const double params[][3] = {
      {2.0, 1.0, 1.0}, {2.0, 3.0, 1.0}, {1.0, 5.0, -1.0}, {0.5, -4.0, 2.0},
      {1.7, 0.3, 1.1}, {2.0, 1.5, 1.0}, {0.2, 10.0, -9.0},
  };
  for (const auto& pr : params) {
    const auto d = make_leader_dist(pr[0], pr[1], pr[2]);
    SCOPED_TRACE(::testing::Message() << pr[0] << "," << pr[1] << "," << pr[2]);
    for (int k = -20; k <= 20; ++k) {
      const double u = d.p + d.n * 1.1 * k / 20.0;
      EXPECT_NEAR(g_cdf(u, d), oracle::leader_cdf_closed_form(u, pr[0], pr[1], pr[2]),
                  1e-9)
          << "u=" << u;
    }
  }
}

TEST(GCdf, ExactAnchors) {
  const auto d = make_leader_dist(2.0, 3.0, 1.0);
  EXPECT_EQ(g_cdf(1.0, d), 0.5);
  EXPECT_EQ(g_cdf(-5.0, d), 0.0);
  EXPECT_EQ(g_cdf(7.0, d), 1.0);
  EXPECT_EQ(g_cdf(100.0, d), 1.0);
}

TEST(GCdf, Monotone) {
  const auto d = make_leader_dist(1.4, -0.6, 2.2);
  double prev = 0.0;
  for (int k = 0; k <= 400; ++k) {
    const double u = d.p - d.n - 0.1 + (2 * d.n + 0.2) * k / 400.0;
    const double c = g_cdf(u, d);
    EXPECT_GE(c, prev - 1e-15);
    prev = c;
  }
}

TEST(GOffsetMass, AgreesWithCdf) {
  const auto d = make_leader_dist(1.7, 0.3, 1.1);
  for (double lo : {-3.0, -1.0, -0.2, 0.0, 0.4}) {
    for (double w : {0.05, 0.5, 2.0}) {
      const double hi = lo + w;
      EXPECT_NEAR(g_offset_mass(lo, hi, d), g_cdf(d.p + hi, d) - g_cdf(d.p + lo, d),
                  1e-10);
    }
  }
  EXPECT_NEAR(g_offset_mass(-d.n, d.n, d), 1.0, 1e-14);
  const auto point = make_leader_dist(0.0, 1.0, 2.0);
  EXPECT_EQ(g_offset_mass(-0.1, 0.1, point), 1.0);
  EXPECT_EQ(g_offset_mass(0.1, 0.2, point), 0.0);
}

TEST(GMoments, NormalizationAndMoments) {
  RngStream rng(31);
  for (int i = 0; i < 25; ++i) {
    const double a = rng.uniform(0.1, 2.0);
    const double x = rng.uniform(-10, 10);
    const double p = rng.uniform(-10, 10);
    const auto d = make_leader_dist(a, x, p);
    const double mass = integrate_against_g(d, [](double) { return 1.0; });
    const double mean = integrate_against_g(d, [](double u) { return u; });
    const double var = integrate_against_g(d, [&](double u) { return (u - p) * (u - p); });
    const Moments mo = leader_moments(d);
    EXPECT_NEAR(mass, 1.0, 1e-9);
    EXPECT_NEAR(mean, p, 1e-9 * (1 + std::abs(p)));
    EXPECT_NEAR(mo.mean, p, 0.0);
    EXPECT_NEAR(var, mo.variance, 1e-8 * (1 + mo.variance));
    EXPECT_NEAR(mo.variance, a * a / 3 * ((x - p) * (x - p) + p * p / 3), 1e-12 * (1 + mo.variance));
  }
}

TEST(GMoments, VarianceAgainstDirectSampling) {
  // Guards the per-leader variance: a^2/3 [(x-p)^2 + p^2/3].
  const double a = 2.0, x = 3.0, p = 1.0;
  const auto draws = oracle::leader_term_draws(a, x, p, 1000000, 99);
  const auto sm = oracle::sample_moments(draws);
  const Moments mo = leader_moments(make_leader_dist(a, x, p));
  EXPECT_NEAR(mo.variance, 4.0 / 3.0 * (4.0 + 1.0 / 3.0), 1e-12);
  EXPECT_NEAR(sm.mean, mo.mean, 4 * sm.mean_se);
  EXPECT_NEAR(sm.variance, mo.variance, 4 * sm.variance_se);
}

TEST(GSymmetry, EvenAboutLeader) {
  const auto d = make_leader_dist(1.5, 2.0, 0.75);
  for (double v : {0.125, 0.5, 1.25, 2.0, 3.5}) {
    EXPECT_EQ(g_pdf(d.p + v, d), g_pdf(d.p - v, d));
    EXPECT_EQ(g_density_offset(v, d), g_density_offset(-v, d));
  }
}

TEST(GSymmetry, ReflectionInvariance) {
  // Only |p| and |x - p| enter: (x, p) -> (-x, -p) and x -> 2p - x preserve g.
  const auto d = make_leader_dist(1.2, 2.5, 1.0);
  const auto r = make_leader_dist(1.2, -2.5, -1.0);
  const auto s = make_leader_dist(1.2, -0.5, 1.0);
  for (double v : {0.1, 0.7, 1.6, 3.0}) {
    EXPECT_DOUBLE_EQ(g_density_offset(v, d), g_density_offset(v, r));
    EXPECT_DOUBLE_EQ(g_density_offset(v, d), g_density_offset(v, s));
  }
}

TEST(GShape, NonIncreasingInOffset) {
  const auto d = make_leader_dist(1.9, -3.0, 2.0);
  double prev = kInf;
  for (int k = 0; k <= 200; ++k) {
    const double v = d.n * k / 200.0;
    const double g = g_density_offset(v, d);
    EXPECT_LE(g, prev + 1e-15);
    prev = g;
  }
}

TEST(UpdateMoments, Formula) {
  const auto nm = update_moments(2.0, 0.0, 1.0, 2.0, 3.0);
  EXPECT_DOUBLE_EQ(nm.mu, 2.0);
  const double s = (1 + 1.0 / 3) + (4 + 4.0 / 3) + (9 + 9.0 / 3);
  EXPECT_DOUBLE_EQ(nm.sigma, 2.0 / (3 * std::sqrt(3.0)) * std::sqrt(s));
  EXPECT_EQ(update_moments(0.0, 1.0, 2.0, 3.0, 4.0).sigma, 0.0);
}

TEST(HPdf, NormalizedCenteredAndMoments) {
  const double a = 1.5, x = 0.5;
  const double p[] = {1.0, -2.0, 3.0};
  const auto d1 = make_leader_dist(a, x, p[0]);
  const auto d2 = make_leader_dist(a, x, p[1]);
  const auto d3 = make_leader_dist(a, x, p[2]);
  const auto h = h_pdf_numeric(d1, d2, d3, 4096);
  EXPECT_NEAR(h.mass.sum(), 1.0, 1e-12);
  EXPECT_NEAR(h.integral(), 1.0, 1e-3);
  EXPECT_GE(h.u.size(), 4093);
  EXPECT_LE(h.u.size(), 4099);
  const NormalParams nm = update_moments(a, x, p[0], p[1], p[2]);
  const double mean = (h.u.array() * h.mass.array()).sum();
  const double var = ((h.u.array() - mean).square() * h.mass.array()).sum();
  EXPECT_NEAR(mean, nm.mu, 1e-9);
  EXPECT_NEAR(var, nm.sigma * nm.sigma, 1e-3 * nm.sigma * nm.sigma);
  for (Eigen::Index i = 1; i < h.u.size(); ++i) ASSERT_GT(h.u[i], h.u[i - 1]);
  EXPECT_TRUE((h.density.array() >= 0).all());
}

TEST(HPdf, MatchesSampledUpdate) {
  const double a = 2.0, x = 1.0, p1 = 0.5, p2 = -1.0, p3 = 2.0;
  const auto h = h_pdf_numeric(make_leader_dist(a, x, p1), make_leader_dist(a, x, p2),
                               make_leader_dist(a, x, p3));
  RngStream rng(4);
  const auto draws = sample_gwo_update(a, x, p1, p2, p3, rng, 200000);
  const double ks = ks_distance(draws, [&](double u) { return h.cdf(u); });
  // 1.36/sqrt(n) is the 95% critical value.
  EXPECT_LT(ks, 1.36 / std::sqrt(200000.0));
}

TEST(HPdf, OneDegenerateLeaderIsPointMass) {
  const auto h = h_pdf_numeric(make_leader_dist(2.0, 0.0, 0.0), make_leader_dist(2.0, 0.0, 1.0),
                               make_leader_dist(2.0, 0.0, 2.0), 1024);
  EXPECT_NEAR(h.mass.sum(), 1.0, 1e-12);
  const double mean = (h.u.array() * h.mass.array()).sum();
  EXPECT_NEAR(mean, 1.0, 1e-9);
}

TEST(HPdf, Rejections) {
  const auto d = make_leader_dist(0.0, 1.0, 1.0);
  EXPECT_THROW(h_pdf_numeric(d, d, d), DegenerateDistribution);
  const auto e = make_leader_dist(1.0, 1.0, 1.0);
  EXPECT_THROW(h_pdf_numeric(e, e, e, 100), std::invalid_argument);
}

TEST(Sampling, DeterministicAndCountChecked) {
  RngStream r1(8), r2(8);
  EXPECT_EQ(sample_gwo_update(1.0, 2.0, 0.0, 1.0, -1.0, r1, 50),
            sample_gwo_update(1.0, 2.0, 0.0, 1.0, -1.0, r2, 50));
  EXPECT_THROW(sample_gwo_update(1.0, 2.0, 0.0, 1.0, -1.0, r1, 0), std::invalid_argument);
  RngStream r3(8);
  EXPECT_EQ(sample_leader_term(0.0, 3.0, 1.5, r3), 1.5);
}

TEST(Sampling, LeaderTermMatchesDirectFormula) {
  // Same engine, same draw order (A then C), so values agree to rounding.
  RngStream rng(123);
  const auto direct = oracle::leader_term_draws(1.5, 2.0, 0.5, 1000, 123);
  for (double v : direct) EXPECT_NEAR(sample_leader_term(1.5, 2.0, 0.5, rng), v, 1e-12);
}

TEST(Histogram, Examples) {
  const std::vector<double> s = {0.0, 1.0, 2.0, 3.0, 4.0};
  const auto h = build_histogram(s, 4);
  ASSERT_EQ(h.bins(), 4u);
  EXPECT_EQ(h.bin_edges.front(), 0.0);
  EXPECT_EQ(h.bin_edges.back(), 4.0);
  EXPECT_EQ(h.counts, (std::vector<std::int64_t>{1, 1, 1, 2}));
  EXPECT_EQ(h.total, 5);
  EXPECT_EQ(h.center(0), 0.5);
  EXPECT_EQ(h.width(2), 1.0);

  const std::vector<double> c = {2.0, 2.0, 2.0};
  const auto hc = build_histogram(c, 2);
  EXPECT_EQ(hc.bin_edges.front(), 1.5);
  EXPECT_EQ(hc.bin_edges.back(), 2.5);
  EXPECT_EQ(hc.counts[0] + hc.counts[1], 3);

  EXPECT_THROW(build_histogram(s, 0), std::invalid_argument);
  EXPECT_THROW(build_histogram(std::vector<double>{}, 3), std::invalid_argument);
}

TEST(CompareToNormal, PerfectAgreementOnInfiniteEdges) {
  Histogram h;
  h.bin_edges = {-kInf, 0.0, kInf};
  h.counts = {50, 50};
  h.total = 100;
  const auto cmp = compare_to_normal(h, 0.0, 1.0);
  EXPECT_EQ(cmp.ks_distance, 0.0);
  EXPECT_NEAR(cmp.total_variation, 0.0, 1e-15);
  EXPECT_EQ(cmp.sample_size, 100);
  EXPECT_THROW(compare_to_normal(h, 0.0, 0.0), DegenerateDistribution);
}

TEST(CompareToNormal, OutsideMassCountsTowardsTv) {
  Histogram h;
  h.bin_edges = {-1.0, 1.0};
  h.counts = {10};
  h.total = 10;
  const auto cmp = compare_to_normal(h, 0.0, 1.0);
  // All empirical mass inside, normal puts 2 * Phi(-1) outside.
  EXPECT_NEAR(cmp.total_variation, std::erfc(1.0 / std::sqrt(2.0)), 1e-12);
}

TEST(CompareToNormal, SampledNormalIsClose) {
  RngStream rng(10);
  std::vector<double> s(100000);
  for (auto& v : s) v = rng.normal(1.0, 2.0);
  const auto cmp = compare_to_normal(build_histogram(s, 80), 1.0, 2.0);
  EXPECT_LT(cmp.ks_distance, 0.01);
  EXPECT_LT(cmp.total_variation, 0.03);
}

TEST(NormalFunctions, Values) {
  EXPECT_NEAR(normal_pdf(0.0, 0.0, 1.0), 1.0 / std::sqrt(2 * M_PI), 1e-15);
  EXPECT_EQ(normal_cdf(3.0, 3.0, 2.0), 0.5);
  EXPECT_NEAR(normal_cdf(1.0, 0.0, 1.0), 0.8413447460685429, 1e-15);
}

TEST(KsDistance, UniformGrid) {
  std::vector<double> s = {0.125, 0.375, 0.625, 0.875};
  EXPECT_DOUBLE_EQ(ks_distance(s, [](double u) { return u; }), 0.125);
  EXPECT_THROW(ks_distance(std::vector<double>{}, [](double u) { return u; }),
               std::invalid_argument);
}

}  // namespace
}  // namespace bbgwo

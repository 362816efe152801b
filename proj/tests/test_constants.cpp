// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qtwist/constants.hpp"

namespace qtw {
namespace {

struct Ctx {
  Field F{5};
  CurveModel E1 = parse_curve(F, "y^2=x^3+(t)*x+(1)");
  CurveModel E2 = parse_curve(F, "y^2=x^3+(1)*x+(t)");
  MonicSieve S{F, 8};
  std::vector<std::int64_t> t1 = compute_traces(E1, S), t2 = compute_traces(E2, S);
};

const Ctx& ctx() {
  static const Ctx c;
  return c;
}

TEST(ConstantsTest, LocalSeriesMatchClosedForms) {
  const Ctx& c = ctx();
  const EulerContext same(c.E1, c.t1, c.E1, c.t1, c.S, 6);
  const EulerContext pair(c.E1, c.t1, c.E2, c.t2, c.S, 6);
  for (const EulerContext* ec : {&same, &pair})
    for (const LocalPrime& P : ec->primes())
      for (int o : {0, 1, 2}) {
        if (o > 0 && !P.divides_delta) continue;
        const double a = local_A_series(P, o, 5, 1, 1, 1, 0, 0), b = local_A_closed(P, o);
        EXPECT_NEAR(a / b, 1, 1e-12);
        EXPECT_NEAR(local_B_series(P, o, 5, 1) / local_B_closed(P, o), 1, 1e-12);
      }
}

TEST(ConstantsTest, LocalFactorRegionChecked) {
  const Ctx& c = ctx();
  const EulerContext same(c.E1, c.t1, c.E1, c.t1, c.S, 2);
  EXPECT_THROW(local_A_series(same.primes().front(), 0, 5, 2, 1, 1, 0, 0), std::invalid_argument);
}

TEST(ConstantsTest, PerPrimeRatioDecaysQuadratically) {
  const Ctx& c = ctx();
  const EulerContext same(c.E1, c.t1, c.E1, c.t1, c.S, 8);
  // Mean of |C_P - 1| per degree over good primes, fitted against log|P|.
  std::vector<double> xs, ys;
  for (int d = 2; d <= 8; ++d) {
    double s = 0;
    int n = 0;
    for (const LocalPrime& P : same.primes()) {
      if (P.deg != d || P.divides_delta) continue;
      const double L = std::pow(sym2_local(P.e1, P.x), 3) * zeta_local(P.x);
      s += std::abs(local_A_closed(P, 0) / L - 1);
      ++n;
    }
    xs.push_back(d * std::log(5.0));
    ys.push_back(std::log(s / n));
  }
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) mx += xs[i] / xs.size(), my += ys[i] / ys.size();
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) sxy += (xs[i] - mx) * (ys[i] - my), sxx += (xs[i] - mx) * (xs[i] - mx);
  EXPECT_LE(sxy / sxx, -1.8);
}

TEST(ConstantsTest, CutoffScanStaysWithinTail) {
  const Ctx& c = ctx();
  double prev = 0, prev_tail = 0;
  for (int B = 3; B <= 8; ++B) {
    const EulerContext ec(c.E1, c.t1, c.E1, c.t1, c.S, B);
    const EulerProductValue v = ec.C_first(Poly::one());
    if (B > 3) EXPECT_LE(std::abs(v.value - prev), prev_tail) << "B=" << B;
    prev = v.value;
    prev_tail = v.tail_bound;
  }
  // Bad primes must lie below the cutoff.
  EXPECT_THROW(EulerContext(c.E1, c.t1, c.E1, c.t1, c.S, 1), std::invalid_argument);
}

TEST(ConstantsTest, ReferenceConstants) {
  const Ctx& c = ctx();
  const EulerContext ec(c.E1, c.t1, c.E1, c.t1, c.S, 8);
  const PredictedMoment p1 = predicted_moment(MomentKind::First, ec, c.E1, -1, c.E1, -1);
  EXPECT_NEAR(p1.constant, 0.910025721675, 1e-9);
  EXPECT_GT(std::abs(p1.constant), 3 * p1.constant_tail);
  EXPECT_NEAR(p1.l_values.at(0), 0.920116954678, 1e-9);
  const PredictedMoment p2 = predicted_moment(MomentKind::Second, ec, c.E1, -1, c.E1, -1);
  EXPECT_NEAR(p2.constant, 0.764229992897, 1e-9);
  EXPECT_TRUE(p1.exclusion.empty());
}

TEST(ConstantsTest, ExcludedCases) {
  const Ctx& c = ctx();
  const CurveModel E0 = parse_curve(c.F, "y^2=x^3+(t)");
  ASSERT_TRUE(E0.M.is_one());
  const auto t0 = compute_traces(E0, c.S);
  const EulerContext e0(E0, t0, E0, t0, c.S, 6);
  const PredictedMoment p = predicted_moment(MomentKind::First, e0, E0, -1, E0, -1);
  EXPECT_EQ(p.constant, 0);
  EXPECT_FALSE(p.exclusion.empty());
  // Same sign and same M for both curves.
  const EulerContext same(c.E1, c.t1, c.E1, c.t1, c.S, 6);
  const PredictedMoment p3 = predicted_moment(MomentKind::LLprime, same, c.E1, -1, c.E1, -1);
  EXPECT_EQ(p3.constant, 0);
  EXPECT_THROW(predicted_moment(MomentKind::RankJoint, same, c.E1, -1, c.E1, -1), std::invalid_argument);
}

TEST(MeanVarianceTest, Examples) {
  const double m = 7;
  const MeanVariance a = logl_mean_variance(0, 0, m);
  EXPECT_NEAR(a.mean, -std::log(m), 1e-15);
  EXPECT_NEAR(a.variance, 4 * std::log(m), 1e-14);
  const MeanVariance b = logl_mean_variance(std::numbers::pi / 2, std::numbers::pi / 2, 1);
  EXPECT_NEAR(b.mean, std::log(std::numbers::pi), 1e-14);
  for (double th : {0.3, 1.1, 2.5})
    for (double ga : {0.2, 0.9, 3.0})
      EXPECT_NEAR(logl_mean_variance(th, ga, 20).variance, logl_mean_variance(ga, th, 20).variance, 1e-14);
  EXPECT_THROW(logl_mean_variance(0, 0, 0.5), std::invalid_argument);
}

TEST(MomentKindTest, RoundTrip) {
  for (auto k : {MomentKind::First, MomentKind::Second, MomentKind::LLprime, MomentKind::LprimeLprime,
                 MomentKind::RankJoint})
    EXPECT_EQ(parse_moment_kind(to_string(k)), k);
  EXPECT_THROW(parse_moment_kind("third"), std::invalid_argument);
}

}  // namespace
}  // namespace qtw

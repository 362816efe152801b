// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <gtest/gtest.h>

#include "qtwist/errors.hpp"
#include "qtwist/moments.hpp"

namespace qtw {
namespace {

const Field& F5() {
  static const Field F(5);
  return F;
}

const Workspace& one_curve() {
  static const Workspace W(F5(), {parse_curve(F5(), "y^2=x^3+(t)*x+(1)")}, 6);
  return W;
}

const Workspace& two_curves() {
  static const Workspace W(F5(), {parse_curve(F5(), "y^2=x^3+(t)*x+(1)"), parse_curve(F5(), "y^2=x^3+(1)*x+(t)")},
                           6);
  return W;
}

std::uint64_t family_size(const Workspace& W, int g) { return enumerate_family(W.field(), g, W.family_delta()).size(); }

TEST(MomentsTest, TrivialSums) {
  const Workspace& W = one_curve();
  for (int g : {0, 1}) {
    const auto H = family_size(W, g);
    EXPECT_EQ(brute_R(W, 0, Poly::one(), 0, g), mpq_class(H));
    EXPECT_EQ(brute_S_exact(W, 0, 0, Poly::one(), 0, 0, g), mpq_class(H));
    EXPECT_DOUBLE_EQ(brute_S(W, 0, 0, Poly::one(), 0, 0, 0.2, -0.1, g), static_cast<double>(H));
  }
}

TEST(MomentsTest, LoopOrderDoesNotMatter) {
  const Workspace& W = one_curve();
  const Poly M = W.curve(0).M;
  for (const Poly& N : {Poly::one(), M})
    for (int X : {2, 3})
      EXPECT_EQ(brute_R(W, 0, N, X, 1, LoopOrder::TwistOuter), brute_R(W, 0, N, X, 1, LoopOrder::PolyOuter));
}

TEST(MomentsTest, FirstMomentDecomposesIntoTwoSums) {
  const Workspace& W = one_curve();
  const int n = W.calibration(0).n_eff, s = W.calibration(0).sign_base;
  for (int g : {1, 2}) {
    MomentOptions opt;
    opt.g = g;
    opt.cutoff_B = 6;
    const MomentReport rep = run_moment(W, opt);
    const mpq_class sum = rep.exact * mpq_class(rep.family_size);
    const mpq_class two =
        brute_R(W, 0, Poly::one(), n / 2 + 2 * g + 1, g) + s * brute_R(W, 0, W.curve(0).M, (n + 1) / 2 + 2 * g, g);
    EXPECT_EQ(sum, two) << "g=" << g;
    EXPECT_GT(rep.integrity_checked, 0u);
  }
}

TEST(MomentsTest, SecondMomentMatchesBruteForce) {
  const Workspace& W = one_curve();
  const int n = W.calibration(0).n_eff, s = W.calibration(0).sign_base;
  ASSERT_EQ(n % 2, 1);
  MomentOptions opt;
  opt.kind = MomentKind::Second;
  opt.g = 1;
  opt.cutoff_B = 6;
  const MomentReport rep = run_moment(W, opt);
  // With N odd both halves have length K, so each value is (1 + eps) times one sum.
  const int K = n / 2 + 2 * opt.g + 1;
  const mpq_class two = 2 * (brute_S_exact(W, 0, 0, Poly::one(), K, K, 1) +
                             s * brute_S_exact(W, 0, 0, W.curve(0).M, K, K, 1));
  EXPECT_EQ(rep.exact * mpq_class(rep.family_size), two);
  EXPECT_NEAR(rep.ratio, rep.empirical / rep.predicted, 1e-15);
}

TEST(MomentsTest, ThreadCountDoesNotChangeResults) {
  const Workspace& W = one_curve();
  for (auto kind : {MomentKind::First, MomentKind::Second}) {
    MomentOptions opt;
    opt.kind = kind;
    opt.g = 2;
    opt.cutoff_B = 6;
    const MomentReport a = run_moment(W, opt);
    opt.threads = 3;
    const MomentReport b = run_moment(W, opt);
    EXPECT_EQ(a.exact, b.exact);
    EXPECT_EQ(a.predicted, b.predicted);
    EXPECT_EQ(a.integrity_checked, b.integrity_checked);
  }
}

TEST(MomentsTest, ExcludedFamilyHasZeroFirstMoment) {
  const Workspace W(F5(), {parse_curve(F5(), "y^2=x^3+(t)")}, 6);
  ASSERT_TRUE(W.curve(0).M.is_one());
  ASSERT_EQ(W.calibration(0).sign_base, -1);
  MomentOptions opt;
  opt.g = 1;
  opt.cutoff_B = 6;
  const MomentReport rep = run_moment(W, opt);
  EXPECT_EQ(rep.exact, 0);
  EXPECT_EQ(rep.predicted, 0);
  EXPECT_FALSE(rep.prediction.exclusion.empty());
}

TEST(MomentsTest, TwoCurveKinds) {
  const Workspace& W = two_curves();
  MomentOptions opt;
  opt.g = 1;
  opt.cutoff_B = 6;
  opt.kind = MomentKind::RankJoint;
  const MomentReport r = run_moment(W, opt);
  EXPECT_LE(r.rank_r0_r1 + r.rank_r1_r1, r.family_size);
  EXPECT_GT(r.rank_r1_r1, 0u);
  opt.kind = MomentKind::LprimeLprime;
  const MomentReport d = run_moment(W, opt);
  EXPECT_EQ(d.log_power, 2);
  EXPECT_GT(d.predicted, 0);
  opt.kind = MomentKind::LLprime;
  const MomentReport e = run_moment(W, opt);
  EXPECT_EQ(e.log_power, 1);
}

TEST(MomentsTest, InputValidation) {
  const Workspace& W = one_curve();
  MomentOptions opt;
  opt.g = 1;
  opt.cutoff_B = 6;
  opt.cost_cap = 10;
  EXPECT_THROW(run_moment(W, opt), CostCapError);
  opt.cost_cap = 1e11;
  opt.kind = MomentKind::LLprime;
  EXPECT_THROW(run_moment(W, opt), std::invalid_argument);  // needs two curves
  opt.kind = MomentKind::First;
  opt.g = 3;
  EXPECT_THROW(run_moment(W, opt), std::invalid_argument);  // sieve too small
  EXPECT_THROW(brute_R(W, 0, Poly::one(), 9, 1), std::invalid_argument);
}

TEST(MomentsTest, TailSumsBeyondRangeVanish) {
  const Workspace& W = one_curve();
  const Poly D = parse_poly(F5(), "t^3+t+1");
  const TailSums t = tail_sums(W, 0, Poly::one(), 6, 3, D);
  EXPECT_EQ(t.e1, 0);
  EXPECT_EQ(t.e2, 0);
}

}  // namespace
}  // namespace qtw

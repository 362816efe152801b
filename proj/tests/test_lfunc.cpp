// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <gtest/gtest.h>

#include <random>

#include "qtwist/lfunc.hpp"

namespace qtw {
namespace {

class LfuncTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    F = new Field(5);
    E = new CurveModel(parse_curve(*F, "y^2=x^3+(t)*x+(1)"));
    auto S = std::make_shared<const MonicSieve>(*F, 7);
    ctx = new LContext(*E, S);
    cal = new Calibration(calibrate_degree(*ctx, 1));
  }
  static void TearDownTestSuite() {
    delete cal;
    delete ctx;
    delete E;
    delete F;
  }
  static Field* F;
  static CurveModel* E;
  static LContext* ctx;
  static Calibration* cal;
};
Field* LfuncTest::F = nullptr;
CurveModel* LfuncTest::E = nullptr;
LContext* LfuncTest::ctx = nullptr;
Calibration* LfuncTest::cal = nullptr;

TEST_F(LfuncTest, CalibrationOfReferenceCurve) {
  EXPECT_EQ(cal->n_eff, 1);
  EXPECT_EQ(cal->sign_base, -1);
  EXPECT_FALSE(cal->warning.empty());  // the formula value is -1
  EXPECT_GE(cal->twists.size(), 2u);
}

TEST_F(LfuncTest, KnownPolynomial) {
  const LPolynomial L = compute_l_polynomial(*ctx, *cal, parse_poly(*F, "t^3+t+1"));
  const std::vector<long> b{1, 1, -30, -75, 375, 3750, -3125, -78125};
  ASSERT_EQ(L.b.size(), b.size());
  for (std::size_t n = 0; n < b.size(); ++n) EXPECT_EQ(L.b[n], b[n]) << n;
  EXPECT_EQ(L.epsilon, -1);
  EXPECT_EQ(central_value(L, 5), 0);
  EXPECT_EQ(central_derivative(L, 5), mpq_class(19, 5));
  EXPECT_EQ(analytic_rank(L, 5), 1);
}

TEST_F(LfuncTest, OracleEqualsSymmetric) {
  for (const Poly& D : enumerate_family(*F, 0, E->delta)) {
    const LPolynomial a = compute_l_polynomial(*ctx, *cal, D, LMode::Oracle);
    const LPolynomial b = compute_l_polynomial(*ctx, *cal, D, LMode::Symmetric);
    EXPECT_EQ(a.b, b.b) << to_string(D);
  }
  // At g = 1 the sieve reaches N = 7, so every coefficient is available directly.
  const auto fam = enumerate_family(*F, 1, E->delta);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const Poly& D = fam[rng() % fam.size()];
    const LPolynomial L = compute_l_polynomial(*ctx, *cal, D, LMode::Symmetric);
    EXPECT_EQ(ctx->direct(D, L.N), L.b) << to_string(D);
    EXPECT_EQ(L.b[0], 1);
    EXPECT_TRUE(satisfies_symmetry(L, 5));
    mpz_class qN;
    mpz_ui_pow_ui(qN.get_mpz_t(), 5, L.N);
    EXPECT_EQ(L.b[L.N], L.epsilon * qN);
  }
}

TEST_F(LfuncTest, CentralQuantities) {
  for (const Poly& D : enumerate_family(*F, 1, E->delta)) {
    const LPolynomial L = compute_l_polynomial(*ctx, *cal, D);
    EXPECT_EQ(central_value_two_sum(L, 5), central_value(L, 5));
    const int r = analytic_rank(L, 5);
    EXPECT_LE(r, L.N);
    if (L.epsilon == -1) {
      EXPECT_EQ(central_value(L, 5), 0);
      EXPECT_EQ(central_derivative(L, 5), central_derivative_weighted(L, 5));
      EXPECT_EQ(r % 2, 1);
    } else {
      EXPECT_EQ(r % 2, 0);
      if (central_value(L, 5) != 0) EXPECT_EQ(r, 0);
    }
  }
}

TEST_F(LfuncTest, RootsOnTheCriticalCircle) {
  for (const Poly& D : enumerate_family(*F, 1, E->delta)) {
    const RootDiagnostic rd = root_diagnostic(compute_l_polynomial(*ctx, *cal, D), 5);
    EXPECT_LT(rd.max_deviation, 1e-6) << to_string(D);
  }
}

TEST_F(LfuncTest, LogBound) {
  const Poly D = parse_poly(*F, "t^3+t+1");
  const LPolynomial L = compute_l_polynomial(*ctx, *cal, D);
  // L(1/2) = 0 makes the left side -infinity.
  EXPECT_TRUE(check_log_l_bound(*ctx, L, L.N, {0, 0}).ok);
  for (double re : {0.0, 0.1, 0.3, 0.5})
    for (int h = 1; h <= L.N; ++h) EXPECT_TRUE(check_log_l_bound(*ctx, L, h, {re, 0.7}).ok);
  EXPECT_THROW(check_log_l_bound(*ctx, L, 0, {0, 0}), std::invalid_argument);
}

TEST_F(LfuncTest, TwistValidation) {
  EXPECT_THROW(compute_l_polynomial(*ctx, *cal, parse_poly(*F, "t^3")), std::invalid_argument);
  EXPECT_THROW(compute_l_polynomial(*ctx, *cal, parse_poly(*F, "t^2+2")), std::invalid_argument);
}

}  // namespace
}  // namespace qtw

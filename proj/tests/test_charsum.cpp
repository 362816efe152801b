// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <gtest/gtest.h>

#include "qtwist/charsum.hpp"

namespace qtw {
namespace {

class CharsumTest : public ::testing::Test {
 protected:
  Field F{5};
  Poly P(const char* s) const { return parse_poly(F, s); }
  std::int64_t phi(const Poly& f) const {
    std::int64_t r = 1;
    for (const auto& [Q, e] : factor(F, f)) {
      const auto n = static_cast<std::int64_t>(F.power(Q.degree()));
      for (int i = 1; i < e; ++i) r *= n;
      r *= n - 1;
    }
    return r;
  }
};

TEST_F(CharsumTest, CycloIntArithmetic) {
  const CycloInt one = CycloInt::integer(5, 1);
  CycloInt s(5);
  for (std::uint32_t k = 0; k < 5; ++k) s += CycloInt::zeta(5, k);
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(CycloInt::zeta(5, 2) * CycloInt::zeta(5, 4), CycloInt::zeta(5, 1));
  const CycloInt tau = CycloInt::gauss(F);
  std::int64_t v = 0;
  ASSERT_TRUE((tau * tau).as_integer(v));
  EXPECT_EQ(v, 5);
  EXPECT_FALSE(tau.as_integer(v));
  EXPECT_EQ(one * tau, tau);
}

TEST_F(CharsumTest, ExponentialExamples) {
  EXPECT_EQ(e_q(F, Poly{}, P("t^2+1")), CycloInt::integer(5, 1));
  for (std::uint32_t c = 0; c < 5; ++c) EXPECT_EQ(e_q(F, Poly::constant(c), P("t")), CycloInt::zeta(5, c));
  const Poly f = P("t^3+2*t+1"), u1 = P("3*t^2+t"), u2 = P("4*t^2+2");
  EXPECT_EQ(e_q(F, add(F, u1, u2), f), e_q(F, u1, f) * e_q(F, u2, f));
  // The polynomial part of u / f does not contribute.
  EXPECT_EQ(e_q(F, add(F, u1, mul(F, f, P("t+3"))), f), e_q(F, u1, f));
}

TEST_F(CharsumTest, GaussSumExamples) {
  for (const char* s : {"t^2", "t^2+2*t+1", "t^4+4"}) {
    const Poly f = P(s);
    const Poly sq = mul(F, f, f);
    if (sq.degree() > 4) continue;
    std::int64_t v = 0;
    ASSERT_TRUE(gauss_sum(F, Poly{}, sq).as_integer(v));
    EXPECT_EQ(v, phi(sq)) << s;
  }
  std::int64_t v = 0;
  ASSERT_TRUE(gauss_sum(F, Poly{}, P("t^2")).as_integer(v));
  EXPECT_EQ(v, phi(P("t^2")));
  EXPECT_TRUE(gauss_sum(F, Poly{}, P("t+2")).is_zero());
  EXPECT_TRUE(gauss_sum(F, Poly{}, P("t^2+2")).is_zero());
  ASSERT_TRUE(gauss_sum(F, P("3*t+3"), P("t^2+2*t+1")).as_integer(v));
  EXPECT_EQ(v, -5);
}

TEST_F(CharsumTest, GaussSumMultiplicativeOnCoprimeModuli) {
  std::vector<Poly> mods;
  for (int d = 1; d <= 2; ++d)
    for (const Poly& f : enumerate_monic(F, d)) mods.push_back(f);
  const std::vector<Poly> Vs{P("1"), P("t"), P("2*t+3"), P("t^3+t")};
  for (const Poly& f : mods)
    for (const Poly& h : mods) {
      if (!gcd(F, f, h).is_one()) continue;
      for (const Poly& V : Vs)
        EXPECT_EQ(gauss_sum(F, V, mul(F, f, h)), gauss_sum(F, V, f) * gauss_sum(F, V, h))
            << to_string(f) << " " << to_string(h) << " " << to_string(V);
    }
}

TEST_F(CharsumTest, SmallSuites) {
  const SuiteReport g = verify_gauss_closed_forms(F, 1, 3);
  EXPECT_GT(g.checks.size(), 0u);
  EXPECT_EQ(g.failures(), 0u);
  const SuiteReport p = verify_poisson_suite(F, 2, 3);
  EXPECT_EQ(p.failures(), 0u);
  const CheckRecord one = verify_poisson(F, Poly::one(), 3);
  EXPECT_TRUE(one.ok);
  const SuiteReport s = verify_sumd_suite(F, 0, 3, P("t"));
  EXPECT_EQ(s.failures(), 0u);
  EXPECT_TRUE(verify_sumd(F, Poly::one(), 1, P("4*t^3+2")).ok);
}

}  // namespace
}  // namespace qtw

// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <gtest/gtest.h>

#include <cmath>
#include <optional>
#include <random>

#include "qtwist/curve.hpp"

namespace qtw {
namespace {

class CurveTest : public ::testing::Test {
 protected:
  Field F{5};
  CurveModel E1 = parse_curve(F, "y^2=x^3+(t)*x+(1)");
  CurveModel E2 = parse_curve(F, "y^2=x^3+(1)*x+(t)");
  Poly P(const char* s) const { return parse_poly(F, s); }
};

TEST_F(CurveTest, DiscriminantAndReductionTypes) {
  EXPECT_EQ(E1.delta, P("4*t^3+2"));
  ASSERT_FALSE(E1.bad.empty());
  for (const auto& bp : E1.bad) EXPECT_EQ(bp.type, Reduction::Multiplicative) << to_string(bp.P);
  EXPECT_TRUE(E1.A.is_one());
  EXPECT_EQ(E1.M, make_monic(F, E1.delta));
  EXPECT_EQ(E1.n_frak, -1);
}

TEST_F(CurveTest, InvalidModelsRejected) {
  EXPECT_THROW(parse_curve(F, "y^2=x^3+(1)*x+(2)"), CurveError);
  EXPECT_THROW(build_curve(F, P("t^4"), P("t^6")), CurveError);
  EXPECT_THROW(parse_curve(F, "y=x^3+t"), std::invalid_argument);
}

TEST_F(CurveTest, ConductorPartsAreCoprime) {
  std::mt19937_64 rng(3);
  int done = 0;
  while (done < 50) {
    const Poly a = monic_from_index(F, 1 + rng() % 2, rng() % 25);
    const Poly b = monic_from_index(F, 1 + rng() % 3, rng() % 125);
    std::optional<CurveModel> maybe;
    try {
      maybe.emplace(build_curve(F, a, b));
    } catch (const CurveError&) {
      continue;
    }
    const CurveModel& E = *maybe;
    EXPECT_TRUE(gcd(F, E.M, E.A).is_one());
    EXPECT_EQ(radical(F, E.delta), mul(F, E.M, E.A));
    ++done;
  }
}

TEST_F(CurveTest, TraceAtT) {
  // y^2 = x^3 + 1 over F_5 has 6 affine points.
  EXPECT_EQ(trace_of_frobenius(E1, P("t")), 0);
  EXPECT_EQ(trace_by_point_count(E1, P("t")), 0);
}

TEST_F(CurveTest, TracesAgreeWithPointCountsAndHasse) {
  const MonicSieve S(F, 4);
  const auto tr = compute_traces(E1, S);
  for (std::size_t r = 0; r < S.primes().size(); ++r) {
    const Poly Q = S.poly(S.primes()[r]);
    if (E1.is_bad(Q)) {
      EXPECT_EQ(tr[r], E1.bad_prime(Q)->a_P);
      continue;
    }
    EXPECT_LE(tr[r] * tr[r], 4 * static_cast<std::int64_t>(F.power(Q.degree())));
    if (Q.degree() <= 3) EXPECT_EQ(tr[r], trace_by_point_count(E1, Q)) << to_string(Q);
  }
}

TEST_F(CurveTest, HeckeRecursion) {
  EXPECT_EQ(hecke_coefficient(E1, Poly::one()), 1);
  // a_t = 0 so a(t^2) = 0^2 - 5.
  EXPECT_EQ(hecke_coefficient(E1, P("t^2")), -5);
  const MonicSieve S(F, 5);
  const HeckeTable H(E1, S);
  std::mt19937_64 rng(5);
  for (int it = 0; it < 100; ++it) {
    const Poly f = monic_from_index(F, 1 + rng() % 2, rng() % 25);
    const Poly g = monic_from_index(F, 1 + rng() % 3, rng() % 125);
    if (!gcd(F, f, g).is_one()) continue;
    EXPECT_EQ(H[S.id_of(mul(F, f, g))], H[S.id_of(f)] * H[S.id_of(g)]);
    EXPECT_EQ(H[S.id_of(mul(F, f, g))], hecke_coefficient(E1, mul(F, f, g)));
  }
}

TEST_F(CurveTest, SecondCurveHasDistinctTraces) {
  const MonicSieve S(F, 3);
  EXPECT_NE(compute_traces(E1, S), compute_traces(E2, S));
  EXPECT_LE(E2.delta.degree(), 6);
}

TEST_F(CurveTest, SatakeParameters) {
  const Satake s = satake(3, 1, 5, true);
  EXPECT_NEAR(std::abs(s.alpha), 1, 1e-14);
  EXPECT_NEAR(std::abs(s.beta), 1, 1e-14);
  EXPECT_NEAR((s.alpha + s.beta).real(), 3 / std::sqrt(5.0), 1e-14);
  EXPECT_NEAR(std::abs(s.alpha * s.beta - 1.0), 0, 1e-14);
}

}  // namespace
}  // namespace qtw

// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <gtest/gtest.h>

#include <random>

#include "qtwist/ffpoly.hpp"

namespace qtw {
namespace {

class FfpolyTest : public ::testing::Test {
 protected:
  Field F{5};
  Poly P(const char* s) const { return parse_poly(F, s); }
};

TEST(FieldTest, AdmissibleCharacteristics) {
  EXPECT_EQ(field_violation(5), "");
  EXPECT_EQ(field_violation(13), "");
  EXPECT_NE(field_violation(4), "");
  EXPECT_NE(field_violation(7), "");  // 7 = 3 mod 4
  EXPECT_NE(field_violation(3), "");
  EXPECT_NE(field_violation(1), "");
  EXPECT_THROW(Field(9), std::invalid_argument);
}

TEST_F(FfpolyTest, SchoolbookProduct) { EXPECT_EQ(mul(F, P("t+1"), P("t+4")), P("t^2+4")); }

TEST_F(FfpolyTest, PowModMatchesRepeatedMultiplication) {
  EXPECT_EQ(pow_mod(F, P("t"), 12, P("t^2+2")), Poly::constant(4));
  Poly acc = Poly::one();
  for (int i = 0; i < 12; ++i) acc = mod(F, mul(F, acc, P("t")), P("t^2+2"));
  EXPECT_EQ(acc, Poly::constant(4));
}

TEST_F(FfpolyTest, GcdWithZeroIsMonicAssociate) {
  EXPECT_EQ(gcd(F, P("3*t^2+t"), Poly{}), make_monic(F, P("3*t^2+t")));
  EXPECT_TRUE(gcd(F, Poly{}, Poly{}).is_zero());
}

TEST_F(FfpolyTest, DivremReconstructs) {
  const Poly f = P("3*t^5+2*t^3+t+4"), g = P("2*t^2+1");
  auto [qo, r] = divrem(F, f, g);
  EXPECT_LT(r.degree(), g.degree());
  EXPECT_EQ(add(F, mul(F, qo, g), r), f);
  EXPECT_THROW(divrem(F, f, Poly{}), std::domain_error);
}

TEST_F(FfpolyTest, IrreducibilityAndSquarefree) {
  EXPECT_TRUE(is_irreducible(F, P("t")));
  EXPECT_FALSE(is_squarefree(F, P("t^2")));
  EXPECT_TRUE(is_irreducible(F, P("t^2+2")));
  EXPECT_FALSE(is_irreducible(F, P("t^2+4")));
}

TEST_F(FfpolyTest, SquarefreeCounts) {
  for (int n = 2; n <= 4; ++n) {
    std::size_t c = 0;
    for (const Poly& f : enumerate_monic(F, n)) c += is_squarefree(F, f);
    EXPECT_EQ(c, F.power(n) - F.power(n - 1)) << "n=" << n;
  }
  std::size_t c3 = 0;
  for (const Poly& f : enumerate_monic(F, 3)) c3 += is_squarefree(F, f);
  EXPECT_EQ(c3, 100u);
}

TEST_F(FfpolyTest, Factorization) {
  EXPECT_TRUE(factor(F, Poly::one()).empty());
  const Factorization fac = factor(F, P("t^2+4"));
  ASSERT_EQ(fac.size(), 2u);
  EXPECT_EQ(fac[0], std::make_pair(P("t+1"), 1));
  EXPECT_EQ(fac[1], std::make_pair(P("t+4"), 1));
  std::mt19937_64 rng(7);
  for (int it = 0; it < 200; ++it) {
    const int d = 1 + static_cast<int>(rng() % 8);
    std::vector<std::uint32_t> c(d + 1);
    for (auto& x : c) x = rng() % 5;
    c[d] = 1 + rng() % 4;
    const Poly f(c);
    const Factorization g = factor(F, f);
    for (const auto& [Q, e] : g) EXPECT_TRUE(is_irreducible(F, Q));
    EXPECT_EQ(scale(F, expand(F, g), f.lead()), f) << to_string(f);
  }
}

TEST_F(FfpolyTest, QuadraticSymbolExamples) {
  EXPECT_EQ(quadratic_symbol(F, P("t"), P("t+1")), 1);
  EXPECT_EQ(quadratic_symbol(F, P("t"), P("t^2+2")), -1);
  EXPECT_EQ(quadratic_symbol(F, P("3*t^2+1"), Poly::one()), 1);
  EXPECT_EQ(quadratic_symbol(F, P("t^2"), P("t")), 0);
}

TEST_F(FfpolyTest, ReciprocityOnRandomCoprimePairs) {
  std::mt19937_64 rng(11);
  int done = 0;
  while (done < 200) {
    const Poly A = monic_from_index(F, 1 + rng() % 5, rng() % 3125);
    const Poly B = monic_from_index(F, 1 + rng() % 5, rng() % 3125);
    if (!gcd(F, A, B).is_one()) continue;
    EXPECT_EQ(quadratic_symbol(F, A, B), quadratic_symbol(F, B, A)) << to_string(A) << " " << to_string(B);
    EXPECT_EQ(quadratic_symbol(F, A, B), quadratic_symbol_euler(F, A, B));
    ++done;
  }
}

TEST_F(FfpolyTest, Enumeration) {
  EXPECT_EQ(enumerate_monic(F, 2).size(), 25u);
  const auto fam = enumerate_family(F, 0, P("t"));
  ASSERT_EQ(fam.size(), 4u);
  EXPECT_EQ(fam[0], P("t+1"));
  EXPECT_EQ(fam[3], P("t+4"));
  for (std::uint64_t i = 0; i < 125; ++i) EXPECT_EQ(monic_index(F, monic_from_index(F, 3, i)), i);
}

TEST_F(FfpolyTest, ParseAndPrint) {
  for (const char* s : {"t^3+2*t+1", "4*t^2+3", "t", "2", "0"}) EXPECT_EQ(parse_poly(F, to_string(P(s))), P(s));
  EXPECT_EQ(P("t^2-1"), P("t^2+4"));
  EXPECT_THROW(P("t^^2"), std::invalid_argument);
}

TEST(ShardRange, CoversAllItems) {
  for (std::size_t n : {0u, 1u, 7u, 100u})
    for (std::size_t W : {1u, 3u, 8u}) {
      std::size_t next = 0;
      for (std::size_t w = 0; w < W; ++w) {
        auto [lo, hi] = shard_range(n, W, w);
        EXPECT_EQ(lo, next);
        next = hi;
      }
      EXPECT_EQ(next, n);
    }
}

}  // namespace
}  // namespace qtw

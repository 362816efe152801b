// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include <gtest/gtest.h>

#include "qtwist/sieve.hpp"

namespace qtw {
namespace {

TEST(SieveTest, PrimesAreIrreducibles) {
  const Field F(5);
  const MonicSieve S(F, 4);
  std::size_t primes = 0;
  for (std::uint32_t id = 1; id < S.size(); ++id) {
    const Poly f = S.poly(id);
    EXPECT_EQ(S.id_of(f), id);
    EXPECT_EQ(S.is_prime(id), is_irreducible(F, f)) << to_string(f);
    primes += S.is_prime(id);
  }
  EXPECT_EQ(primes, S.primes().size());
  // 5 + 10 + 40 + 150 monic irreducibles of degree 1..4.
  EXPECT_EQ(S.prime_count_upto(4), 205u);
}

TEST(SieveTest, SmallestPrimeFactorDecomposition) {
  const Field F(5);
  const MonicSieve S(F, 5);
  for (std::uint32_t id = 1; id < S.size(); ++id) {
    if (S.is_prime(id)) continue;
    const Poly f = S.poly(id);
    EXPECT_EQ(mul(F, S.poly(S.spf(id)), S.poly(S.cof(id))), f);
    EXPECT_EQ(mul(F, S.poly(S.prime_power_part(id)), S.poly(S.pfree(id))), f);
    EXPECT_EQ(S.pexp(id), valuation(F, f, S.poly(S.spf(id))));
  }
}

// The reciprocity shortcut for primes of degree >= deg D against the kernel.
void check_characters(std::uint32_t p, int max_deg, int stride) {
  const Field F(p);
  const MonicSieve S(F, max_deg);
  const SymbolKernel K(F);
  std::vector<std::int8_t> chi;
  for (int d = 1; d <= max_deg; ++d)
    for (std::uint32_t id = S.begin(d); id < S.end(d); id += stride) {
      const SmallPoly D = SmallPoly::from(S.poly(id));
      S.twist_character(K, D, max_deg, chi);
      for (std::size_t r = 0; r < S.primes().size(); ++r)
        ASSERT_EQ(chi[S.primes()[r]], K(D, S.prime_polys()[r]))
            << "D=" << to_string(S.poly(id)) << " P=" << to_string(S.poly(S.primes()[r]));
      for (std::uint32_t h = 1; h < S.size(); h += 7)
        ASSERT_EQ(chi[h], quadratic_symbol(F, S.poly(id), S.poly(h)));
    }
}

TEST(SieveTest, TwistCharacterMatchesKernelP5) { check_characters(5, 5, 3); }
TEST(SieveTest, TwistCharacterMatchesKernelP13) { check_characters(13, 3, 5); }

TEST(SieveTest, NonMonicTwistFallsBackToKernel) {
  const Field F(5);
  const MonicSieve S(F, 4);
  const SymbolKernel K(F);
  const Poly D = parse_poly(F, "2*t^3+t+1");
  std::vector<std::int8_t> chi;
  S.twist_character(K, SmallPoly::from(D), 4, chi);
  for (std::uint32_t h = 1; h < S.size(); ++h) ASSERT_EQ(chi[h], quadratic_symbol(F, D, S.poly(h)));
}

TEST(SieveTest, RejectsOutOfRangeDegree) {
  const Field F(5);
  EXPECT_THROW(MonicSieve(F, -1), std::invalid_argument);
  const MonicSieve S(F, 2);
  std::vector<std::int8_t> chi;
  EXPECT_THROW(S.twist_character(SymbolKernel(F), SmallPoly::from(Poly::t()), 3, chi), std::out_of_range);
}

}  // namespace
}  // namespace qtw

// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <cstdint>
#include <vector>

#include "qtwist/ffpoly.hpp"

namespace qtw {

inline constexpr int kSmallPolyCap = 32;

// Fixed-capacity polynomial for the hot symbol loop. deg = -1 is zero.
struct SmallPoly {
  int deg = -1;
  std::uint16_t c[kSmallPolyCap] = {};

  static SmallPoly from(const Poly& f);
  Poly to_poly() const;
};

// Quadratic residue symbol on SmallPoly operands, specialized at compile
// time for the common small primes.
class SymbolKernel {
 public:
  explicit SymbolKernel(const Field& F);

  // (f / h) with h monic, deg f and deg h below kSmallPolyCap.
  int operator()(const SmallPoly& f, const SmallPoly& h) const { return fn_(tables_, f, h); }

  // out[i] = (D / moduli[i]).
  void batch(const SmallPoly& D, const std::vector<SmallPoly>& moduli, std::int8_t* out) const;

  struct Tables {
    std::uint32_t p;
    std::vector<std::uint16_t> inv;
    std::vector<std::int8_t> chi;
  };

 private:
  using Fn = int (*)(const Tables&, const SmallPoly&, const SmallPoly&);
  Tables tables_;
  Fn fn_;
};

}  // namespace qtw

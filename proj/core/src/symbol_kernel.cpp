// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "qtwist/symbol_kernel.hpp"

#include <stdexcept>
#include <utility>

namespace qtw {

SmallPoly SmallPoly::from(const Poly& f) {
  if (f.degree() >= kSmallPolyCap) throw std::length_error("polynomial too large for SmallPoly");
  SmallPoly s;
  s.deg = f.degree();
  for (int i = 0; i <= s.deg; ++i) s.c[i] = static_cast<std::uint16_t>(f[i]);
  return s;
}

Poly SmallPoly::to_poly() const {
  std::vector<std::uint32_t> v(c, c + deg + 1);
  return Poly(std::move(v));
}

namespace {

// P = 0 selects the runtime modulus.
template <std::uint32_t P>
struct Mod {
  std::uint32_t p;
  std::uint32_t get() const { return P ? P : p; }
  std::uint32_t red(std::uint32_t x) const { return P ? x % P : x % p; }
};

template <std::uint32_t P>
int symbol_impl(const SymbolKernel::Tables& T, const SmallPoly& f, const SmallPoly& h) {
  const Mod<P> m{T.p};
  const std::uint32_t p = m.get();
  SmallPoly a = f, b = h;
  int sign = 1;
  for (;;) {
    if (b.deg == 0) return sign;
    const int db = b.deg;
    // a <- a mod b, b monic.
    for (int i = a.deg; i >= db; --i) {
      std::uint32_t c = a.c[i];
      if (c == 0) continue;
      std::uint32_t nc = p - c;
      const int off = i - db;
      for (int j = 0; j < db; ++j)
        a.c[off + j] = static_cast<std::uint16_t>(m.red(a.c[off + j] + nc * b.c[j]));
      a.c[i] = 0;
    }
    int d = a.deg < db ? a.deg : db - 1;
    while (d >= 0 && a.c[d] == 0) --d;
    if (d < 0) return 0;
    a.deg = d;
    std::uint32_t lc = a.c[d];
    if (db & 1) sign *= T.chi[lc];
    if (lc != 1) {
      std::uint32_t il = T.inv[lc];
      for (int j = 0; j < d; ++j) a.c[j] = static_cast<std::uint16_t>(m.red(a.c[j] * il));
      a.c[d] = 1;
    }
    std::swap(a, b);
  }
}

}  // namespace

SymbolKernel::SymbolKernel(const Field& F) {
  tables_.p = F.p();
  tables_.inv.resize(F.p());
  tables_.chi.resize(F.p());
  for (std::uint32_t a = 0; a < F.p(); ++a) {
    tables_.inv[a] = static_cast<std::uint16_t>(a ? F.inv(a) : 0);
    tables_.chi[a] = static_cast<std::int8_t>(F.chi(a));
  }
  switch (F.p()) {
    case 5: fn_ = &symbol_impl<5>; break;
    case 13: fn_ = &symbol_impl<13>; break;
    case 17: fn_ = &symbol_impl<17>; break;
    case 29: fn_ = &symbol_impl<29>; break;
    case 37: fn_ = &symbol_impl<37>; break;
    case 41: fn_ = &symbol_impl<41>; break;
    default: fn_ = &symbol_impl<0>; break;
  }
}

void SymbolKernel::batch(const SmallPoly& D, const std::vector<SmallPoly>& moduli,
                         std::int8_t* out) const {
  for (std::size_t i = 0; i < moduli.size(); ++i)
    out[i] = static_cast<std::int8_t>(fn_(tables_, D, moduli[i]));
}

}  // namespace qtw

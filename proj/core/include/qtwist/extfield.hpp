// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qtwist/ffpoly.hpp"

namespace qtw {

// F_{p^d} = F_p[t]/(m) with m primitive, elements stored as discrete logs to
// the base t. Addition goes through a Zech logarithm table.
class ExtField {
 public:
  using Elem = std::int32_t;
  static constexpr Elem kZero = -1;

  ExtField(const Field& F, int d);

  const Field& base() const { return F_; }
  int degree() const { return d_; }
  std::uint32_t order() const { return q_; }
  const Poly& modulus() const { return modulus_; }

  Elem mul(Elem a, Elem b) const {
    if (a < 0 || b < 0) return kZero;
    std::int64_t s = static_cast<std::int64_t>(a) + b;
    return static_cast<Elem>(s >= n_ ? s - n_ : s);
  }
  Elem add(Elem a, Elem b) const {
    if (a < 0) return b;
    if (b < 0) return a;
    Elem k = b - a;
    if (k < 0) k += n_;
    Elem z = zech_[k];
    if (z < 0) return kZero;
    std::int64_t s = static_cast<std::int64_t>(a) + z;
    return static_cast<Elem>(s >= n_ ? s - n_ : s);
  }
  Elem neg(Elem a) const {
    if (a < 0) return a;
    Elem s = a + half_;
    return s >= n_ ? s - n_ : s;
  }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  // a must be nonzero.
  Elem inv(Elem a) const { return a == 0 ? 0 : n_ - a; }
  Elem pow(Elem a, std::uint64_t e) const;
  // Quadratic character: squares are exactly the even logs.
  int chi(Elem a) const { return a < 0 ? 0 : ((a & 1) ? -1 : 1); }
  // One square root of a square; a must satisfy chi(a) >= 0.
  Elem sqrt(Elem a) const { return a < 0 ? a : a / 2; }

  Elem from_base(std::uint32_t c) const { return log_[c]; }
  // Element with coefficient vector given as a base-p index (low digit first).
  Elem from_index(std::uint32_t idx) const { return log_[idx]; }
  std::uint32_t to_index(Elem a) const { return a < 0 ? 0 : exp_[a]; }
  Elem eval(const Poly& f, Elem x) const;

  // Calls fn(tau, P) once per monic irreducible P of degree exactly d, where
  // tau is a root of P.
  void for_each_prime(const std::function<void(Elem, const Poly&)>& fn) const;
  Poly minimal_polynomial(Elem tau) const;

  // -sum_x chi(x^3 + A x + B) over the whole field.
  std::int64_t trace_exhaustive(Elem A, Elem B) const;
  // Same quantity for a nonsingular curve by baby-step giant-step on the
  // group order, falling back to the exhaustive sum when ambiguous.
  std::int64_t trace_bsgs(Elem A, Elem B, std::uint64_t seed) const;

 private:
  Field F_;
  int d_;
  std::uint32_t q_;
  Elem n_, half_;
  Poly modulus_;
  std::vector<Elem> log_, zech_;
  std::vector<std::uint32_t> exp_;
};

}  // namespace qtw

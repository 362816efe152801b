// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qtw {

// Prime field F_p with p prime, p = 1 mod 4 and gcd(p, 6) = 1.
class Field {
 public:
  explicit Field(std::uint32_t p);

  std::uint32_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
  }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  // Legendre symbol of a residue: 0, +1 or -1.
  int chi(std::uint32_t a) const { return chi_[a]; }
  std::uint32_t reduce(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
  }
  // p^n, throws on overflow of 64 bits.
  std::uint64_t power(int n) const;

  friend bool operator==(const Field& a, const Field& b) { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
  std::vector<std::uint32_t> inv_;
  std::vector<int> chi_;
};

// Empty string when p is admissible, otherwise the violated condition.
std::string field_violation(long long p);

// Dense polynomial over F_p, coefficients low to high. The zero polynomial
// has no coefficients and degree -1.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<std::uint32_t> coeffs);

  static Poly constant(std::uint32_t c);
  static Poly monomial(std::uint32_t c, int k);
  static Poly one() { return constant(1); }
  static Poly t() { return monomial(1, 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  std::uint32_t lead() const { return c_.empty() ? 0 : c_.back(); }
  std::uint32_t operator[](int i) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : 0;
  }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }

  friend bool operator==(const Poly&, const Poly&) = default;
  // Degree first, then coefficients from the top down; this is the
  // enumeration order of monic polynomials.
  friend std::strong_ordering operator<=>(const Poly& a, const Poly& b);

 private:
  void trim();
  std::vector<std::uint32_t> c_;
};

Poly add(const Field& F, const Poly& f, const Poly& g);
Poly sub(const Field& F, const Poly& f, const Poly& g);
Poly mul(const Field& F, const Poly& f, const Poly& g);
Poly scale(const Field& F, const Poly& f, std::uint32_t c);
// Throws std::domain_error when g is zero.
std::pair<Poly, Poly> divrem(const Field& F, const Poly& f, const Poly& g);
Poly mod(const Field& F, const Poly& f, const Poly& g);
Poly div_exact(const Field& F, const Poly& f, const Poly& g);
Poly make_monic(const Field& F, const Poly& f);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Field& F, const Poly& f, const Poly& g);
Poly derivative(const Field& F, const Poly& f);
Poly pow_mod(const Field& F, const Poly& f, std::uint64_t e, const Poly& m);
Poly pow(const Field& F, const Poly& f, unsigned e);
std::uint32_t eval(const Field& F, const Poly& f, std::uint32_t x);

bool is_squarefree(const Field& F, const Poly& f);
bool is_irreducible(const Field& F, const Poly& f);
// Valuation of f at the monic irreducible P; f must be nonzero.
int valuation(const Field& F, const Poly& f, const Poly& P);

using Factorization = std::vector<std::pair<Poly, int>>;
// Monic irreducible factors sorted by (degree, coefficients).
Factorization factor(const Field& F, const Poly& f);
Poly expand(const Field& F, const Factorization& fac);
Poly radical(const Field& F, const Poly& f);

// (f / h) for monic h via the reciprocity remainder chain.
int quadratic_symbol(const Field& F, const Poly& f, const Poly& h);
// Same symbol through factorization of h and Euler's criterion.
int quadratic_symbol_euler(const Field& F, const Poly& f, const Poly& h);

// Monic polynomials of degree n are indexed by the base-p number whose
// digits are c_{n-1} ... c_0 (most significant first).
std::uint64_t monic_index(const Field& F, const Poly& f);
Poly monic_from_index(const Field& F, int n, std::uint64_t idx);
// Index over all monic polynomials of degree <= some bound: (p^n - 1)/(p - 1) + idx.
std::uint64_t global_id(const Field& F, const Poly& f);
std::uint64_t degree_offset(const Field& F, int n);

std::vector<Poly> enumerate_monic(const Field& F, int n);
void for_each_monic(const Field& F, int n, const std::function<void(const Poly&)>& fn);
// Monic square-free polynomials of degree 2g+1 coprime to delta, in order.
std::vector<Poly> enumerate_family(const Field& F, int g, const Poly& delta);
// Half-open range [begin, end) of shard w out of W over n items.
std::pair<std::size_t, std::size_t> shard_range(std::size_t n, std::size_t W, std::size_t w);

// Literal grammar: terms c*t^k, t^k, c*t, t, c joined by + or -.
Poly parse_poly(const Field& F, std::string_view text);
std::string to_string(const Poly& f);

}  // namespace qtw

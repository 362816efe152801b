// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qtwist/ffpoly.hpp"

namespace qtw {

// Element of Z[zeta_p] stored as p bucket counts, canonicalized so that the
// coefficient of zeta^{p-1} is zero.
class CycloInt {
 public:
  explicit CycloInt(std::uint32_t p);
  static CycloInt integer(std::uint32_t p, std::int64_t n);
  static CycloInt zeta(std::uint32_t p, std::uint32_t k);
  // Quadratic Gauss sum over F_p: sum_c chi(c) zeta^c.
  static CycloInt gauss(const Field& F);
  static CycloInt from_buckets(std::vector<std::int64_t> buckets);

  std::uint32_t p() const { return static_cast<std::uint32_t>(c_.size()); }
  std::int64_t operator[](std::uint32_t i) const { return c_[i]; }
  bool is_zero() const;
  // Value when the element is a rational integer, otherwise false.
  bool as_integer(std::int64_t& out) const;

  CycloInt& operator+=(const CycloInt& o);
  CycloInt& operator-=(const CycloInt& o);
  CycloInt& operator*=(std::int64_t k);
  friend CycloInt operator+(CycloInt a, const CycloInt& b) { return a += b; }
  friend CycloInt operator-(CycloInt a, const CycloInt& b) { return a -= b; }
  friend CycloInt operator*(CycloInt a, std::int64_t k) { return a *= k; }
  friend CycloInt operator*(const CycloInt& a, const CycloInt& b);
  friend bool operator==(const CycloInt& a, const CycloInt& b) { return a.c_ == b.c_; }

  std::complex<double> embed() const;
  std::string str() const;

 private:
  void canonicalize();
  std::vector<std::int64_t> c_;
};

// Exponent k with e_q(u/f) = zeta^k: the coefficient of t^{deg f - 1} of u mod f.
std::uint32_t eq_exponent(const Field& F, const Poly& u, const Poly& f);
CycloInt e_q(const Field& F, const Poly& u, const Poly& f);

// chi_f(u) = (u / f) for every residue u of degree < deg f, by residue index.
std::vector<std::int8_t> residue_characters(const Field& F, const Poly& f);
// G(V, f) by direct summation.
CycloInt gauss_sum(const Field& F, const Poly& V, const Poly& f);
CycloInt gauss_sum(const Field& F, const Poly& V, const Poly& f, const std::vector<std::int8_t>& chi);

struct CheckRecord {
  std::string what;
  std::string witness;
  std::string lhs, rhs;
  bool ok;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckRecord> checks;
  std::size_t failures() const;
};

// Closed forms of G(V, P^j) for all primes with deg P <= max_deg and
// j <= max_j, V = 0 and V = V1 P^alpha for alpha = 0 .. j + 1.
SuiteReport verify_gauss_closed_forms(const Field& F, int max_deg, int max_j = 4);
// Poisson summation for sum_{R in M_m} chi_R(f). Cost cap q^{deg f + m} <= 1e8.
CheckRecord verify_poisson(const Field& F, const Poly& f, int m);
SuiteReport verify_poisson_suite(const Field& F, int max_deg_f, int max_m);
// Square-free sum over H*_{2g+1} against its C1/C2 decomposition.
CheckRecord verify_sumd(const Field& F, const Poly& f, int g, const Poly& delta);
SuiteReport verify_sumd_suite(const Field& F, int max_g, int max_deg_f, const Poly& delta);

}  // namespace qtw

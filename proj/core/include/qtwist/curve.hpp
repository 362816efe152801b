// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtwist/ffpoly.hpp"
#include "qtwist/sieve.hpp"

namespace qtw {

enum class Reduction { Multiplicative, Additive };

struct BadPrime {
  Poly P;
  Reduction type;
  int a_P;          // +1 split, -1 nonsplit, 0 additive
  int v_delta;      // valuation of the discriminant
};

class CurveError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// y^2 = x^3 + a x + b over F_p(t).
struct CurveModel {
  Field F;
  Poly a, b;
  Poly delta;
  std::vector<BadPrime> bad;  // sorted like factor()
  Poly M, A;
  int n_frak = 0;             // deg M + 2 deg A - 4

  bool is_bad(const Poly& P) const;
  const BadPrime* bad_prime(const Poly& P) const;
  std::string equation() const;
};

CurveModel build_curve(const Field& F, const Poly& a, const Poly& b);
// Parses "y^2=x^3+(A)*x+(B)"; the x term may be omitted.
CurveModel parse_curve(const Field& F, const std::string& text);

// Reference trace by exhaustive counting in F_p[t]/(P).
int trace_of_frobenius(const CurveModel& E, const Poly& P);
// |P| + 1 - #E(F_P) for good P, |P| - #E_ns(F_P) for bad P, both counted
// with the point at infinity; independent of the character-sum route.
int trace_by_point_count(const CurveModel& E, const Poly& P);

// Traces a_P for every prime of the sieve, aligned with sieve.primes().
std::vector<std::int64_t> compute_traces(const CurveModel& E, const MonicSieve& S);

// Unnormalized Hecke coefficients for every id of the sieve.
class HeckeTable {
 public:
  HeckeTable(const CurveModel& E, const MonicSieve& S);
  HeckeTable(const CurveModel& E, const MonicSieve& S, std::vector<std::int64_t> traces);

  std::int64_t operator[](std::uint32_t id) const { return at_[id]; }
  const std::vector<std::int64_t>& values() const { return at_; }
  // Trace at the prime of rank r in sieve.primes().
  std::int64_t trace(std::size_t r) const { return traces_[r]; }
  const std::vector<std::int64_t>& traces() const { return traces_; }
  bool bad_rank(std::size_t r) const { return bad_[r]; }

 private:
  void fill(const CurveModel& E, const MonicSieve& S);
  std::vector<std::int64_t> traces_;
  std::vector<char> bad_;
  std::vector<std::int64_t> at_;
};

// Hecke coefficient via factorization and per-prime traces.
std::int64_t hecke_coefficient(const CurveModel& E, const Poly& f);

struct Satake {
  double lambda;  // a_P / sqrt|P|
  std::complex<double> alpha, beta;
  bool good;
};
Satake satake(std::int64_t a_P, int deg, std::uint32_t p, bool good);

}  // namespace qtw

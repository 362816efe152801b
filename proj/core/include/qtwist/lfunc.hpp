// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <gmpxx.h>

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "qtwist/curve.hpp"
#include "qtwist/errors.hpp"
#include "qtwist/sieve.hpp"
#include "qtwist/symbol_kernel.hpp"

namespace qtw {

// Curve data shared by every twist: Hecke table over a sieve of fixed degree.
class LContext {
 public:
  LContext(CurveModel E, std::shared_ptr<const MonicSieve> S);
  LContext(CurveModel E, std::shared_ptr<const MonicSieve> S, std::vector<std::int64_t> traces);

  const CurveModel& curve() const { return E_; }
  const Field& field() const { return E_.F; }
  const MonicSieve& sieve() const { return *S_; }
  std::shared_ptr<const MonicSieve> sieve_ptr() const { return S_; }
  const HeckeTable& hecke() const { return H_; }
  const SymbolKernel& kernel() const { return K_; }

  // b_0..b_nmax by direct Dirichlet summation; nmax <= sieve degree.
  std::vector<mpz_class> direct(const Poly& D, int nmax) const;
  // Same, from a precomputed character table of the sieve.
  std::vector<mpz_class> direct_from_chi(const std::vector<std::int8_t>& chi, int nmax) const;

 private:
  CurveModel E_;
  std::shared_ptr<const MonicSieve> S_;
  HeckeTable H_;
  SymbolKernel K_;
};

struct Calibration {
  int parity = 1;      // deg D mod 2
  int n_eff = 0;       // N - 2 deg D
  int sign_base = 1;   // epsilon * chi_D(M)
  std::vector<Poly> twists;  // twists used, first one defines the values
  std::string warning;       // set when n_eff differs from the formula value
};

// Smallest twists of the requested parity, direct summation up to
// deg M + 2 deg A + 2 deg D. Throws IntegrityError when no consistent degree
// exists or the twists disagree.
Calibration calibrate_degree(const LContext& ctx, int parity);
// Highest degree the sieve must reach for calibrate_degree.
int calibration_degree(const CurveModel& E, int parity);

struct LPolynomial {
  std::vector<mpz_class> b;
  int N = 0;
  int epsilon = 1;
  Poly D;
};

enum class LMode { Symmetric, Oracle };

// Checks D (monic, square-free, coprime to the discriminant, right parity).
void validate_twist(const LContext& ctx, const Calibration& cal, const Poly& D);
int twist_sign(const LContext& ctx, const Calibration& cal, const Poly& D);

// Symmetric: direct b_n for n <= ceil(N/2), the rest by the functional
// equation, with the overlap coefficient checked. Oracle: direct summation
// up to N + 2 and every relation checked. Integrity failures throw.
LPolynomial compute_l_polynomial(const LContext& ctx, const Calibration& cal, const Poly& D,
                                 LMode mode = LMode::Symmetric);

// Exact equalities b_{N-n} = eps q^{N-2n} b_n and the central-zero rule.
bool satisfies_symmetry(const LPolynomial& L, std::uint32_t q);

// q-adic exact values.
mpq_class central_value(const LPolynomial& L, std::uint32_t q);
// L'(1/2) = r log q.
mpq_class central_derivative(const LPolynomial& L, std::uint32_t q);
// Central value from the two half-length sums of the functional equation.
mpq_class central_value_two_sum(const LPolynomial& L, std::uint32_t q);
// For epsilon = -1: sum_{n <= [(N-1)/2]} (N - 2n) b_n q^-n.
mpq_class central_derivative_weighted(const LPolynomial& L, std::uint32_t q);

int analytic_rank(const LPolynomial& L, std::uint32_t q);

struct RootDiagnostic {
  int rank = 0;            // multiplicity of y = 1 removed exactly
  int minus_one = 0;       // multiplicity of y = -1 removed exactly
  double max_deviation = 0;  // max over roots of | |root| q - 1 |
  std::vector<std::complex<double>> roots;  // roots in x
};
RootDiagnostic root_diagnostic(const LPolynomial& L, std::uint32_t q);

struct LogBound {
  double lhs, rhs;
  bool ok;
};
LogBound check_log_l_bound(const LContext& ctx, const LPolynomial& L, int h, std::complex<double> z);

std::string to_string(const mpq_class& v);

}  // namespace qtw

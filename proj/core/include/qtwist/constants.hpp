// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qtwist/curve.hpp"
#include "qtwist/sieve.hpp"

namespace qtw {

struct EulerProductValue {
  double value = 1;
  int cutoff_B = 0;
  double tail_bound = 0;
};

// One curve at one prime: normalized trace lambda = a_P / sqrt|P|.
struct LocalCurve {
  double lambda = 0;
  bool good = true;
};

// Data for a prime P of degree d; x = 1/|P|.
struct LocalPrime {
  int deg = 0;
  double x = 0;
  LocalCurve e1, e2;
  bool divides_delta = false;  // P | Delta_1 Delta_2
};

// P-local factor of the twisted double Dirichlet series with (u, v, w, alpha, beta),
// summed as a series over (i, j). ord_N is ord_P(N). Throws outside
// |u|, |v| <= q^{1/5}, |w| <= q^{3/2}.
double local_A_series(const LocalPrime& P, int ord_N, std::uint32_t q, double u, double v, double w,
                      double alpha, double beta);
// Same at u = v = w = 1, alpha = beta = 0 by geometric resummation.
double local_A_closed(const LocalPrime& P, int ord_N);
// P-local factor of the one-curve series for the first moment (curve e1).
double local_B_series(const LocalPrime& P, int ord_N, std::uint32_t q, double u);
double local_B_closed(const LocalPrime& P, int ord_N);

// Local L-factors at x = 1/|P| (value of the inverse polynomial), 1 at bad primes.
double sym2_local(const LocalCurve& c, double x);
double rankin_local(const LocalCurve& c1, const LocalCurve& c2, double x);
double zeta_local(double x);

// Coefficients of the zeta function 1/(1 - q u) up to degree n.
std::vector<std::uint64_t> zeta_coefficients(std::uint32_t q, int n);

enum class MomentKind { First, Second, LLprime, LprimeLprime, RankJoint };
std::string to_string(MomentKind k);
MomentKind parse_moment_kind(const std::string& s);

// Local data of one or two curves for all primes of degree <= B.
class EulerContext {
 public:
  // traces are indexed by prime rank of S, as returned by compute_traces.
  EulerContext(const CurveModel& E1, const std::vector<std::int64_t>& traces1, const CurveModel& E2,
               const std::vector<std::int64_t>& traces2, const MonicSieve& S, int B, int threads = 1);

  int cutoff() const { return B_; }
  std::uint32_t q() const { return q_; }
  const std::vector<LocalPrime>& primes() const { return primes_; }

  EulerProductValue sym2(int which) const;  // L(Sym^2 E_which, 1), which in {1, 2}
  EulerProductValue rankin() const;         // L(E_1 x E_2, 1)
  EulerProductValue C_first(const Poly& N) const;   // C_{E1}(N; 1)
  EulerProductValue C_second(const Poly& N) const;  // C_{E1}(N; 1, 1, 1)
  EulerProductValue C_pair(const Poly& N) const;    // C_{E1,E2}(N; 1, 1, 1, 0, 0)
  // prod over P | Delta of (|P| + 1) / |P|.
  double delta_ratio() const { return delta_ratio_; }

  // ord_P(N) for the primes of the context dividing Delta; N must divide Delta^inf.
  std::vector<int> ord_vector(const Poly& N) const;

 private:
  template <class Fn>
  double product(Fn&& local) const;

  const Field F_;
  std::uint32_t q_;
  int B_;
  int threads_;
  std::vector<LocalPrime> primes_;
  std::vector<Poly> delta_primes_;
  std::vector<std::size_t> delta_index_;  // position in primes_ of each delta prime
  double delta_ratio_ = 1;
  int sym2_degree_bound_[2] = {0, 0};
  int rankin_degree_bound_ = 0;
};

struct PredictedMoment {
  MomentKind kind = MomentKind::First;
  double constant = 0;
  double constant_tail = 0;
  std::vector<double> l_values;  // L(Sym^2 E1,1) [, L(Sym^2 E2,1), L(E1 x E2,1)]
  std::vector<double> l_tails;
  std::string exclusion;  // empty unless the inputs hit an excluded case
  double main_term(int g) const;
  double main_term_tail(int g) const;
};

// sign_i = epsilon_{deg D} epsilon(E_i) for odd deg D (calibration sign_base).
PredictedMoment predicted_moment(MomentKind kind, const EulerContext& ctx, const CurveModel& E1, int sign1,
                                 const CurveModel& E2, int sign2);

struct MeanVariance {
  double mean, variance;
};
MeanVariance logl_mean_variance(double theta, double gamma, double m);

}  // namespace qtw

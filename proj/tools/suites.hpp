// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <cstdint>
#include <memory>

#include "qtwist/charsum.hpp"
#include "qtwist/constants.hpp"
#include "qtwist/lfunc.hpp"

namespace qtw::suites {

// A curve with its sieve, Hecke table and odd-degree calibration.
struct TwistSetup {
  std::shared_ptr<const MonicSieve> sieve;
  std::vector<std::int64_t> traces;
  std::unique_ptr<LContext> ctx;
  Calibration cal;
};
TwistSetup make_setup(const CurveModel& E, int sieve_degree);
// Setup whose sieve allows Oracle-mode polynomials for every twist with g <= g_max.
TwistSetup make_oracle_setup(const CurveModel& E, int g_max);

// (f / h) by remainder chain against factorization + Euler criterion, all f
// with deg f <= max_deg (including zero and non-monic) and monic h with
// 1 <= deg h <= max_deg. One record per h.
SuiteReport symbol_suite(const Field& F, int max_deg);

// Functional equation for every D of degree 2g+1, g = 0..g_max. Oracle mode
// wherever the sieve allows it, otherwise Symmetric.
SuiteReport fe_suite(const TwistSetup& s, int g_max);

// Two-sum central value against sum b_n q^-n: every twist for g <= g_full,
// `samples` seeded random twists at g_sample.
SuiteReport central_suite(const TwistSetup& s, int g_full, int g_sample, int samples, std::uint64_t seed);

// Hasse bound, point-count traces and Satake relations for primes of degree
// <= max_deg, then (-1)^rank = epsilon for twists up to g_max.
SuiteReport hasse_suite(const TwistSetup& s, int max_deg, int g_max);

// Root moduli of every twist with g <= g_max within tol of 1/q.
SuiteReport rh_suite(const TwistSetup& s, int g_max, double tol);

// Randomized (D, h, z) checks of the log L upper bound, Re z in [0, 1/2].
SuiteReport logbound_suite(const TwistSetup& s, int g_max, int samples, std::uint64_t seed);

// Local factor identities for all primes of the context; relative tolerance tol.
SuiteReport euler_suite(const EulerContext& same, const EulerContext& pair, double tol);

// a_P lists of two curves differ for some prime of degree <= max_deg.
CheckRecord distinct_traces(const CurveModel& E1, const CurveModel& E2, int max_deg);

}  // namespace qtw::suites

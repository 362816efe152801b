// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "qtwist/constants.hpp"
#include "qtwist/lfunc.hpp"

namespace qtw {

// Sieve, Hecke tables and odd-parity calibration for one or two curves.
class Workspace {
 public:
  // The sieve reaches at least min_degree and everything calibration needs.
  Workspace(const Field& F, std::vector<CurveModel> curves, int min_degree);

  const Field& field() const { return F_; }
  std::size_t curve_count() const { return ctx_.size(); }
  const MonicSieve& sieve() const { return *S_; }
  std::shared_ptr<const MonicSieve> sieve_ptr() const { return S_; }
  const LContext& ctx(std::size_t i) const { return *ctx_[i]; }
  const CurveModel& curve(std::size_t i) const { return ctx_[i]->curve(); }
  const Calibration& calibration(std::size_t i) const { return cal_[i]; }
  const std::vector<std::int64_t>& traces(std::size_t i) const { return traces_[i]; }
  // Product of the discriminants; the family is coprime to it.
  Poly family_delta() const;

 private:
  Field F_;
  std::shared_ptr<const MonicSieve> S_;
  std::vector<std::vector<std::int64_t>> traces_;
  std::vector<std::unique_ptr<LContext>> ctx_;
  std::vector<Calibration> cal_;
};

// Sieve degree needed by a moment run at genus g (calibration excluded).
int moment_sieve_degree(const std::vector<CurveModel>& curves, const std::vector<int>& n_eff, int g);

// Published cost model: q^{2g+1} q^{X} / X symbol kernels, X = [n_eff/2] + 2g + 1.
double moment_cost(std::uint32_t q, int n_eff_max, int g);

enum class SecondLength { Proof, Theorem };

struct MomentOptions {
  MomentKind kind = MomentKind::First;
  int g = 1;
  int threads = 1;
  int cutoff_B = 8;
  bool force = false;
  double cost_cap = 1e11;
  // Every stride-th twist also gets its full L-polynomial checked; 0 disables.
  int integrity_stride = 64;
  // Proof: main term c2 L^3 (2g). Theorem: c2 L^3 g.
  SecondLength second_length = SecondLength::Proof;
};

struct MomentReport {
  MomentKind kind = MomentKind::First;
  std::uint32_t q = 0;
  int g = 0;
  std::vector<std::string> curves;
  std::vector<int> sign_base, n_eff;
  std::uint64_t family_size = 0;
  // Average over the family, exact, in units of (log q)^log_power.
  mpq_class exact;
  int log_power = 0;
  double empirical = 0;
  double predicted = 0;
  double predicted_tail = 0;
  double ratio = 0;
  PredictedMoment prediction;
  std::uint64_t rank_r0_r1 = 0, rank_r1_r1 = 0;  // ranks kind only
  std::uint64_t integrity_checked = 0;
  std::string notes;
  // Not part of the deterministic report.
  double seconds = 0;
  int threads = 1;
};

// Runs the exhaustive family experiment. The workspace must hold the curves
// of the kind (one or two) and a sieve of moment_sieve_degree.
MomentReport run_moment(const Workspace& W, const MomentOptions& opt);

// f-outer or D-outer evaluation of sum_D sum_{deg f <= X} lambda(f) chi_D(N f) / sqrt|f|.
enum class LoopOrder { TwistOuter, PolyOuter };
mpq_class brute_R(const Workspace& W, std::size_t curve, const Poly& N, int X, int g,
                  LoopOrder order = LoopOrder::TwistOuter);

// sum_D sum_{f <= X, h <= Y} lambda1(f) lambda2(h) chi_D(N f h) / (|f|^{1/2+alpha} |h|^{1/2+beta}).
mpq_class brute_S_exact(const Workspace& W, std::size_t c1, std::size_t c2, const Poly& N, int X, int Y, int g);
double brute_S(const Workspace& W, std::size_t c1, std::size_t c2, const Poly& N, int X, int Y, double alpha,
               double beta, int g);

struct TailSums {
  mpq_class e1, e2;
};
// Truncated sums over X < deg f <= n + deg D.
TailSums tail_sums(const Workspace& W, std::size_t curve, const Poly& N, int X, int n, const Poly& D);

}  // namespace qtw

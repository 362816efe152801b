// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "qtwist/moments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qtw {

namespace {

mpz_class qpow(std::uint32_t q, int n) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), q, static_cast<unsigned long>(n));
  return r;
}

int floor_half(int n) { return n >= 0 ? n / 2 : -((-n + 1) / 2); }

// Runs fn(w) on W workers and rethrows the first failure.
template <class Fn>
void parallel_for_shards(int W, Fn&& fn) {
  if (W == 1) {
    fn(0);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (int w = 0; w < W; ++w)
    pool.emplace_back([&, w] {
      try {
        fn(w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

// Exact data of one twist for one curve.
struct TwistValues {
  int epsilon = 1;
  int N = 0;
  mpz_class value;  // L(1/2) = value / q^{N/2 floor}
  mpz_class deriv;  // L'(1/2) / log q = deriv / q^{(N-1)/2 floor}, only for epsilon = -1
};

TwistValues evaluate(const LContext& ctx, const Calibration& cal, const Poly& D, const std::vector<std::int8_t>& chi) {
  const std::uint32_t q = ctx.field().p();
  TwistValues tv;
  tv.N = cal.n_eff + 2 * D.degree();
  tv.epsilon = twist_sign(ctx, cal, D);
  const int K1 = tv.N / 2, K2 = (tv.N - 1) / 2;
  const auto b = ctx.direct_from_chi(chi, K1);
  tv.value = 0;
  for (int n = 0; n <= K1; ++n) tv.value += b[n] * qpow(q, K1 - n);
  for (int n = 0; n <= K2; ++n) tv.value += tv.epsilon * b[n] * qpow(q, K1 - n);
  if (tv.epsilon == -1) {
    if (tv.value != 0) throw IntegrityError("twist " + to_string(D) + ": epsilon = -1 but central value is nonzero");
    tv.deriv = 0;
    for (int n = 0; n <= K2; ++n) tv.deriv += (tv.N - 2 * n) * b[n] * qpow(q, K2 - n);
  }
  return tv;
}

void integrity_check(const LContext& ctx, const Calibration& cal, const Poly& D, const TwistValues& tv) {
  const std::uint32_t q = ctx.field().p();
  LPolynomial L = compute_l_polynomial(ctx, cal, D, LMode::Symmetric);
  if (!satisfies_symmetry(L, q)) throw IntegrityError("twist " + to_string(D) + ": functional equation violated");
  mpq_class v(tv.value, qpow(q, tv.N / 2));
  v.canonicalize();
  if (central_value(L, q) != v) throw IntegrityError("twist " + to_string(D) + ": two-sum value disagrees");
  if (tv.epsilon == -1) {
    mpq_class r(tv.deriv, qpow(q, (tv.N - 1) / 2));
    r.canonicalize();
    if (central_derivative(L, q) != r) throw IntegrityError("twist " + to_string(D) + ": derivative disagrees");
  }
}

int curves_needed(MomentKind k) { return k == MomentKind::First || k == MomentKind::Second ? 1 : 2; }

}  // namespace

Workspace::Workspace(const Field& F, std::vector<CurveModel> curves, int min_degree) : F_(F) {
  if (curves.empty()) throw std::invalid_argument("at least one curve is required");
  int deg = std::max(1, min_degree);
  for (const auto& E : curves) deg = std::max(deg, calibration_degree(E, 1));
  S_ = std::make_shared<const MonicSieve>(F_, deg);
  for (auto& E : curves) {
    traces_.push_back(compute_traces(E, *S_));
    ctx_.push_back(std::make_unique<LContext>(std::move(E), S_, traces_.back()));
    cal_.push_back(calibrate_degree(*ctx_.back(), 1));
  }
}

Poly Workspace::family_delta() const {
  Poly d = Poly::one();
  for (const auto& c : ctx_) d = mul(F_, d, make_monic(F_, c->curve().delta));
  return d;
}

int moment_sieve_degree(const std::vector<CurveModel>& curves, const std::vector<int>& n_eff, int g) {
  (void)curves;
  int deg = 1;
  for (int n : n_eff) deg = std::max(deg, (n + 2 * (2 * g + 1) + 1) / 2);
  return deg;
}

double moment_cost(std::uint32_t q, int n_eff_max, int g) {
  const int X = floor_half(n_eff_max) + 2 * g + 1;
  return std::pow(static_cast<double>(q), 2 * g + 1) * std::pow(static_cast<double>(q), X) / X;
}

MomentReport run_moment(const Workspace& W, const MomentOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const int nc = curves_needed(opt.kind);
  if (static_cast<int>(W.curve_count()) < nc)
    throw std::invalid_argument("moment kind " + to_string(opt.kind) + " needs two curves");
  if (opt.g < 0) throw std::invalid_argument("g must be non-negative");
  if (opt.threads < 1) throw std::invalid_argument("thread count must be positive");
  const Field& F = W.field();
  const std::uint32_t q = F.p();

  MomentReport rep;
  rep.kind = opt.kind;
  rep.q = q;
  rep.g = opt.g;
  rep.threads = opt.threads;
  int n_eff_max = -1000;
  std::vector<int> n_effs;
  for (int i = 0; i < nc; ++i) {
    rep.curves.push_back(W.curve(i).equation());
    rep.sign_base.push_back(W.calibration(i).sign_base);
    rep.n_eff.push_back(W.calibration(i).n_eff);
    n_effs.push_back(W.calibration(i).n_eff);
    n_eff_max = std::max(n_eff_max, W.calibration(i).n_eff);
    if (!W.calibration(i).warning.empty()) rep.notes += "curve " + std::to_string(i + 1) + ": " + W.calibration(i).warning + "; ";
  }
  const double cost = moment_cost(q, n_eff_max, opt.g);
  if (cost > opt.cost_cap && !opt.force)
    throw CostCapError("estimated " + std::to_string(cost) + " symbol kernels exceeds the cap of " +
                       std::to_string(opt.cost_cap) + " (use --force)");
  std::vector<CurveModel> cm;
  for (int i = 0; i < nc; ++i) cm.push_back(W.curve(i));
  const int need_full = moment_sieve_degree(cm, n_effs, opt.g);
  int need_values = 0;
  for (int n : n_effs) need_values = std::max(need_values, (n + 2 * (2 * opt.g + 1)) / 2);
  if (need_values > W.sieve().max_deg())
    throw std::invalid_argument("workspace sieve degree " + std::to_string(W.sieve().max_deg()) + " below " +
                                std::to_string(need_values));
  const bool can_check = opt.integrity_stride > 0 && need_full <= W.sieve().max_deg();

  Poly delta = Poly::one();
  for (int i = 0; i < nc; ++i) delta = mul(F, delta, make_monic(F, W.curve(i).delta));
  const std::vector<Poly> family = enumerate_family(F, opt.g, delta);
  if (family.empty()) throw std::invalid_argument("empty twist family at g = " + std::to_string(opt.g));
  rep.family_size = family.size();

  struct Acc {
    mpz_class sum = 0;
    std::uint64_t r0r1 = 0, r1r1 = 0, checked = 0;
  };
  std::vector<Acc> acc(opt.threads);
  const SymbolKernel K(F);
  parallel_for_shards(opt.threads, [&](int w) {
    auto [lo, hi] = shard_range(family.size(), opt.threads, w);
    std::vector<std::int8_t> chi;
    Acc& a = acc[w];
    for (std::size_t i = lo; i < hi; ++i) {
      const Poly& D = family[i];
      W.sieve().twist_character(K, SmallPoly::from(D), need_values, chi);
      TwistValues tv[2];
      for (int c = 0; c < nc; ++c) {
        tv[c] = evaluate(W.ctx(c), W.calibration(c), D, chi);
        if (can_check && i % opt.integrity_stride == 0) {
          integrity_check(W.ctx(c), W.calibration(c), D, tv[c]);
          a.checked += c == 0;
        }
      }
      switch (opt.kind) {
        case MomentKind::First: a.sum += tv[0].value; break;
        case MomentKind::Second: a.sum += tv[0].value * tv[0].value; break;
        case MomentKind::LLprime:
          if (tv[1].epsilon == -1) a.sum += tv[0].value * tv[1].deriv;
          break;
        case MomentKind::LprimeLprime:
          if (tv[0].epsilon == -1 && tv[1].epsilon == -1) a.sum += tv[0].deriv * tv[1].deriv;
          break;
        case MomentKind::RankJoint: {
          const bool r1_0 = tv[0].epsilon == 1 && tv[0].value != 0;
          const bool r1_1 = tv[0].epsilon == -1 && tv[0].deriv != 0;
          const bool r2_1 = tv[1].epsilon == -1 && tv[1].deriv != 0;
          a.r0r1 += r1_0 && r2_1;
          a.r1r1 += r1_1 && r2_1;
          break;
        }
      }
    }
  });
  mpz_class total = 0;
  for (auto& a : acc) {
    total += a.sum;
    rep.rank_r0_r1 += a.r0r1;
    rep.rank_r1_r1 += a.r1r1;
    rep.integrity_checked += a.checked;
  }

  // Denominator of each summand.
  auto Nof = [&](int c) { return W.calibration(c).n_eff + 2 * (2 * opt.g + 1); };
  mpz_class den = 1;
  switch (opt.kind) {
    case MomentKind::First: den = qpow(q, Nof(0) / 2); break;
    case MomentKind::Second: den = qpow(q, 2 * (Nof(0) / 2)); break;
    case MomentKind::LLprime:
      den = qpow(q, Nof(0) / 2 + (Nof(1) - 1) / 2);
      rep.log_power = 1;
      break;
    case MomentKind::LprimeLprime:
      den = qpow(q, (Nof(0) - 1) / 2 + (Nof(1) - 1) / 2);
      rep.log_power = 2;
      break;
    case MomentKind::RankJoint: break;
  }
  if (opt.kind != MomentKind::RankJoint) {
    rep.exact = mpq_class(total, den * static_cast<unsigned long>(family.size()));
    rep.exact.canonicalize();
    rep.empirical = rep.exact.get_d() * std::pow(std::log(static_cast<double>(q)), rep.log_power);

    const int B = opt.cutoff_B;
    if (B > W.sieve().max_deg()) throw std::invalid_argument("cutoff B exceeds the workspace sieve degree");
    const int c2 = nc == 2 ? 1 : 0;
    EulerContext ec(W.curve(0), W.traces(0), W.curve(c2), W.traces(c2), W.sieve(), B, 1);
    rep.prediction = predicted_moment(opt.kind, ec, W.curve(0), rep.sign_base[0], W.curve(c2), rep.sign_base[c2]);
    rep.predicted = rep.prediction.main_term(opt.g);
    rep.predicted_tail = rep.prediction.main_term_tail(opt.g);
    if (opt.kind == MomentKind::Second && opt.second_length == SecondLength::Proof) {
      rep.predicted *= 2;
      rep.predicted_tail *= 2;
      rep.notes += "second-moment main term c2 L^3 (2g); ";
    }
    if (!rep.prediction.exclusion.empty()) rep.notes += "excluded case: " + rep.prediction.exclusion + "; ";
    rep.ratio = rep.predicted != 0 ? rep.empirical / rep.predicted : std::nan("");
  }
  if (can_check) rep.notes += "integrity checked every " + std::to_string(opt.integrity_stride) + "th twist; ";
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

mpq_class brute_R(const Workspace& W, std::size_t curve, const Poly& N, int X, int g, LoopOrder order) {
  const Field& F = W.field();
  const std::uint32_t q = F.p();
  const MonicSieve& S = W.sieve();
  if (X > S.max_deg()) throw std::invalid_argument("X beyond the workspace sieve degree");
  const std::vector<Poly> family = enumerate_family(F, g, W.family_delta());
  if (std::pow(double(q), 2 * g + 1) * std::pow(double(q), X + 1) > 1e9) throw CostCapError("brute_R exceeds 1e9 terms");
  const auto& at = W.ctx(curve).hecke().values();
  const SymbolKernel K(F);
  // Sum of a(f) chi / q^{deg f}: integer numerator over q^X.
  mpz_class num = 0;
  if (order == LoopOrder::TwistOuter) {
    std::vector<std::int8_t> chi;
    for (const Poly& D : family) {
      S.twist_character(K, SmallPoly::from(D), X, chi);
      const int cN = quadratic_symbol(F, D, N);
      if (cN == 0) continue;
      for (int n = 0; n <= X; ++n) {
        long long s = 0;
        for (std::uint32_t id = S.begin(n); id < S.end(n); ++id) s += at[id] * chi[id];
        num += cN * mpz_class(static_cast<long>(s)) * qpow(q, X - n);
      }
    }
  } else {
    std::vector<SmallPoly> Ds;
    for (const Poly& D : family) Ds.push_back(SmallPoly::from(D));
    for (std::uint32_t id = 0; id < S.end(X); ++id) {
      if (at[id] == 0) continue;
      const SmallPoly h = SmallPoly::from(mul(F, N, S.poly(id)));
      long long s = 0;
      for (const auto& D : Ds) s += K(D, h);
      num += mpz_class(static_cast<long>(at[id] * s)) * qpow(q, X - S.degree(id));
    }
  }
  mpq_class r(num, qpow(q, X));
  r.canonicalize();
  return r;
}

namespace {

std::vector<mpz_class> family_direct(const Workspace& W, std::size_t c, const std::vector<std::int8_t>& chi, int X) {
  return W.ctx(c).direct_from_chi(chi, X);
}

}  // namespace

mpq_class brute_S_exact(const Workspace& W, std::size_t c1, std::size_t c2, const Poly& N, int X, int Y, int g) {
  const Field& F = W.field();
  const std::uint32_t q = F.p();
  const int Z = std::max(X, Y);
  if (Z > W.sieve().max_deg()) throw std::invalid_argument("X, Y beyond the workspace sieve degree");
  if (std::pow(double(q), 2 * g + 1) * std::pow(double(q), Z + 1) > 1e9) throw CostCapError("brute_S exceeds 1e9 terms");
  const SymbolKernel K(F);
  std::vector<std::int8_t> chi;
  mpz_class num = 0;
  for (const Poly& D : enumerate_family(F, g, W.family_delta())) {
    const int cN = quadratic_symbol(F, D, N);
    if (cN == 0) continue;
    W.sieve().twist_character(K, SmallPoly::from(D), Z, chi);
    auto b1 = family_direct(W, c1, chi, X), b2 = family_direct(W, c2, chi, Y);
    mpz_class s1 = 0, s2 = 0;
    for (int n = 0; n <= X; ++n) s1 += b1[n] * qpow(q, X - n);
    for (int n = 0; n <= Y; ++n) s2 += b2[n] * qpow(q, Y - n);
    num += cN * s1 * s2;
  }
  mpq_class r(num, qpow(q, X + Y));
  r.canonicalize();
  return r;
}

double brute_S(const Workspace& W, std::size_t c1, std::size_t c2, const Poly& N, int X, int Y, double alpha,
               double beta, int g) {
  if (alpha == 0 && beta == 0) return brute_S_exact(W, c1, c2, N, X, Y, g).get_d();
  const Field& F = W.field();
  const double q = F.p();
  const int Z = std::max(X, Y);
  if (Z > W.sieve().max_deg()) throw std::invalid_argument("X, Y beyond the workspace sieve degree");
  if (std::pow(q, 2 * g + 1) * std::pow(q, Z + 1) > 1e9) throw CostCapError("brute_S exceeds 1e9 terms");
  const SymbolKernel K(F);
  std::vector<std::int8_t> chi;
  double total = 0;
  for (const Poly& D : enumerate_family(F, g, W.family_delta())) {
    const int cN = quadratic_symbol(F, D, N);
    if (cN == 0) continue;
    W.sieve().twist_character(K, SmallPoly::from(D), Z, chi);
    auto b1 = family_direct(W, c1, chi, X), b2 = family_direct(W, c2, chi, Y);
    double s1 = 0, s2 = 0;
    for (int n = 0; n <= X; ++n) s1 += b1[n].get_d() * std::pow(q, -n * (1 + alpha));
    for (int n = 0; n <= Y; ++n) s2 += b2[n].get_d() * std::pow(q, -n * (1 + beta));
    total += cN * s1 * s2;
  }
  return total;
}

TailSums tail_sums(const Workspace& W, std::size_t curve, const Poly& N, int X, int n, const Poly& D) {
  const Field& F = W.field();
  const std::uint32_t q = F.p();
  const int top = n + D.degree();
  if (top > W.sieve().max_deg()) throw std::invalid_argument("n + deg D beyond the workspace sieve degree");
  const SymbolKernel K(F);
  std::vector<std::int8_t> chi;
  W.sieve().twist_character(K, SmallPoly::from(D), std::max(top, 0), chi);
  const auto b = W.ctx(curve).direct_from_chi(chi, std::max(top, 0));
  const int cN = quadratic_symbol(F, D, N);
  TailSums out{0, 0};
  for (int k = std::max(X + 1, 0); k <= top; ++k) {
    mpq_class term(b[k] * cN, qpow(q, k));
    out.e1 += term;
    out.e2 += term * (top - k);
  }
  out.e1.canonicalize();
  out.e2.canonicalize();
  return out;
}

}  // namespace qtw

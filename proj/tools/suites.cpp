// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace qtw::suites {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

int twist_N(const TwistSetup& s, int g) { return s.cal.n_eff + 2 * (2 * g + 1); }

LMode best_mode(const TwistSetup& s, int g) {
  return twist_N(s, g) + 2 <= s.sieve->max_deg() ? LMode::Oracle : LMode::Symmetric;
}

// Computes L for D, turning integrity failures into a failed record.
bool try_lpoly(const TwistSetup& s, const Poly& D, LMode mode, LPolynomial& L, CheckRecord& fail) {
  try {
    L = compute_l_polynomial(*s.ctx, s.cal, D, mode);
    return true;
  } catch (const IntegrityError& e) {
    fail = {"lpoly", "D=" + to_string(D), e.what(), "", false};
    return false;
  }
}

std::vector<Poly> family(const TwistSetup& s, int g) {
  return enumerate_family(s.ctx->field(), g, s.ctx->curve().delta);
}

}  // namespace

TwistSetup make_setup(const CurveModel& E, int sieve_degree) {
  TwistSetup s;
  const int deg = std::max(sieve_degree, calibration_degree(E, 1));
  s.sieve = std::make_shared<const MonicSieve>(E.F, deg);
  s.traces = compute_traces(E, *s.sieve);
  s.ctx = std::make_unique<LContext>(E, s.sieve, s.traces);
  s.cal = calibrate_degree(*s.ctx, 1);
  return s;
}

TwistSetup make_oracle_setup(const CurveModel& E, int g_max) {
  TwistSetup small = make_setup(E, 1);
  const int need = small.cal.n_eff + 2 * (2 * g_max + 1) + 2;
  if (need <= small.sieve->max_deg()) return small;
  return make_setup(E, need);
}

SuiteReport symbol_suite(const Field& F, int max_deg) {
  SuiteReport rep;
  rep.suite = "symbol";
  const std::uint32_t p = F.p();
  std::vector<Poly> fs;
  // Every polynomial of degree <= max_deg: zero, then c * monic.
  fs.push_back(Poly{});
  for (int d = 0; d <= max_deg; ++d)
    for (const Poly& m : enumerate_monic(F, d))
      for (std::uint32_t c = 1; c < p; ++c) fs.push_back(scale(F, m, c));
  for (int dh = 1; dh <= max_deg; ++dh) {
    for (const Poly& h : enumerate_monic(F, dh)) {
      CheckRecord rec{"symbol", "h=" + to_string(h), "", "", true};
      std::size_t mismatches = 0;
      for (const Poly& f : fs) {
        const int a = quadratic_symbol(F, f, h);
        const int b = quadratic_symbol_euler(F, f, h);
        if (a != b && mismatches++ == 0) {
          rec.ok = false;
          rec.witness += " f=" + to_string(f);
          rec.lhs = std::to_string(a);
          rec.rhs = std::to_string(b);
        }
      }
      if (rec.ok) rec.lhs = rec.rhs = std::to_string(fs.size()) + " f agree";
      rep.checks.push_back(std::move(rec));
    }
  }
  return rep;
}

SuiteReport fe_suite(const TwistSetup& s, int g_max) {
  SuiteReport rep;
  rep.suite = "fe";
  const std::uint32_t q = s.ctx->field().p();
  for (int g = 0; g <= g_max; ++g) {
    const LMode mode = best_mode(s, g);
    for (const Poly& D : family(s, g)) {
      LPolynomial L;
      CheckRecord rec;
      if (!try_lpoly(s, D, mode, L, rec)) {
        rep.checks.push_back(rec);
        continue;
      }
      bool ok = satisfies_symmetry(L, q) && (L.epsilon == 1 || L.epsilon == -1);
      // Oracle mode computes b_n beyond N directly; they must vanish.
      for (std::size_t n = L.N + 1; n < L.b.size(); ++n) ok = ok && L.b[n] == 0;
      rep.checks.push_back({mode == LMode::Oracle ? "fe-oracle" : "fe-symmetric", "D=" + to_string(D),
                            "N=" + std::to_string(L.N) + " eps=" + std::to_string(L.epsilon),
                            ok ? "symmetric" : "violated", ok});
    }
  }
  return rep;
}

SuiteReport central_suite(const TwistSetup& s, int g_full, int g_sample, int samples, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "central";
  const std::uint32_t q = s.ctx->field().p();
  auto check = [&](const Poly& D, LMode mode) {
    LPolynomial L;
    CheckRecord rec;
    if (!try_lpoly(s, D, mode, L, rec)) {
      rep.checks.push_back(rec);
      return;
    }
    if (mode == LMode::Symmetric) {
      // Coefficients above the half-length come from the functional equation;
      // compare them with direct summation as far as the sieve reaches.
      const int top = std::min(L.N, s.sieve->max_deg());
      const auto direct = s.ctx->direct(D, top);
      int bad = -1;
      for (int n = 0; n <= top && bad < 0; ++n)
        if (direct[n] != L.b[n]) bad = n;
      rep.checks.push_back({"direct-coefficients", "D=" + to_string(D) + " n<=" + std::to_string(top),
                            bad < 0 ? "agree" : "b_" + std::to_string(bad) + " differs", "agree", bad < 0});
    }
    const mpq_class a = central_value_two_sum(L, q), b = central_value(L, q);
    rep.checks.push_back({"central", "D=" + to_string(D), to_string(a), to_string(b), a == b});
  };
  for (int g = 0; g <= g_full; ++g)
    for (const Poly& D : family(s, g)) check(D, best_mode(s, g));
  if (samples > 0) {
    const auto fam = family(s, g_sample);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, fam.size() - 1);
    for (int i = 0; i < samples; ++i) check(fam[pick(rng)], best_mode(s, g_sample));
  }
  return rep;
}

SuiteReport hasse_suite(const TwistSetup& s, int max_deg, int g_max) {
  SuiteReport rep;
  rep.suite = "hasse";
  const CurveModel& E = s.ctx->curve();
  const MonicSieve& S = *s.sieve;
  const std::uint32_t p = E.F.p();
  const std::size_t np = S.prime_count_upto(std::min(max_deg, S.max_deg()));
  for (std::size_t r = 0; r < np; ++r) {
    const Poly P = S.poly(S.primes()[r]);
    const int d = P.degree();
    const std::int64_t a = s.traces[r];
    const std::string w = "P=" + to_string(P);
    if (const BadPrime* bp = E.bad_prime(P)) {
      rep.checks.push_back({"bad-trace", w, std::to_string(a), std::to_string(bp->a_P), a == bp->a_P});
      continue;
    }
    const std::int64_t norm = static_cast<std::int64_t>(E.F.power(d));
    rep.checks.push_back({"hasse", w, std::to_string(a * a), "<= " + std::to_string(4 * norm), a * a <= 4 * norm});
    const int pc = trace_by_point_count(E, P);
    rep.checks.push_back({"point-count", w, std::to_string(a), std::to_string(pc), a == pc});
    const Satake st = satake(a, d, p, true);
    const double e1 = std::abs(std::abs(st.alpha) - 1), e2 = std::abs(std::abs(st.beta) - 1);
    const double e3 = std::abs(st.alpha + st.beta - st.lambda), e4 = std::abs(st.alpha * st.beta - 1.0);
    const double worst = std::max({e1, e2, e3, e4});
    rep.checks.push_back({"satake", w, num(worst), "<= 1e-12", worst <= 1e-12});
  }
  const std::uint32_t q = p;
  for (int g = 0; g <= g_max; ++g) {
    for (const Poly& D : family(s, g)) {
      LPolynomial L;
      CheckRecord rec;
      if (!try_lpoly(s, D, best_mode(s, g), L, rec)) {
        rep.checks.push_back(rec);
        continue;
      }
      const int r = analytic_rank(L, q);
      const int parity = r % 2 == 0 ? 1 : -1;
      rep.checks.push_back({"rank-parity", "D=" + to_string(D), "rank=" + std::to_string(r),
                            "eps=" + std::to_string(L.epsilon), parity == L.epsilon});
    }
  }
  return rep;
}

SuiteReport rh_suite(const TwistSetup& s, int g_max, double tol) {
  SuiteReport rep;
  rep.suite = "rh";
  const std::uint32_t q = s.ctx->field().p();
  for (int g = 0; g <= g_max; ++g) {
    for (const Poly& D : family(s, g)) {
      LPolynomial L;
      CheckRecord rec;
      if (!try_lpoly(s, D, best_mode(s, g), L, rec)) {
        rep.checks.push_back(rec);
        continue;
      }
      const RootDiagnostic rd = root_diagnostic(L, q);
      // | |x| - 1/q | for every root x.
      const double dev = rd.max_deviation / q;
      rep.checks.push_back({"rh", "D=" + to_string(D), num(dev), "<= " + num(tol), dev <= tol});
    }
  }
  return rep;
}

SuiteReport logbound_suite(const TwistSetup& s, int g_max, int samples, std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "logbound";
  std::vector<Poly> pool;
  for (int g = 0; g <= g_max; ++g) {
    auto f = family(s, g);
    pool.insert(pool.end(), f.begin(), f.end());
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_real_distribution<double> re(0.0, 0.5), im(-std::numbers::pi, std::numbers::pi);
  const double lq = std::log(static_cast<double>(s.ctx->field().p()));
  for (int i = 0; i < samples; ++i) {
    const Poly& D = pool[pick(rng)];
    const int g = (D.degree() - 1) / 2;
    LPolynomial L;
    CheckRecord rec;
    if (!try_lpoly(s, D, best_mode(s, g), L, rec)) {
      rep.checks.push_back(rec);
      continue;
    }
    const int hmax = std::min(L.N, s.sieve->max_deg());
    std::uniform_int_distribution<int> hd(1, hmax);
    const int h = hd(rng);
    const std::complex<double> z(re(rng), im(rng) / lq);
    const LogBound b = check_log_l_bound(*s.ctx, L, h, z);
    rep.checks.push_back({"logbound",
                          "D=" + to_string(D) + " h=" + std::to_string(h) + " z=" + num(z.real()) + "+" +
                              num(z.imag()) + "i",
                          num(b.lhs), num(b.rhs), b.ok});
  }
  return rep;
}

SuiteReport euler_suite(const EulerContext& same, const EulerContext& pair, double tol) {
  SuiteReport rep;
  rep.suite = "euler";
  const std::uint32_t q = same.q();
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); };
  auto orders = [](const LocalPrime& P) { return P.divides_delta ? std::vector<int>{0, 1, 2} : std::vector<int>{0}; };
  for (const LocalPrime& P : same.primes()) {
    const double x = P.x;
    const double L3 = std::pow(sym2_local(P.e1, x), 3) * zeta_local(x);
    const double L1 = sym2_local(P.e1, x);
    for (int o : orders(P)) {
      const std::string w = "deg=" + std::to_string(P.deg) + " x=" + num(x) + " ord=" + std::to_string(o);
      const double A = local_A_series(P, o, q, 1, 1, 1, 0, 0);
      const double C = local_A_closed(P, o) / L3;
      rep.checks.push_back({"A=C*Sym2^3*zeta", w, num(A), num(C * L3), rel(A, C * L3) <= tol});
      const double B = local_B_series(P, o, q, 1);
      const double Cb = local_B_closed(P, o) / L1;
      rep.checks.push_back({"B=C*Sym2", w, num(B), num(Cb * L1), rel(B, Cb * L1) <= tol});
    }
  }
  for (const LocalPrime& P : pair.primes()) {
    const double x = P.x;
    const double Lp = sym2_local(P.e1, x) * sym2_local(P.e2, x) * rankin_local(P.e1, P.e2, x);
    for (int o : orders(P)) {
      const std::string w = "deg=" + std::to_string(P.deg) + " x=" + num(x) + " ord=" + std::to_string(o);
      const double A = local_A_series(P, o, q, 1, 1, 1, 0, 0);
      const double C = local_A_closed(P, o) / Lp;
      rep.checks.push_back({"A=C*Sym2*Sym2*Rankin", w, num(A), num(C * Lp), rel(A, C * Lp) <= tol});
    }
  }
  return rep;
}

CheckRecord distinct_traces(const CurveModel& E1, const CurveModel& E2, int max_deg) {
  const MonicSieve S(E1.F, max_deg);
  const auto t1 = compute_traces(E1, S), t2 = compute_traces(E2, S);
  for (std::size_t r = 0; r < t1.size(); ++r)
    if (t1[r] != t2[r])
      return {"distinct-traces", "P=" + to_string(S.poly(S.primes()[r])), std::to_string(t1[r]),
              std::to_string(t2[r]), true};
  return {"distinct-traces", "none up to degree " + std::to_string(max_deg), "", "", false};
}

}  // namespace qtw::suites

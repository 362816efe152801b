// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "qtwist/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qtw {

namespace {

constexpr double kSeriesEps = 1e-18;
// Radius for the Cauchy estimates of the ratio products, in x = 1/|P|.
constexpr double kCauchyRadius = 0.25;

// lambda(P^i) * a^i for i = 0 .. until the Deligne majorant (i + 1)|a|^i is negligible.
std::vector<double> hecke_series(const LocalCurve& c, double a) {
  std::vector<double> out{1.0};
  double prev = 1, cur = c.lambda;  // lambda(P^{i-1}), lambda(P^i)
  double pw = a;
  for (int i = 1; (i + 1) * std::abs(pw) > kSeriesEps || i < 2; ++i) {
    out.push_back(cur * pw);
    const double next = c.good ? c.lambda * cur - prev : c.lambda * cur;
    prev = cur;
    cur = next;
    pw *= a;
    if (i > 100000) throw std::logic_error("local series does not converge");
  }
  return out;
}

// 1 / ((1 - alpha T)(1 - beta T)) at good primes and 1 / (1 - lambda T) at bad ones.
double hecke_generating(const LocalCurve& c, double T) {
  return c.good ? 1.0 / (1.0 - c.lambda * T + T * T) : 1.0 / (1.0 - c.lambda * T);
}

double ipow(double b, int e) {
  double r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

void check_region(std::uint32_t q, double u, double v, double w) {
  const double r = std::pow(static_cast<double>(q), 0.2);
  if (std::abs(u) > r || std::abs(v) > r)
    throw std::invalid_argument("|u|, |v| must not exceed q^(1/5)");
  if (std::abs(w) > std::pow(static_cast<double>(q), 1.5)) throw std::invalid_argument("|w| must not exceed q^(3/2)");
}

LocalPrime same_curve(const LocalPrime& P) {
  LocalPrime out = P;
  out.e2 = P.e1;
  out.divides_delta = !P.e1.good;
  return out;
}

// Majorant values at x = r of the ratio local factors.
double majorant_first(double r) {
  const double s = std::sqrt(r);
  return (1 + (1 / (1 - r)) * (1 / ((1 - s) * (1 - s)) + 1)) * ipow(1 + r, 3);
}

double majorant_double(double r) {
  const double s = std::sqrt(r);
  return (1 + (1 / (1 - r)) * (1 / ipow(1 - s, 4) + 1)) * ipow(1 + r, 10);
}

// Tail of prod over deg P > B of C_P with |C_P - 1| <= m (x/r)^2 / (1 - x/r).
double cauchy_tail(std::uint32_t q, int B, double m, double value) {
  double tau = 0;
  for (int d = B + 1; d <= B + 400; ++d) {
    const double x = std::pow(static_cast<double>(q), -d);
    const double delta = m * (x / kCauchyRadius) * (x / kCauchyRadius) / (1 - x / kCauchyRadius);
    if (delta >= 0.5) return std::numeric_limits<double>::infinity();
    const double count = std::pow(static_cast<double>(q), d) / d;
    const double term = count * delta / (1 - delta);
    tau += term;
    if (term < 1e-30) break;
  }
  return std::abs(value) * std::expm1(tau);
}

// Tail of an L-value from the Weil bound |c_n| <= R q^{n/2} on its polynomial.
double rh_tail(std::uint32_t q, int B, int R, int dim, double value) {
  const double qd = static_cast<double>(q);
  const double K = R + dim * qd / (qd - 1);
  double tau = 0;
  for (int n = B + 1; n <= B + 4000; ++n) {
    const double term = K * std::pow(qd, -0.5 * n) / n;
    tau += term;
    if (term < 1e-30) break;
  }
  return std::abs(value) * std::expm1(tau);
}

}  // namespace

double local_A_series(const LocalPrime& P, int ord_N, std::uint32_t q, double u, double v, double w, double alpha,
                      double beta) {
  check_region(q, u, v, w);
  const double norm = 1.0 / P.x;
  const double a = ipow(u, P.deg) * std::pow(norm, -0.5 - alpha);
  const double b = ipow(v, P.deg) * std::pow(norm, -0.5 - beta);
  if (std::abs(a) >= 1 || std::abs(b) >= 1) throw std::invalid_argument("local series diverges at these arguments");
  const auto s1 = hecke_series(P.e1, a);
  const auto s2 = hecke_series(P.e2, b);
  const int parity = P.divides_delta ? ord_N % 2 : 0;
  double sum = 0;
  for (std::size_t i = 0; i < s1.size(); ++i)
    for (std::size_t j = (i + parity) % 2; j < s2.size(); j += 2) {
      if (!P.divides_delta && i + j == 0) continue;
      sum += s1[i] * s2[j];
    }
  const double wfac = (1 - P.x) / (1 - ipow(w, P.deg) * P.x * P.x);
  return P.divides_delta ? wfac * sum : 1 + wfac * sum;
}

double local_A_closed(const LocalPrime& P, int ord_N) {
  const double T = std::sqrt(P.x);
  const double Gp = hecke_generating(P.e1, T) * hecke_generating(P.e2, T);
  const double Gm = hecke_generating(P.e1, -T) * hecke_generating(P.e2, -T);
  const double wfac = 1 / (1 + P.x);
  if (!P.divides_delta) return 1 + wfac * ((Gp + Gm) / 2 - 1);
  return wfac * (ord_N % 2 == 0 ? (Gp + Gm) / 2 : (Gp - Gm) / 2);
}

double local_B_series(const LocalPrime& P, int ord_N, std::uint32_t q, double u) {
  if (std::abs(u) >= std::sqrt(static_cast<double>(q))) throw std::invalid_argument("|u| must be below q^(1/2)");
  const double a = ipow(u, P.deg) * std::sqrt(P.x);
  if (std::abs(a) >= 1) throw std::invalid_argument("local series diverges at this argument");
  const auto s = hecke_series(P.e1, a);
  const bool bad = !P.e1.good;
  const int parity = bad ? ord_N % 2 : 0;
  double sum = 0;
  for (std::size_t i = parity; i < s.size(); i += 2) {
    if (!bad && i == 0) continue;
    sum += s[i];
  }
  const double f = 1 / (1 + P.x);
  return bad ? f * sum : 1 + f * sum;
}

double local_B_closed(const LocalPrime& P, int ord_N) {
  const double T = std::sqrt(P.x);
  const double Fp = hecke_generating(P.e1, T), Fm = hecke_generating(P.e1, -T);
  const double f = 1 / (1 + P.x);
  if (P.e1.good) return 1 + f * ((Fp + Fm) / 2 - 1);
  return f * (ord_N % 2 == 0 ? (Fp + Fm) / 2 : (Fp - Fm) / 2);
}

double sym2_local(const LocalCurve& c, double x) {
  if (!c.good) return 1;
  return 1 / ((1 - (c.lambda * c.lambda - 2) * x + x * x) * (1 - x));
}

double rankin_local(const LocalCurve& c1, const LocalCurve& c2, double x) {
  if (!c1.good || !c2.good) return 1;
  const double e1 = c1.lambda * c2.lambda;
  const double e2 = c1.lambda * c1.lambda + c2.lambda * c2.lambda - 2;
  return 1 / (1 - e1 * x + e2 * x * x - e1 * x * x * x + x * x * x * x);
}

double zeta_local(double x) { return 1 / (1 - x); }

std::vector<std::uint64_t> zeta_coefficients(std::uint32_t q, int n) {
  // Coefficients of 1/(1 - q u) by the recursion c_k = q c_{k-1}.
  std::vector<std::uint64_t> c(n + 1);
  c[0] = 1;
  for (int k = 1; k <= n; ++k) c[k] = c[k - 1] * q;
  return c;
}

std::string to_string(MomentKind k) {
  switch (k) {
    case MomentKind::First: return "first";
    case MomentKind::Second: return "second";
    case MomentKind::LLprime: return "llprime";
    case MomentKind::LprimeLprime: return "lplp";
    case MomentKind::RankJoint: return "ranks";
  }
  return "?";
}

MomentKind parse_moment_kind(const std::string& s) {
  if (s == "first") return MomentKind::First;
  if (s == "second") return MomentKind::Second;
  if (s == "llprime") return MomentKind::LLprime;
  if (s == "lplp") return MomentKind::LprimeLprime;
  if (s == "ranks" || s == "rank_joint") return MomentKind::RankJoint;
  throw std::invalid_argument("unknown moment kind '" + s + "' (first, second, llprime, lplp, ranks)");
}

EulerContext::EulerContext(const CurveModel& E1, const std::vector<std::int64_t>& traces1, const CurveModel& E2,
                           const std::vector<std::int64_t>& traces2, const MonicSieve& S, int B, int threads)
    : F_(E1.F), q_(E1.F.p()), B_(B), threads_(std::max(1, threads)) {
  if (B < 0) throw std::invalid_argument("cutoff B must be non-negative");
  if (B > S.max_deg()) throw std::invalid_argument("cutoff B exceeds the sieve degree");
  if (E2.F.p() != q_) throw std::invalid_argument("curves over different fields");
  const std::size_t np = S.prime_count_upto(B);
  if (traces1.size() < np || traces2.size() < np) throw std::invalid_argument("trace lists too short for cutoff");
  primes_.resize(np);
  for (std::size_t r = 0; r < np; ++r) {
    const std::uint32_t id = S.primes()[r];
    LocalPrime& P = primes_[r];
    P.deg = S.degree(id);
    const double norm = std::pow(static_cast<double>(q_), P.deg);
    P.x = 1 / norm;
    P.e1 = {static_cast<double>(traces1[r]) / std::sqrt(norm), true};
    P.e2 = {static_cast<double>(traces2[r]) / std::sqrt(norm), true};
  }
  auto mark = [&](const CurveModel& E, bool first) {
    for (const auto& bp : E.bad) {
      if (bp.P.degree() > B) throw std::invalid_argument("cutoff B below the degree of a bad prime");
      const std::size_t r = S.prime_rank(static_cast<std::uint32_t>(S.id_of(bp.P)));
      (first ? primes_[r].e1 : primes_[r].e2).good = false;
      if (!primes_[r].divides_delta) {
        primes_[r].divides_delta = true;
        delta_primes_.push_back(bp.P);
        delta_index_.push_back(r);
        delta_ratio_ *= (1 / primes_[r].x + 1) * primes_[r].x;
      }
    }
  };
  mark(E1, true);
  mark(E2, false);
  auto rad_deg = [](const CurveModel& E) {
    int d = 0;
    for (const auto& bp : E.bad) d += bp.P.degree();
    return d;
  };
  int rad12 = 0;
  for (const auto& P : delta_primes_) rad12 += P.degree();
  sym2_degree_bound_[0] = 3 * (rad_deg(E1) + 1);
  sym2_degree_bound_[1] = 3 * (rad_deg(E2) + 1);
  rankin_degree_bound_ = 4 * (rad12 + 1);
}

std::vector<int> EulerContext::ord_vector(const Poly& N) const {
  if (!N.is_monic()) throw std::invalid_argument("N must be monic");
  std::vector<int> ord(delta_primes_.size(), 0);
  Poly rest = N;
  for (std::size_t i = 0; i < delta_primes_.size(); ++i)
    while (rest.degree() > 0 && mod(F_, rest, delta_primes_[i]).is_zero()) {
      rest = div_exact(F_, rest, delta_primes_[i]);
      ++ord[i];
    }
  if (rest.degree() != 0) throw std::invalid_argument("N must be supported on the primes of the discriminant");
  return ord;
}

template <class Fn>
double EulerContext::product(Fn&& local) const {
  // Partial products per degree, combined in degree order.
  std::vector<double> partial(B_ + 1, 1.0);
  std::vector<std::size_t> start(B_ + 2, primes_.size());
  for (int d = B_; d >= 1; --d) {
    std::size_t s = start[d + 1];
    while (s > 0 && primes_[s - 1].deg >= d) --s;
    start[d] = s;
  }
  auto work = [&](int t) {
    for (int d = 1 + t; d <= B_; d += threads_) {
      double acc = 1;
      for (std::size_t r = start[d]; r < start[d + 1]; ++r) acc *= local(r);
      partial[d] = acc;
    }
  };
  if (threads_ == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads_; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  double v = 1;
  for (int d = 1; d <= B_; ++d) v *= partial[d];
  return v;
}

EulerProductValue EulerContext::sym2(int which) const {
  if (which != 1 && which != 2) throw std::invalid_argument("curve index must be 1 or 2");
  const double v = product([&](std::size_t r) {
    const LocalPrime& P = primes_[r];
    return sym2_local(which == 1 ? P.e1 : P.e2, P.x);
  });
  return {v, B_, rh_tail(q_, B_, sym2_degree_bound_[which - 1], 3, v)};
}

EulerProductValue EulerContext::rankin() const {
  const double v = product([&](std::size_t r) { return rankin_local(primes_[r].e1, primes_[r].e2, primes_[r].x); });
  return {v, B_, rh_tail(q_, B_, rankin_degree_bound_, 4, v)};
}

namespace {

std::vector<int> expand_ord(std::size_t n, const std::vector<std::size_t>& index, const std::vector<int>& ord) {
  std::vector<int> out(n, 0);
  for (std::size_t i = 0; i < index.size(); ++i) out[index[i]] = ord[i];
  return out;
}

}  // namespace

EulerProductValue EulerContext::C_first(const Poly& N) const {
  const auto ord = expand_ord(primes_.size(), delta_index_, ord_vector(N));
  const double v = product([&](std::size_t r) {
    const LocalPrime& P = primes_[r];
    return local_B_closed(P, ord[r]) / sym2_local(P.e1, P.x);
  });
  return {v, B_, cauchy_tail(q_, B_, majorant_first(kCauchyRadius), v)};
}

EulerProductValue EulerContext::C_second(const Poly& N) const {
  const auto ord = expand_ord(primes_.size(), delta_index_, ord_vector(N));
  const double v = product([&](std::size_t r) {
    const LocalPrime P = same_curve(primes_[r]);
    const double s = sym2_local(P.e1, P.x);
    return local_A_closed(P, ord[r]) / (s * s * s * zeta_local(P.x));
  });
  return {v, B_, cauchy_tail(q_, B_, majorant_double(kCauchyRadius), v)};
}

EulerProductValue EulerContext::C_pair(const Poly& N) const {
  const auto ord = expand_ord(primes_.size(), delta_index_, ord_vector(N));
  const double v = product([&](std::size_t r) {
    const LocalPrime& P = primes_[r];
    return local_A_closed(P, ord[r]) /
           (sym2_local(P.e1, P.x) * sym2_local(P.e2, P.x) * rankin_local(P.e1, P.e2, P.x));
  });
  return {v, B_, cauchy_tail(q_, B_, majorant_double(kCauchyRadius), v)};
}

double PredictedMoment::main_term(int g) const {
  double v = constant;
  for (double l : l_values) v *= l;
  if (kind == MomentKind::Second && l_values.size() == 1) v *= l_values[0] * l_values[0];
  switch (kind) {
    case MomentKind::First: return v;
    case MomentKind::Second:
    case MomentKind::LLprime: return v * g;
    case MomentKind::LprimeLprime: return v * g * g;
    case MomentKind::RankJoint: return 0;
  }
  return v;
}

double PredictedMoment::main_term_tail(int g) const {
  double hi = std::abs(constant) + constant_tail, lo = std::abs(constant);
  auto mult = [&](double l, double t) {
    hi *= std::abs(l) + t;
    lo *= std::abs(l);
  };
  for (std::size_t i = 0; i < l_values.size(); ++i) mult(l_values[i], l_tails[i]);
  if (kind == MomentKind::Second && l_values.size() == 1) {
    mult(l_values[0], l_tails[0]);
    mult(l_values[0], l_tails[0]);
  }
  double gp = kind == MomentKind::First ? 1 : kind == MomentKind::LprimeLprime ? double(g) * g : g;
  return (hi - lo) * gp;
}

PredictedMoment predicted_moment(MomentKind kind, const EulerContext& ctx, const CurveModel& E1, int sign1,
                                 const CurveModel& E2, int sign2) {
  if (kind == MomentKind::RankJoint) throw std::invalid_argument("rank counts have no predicted main term");
  const Field& F = E1.F;
  PredictedMoment out;
  out.kind = kind;
  const bool m1one = E1.M.degree() == 0, m2one = E2.M.degree() == 0;
  const bool same_m = E1.M == E2.M;
  // (N, coefficient) terms of the constant.
  std::vector<std::pair<Poly, int>> terms;
  double factor = ctx.delta_ratio();
  const double lq = std::log(static_cast<double>(ctx.q()));
  const Poly M12 = mul(F, E1.M, E2.M);
  switch (kind) {
    case MomentKind::First:
    case MomentKind::Second:
      terms = {{Poly::one(), 1}, {E1.M, sign1}};
      if (sign1 == -1 && m1one) out.exclusion = "sign_base = -1 and M = 1";
      if (kind == MomentKind::Second) factor *= 2;
      break;
    case MomentKind::LLprime:
      terms = {{Poly::one(), 1}, {E1.M, sign1}, {E2.M, -sign2}, {M12, -sign1 * sign2}};
      if (sign1 == -1 && m1one) out.exclusion = "sign_base(E1) = -1 and M1 = 1";
      else if (sign2 == 1 && m2one) out.exclusion = "sign_base(E2) = 1 and M2 = 1";
      else if (sign1 == sign2 && same_m) out.exclusion = "equal signs and M1 = M2";
      factor *= 2 * lq;
      break;
    case MomentKind::LprimeLprime:
      terms = {{Poly::one(), 1}, {E1.M, -sign1}, {E2.M, -sign2}, {M12, sign1 * sign2}};
      if (sign1 == 1 && m1one) out.exclusion = "sign_base(E1) = 1 and M1 = 1";
      else if (sign2 == 1 && m2one) out.exclusion = "sign_base(E2) = 1 and M2 = 1";
      else if (sign1 == -sign2 && same_m) out.exclusion = "opposite signs and M1 = M2";
      factor *= 4 * lq * lq;
      break;
    case MomentKind::RankJoint: break;
  }
  // Collapse terms whose N have the same odd-order support; C depends only on it.
  std::map<std::vector<int>, std::pair<Poly, int>> collapsed;
  for (auto& [N, c] : terms) {
    auto ord = ctx.ord_vector(N);
    for (auto& o : ord) o %= 2;
    auto it = collapsed.find(ord);
    if (it == collapsed.end()) collapsed.emplace(ord, std::make_pair(N, c));
    else it->second.second += c;
  }
  double sum = 0, tail = 0;
  for (auto& [key, nc] : collapsed) {
    if (nc.second == 0) continue;
    EulerProductValue C = kind == MomentKind::First    ? ctx.C_first(nc.first)
                          : kind == MomentKind::Second ? ctx.C_second(nc.first)
                                                       : ctx.C_pair(nc.first);
    sum += nc.second * C.value;
    tail += std::abs(nc.second) * C.tail_bound;
  }
  out.constant = factor * sum;
  out.constant_tail = factor * tail;
  auto s1 = ctx.sym2(1);
  out.l_values.push_back(s1.value);
  out.l_tails.push_back(s1.tail_bound);
  if (kind == MomentKind::LLprime || kind == MomentKind::LprimeLprime) {
    auto s2 = ctx.sym2(2);
    auto rs = ctx.rankin();
    out.l_values.push_back(s2.value);
    out.l_tails.push_back(s2.tail_bound);
    out.l_values.push_back(rs.value);
    out.l_tails.push_back(rs.tail_bound);
  }
  return out;
}

MeanVariance logl_mean_variance(double theta, double gamma, double m) {
  if (m < 1) throw std::invalid_argument("m must be at least 1");
  const double two_pi = 2 * std::numbers::pi;
  auto term = [&](double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    const double bar = std::min(r, two_pi - r);
    return bar == 0 ? std::log(m) : std::log(std::min(m, 1 / bar));
  };
  const double a = term(2 * theta), b = term(2 * gamma);
  const double mean = -0.5 * (a + b);
  const double var = std::log(m) + 0.5 * (a + b) + term(theta + gamma) + term(theta - gamma);
  return {mean, var};
}

}  // namespace qtw

// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "qtwist/curve.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <regex>

#include "qtwist/extfield.hpp"

namespace qtw {

namespace {

constexpr int kInfiniteValuation = 1 << 20;
constexpr std::uint64_t kExhaustiveLimit = 20000;

int val_or_inf(const Field& F, const Poly& f, const Poly& P) {
  return f.is_zero() ? kInfiniteValuation : valuation(F, f, P);
}

// Index of a residue of degree < d in base p.
std::uint64_t residue_index(const Field& F, const Poly& r) {
  std::uint64_t idx = 0;
  for (int i = r.degree(); i >= 0; --i) idx = idx * F.p() + r[i];
  return idx;
}

Poly residue_from_index(const Field& F, int d, std::uint64_t idx) {
  std::vector<std::uint32_t> c(d, 0);
  for (int i = 0; i < d; ++i) {
    c[i] = static_cast<std::uint32_t>(idx % F.p());
    idx /= F.p();
  }
  return Poly(std::move(c));
}

}  // namespace

bool CurveModel::is_bad(const Poly& P) const { return bad_prime(P) != nullptr; }

const BadPrime* CurveModel::bad_prime(const Poly& P) const {
  for (const auto& bp : bad)
    if (bp.P == P) return &bp;
  return nullptr;
}

std::string CurveModel::equation() const {
  return "y^2=x^3+(" + to_string(a) + ")*x+(" + to_string(b) + ")";
}

CurveModel build_curve(const Field& F, const Poly& a, const Poly& b) {
  if (a.degree() <= 0 && b.degree() <= 0)
    throw CurveError("constant curve over F_p is isotrivial and not supported");
  Poly delta = add(F, scale(F, pow(F, a, 3), F.reduce(4)), scale(F, pow(F, b, 2), F.reduce(27)));
  if (delta.is_zero()) throw CurveError("singular curve: discriminant 4a^3+27b^2 vanishes");
  CurveModel E{F, a, b, delta, {}, Poly::one(), Poly::one(), 0};
  for (auto& [P, e] : factor(F, delta)) {
    int va = val_or_inf(F, a, P), vb = val_or_inf(F, b, P);
    if (va >= 4 && vb >= 6)
      throw CurveError("model is not minimal at P = " + to_string(P));
    BadPrime bp{P, va == 0 ? Reduction::Multiplicative : Reduction::Additive, 0, e};
    E.bad.push_back(bp);
  }
  for (auto& bp : E.bad) {
    if (bp.type == Reduction::Multiplicative) {
      E.M = mul(F, E.M, bp.P);
      bp.a_P = trace_of_frobenius(E, bp.P);
    } else {
      E.A = mul(F, E.A, bp.P);
      bp.a_P = 0;
    }
  }
  E.n_frak = E.M.degree() + 2 * E.A.degree() - 4;
  return E;
}

CurveModel parse_curve(const Field& F, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  static const std::regex with_x(R"(y\^2=x\^3\+\(([^()]*)\)\*x\+\(([^()]*)\))");
  static const std::regex no_x(R"(y\^2=x\^3\+\(([^()]*)\))");
  std::smatch m;
  if (std::regex_match(s, m, with_x)) return build_curve(F, parse_poly(F, m[1].str()), parse_poly(F, m[2].str()));
  if (std::regex_match(s, m, no_x)) return build_curve(F, Poly(), parse_poly(F, m[1].str()));
  throw std::invalid_argument("curve must look like y^2=x^3+(A)*x+(B), got '" + text + "'");
}

int trace_of_frobenius(const CurveModel& E, const Poly& P) {
  const Field& F = E.F;
  const int d = P.degree();
  const std::uint64_t q = F.power(d);
  Poly ar = mod(F, E.a, P), br = mod(F, E.b, P);
  long long s = 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    Poly x = residue_from_index(F, d, i);
    Poly r = mod(F, add(F, mul(F, mod(F, mul(F, x, x), P), x), add(F, mul(F, ar, x), br)), P);
    s += quadratic_symbol(F, r, P);
  }
  return static_cast<int>(-s);
}

int trace_by_point_count(const CurveModel& E, const Poly& P) {
  const Field& F = E.F;
  const int d = P.degree();
  const std::uint64_t q = F.power(d);
  std::vector<std::uint32_t> roots(q, 0);
  for (std::uint64_t i = 0; i < q; ++i) {
    Poly y = residue_from_index(F, d, i);
    ++roots[residue_index(F, mod(F, mul(F, y, y), P))];
  }
  Poly ar = mod(F, E.a, P), br = mod(F, E.b, P);
  const bool bad = E.is_bad(P);
  long long affine = 0, singular = 0;
  for (std::uint64_t i = 0; i < q; ++i) {
    Poly x = residue_from_index(F, d, i);
    Poly x2 = mod(F, mul(F, x, x), P);
    Poly r = mod(F, add(F, mul(F, x2, x), add(F, mul(F, ar, x), br)), P);
    affine += roots[residue_index(F, r)];
    if (bad && r.is_zero() && mod(F, add(F, scale(F, x2, 3), ar), P).is_zero()) ++singular;
  }
  const long long total = affine - singular + 1;
  return static_cast<int>(static_cast<long long>(q) + (bad ? 0 : 1) - total);
}

std::vector<std::int64_t> compute_traces(const CurveModel& E, const MonicSieve& S) {
  std::vector<std::int64_t> out(S.primes().size(), 0);
  for (int d = 1; d <= S.max_deg(); ++d) {
    ExtField K(E.F, d);
    const bool small = K.order() <= kExhaustiveLimit;
    K.for_each_prime([&](ExtField::Elem tau, const Poly& P) {
      const std::uint32_t r = S.prime_rank(S.id_of(P));
      if (const BadPrime* bp = E.bad_prime(P)) {
        out[r] = bp->a_P;
        return;
      }
      auto A = K.eval(E.a, tau), B = K.eval(E.b, tau);
      out[r] = small ? K.trace_exhaustive(A, B) : K.trace_bsgs(A, B, 0x9e3779b97f4a7c15ULL ^ r);
    });
  }
  return out;
}

HeckeTable::HeckeTable(const CurveModel& E, const MonicSieve& S)
    : HeckeTable(E, S, compute_traces(E, S)) {}

HeckeTable::HeckeTable(const CurveModel& E, const MonicSieve& S, std::vector<std::int64_t> traces)
    : traces_(std::move(traces)) {
  if (traces_.size() != S.primes().size()) throw std::invalid_argument("trace list does not match sieve");
  fill(E, S);
}

void HeckeTable::fill(const CurveModel& E, const MonicSieve& S) {
  bad_.assign(traces_.size(), 0);
  for (std::size_t r = 0; r < traces_.size(); ++r) bad_[r] = E.is_bad(S.poly(S.primes()[r]));
  at_.assign(S.size(), 0);
  at_[0] = 1;
  for (std::uint32_t id = 1; id < S.size(); ++id) {
    const std::uint32_t P = S.spf(id);
    const std::uint32_t rest = S.pfree(id);
    if (rest != 0) {
      at_[id] = at_[S.prime_power_part(id)] * at_[rest];
      continue;
    }
    const std::size_t r = S.prime_rank(P);
    const std::int64_t aP = traces_[r];
    if (id == P) {
      at_[id] = aP;
    } else if (bad_[r]) {
      at_[id] = aP * at_[S.cof(id)];
    } else {
      const std::uint32_t c = S.cof(id);
      const std::int64_t norm = static_cast<std::int64_t>(S.field().power(S.degree(P)));
      at_[id] = aP * at_[c] - norm * at_[S.cof(c)];
    }
  }
}

std::int64_t hecke_coefficient(const CurveModel& E, const Poly& f) {
  if (!f.is_monic()) throw std::invalid_argument("hecke_coefficient needs a monic polynomial");
  std::int64_t out = 1;
  for (auto& [P, k] : factor(E.F, f)) {
    const BadPrime* bp = E.bad_prime(P);
    const std::int64_t aP = bp ? bp->a_P : trace_of_frobenius(E, P);
    const std::int64_t norm = static_cast<std::int64_t>(E.F.power(P.degree()));
    std::int64_t prev = 1, cur = aP;
    for (int i = 1; i < k; ++i) {
      std::int64_t next = bp ? aP * cur : aP * cur - norm * prev;
      prev = cur;
      cur = next;
    }
    out *= cur;
  }
  return out;
}

Satake satake(std::int64_t a_P, int deg, std::uint32_t p, bool good) {
  const double lambda = static_cast<double>(a_P) / std::pow(static_cast<double>(p), 0.5 * deg);
  if (!good) return {lambda, {lambda, 0.0}, {0.0, 0.0}, false};
  const double c = lambda / 2;
  const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
  return {lambda, {c, s}, {c, -s}, true};
}

}  // namespace qtw

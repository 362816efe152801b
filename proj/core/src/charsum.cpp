// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "qtwist/charsum.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "qtwist/symbol_kernel.hpp"

namespace qtw {

CycloInt::CycloInt(std::uint32_t p) : c_(p, 0) {}

CycloInt CycloInt::integer(std::uint32_t p, std::int64_t n) {
  CycloInt r(p);
  r.c_[0] = n;
  return r;
}

CycloInt CycloInt::zeta(std::uint32_t p, std::uint32_t k) {
  CycloInt r(p);
  r.c_[k % p] = 1;
  r.canonicalize();
  return r;
}

CycloInt CycloInt::gauss(const Field& F) {
  CycloInt r(F.p());
  for (std::uint32_t c = 1; c < F.p(); ++c) r.c_[c] += F.chi(c);
  r.canonicalize();
  return r;
}

CycloInt CycloInt::from_buckets(std::vector<std::int64_t> buckets) {
  CycloInt r(static_cast<std::uint32_t>(buckets.size()));
  r.c_ = std::move(buckets);
  r.canonicalize();
  return r;
}

void CycloInt::canonicalize() {
  const std::int64_t top = c_.back();
  if (top == 0) return;
  for (auto& x : c_) x -= top;
}

bool CycloInt::is_zero() const {
  for (auto x : c_)
    if (x) return false;
  return true;
}

bool CycloInt::as_integer(std::int64_t& out) const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i]) return false;
  out = c_[0];
  return true;
}

CycloInt& CycloInt::operator+=(const CycloInt& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CycloInt& CycloInt::operator-=(const CycloInt& o) {
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

CycloInt& CycloInt::operator*=(std::int64_t k) {
  for (auto& x : c_) x *= k;
  return *this;
}

CycloInt operator*(const CycloInt& a, const CycloInt& b) {
  if (a.p() != b.p()) throw std::invalid_argument("CycloInt of different p");
  const std::uint32_t p = a.p();
  std::vector<std::int64_t> r(p, 0);
  for (std::uint32_t i = 0; i < p; ++i) {
    if (!a.c_[i]) continue;
    for (std::uint32_t j = 0; j < p; ++j) r[(i + j) % p] += a.c_[i] * b.c_[j];
  }
  return CycloInt::from_buckets(std::move(r));
}

std::complex<double> CycloInt::embed() const {
  std::complex<double> s = 0;
  const double w = 2 * std::numbers::pi / static_cast<double>(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) s += static_cast<double>(c_[i]) * std::polar(1.0, w * i);
  return s;
}

std::string CycloInt::str() const {
  std::int64_t n;
  if (as_integer(n)) return std::to_string(n);
  std::string out = "[";
  for (std::size_t i = 0; i + 1 < c_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(c_[i]);
  }
  return out + "]";
}

std::uint32_t eq_exponent(const Field& F, const Poly& u, const Poly& f) {
  if (!f.is_monic()) throw std::invalid_argument("e_q needs a monic modulus");
  if (f.degree() == 0) return 0;
  return mod(F, u, f)[f.degree() - 1];
}

CycloInt e_q(const Field& F, const Poly& u, const Poly& f) { return CycloInt::zeta(F.p(), eq_exponent(F, u, f)); }

std::vector<std::int8_t> residue_characters(const Field& F, const Poly& f) {
  if (!f.is_monic()) throw std::invalid_argument("character modulus must be monic");
  const int n = f.degree();
  const std::uint64_t count = F.power(n);
  std::vector<std::int8_t> chi(count);
  SymbolKernel K(F);
  const SmallPoly fs = SmallPoly::from(f);
  SmallPoly u;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::uint64_t x = idx;
    u.deg = -1;
    for (int i = 0; i < n; ++i) {
      u.c[i] = static_cast<std::uint16_t>(x % F.p());
      x /= F.p();
      if (u.c[i]) u.deg = i;
    }
    for (int i = u.deg + 1; i < n; ++i) u.c[i] = 0;
    chi[idx] = static_cast<std::int8_t>(K(u, fs));
  }
  return chi;
}

CycloInt gauss_sum(const Field& F, const Poly& V, const Poly& f, const std::vector<std::int8_t>& chi) {
  const int n = f.degree();
  const std::uint32_t p = F.p();
  std::vector<std::uint32_t> w(n);
  for (int i = 0; i < n; ++i) w[i] = eq_exponent(F, mul(F, Poly::monomial(1, i), V), f);
  std::vector<std::int64_t> buckets(p, 0);
  std::vector<std::uint32_t> digit(n, 0);
  std::uint32_t e = 0;
  for (std::size_t idx = 0; idx < chi.size(); ++idx) {
    if (idx) {
      for (int i = 0; i < n; ++i) {
        ++digit[i];
        e = (e + w[i]) % p;
        if (digit[i] < p) break;
        digit[i] = 0;  // p * w_i = 0 mod p, so e is already right
      }
    }
    buckets[e] += chi[idx];
  }
  return CycloInt::from_buckets(std::move(buckets));
}

CycloInt gauss_sum(const Field& F, const Poly& V, const Poly& f) {
  return gauss_sum(F, V, f, residue_characters(F, f));
}

std::size_t SuiteReport::failures() const {
  std::size_t n = 0;
  for (const auto& c : checks) n += !c.ok;
  return n;
}

namespace {

CycloInt power(const CycloInt& x, int k) {
  CycloInt r = CycloInt::integer(x.p(), 1);
  for (int i = 0; i < k; ++i) r = r * x;
  return r;
}

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

std::vector<Poly> primes_of_degree(const Field& F, int d) {
  std::vector<Poly> out;
  for_each_monic(F, d, [&](const Poly& P) {
    if (is_irreducible(F, P)) out.push_back(P);
  });
  return out;
}

}  // namespace

SuiteReport verify_gauss_closed_forms(const Field& F, int max_deg, int max_j) {
  SuiteReport rep{"gauss", {}};
  const std::uint32_t p = F.p();
  const CycloInt tau = CycloInt::gauss(F);
  {
    CheckRecord c{"tau^2 = p", "", (tau * tau).str(), std::to_string(p), false};
    c.ok = tau * tau == CycloInt::integer(p, p);
    rep.checks.push_back(c);
  }
  for (int d = 1; d <= max_deg; ++d) {
    for (const Poly& P : primes_of_degree(F, d)) {
      const std::int64_t norm = ipow(p, d);
      // A non-residue V1 of small degree, plus the constant 2.
      Poly nonres;
      for (int k = 1; k <= 2 && nonres.is_zero(); ++k)
        for_each_monic(F, k, [&](const Poly& V) {
          if (nonres.is_zero() && quadratic_symbol(F, V, P) == -1) nonres = V;
        });
      std::vector<Poly> v1s{Poly::one(), Poly::constant(2)};
      if (!nonres.is_zero()) v1s.push_back(nonres);
      const CycloInt tau_d = power(tau, d);
      for (int j = 1; j <= max_j; ++j) {
        const Poly f = pow(F, P, j);
        const auto chi = residue_characters(F, f);
        auto expected = [&](bool zero_v, int alpha, const Poly& V1) -> CycloInt {
          if (zero_v || j <= alpha) {
            if (j % 2 == 1) return CycloInt(p);
            return CycloInt::integer(p, norm * ipow(norm, j - 1) - ipow(norm, j - 1));
          }
          if (j == alpha + 1) {
            if (j % 2 == 0) return CycloInt::integer(p, -ipow(norm, j - 1));
            return tau_d * (quadratic_symbol(F, V1, P) * ipow(norm, j - 1));
          }
          return CycloInt(p);
        };
        auto record = [&](const Poly& V, bool zero_v, int alpha, const Poly& V1) {
          CycloInt G = gauss_sum(F, V, f, chi);
          CycloInt want = expected(zero_v, alpha, V1);
          std::string wit = "P=" + to_string(P) + " j=" + std::to_string(j) + " V=" + to_string(V);
          rep.checks.push_back({"G(V,P^j) closed form", wit, G.str(), want.str(), G == want});
        };
        record(Poly(), true, 0, Poly::one());
        for (int alpha = 0; alpha <= j + 1; ++alpha)
          for (const Poly& V1 : v1s) record(mul(F, V1, pow(F, P, alpha)), false, alpha, V1);
      }
    }
  }
  return rep;
}

CheckRecord verify_poisson(const Field& F, const Poly& f, int m) {
  if (!f.is_monic()) throw std::invalid_argument("Poisson check needs monic f");
  if (m < 0) throw std::invalid_argument("m must be non-negative");
  const std::uint32_t p = F.p();
  const int n = f.degree();
  if (std::pow(static_cast<double>(p), n + m) > 1e8)
    throw std::invalid_argument("Poisson check exceeds the q^(deg f + m) <= 1e8 cost cap");
  std::int64_t lhs = 0;
  for_each_monic(F, m, [&](const Poly& R) { lhs += quadratic_symbol(F, R, f); });
  const auto chi = residue_characters(F, f);
  auto Gsum = [&](int k) {
    CycloInt s(p);
    if (k < 0) return s;  // empty range
    for_each_monic(F, k, [&](const Poly& V) { s += gauss_sum(F, V, f, chi); });
    return s;
  };
  CycloInt rhs(p);
  if (n % 2 == 0) {
    CycloInt inner = gauss_sum(F, Poly(), f, chi);
    for (int k = 0; k <= n - m - 2; ++k) inner += Gsum(k) * static_cast<std::int64_t>(p - 1);
    inner -= Gsum(n - m - 1);
    rhs = inner;
  } else {
    // conj(tau) = tau since p = 1 mod 4.
    rhs = CycloInt::gauss(F) * Gsum(n - m - 1);
  }
  // Compare |f| * LHS with q^m * (bracket).
  const CycloInt L = CycloInt::integer(p, lhs * ipow(p, n));
  const CycloInt R = rhs * ipow(p, m);
  return {"Poisson", "f=" + to_string(f) + " m=" + std::to_string(m), std::to_string(lhs), R.str() + "/q^" + std::to_string(n),
          L == R};
}

SuiteReport verify_poisson_suite(const Field& F, int max_deg_f, int max_m) {
  SuiteReport rep{"poisson", {}};
  for (int n = 0; n <= max_deg_f; ++n)
    for_each_monic(F, n, [&](const Poly& f) {
      for (int m = 0; m <= max_m; ++m) rep.checks.push_back(verify_poisson(F, f, m));
    });
  return rep;
}

CheckRecord verify_sumd(const Field& F, const Poly& f, int g, const Poly& delta) {
  if (!f.is_monic()) throw std::invalid_argument("sumd check needs monic f");
  if (delta.is_zero()) throw std::invalid_argument("discriminant must be nonzero");
  const std::uint32_t q = F.p();
  std::int64_t lhs = 0;
  for (const Poly& D : enumerate_family(F, g, delta)) lhs += quadratic_symbol(F, D, f);

  const int top = 2 * g + 1;
  std::vector<std::int64_t> S(top + 1, 0);  // S[k] = sum over R in M_k of chi_R(f)
  for (int k = 0; k <= top; ++k) for_each_monic(F, k, [&](const Poly& R) { S[k] += quadratic_symbol(F, R, f); });
  auto Sk = [&](int k) { return k < 0 ? 0 : S[k]; };

  std::vector<Poly> dprimes;
  for (auto& [P, e] : factor(F, delta)) dprimes.push_back(P);
  std::vector<Poly> support = dprimes;
  for (auto& [P, e] : factor(F, f))
    if (std::find(support.begin(), support.end(), P) == support.end()) support.push_back(P);

  // Degrees of all C2 with primes in the support and 2 deg C2 <= top.
  std::vector<std::int64_t> c2count(top / 2 + 1, 0);
  std::function<void(std::size_t, int)> walk = [&](std::size_t i, int deg) {
    if (i == support.size()) {
      ++c2count[deg];
      return;
    }
    for (int d = deg; 2 * d <= top; d += support[i].degree()) walk(i + 1, d);
  };
  walk(0, 0);

  std::int64_t rhs = 0;
  for (std::uint32_t mask = 0; mask < (1u << dprimes.size()); ++mask) {
    Poly C1 = Poly::one();
    int mu = 1;
    for (std::size_t i = 0; i < dprimes.size(); ++i)
      if (mask >> i & 1) {
        C1 = mul(F, C1, dprimes[i]);
        mu = -mu;
      }
    const int chi = quadratic_symbol(F, C1, f);
    if (chi == 0) continue;
    std::int64_t inner = 0;
    for (int c2 = 0; 2 * c2 <= top; ++c2) {
      if (!c2count[c2]) continue;
      const int k = top - C1.degree() - 2 * c2;
      inner += c2count[c2] * (Sk(k) - static_cast<std::int64_t>(q) * Sk(k - 2));
    }
    rhs += mu * chi * inner;
  }
  return {"sumd", "f=" + to_string(f) + " g=" + std::to_string(g), std::to_string(lhs), std::to_string(rhs), lhs == rhs};
}

SuiteReport verify_sumd_suite(const Field& F, int max_g, int max_deg_f, const Poly& delta) {
  SuiteReport rep{"sumd", {}};
  for (int g = 0; g <= max_g; ++g)
    for (int n = 0; n <= max_deg_f; ++n)
      for_each_monic(F, n, [&](const Poly& f) { rep.checks.push_back(verify_sumd(F, f, g, delta)); });
  return rep;
}

}  // namespace qtw

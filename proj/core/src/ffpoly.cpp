// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "qtwist/ffpoly.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <random>
#include <stdexcept>

namespace qtw {

namespace {

bool is_prime_u64(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::string field_violation(long long p) {
  if (!is_prime_u64(p)) return "p = " + std::to_string(p) + " is not prime";
  if (p == 2 || p == 3) return "p must satisfy gcd(p, 6) = 1";
  if (p % 4 != 1) return "p = " + std::to_string(p) + " is not congruent to 1 mod 4";
  if (p >= (1LL << 16)) return "p must be below 65536";
  return {};
}

Field::Field(std::uint32_t p) : p_(p) {
  if (auto why = field_violation(p); !why.empty()) throw std::invalid_argument(why);
  inv_.assign(p, 0);
  chi_.assign(p, -1);
  for (std::uint32_t a = 1; a < p; ++a) {
    inv_[a] = 1;
    std::uint64_t r = 1, b = a, e = p - 2;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    inv_[a] = static_cast<std::uint32_t>(r);
  }
  chi_[0] = 0;
  for (std::uint64_t x = 1; x < p; ++x) chi_[x * x % p] = 1;
}

std::uint64_t Field::power(int n) const {
  std::uint64_t r = 1;
  for (int i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p_)
      throw std::overflow_error("p^n exceeds 64 bits");
    r *= p_;
  }
  return r;
}

Poly::Poly(std::vector<std::uint32_t> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(std::uint32_t c) { return Poly(std::vector<std::uint32_t>{c}); }

Poly Poly::monomial(std::uint32_t c, int k) {
  std::vector<std::uint32_t> v(k + 1, 0);
  v[k] = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
  if (auto c = a.degree() <=> b.degree(); c != 0) return c;
  for (int i = a.degree(); i >= 0; --i)
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

Poly add(const Field& F, const Poly& f, const Poly& g) {
  std::vector<std::uint32_t> r(std::max(f.degree(), g.degree()) + 1, 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(f[i], g[i]);
  return Poly(std::move(r));
}

Poly sub(const Field& F, const Poly& f, const Poly& g) {
  std::vector<std::uint32_t> r(std::max(f.degree(), g.degree()) + 1, 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(f[i], g[i]);
  return Poly(std::move(r));
}

Poly mul(const Field& F, const Poly& f, const Poly& g) {
  if (f.is_zero() || g.is_zero()) return {};
  std::vector<std::uint64_t> acc(f.degree() + g.degree() + 1, 0);
  const std::uint64_t p = F.p();
  for (int i = 0; i <= f.degree(); ++i) {
    if (f[i] == 0) continue;
    for (int j = 0; j <= g.degree(); ++j) acc[i + j] = (acc[i + j] + std::uint64_t(f[i]) * g[j]) % p;
  }
  std::vector<std::uint32_t> r(acc.begin(), acc.end());
  return Poly(std::move(r));
}

Poly scale(const Field& F, const Poly& f, std::uint32_t c) {
  std::vector<std::uint32_t> r(f.coeffs());
  for (auto& x : r) x = F.mul(x, c);
  return Poly(std::move(r));
}

std::pair<Poly, Poly> divrem(const Field& F, const Poly& f, const Poly& g) {
  if (g.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (f.degree() < g.degree()) return {Poly(), f};
  std::vector<std::uint32_t> r(f.coeffs());
  const int dg = g.degree();
  std::vector<std::uint32_t> q(f.degree() - dg + 1, 0);
  const std::uint32_t ilc = F.inv(g.lead());
  for (int i = f.degree(); i >= dg; --i) {
    std::uint32_t c = F.mul(r[i], ilc);
    q[i - dg] = c;
    if (c == 0) continue;
    for (int j = 0; j <= dg; ++j) r[i - dg + j] = F.sub(r[i - dg + j], F.mul(c, g[j]));
  }
  r.resize(dg);
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly mod(const Field& F, const Poly& f, const Poly& g) { return divrem(F, f, g).second; }

Poly div_exact(const Field& F, const Poly& f, const Poly& g) {
  auto [q, r] = divrem(F, f, g);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Poly make_monic(const Field& F, const Poly& f) {
  if (f.is_zero() || f.is_monic()) return f;
  return scale(F, f, F.inv(f.lead()));
}

Poly gcd(const Field& F, const Poly& f, const Poly& g) {
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = mod(F, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(F, a);
}

Poly derivative(const Field& F, const Poly& f) {
  if (f.degree() < 1) return {};
  std::vector<std::uint32_t> r(f.degree(), 0);
  for (int i = 1; i <= f.degree(); ++i) r[i - 1] = F.mul(f[i], i % F.p());
  return Poly(std::move(r));
}

Poly pow_mod(const Field& F, const Poly& f, std::uint64_t e, const Poly& m) {
  Poly result = mod(F, Poly::one(), m);
  Poly base = mod(F, f, m);
  while (e) {
    if (e & 1) result = mod(F, mul(F, result, base), m);
    e >>= 1;
    if (e) base = mod(F, mul(F, base, base), m);
  }
  return result;
}

Poly pow(const Field& F, const Poly& f, unsigned e) {
  Poly r = Poly::one();
  for (unsigned i = 0; i < e; ++i) r = mul(F, r, f);
  return r;
}

std::uint32_t eval(const Field& F, const Poly& f, std::uint32_t x) {
  std::uint32_t r = 0;
  for (int i = f.degree(); i >= 0; --i) r = F.add(F.mul(r, x), f[i]);
  return r;
}

bool is_squarefree(const Field& F, const Poly& f) {
  if (f.is_zero()) throw std::domain_error("is_squarefree of the zero polynomial");
  return gcd(F, f, derivative(F, f)).degree() == 0;
}

int valuation(const Field& F, const Poly& f, const Poly& P) {
  if (f.is_zero()) throw std::domain_error("valuation of the zero polynomial");
  int v = 0;
  Poly g = f;
  for (;;) {
    auto [q, r] = divrem(F, g, P);
    if (!r.is_zero()) return v;
    g = std::move(q);
    ++v;
  }
}

namespace {

// t^(p^k) mod f by repeated p-th powering.
Poly frobenius_power(const Field& F, const Poly& x, const Poly& f) {
  return pow_mod(F, x, F.p(), f);
}

// f = prod g_i^i with g_i square-free and pairwise coprime.
void squarefree_decomposition(const Field& F, const Poly& f, int mult,
                              std::vector<std::pair<Poly, int>>& out) {
  if (f.degree() < 1) return;
  Poly c = gcd(F, f, derivative(F, f));
  Poly w = div_exact(F, f, c);
  int i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(F, w, c);
    Poly z = div_exact(F, w, y);
    if (z.degree() > 0) out.emplace_back(z, i * mult);
    ++i;
    w = std::move(y);
    c = div_exact(F, c, w);
  }
  if (c.degree() > 0) {
    // c is a p-th power; over a prime field the root just drops the stride.
    std::vector<std::uint32_t> root(c.degree() / F.p() + 1, 0);
    for (int k = 0; k <= c.degree(); k += F.p()) root[k / F.p()] = c[k];
    squarefree_decomposition(F, Poly(std::move(root)), mult * static_cast<int>(F.p()), out);
  }
}

void equal_degree_split(const Field& F, const Poly& f, int d, std::mt19937_64& rng,
                        std::vector<Poly>& out) {
  if (f.degree() == d) {
    out.push_back(f);
    return;
  }
  const std::uint64_t q = F.power(d);
  const std::uint64_t e = (q - 1) / 2;
  std::uniform_int_distribution<std::uint32_t> coeff(0, F.p() - 1);
  for (;;) {
    std::vector<std::uint32_t> a(f.degree(), 0);
    for (auto& x : a) x = coeff(rng);
    Poly A(std::move(a));
    if (A.degree() < 1) continue;
    Poly h = gcd(F, f, sub(F, pow_mod(F, A, e, f), Poly::one()));
    if (h.degree() > 0 && h.degree() < f.degree()) {
      equal_degree_split(F, h, d, rng, out);
      equal_degree_split(F, div_exact(F, f, h), d, rng, out);
      return;
    }
  }
}

}  // namespace

bool is_irreducible(const Field& F, const Poly& f) {
  if (f.degree() < 1) return false;
  Poly g = make_monic(F, f);
  if (g.degree() == 1) return true;
  Poly x = Poly::t();
  Poly h = x;
  for (int k = 1; k <= g.degree() / 2; ++k) {
    h = frobenius_power(F, h, g);
    if (gcd(F, g, sub(F, h, x)).degree() > 0) return false;
  }
  return true;
}

Factorization factor(const Field& F, const Poly& f) {
  if (f.is_zero()) throw std::domain_error("factor of the zero polynomial");
  Poly g = make_monic(F, f);
  std::vector<std::pair<Poly, int>> sqf;
  squarefree_decomposition(F, g, 1, sqf);
  std::mt19937_64 rng(0x5eed);
  Factorization out;
  for (auto& [s, m] : sqf) {
    Poly rest = s;
    Poly h = Poly::t();
    for (int d = 1; rest.degree() >= 2 * d; ++d) {
      h = frobenius_power(F, h, rest);
      Poly part = gcd(F, rest, sub(F, h, Poly::t()));
      if (part.degree() > 0) {
        std::vector<Poly> pieces;
        equal_degree_split(F, part, d, rng, pieces);
        for (auto& P : pieces) out.emplace_back(P, m);
        rest = div_exact(F, rest, part);
        h = mod(F, h, rest);
      }
    }
    if (rest.degree() > 0) out.emplace_back(rest, m);
  }
  std::sort(out.begin(), out.end());
  // Equal primes can appear from different square-free layers only through
  // repeated p-th root recursion; merge them.
  Factorization merged;
  for (auto& e : out) {
    if (!merged.empty() && merged.back().first == e.first)
      merged.back().second += e.second;
    else
      merged.push_back(e);
  }
  return merged;
}

Poly expand(const Field& F, const Factorization& fac) {
  Poly r = Poly::one();
  for (auto& [P, e] : fac) r = mul(F, r, pow(F, P, e));
  return r;
}

Poly radical(const Field& F, const Poly& f) {
  Poly r = Poly::one();
  for (auto& [P, e] : factor(F, f)) r = mul(F, r, P);
  return r;
}

int quadratic_symbol(const Field& F, const Poly& f, const Poly& h) {
  if (!h.is_monic()) throw std::domain_error("quadratic_symbol needs a monic modulus");
  Poly a = f, b = h;
  int sign = 1;
  for (;;) {
    if (b.degree() == 0) return sign;
    a = mod(F, a, b);
    if (a.is_zero()) return 0;
    std::uint32_t c = a.lead();
    if (b.degree() % 2 == 1) sign *= F.chi(c);
    a = make_monic(F, a);
    std::swap(a, b);
  }
}

int quadratic_symbol_euler(const Field& F, const Poly& f, const Poly& h) {
  if (!h.is_monic()) throw std::domain_error("quadratic_symbol needs a monic modulus");
  int sign = 1;
  for (auto& [P, e] : factor(F, h)) {
    Poly r = pow_mod(F, f, (F.power(P.degree()) - 1) / 2, P);
    int s;
    if (r.is_zero())
      s = 0;
    else if (r.is_one())
      s = 1;
    else if (r == Poly::constant(F.p() - 1))
      s = -1;
    else
      throw std::logic_error("Euler criterion produced a non-unit");
    if (e % 2 == 1) sign *= s;
    else if (s == 0) sign = 0;
  }
  return sign;
}

std::uint64_t monic_index(const Field& F, const Poly& f) {
  if (!f.is_monic()) throw std::domain_error("monic_index needs a monic polynomial");
  std::uint64_t idx = 0;
  for (int i = f.degree() - 1; i >= 0; --i) idx = idx * F.p() + f[i];
  return idx;
}

Poly monic_from_index(const Field& F, int n, std::uint64_t idx) {
  std::vector<std::uint32_t> c(n + 1, 0);
  c[n] = 1;
  for (int i = 0; i < n; ++i) {
    c[i] = static_cast<std::uint32_t>(idx % F.p());
    idx /= F.p();
  }
  return Poly(std::move(c));
}

std::uint64_t degree_offset(const Field& F, int n) { return (F.power(n) - 1) / (F.p() - 1); }

std::uint64_t global_id(const Field& F, const Poly& f) {
  return degree_offset(F, f.degree()) + monic_index(F, f);
}

std::vector<Poly> enumerate_monic(const Field& F, int n) {
  std::vector<Poly> out;
  out.reserve(F.power(n));
  for_each_monic(F, n, [&](const Poly& f) { out.push_back(f); });
  return out;
}

void for_each_monic(const Field& F, int n, const std::function<void(const Poly&)>& fn) {
  if (n < 0) return;
  const std::uint64_t count = F.power(n);
  for (std::uint64_t i = 0; i < count; ++i) fn(monic_from_index(F, n, i));
}

std::vector<Poly> enumerate_family(const Field& F, int g, const Poly& delta) {
  if (g < 0) throw std::invalid_argument("genus must be non-negative");
  std::vector<Poly> out;
  for_each_monic(F, 2 * g + 1, [&](const Poly& D) {
    if (is_squarefree(F, D) && gcd(F, D, delta).degree() == 0) out.push_back(D);
  });
  return out;
}

std::pair<std::size_t, std::size_t> shard_range(std::size_t n, std::size_t W, std::size_t w) {
  if (W == 0 || w >= W) throw std::invalid_argument("bad shard index");
  std::size_t base = n / W, extra = n % W;
  std::size_t begin = w * base + std::min(w, extra);
  std::size_t end = begin + base + (w < extra ? 1 : 0);
  return {begin, end};
}

Poly parse_poly(const Field& F, std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty polynomial literal");
  auto fail = [&](const std::string& what) {
    throw std::invalid_argument("bad polynomial literal '" + std::string(text) + "': " + what);
  };
  std::vector<std::uint32_t> acc;
  std::size_t i = 0;
  auto read_int = [&](long long& v) {
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return false;
    if (j - i > 12) fail("number too long");
    v = std::stoll(s.substr(i, j - i));
    i = j;
    return true;
  };
  bool first = true;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      fail("expected + or -");
    }
    first = false;
    long long c = 1;
    bool have_c = read_int(c);
    if (have_c && c >= static_cast<long long>(F.p())) fail("coefficient out of range 0..p-1");
    int k = 0;
    if (i < s.size() && (s[i] == '*' || s[i] == 't')) {
      if (s[i] == '*') {
        if (!have_c) fail("dangling *");
        ++i;
      }
      if (i >= s.size() || s[i] != 't') fail("expected t");
      ++i;
      k = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        long long e;
        if (!read_int(e)) fail("expected exponent");
        if (e > 4096) fail("exponent too large");
        k = static_cast<int>(e);
      }
    } else if (!have_c) {
      fail("expected a term");
    }
    if (acc.size() < static_cast<std::size_t>(k + 1)) acc.resize(k + 1, 0);
    std::uint32_t term = F.reduce(sign * c);
    acc[k] = F.add(acc[k], term);
  }
  return Poly(std::move(acc));
}

std::string to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (int k = f.degree(); k >= 0; --k) {
    std::uint32_t c = f[k];
    if (c == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c) + "*";
    out += "t";
    if (k > 1) out += "^" + std::to_string(k);
  }
  return out;
}

}  // namespace qtw

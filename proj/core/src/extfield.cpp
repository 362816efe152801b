// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "qtwist/extfield.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <random>
#include <stdexcept>

namespace qtw {

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 2; r * r <= n; ++r) {
    if (n % r) continue;
    out.push_back(r);
    while (n % r == 0) n /= r;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace

ExtField::ExtField(const Field& F, int d) : F_(F), d_(d) {
  if (d < 1) throw std::invalid_argument("extension degree must be positive");
  const std::uint64_t q = F.power(d);
  if (q > (1ULL << 30)) throw std::length_error("extension field too large for log tables");
  q_ = static_cast<std::uint32_t>(q);
  n_ = static_cast<Elem>(q - 1);
  half_ = n_ / 2;
  const auto divs = prime_divisors(q - 1);
  for (std::uint64_t idx = 0;; ++idx) {
    if (idx >= q) throw std::logic_error("no primitive modulus found");
    Poly m = monic_from_index(F, d, idx);
    if (m[0] == 0 || !is_irreducible(F, m)) continue;
    bool primitive = true;
    for (auto r : divs)
      if (pow_mod(F, Poly::t(), (q - 1) / r, m).is_one()) {
        primitive = false;
        break;
      }
    if (primitive) {
      modulus_ = m;
      break;
    }
  }
  const std::uint32_t p = F.p();
  log_.assign(q_, kZero);
  exp_.assign(n_, 0);
  std::vector<std::uint32_t> v(d, 0);
  v[0] = 1;
  for (Elem k = 0; k < n_; ++k) {
    std::uint32_t idx = 0;
    for (int i = d - 1; i >= 0; --i) idx = idx * p + v[i];
    exp_[k] = idx;
    log_[idx] = k;
    // v <- v * t mod m, using t^d = -sum m_i t^i.
    std::uint32_t top = v[d - 1];
    for (int i = d - 1; i >= 1; --i) v[i] = F.sub(v[i - 1], F.mul(top, modulus_[i]));
    v[0] = F.neg(F.mul(top, modulus_[0]));
  }
  zech_.assign(n_, kZero);
  for (Elem k = 0; k < n_; ++k) {
    std::uint32_t idx = exp_[k];
    std::uint32_t c0 = idx % p;
    zech_[k] = log_[idx - c0 + (c0 + 1) % p];
  }
}

ExtField::Elem ExtField::pow(Elem a, std::uint64_t e) const {
  if (a < 0) return e == 0 ? 0 : kZero;
  return static_cast<Elem>((static_cast<unsigned __int128>(a) * e) % static_cast<std::uint64_t>(n_));
}

ExtField::Elem ExtField::eval(const Poly& f, Elem x) const {
  Elem r = kZero;
  for (int i = f.degree(); i >= 0; --i) r = add(mul(r, x), from_base(f[i]));
  return r;
}

Poly ExtField::minimal_polynomial(Elem tau) const {
  if (tau < 0) return Poly::t();
  std::vector<Elem> c{0};
  Elem r = tau;
  do {
    std::vector<Elem> nc(c.size() + 1, kZero);
    const Elem mr = neg(r);
    for (std::size_t j = 0; j < c.size(); ++j) {
      nc[j + 1] = add(nc[j + 1], c[j]);
      nc[j] = add(nc[j], mul(mr, c[j]));
    }
    c = std::move(nc);
    r = static_cast<Elem>(static_cast<std::uint64_t>(r) * F_.p() % static_cast<std::uint64_t>(n_));
  } while (r != tau);
  std::vector<std::uint32_t> out(c.size());
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::uint32_t idx = to_index(c[j]);
    if (idx >= F_.p()) throw std::logic_error("minimal polynomial left the base field");
    out[j] = idx;
  }
  return Poly(std::move(out));
}

void ExtField::for_each_prime(const std::function<void(Elem, const Poly&)>& fn) const {
  if (d_ == 1) fn(kZero, Poly::t());
  std::vector<char> seen(n_, 0);
  const std::uint64_t p = F_.p();
  for (Elem k = 0; k < n_; ++k) {
    if (seen[k]) continue;
    int size = 0;
    Elem j = k;
    do {
      seen[j] = 1;
      ++size;
      j = static_cast<Elem>(static_cast<std::uint64_t>(j) * p % static_cast<std::uint64_t>(n_));
    } while (j != k);
    if (size == d_) fn(k, minimal_polynomial(k));
  }
}

std::int64_t ExtField::trace_exhaustive(Elem A, Elem B) const {
  std::int64_t s = chi(B);
  for (Elem j = 0; j < n_; ++j) {
    Elem x3 = static_cast<Elem>((3LL * j) % n_);
    s += chi(add(add(x3, mul(A, j)), B));
  }
  return -s;
}

namespace {

struct Pt {
  ExtField::Elem x = ExtField::kZero, y = ExtField::kZero;
  bool inf = true;
};

class Curve {
 public:
  Curve(const ExtField& K, ExtField::Elem A) : K_(K), A_(A), two_(K.from_base(2)), three_(K.from_base(3)) {}

  Pt neg(const Pt& P) const { return P.inf ? P : Pt{P.x, K_.neg(P.y), false}; }

  Pt dbl(const Pt& P) const {
    if (P.inf || P.y < 0) return Pt{};
    auto num = K_.add(K_.mul(three_, K_.mul(P.x, P.x)), A_);
    auto lam = K_.mul(num, K_.inv(K_.mul(two_, P.y)));
    return finish(P, lam, K_.sub(K_.mul(lam, lam), K_.mul(two_, P.x)));
  }

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    if (P.x == Q.x) return P.y == Q.y ? dbl(P) : Pt{};
    auto lam = K_.mul(K_.sub(Q.y, P.y), K_.inv(K_.sub(Q.x, P.x)));
    return finish(P, lam, K_.sub(K_.sub(K_.mul(lam, lam), P.x), Q.x));
  }

  Pt mul(const Pt& P, std::uint64_t k) const {
    Pt r, b = P;
    while (k) {
      if (k & 1) r = add(r, b);
      k >>= 1;
      if (k) b = dbl(b);
    }
    return r;
  }

 private:
  Pt finish(const Pt& P, ExtField::Elem lam, ExtField::Elem x3) const {
    auto y3 = K_.sub(K_.mul(lam, K_.sub(P.x, x3)), P.y);
    return Pt{x3, y3, false};
  }
  const ExtField& K_;
  ExtField::Elem A_, two_, three_;
};

}  // namespace

std::int64_t ExtField::trace_bsgs(Elem A, Elem B, std::uint64_t seed) const {
  const std::uint64_t q = q_;
  const std::uint64_t w = isqrt(4 * q);
  const std::uint64_t lo = q + 1 - w, hi = q + 1 + w;
  const std::uint64_t m = isqrt((hi - lo) / 2) + 1;
  // The quadratic twist by the non-square t has order 2q + 2 - N; mixing
  // its points in resolves curves whose group exponent is small.
  const Elem At = mul(A, 2), Bt = mul(B, 3);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> pick(0, q_ - 1);
  std::vector<std::uint64_t> alive;
  bool first = true;
  for (int attempt = 0; attempt < 32; ++attempt) {
    const bool twist = attempt % 2 == 1;
    const Elem a = twist ? At : A, b = twist ? Bt : B;
    Curve E(*this, a);
    Elem x = from_index(pick(rng));
    Elem rhs = add(add(pow(x, 3), mul(a, x)), b);
    if (chi(rhs) != 1) continue;
    Pt P{x, sqrt(rhs), false};
    // Baby steps j*P for j in [1, m], matched up to sign; giant steps of
    // (2m+1)*P centred so that every N in [lo, hi] is within m of one.
    struct Baby {
      Elem x, y;
      std::uint32_t j;
    };
    std::vector<Baby> baby;
    baby.reserve(m);
    Pt cur = P;
    bool small_order = false;
    for (std::uint64_t j = 1; j <= m; ++j) {
      if (cur.inf) {
        small_order = true;
        break;
      }
      baby.push_back({cur.x, cur.y, static_cast<std::uint32_t>(j)});
      if (j < m) cur = E.add(cur, P);
    }
    // Orders up to m would leave gaps in the table.
    if (small_order) continue;
    std::sort(baby.begin(), baby.end(), [](const Baby& u, const Baby& v) { return u.x < v.x; });
    const Pt G = E.add(E.dbl(cur), P);  // (2m+1) * P
    std::vector<std::uint64_t> found;
    Pt T = E.mul(P, lo + m);
    for (std::uint64_t base = lo + m; base <= hi + m; base += 2 * m + 1) {
      if (T.inf) found.push_back(base);
      else {
        auto it = std::lower_bound(baby.begin(), baby.end(), T.x,
                                   [](const Baby& u, Elem x) { return u.x < x; });
        for (; it != baby.end() && it->x == T.x; ++it) {
          if (it->y == neg(T.y)) found.push_back(base + it->j);
          if (it->y == T.y) found.push_back(base - it->j);
        }
      }
      T = E.add(T, G);
    }
    std::vector<std::uint64_t> inrange;
    for (auto N : found)
      if (N >= lo && N <= hi) inrange.push_back(twist ? 2 * q + 2 - N : N);
    std::sort(inrange.begin(), inrange.end());
    inrange.erase(std::unique(inrange.begin(), inrange.end()), inrange.end());
    if (first) {
      alive = std::move(inrange);
      first = false;
    } else {
      std::vector<std::uint64_t> both;
      std::set_intersection(alive.begin(), alive.end(), inrange.begin(), inrange.end(),
                            std::back_inserter(both));
      alive = std::move(both);
    }
    if (alive.size() == 1) return static_cast<std::int64_t>(q + 1) - static_cast<std::int64_t>(alive[0]);
  }
  return trace_exhaustive(A, B);
}

}  // namespace qtw

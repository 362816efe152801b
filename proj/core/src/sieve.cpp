// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#include "qtwist/sieve.hpp"

#include <limits>
#include <stdexcept>

namespace qtw {

namespace {
constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
}

MonicSieve::MonicSieve(const Field& F, int max_deg) : F_(F), max_deg_(max_deg) {
  if (max_deg < 0 || max_deg >= kSmallPolyCap) throw std::invalid_argument("sieve degree out of range");
  const std::uint64_t p = F.p();
  offsets_.resize(max_deg + 2);
  std::uint64_t total = 0;
  for (int n = 0; n <= max_deg + 1; ++n) {
    offsets_[n] = static_cast<std::uint32_t>(total);
    if (n <= max_deg) {
      total += F.power(n);
      if (total > (1ULL << 31)) throw std::length_error("sieve too large");
    }
  }
  deg_.resize(total);
  spf_.assign(total, kUnset);
  cof_.assign(total, 0);
  pfree_.assign(total, 0);
  pexp_.assign(total, 0);
  rank_.assign(total, kUnset);
  prime_prefix_.assign(max_deg + 1, 0);
  for (int n = 0; n <= max_deg; ++n)
    for (std::uint32_t id = offsets_[n]; id < offsets_[n + 1]; ++id) deg_[id] = static_cast<std::uint8_t>(n);
  spf_[0] = 0;
  if (p <= 64) {
    mul_table_.resize(p * p);
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) mul_table_[a * p + b] = static_cast<std::uint16_t>(a * b % p);
  }

  std::vector<std::uint64_t> pc(max_deg + 1), gc(max_deg + 1), hc(max_deg + 1);
  for (int n = 1; n <= max_deg; ++n) {
    for (std::size_t r = 0; r < primes_.size(); ++r) {
      const std::uint32_t P = primes_[r];
      const int d = deg_[P];
      if (2 * d > n) break;
      const int e = n - d;
      // Coefficients of P below the leading 1.
      std::uint64_t x = P - offsets_[d];
      for (int i = 0; i < d; ++i) {
        pc[i] = x % p;
        x /= p;
      }
      pc[d] = 1;
      const std::uint32_t gbase = offsets_[e];
      const std::uint32_t gcount = offsets_[e + 1] - gbase;
      for (int i = 0; i < e; ++i) gc[i] = 0;
      gc[e] = 1;
      for (std::uint32_t gi = 0; gi < gcount; ++gi) {
        if (gi) {
          // Increment the base-p digit vector of g.
          for (int i = 0; i < e; ++i) {
            if (++gc[i] < p) break;
            gc[i] = 0;
          }
        }
        for (int k = 0; k <= n; ++k) hc[k] = 0;
        for (int i = 0; i <= d; ++i) {
          if (pc[i] == 0) continue;
          for (int j = 0; j <= e; ++j) hc[i + j] += pc[i] * gc[j];
        }
        std::uint64_t idx = 0;
        for (int k = n - 1; k >= 0; --k) idx = idx * p + hc[k] % p;
        const std::uint32_t h = static_cast<std::uint32_t>(offsets_[n] + idx);
        if (spf_[h] != kUnset) continue;
        const std::uint32_t g = gbase + gi;
        spf_[h] = P;
        cof_[h] = g;
        if (g != 0 && spf_[g] == P) {
          pexp_[h] = static_cast<std::uint8_t>(pexp_[g] + 1);
          pfree_[h] = pfree_[g];
          if (pfree_[h] == 0) pow_ids_[r].push_back(h);
        } else {
          pexp_[h] = 1;
          pfree_[h] = g;
        }
      }
    }
    for (std::uint32_t id = offsets_[n]; id < offsets_[n + 1]; ++id) {
      if (spf_[id] != kUnset) continue;
      spf_[id] = id;
      cof_[id] = 0;
      pexp_[id] = 1;
      pfree_[id] = 0;
      rank_[id] = static_cast<std::uint32_t>(primes_.size());
      primes_.push_back(id);
      pow_ids_.push_back({id});
      prime_polys_.push_back(SmallPoly::from(poly(id)));
    }
    prime_prefix_[n] = primes_.size();
  }
}

Poly MonicSieve::poly(std::uint32_t id) const {
  const int n = deg_[id];
  return monic_from_index(F_, n, id - offsets_[n]);
}

std::uint32_t MonicSieve::id_of(const Poly& f) const {
  if (!f.is_monic() || f.degree() > max_deg_) throw std::out_of_range("polynomial outside sieve");
  return static_cast<std::uint32_t>(offsets_[f.degree()] + monic_index(F_, f));
}

void MonicSieve::twist_character(const SymbolKernel& K, const SmallPoly& D, int upto,
                                 std::vector<std::int8_t>& chi) const {
  if (upto > max_deg_) throw std::out_of_range("twist_character beyond sieve degree");
  const std::uint32_t n = offsets_[upto + 1];
  chi.resize(n);
  chi[0] = 1;
  const std::uint32_t p = F_.p();
  const int dD = D.deg;
  // With q = 1 mod 4 and D monic, (D / P) = (P mod D / D), and for r = c m with
  // m monic of degree < deg D this is chi(c)^{deg D} (D / m), already tabulated.
  const bool reduce = dD >= 1 && D.c[dD] == 1;
  std::uint32_t r[kSmallPolyCap];
  std::size_t rank = 0;
  for (int d = 0; d <= upto; ++d) {
    const std::size_t stop = prime_prefix_[d];
    for (; rank < stop; ++rank) {
      const SmallPoly& P = prime_polys_[rank];
      if (!reduce || d < dD) {
        chi[primes_[rank]] = static_cast<std::int8_t>(K(D, P));
        continue;
      }
      for (int i = 0; i <= d; ++i) r[i] = P.c[i];
      for (int top = d; top >= dD; --top) {
        const std::uint32_t lead = r[top];
        if (lead == 0) continue;
        const int shift = top - dD;
        for (int i = 0; i <= dD; ++i) r[shift + i] = F_.sub(r[shift + i], mul(lead, D.c[i]));
      }
      int dr = dD - 1;
      while (dr >= 0 && r[dr] == 0) --dr;
      if (dr < 0) {
        chi[primes_[rank]] = 0;
        continue;
      }
      const std::uint32_t lc = r[dr];
      const std::uint32_t li = F_.inv(lc);
      std::uint64_t idx = 0;
      for (int i = dr - 1; i >= 0; --i) idx = idx * p + mul(r[i], li);
      int s = chi[offsets_[dr] + idx];
      if (dD % 2 == 1) s *= F_.chi(lc);
      chi[primes_[rank]] = static_cast<std::int8_t>(s);
    }
    for (std::uint32_t id = offsets_[d]; id < offsets_[d + 1]; ++id) {
      const std::uint32_t s = spf_[id];
      if (s == id || id == 0) continue;
      chi[id] = static_cast<std::int8_t>(chi[s] * chi[cof_[id]]);
    }
  }
}

}  // namespace qtw

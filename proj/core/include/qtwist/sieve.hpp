// Copyright 2026 The qtwist Authors
// Licensed under the Apache License, Version 2.0 (see LICENSE).

#pragma once

#include <cstdint>
#include <vector>

#include "qtwist/ffpoly.hpp"
#include "qtwist/symbol_kernel.hpp"

namespace qtw {

// Smallest-prime-factor table over all monic polynomials of degree <= max_deg,
// addressed by global_id. Id 0 is the polynomial 1.
class MonicSieve {
 public:
  MonicSieve(const Field& F, int max_deg);

  const Field& field() const { return F_; }
  int max_deg() const { return max_deg_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(deg_.size()); }

  // First id of degree n; ids of degree n occupy [begin(n), begin(n+1)).
  std::uint32_t begin(int n) const { return offsets_[n]; }
  std::uint32_t end(int n) const { return offsets_[n + 1]; }
  int degree(std::uint32_t id) const { return deg_[id]; }

  bool is_prime(std::uint32_t id) const { return id != 0 && spf_[id] == id; }
  // Smallest prime factor (by id), h / spf, exponent of spf in h and h / spf^k.
  std::uint32_t spf(std::uint32_t id) const { return spf_[id]; }
  std::uint32_t cof(std::uint32_t id) const { return cof_[id]; }
  std::uint8_t pexp(std::uint32_t id) const { return pexp_[id]; }
  std::uint32_t pfree(std::uint32_t id) const { return pfree_[id]; }
  // Id of spf(id)^pexp(id).
  std::uint32_t prime_power_part(std::uint32_t id) const {
    return pow_ids_[rank_[spf_[id]]][pexp_[id] - 1];
  }

  // Prime ids in increasing order and their SmallPoly forms.
  const std::vector<std::uint32_t>& primes() const { return primes_; }
  const std::vector<SmallPoly>& prime_polys() const { return prime_polys_; }
  // Number of primes with degree <= n.
  std::size_t prime_count_upto(int n) const { return prime_prefix_[n]; }
  // Position of a prime id within primes().
  std::uint32_t prime_rank(std::uint32_t id) const { return rank_[id]; }

  Poly poly(std::uint32_t id) const;
  std::uint32_t id_of(const Poly& f) const;

  // chi[id] = (D / h) for every monic h in the table, extended completely
  // multiplicatively from the primes of degree <= upto.
  void twist_character(const SymbolKernel& K, const SmallPoly& D, int upto,
                       std::vector<std::int8_t>& chi) const;

 private:
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return mul_table_.empty() ? F_.mul(a, b) : mul_table_[a * F_.p() + b];
  }

  Field F_;
  int max_deg_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint8_t> deg_;
  std::vector<std::uint32_t> spf_, cof_, pfree_;
  std::vector<std::uint8_t> pexp_;
  std::vector<std::uint32_t> primes_, rank_;
  std::vector<SmallPoly> prime_polys_;
  std::vector<std::vector<std::uint32_t>> pow_ids_;
  std::vector<std::size_t> prime_prefix_;
  std::vector<std::uint16_t> mul_table_;
};

}  // namespace qtw

#pragma once

// Segmented smallest-prime-factor tables over integer windows [lo, hi).
//
// Entries are stored as 32-bit codes: 1 for n = 1, 0 for a prime, and the
// smallest prime factor otherwise. A composite below 2^40 has its smallest
// prime factor below 2^20, which is why the window is capped at 2^40.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "progdist/util.hpp"

namespace progdist {

inline constexpr u64 kMaxSieveBound = u64{1} << 40;

struct SieveOptions {
  u64 segment_length = u64{1} << 20;
  unsigned threads = 1;
};

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

using Factorization = std::vector<PrimePower>;

class SpfTable {
 public:
  SpfTable() = default;

  [[nodiscard]] u64 lo() const { return lo_; }
  [[nodiscard]] u64 hi() const { return hi_; }
  [[nodiscard]] u64 size() const { return hi_ - lo_; }
  [[nodiscard]] bool contains(u64 n) const { return n >= lo_ && n < hi_; }

  /// Smallest prime factor of n; 1 for n = 1. Throws outside the window.
  [[nodiscard]] u64 spf(u64 n) const {
    const std::uint32_t code = entries_[index(n)];
    return code == 0 ? n : code;
  }
  [[nodiscard]] bool is_prime(u64 n) const { return entries_[index(n)] == 0; }

 private:
  friend SpfTable build_spf(u64 lo, u64 hi, const SieveOptions& options);

  [[nodiscard]] std::size_t index(u64 n) const {
    if (!contains(n)) throw Error("n = " + std::to_string(n) + " outside sieve window");
    return static_cast<std::size_t>(n - lo_);
  }

  u64 lo_ = 1;
  u64 hi_ = 1;
  std::vector<std::uint32_t> entries_;
};

/// Primes below `limit` by a plain sieve of Eratosthenes.
std::vector<u64> small_primes(u64 limit);

SpfTable build_spf(u64 lo, u64 hi, const SieveOptions& options = {});

/// Streams [lo, hi) as consecutive tables of at most options.segment_length
/// entries, in ascending order.
void for_each_segment(u64 lo, u64 hi, const SieveOptions& options,
                      const std::function<void(const SpfTable&)>& visit);

std::vector<u64> primes_in(u64 lo, u64 hi);

Factorization factorize(u64 n, const SpfTable& table);

/// Number of distinct primes p with Y <= p < Z dividing n.
unsigned omega_in_range(u64 n, u64 Y, u64 Z, const SpfTable& table);

/// 0 if p^2 | n for some prime Y <= p < Z, else 1.
int mu2_range(u64 n, u64 Y, u64 Z, const SpfTable& table);

}  // namespace progdist

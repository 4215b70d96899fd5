#include "progdist/sieve.hpp"

#include <string>

namespace progdist {
namespace {

void check_window(u64 lo, u64 hi) {
  if (lo < 1 || lo >= hi)
    throw Error("invalid sieve window [" + std::to_string(lo) + ", " + std::to_string(hi) + ")");
  if (hi > kMaxSieveBound) throw Error("sieve window exceeds 2^40");
}

void check_range(u64 Y, u64 Z) {
  if (Y <= 1 || Y >= Z) throw Error("prime range requires 1 < Y < Z");
}

// Marks [seg_lo, seg_hi) in place; `out` is indexed relative to seg_lo.
void sieve_segment(u64 seg_lo, u64 seg_hi, std::span<const u64> base, std::span<std::uint32_t> out) {
  if (seg_lo == 1) out[0] = 1;
  for (const u64 p : base) {
    const u64 p2 = p * p;
    if (p2 >= seg_hi) break;
    u64 start = (seg_lo + p - 1) / p * p;
    if (start < p2) start = p2;
    for (u64 j = start; j < seg_hi; j += p) {
      auto& slot = out[j - seg_lo];
      if (slot == 0) slot = static_cast<std::uint32_t>(p);
    }
  }
}

}  // namespace

std::vector<u64> small_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit <= 2) return primes;
  std::vector<bool> composite(limit, false);
  for (u64 i = 2; i < limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j < limit; j += i) composite[j] = true;
  }
  return primes;
}

SpfTable build_spf(u64 lo, u64 hi, const SieveOptions& options) {
  check_window(lo, hi);
  const u64 seg_len = options.segment_length == 0 ? (u64{1} << 20) : options.segment_length;
  const auto base = small_primes(isqrt(hi - 1) + 1);

  SpfTable table;
  table.lo_ = lo;
  table.hi_ = hi;
  table.entries_.assign(static_cast<std::size_t>(hi - lo), 0);

  const u64 segments = (hi - lo + seg_len - 1) / seg_len;
  parallel_for(static_cast<std::size_t>(segments), options.threads, [&](std::size_t s) {
    const u64 seg_lo = lo + s * seg_len;
    const u64 seg_hi = std::min(hi, seg_lo + seg_len);
    std::span<std::uint32_t> out(table.entries_.data() + (seg_lo - lo), seg_hi - seg_lo);
    sieve_segment(seg_lo, seg_hi, base, out);
  });
  return table;
}

void for_each_segment(u64 lo, u64 hi, const SieveOptions& options,
                      const std::function<void(const SpfTable&)>& visit) {
  check_window(lo, hi);
  const u64 seg_len = options.segment_length == 0 ? (u64{1} << 20) : options.segment_length;
  SieveOptions inner = options;
  for (u64 s = lo; s < hi; s += seg_len) {
    const SpfTable table = build_spf(s, std::min(hi, s + seg_len), inner);
    visit(table);
  }
}

std::vector<u64> primes_in(u64 lo, u64 hi) {
  check_window(lo, hi);
  std::vector<u64> primes;
  for_each_segment(lo, hi, {}, [&](const SpfTable& t) {
    for (u64 n = std::max<u64>(t.lo(), 2); n < t.hi(); ++n)
      if (t.is_prime(n)) primes.push_back(n);
  });
  return primes;
}

Factorization factorize(u64 n, const SpfTable& table) {
  if (!table.contains(n)) throw Error("n = " + std::to_string(n) + " outside sieve window");
  Factorization out;
  if (n == 1) return out;
  // Only n itself is guaranteed to lie in the window; cofactors are split by
  // trial division from the smallest prime factor upwards.
  u64 p = table.spf(n);
  u64 m = n;
  for (;;) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.push_back({p, e});
    if (m == 1) break;
    if (table.contains(m)) {
      p = table.spf(m);
      continue;
    }
    u64 d = p + 1;
    while (d * d <= m && m % d != 0) ++d;
    p = (d * d <= m) ? d : m;
  }
  return out;
}

unsigned omega_in_range(u64 n, u64 Y, u64 Z, const SpfTable& table) {
  check_range(Y, Z);
  unsigned count = 0;
  for (const auto& [p, e] : factorize(n, table))
    if (p >= Y && p < Z) ++count;
  return count;
}

int mu2_range(u64 n, u64 Y, u64 Z, const SpfTable& table) {
  check_range(Y, Z);
  for (const auto& [p, e] : factorize(n, table))
    if (p >= Y && p < Z && e >= 2) return 0;
  return 1;
}

}  // namespace progdist

#pragma once

// Slow, obviously-correct reference implementations. Nothing here touches
// the sieve or the library's arithmetic helpers.

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using Value = std::complex<double>;

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::pair<u64, unsigned>> factor(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline std::vector<u64> primes(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 n = lo; n < hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline int mobius(u64 n) {
  int s = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    s = -s;
  }
  return s;
}

inline int liouville(u64 n) {
  unsigned total = 0;
  for (auto [p, e] : factor(n)) total += e;
  return total % 2 ? -1 : 1;
}

inline bool squarefree(u64 n) { return mobius(n) != 0; }

inline unsigned omega_range(u64 n, u64 Y, u64 Z) {
  unsigned c = 0;
  for (u64 p = Y; p < Z; ++p)
    if (is_prime(p) && n % p == 0) ++c;
  return c;
}

inline u64 residue(i64 a, u64 q) {
  i64 r = a % static_cast<i64>(q);
  if (r < 0) r += static_cast<i64>(q);
  return static_cast<u64>(r);
}

/// D(q, a) by filtering all of [1, X] (no stepping).
template <class F>
Value discrepancy(F&& f, u64 X, u64 q, i64 a) {
  Value all{}, prog{};
  u64 count = 0;
  const u64 r = residue(a, q);
  for (u64 n = 1; n <= X; ++n) {
    const Value v = f(n);
    all += v;
    if (n % q == r) {
      prog += v;
      ++count;
    }
  }
  return prog / static_cast<double>(count) - all / static_cast<double>(X);
}

/// r in [0, qq') with p r = a (q) and p' r = a (q'), by search.
inline u64 crt(u64 p, u64 p2, i64 a, u64 q, u64 q2) {
  const u64 m = q * q2;
  for (u64 r = 0; r < m; ++r)
    if ((p * r) % q == residue(a, q) && (p2 * r) % q2 == residue(a, q2)) return r;
  return m;
}

inline double relative_error(Value got, Value want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

}  // namespace oracle

#include "progdist/ramare.hpp"

#include <cmath>
#include <functional>

namespace progdist {
namespace {

void check_range(u64 Y, u64 Z) {
  if (Y <= 1 || Y >= Z) throw Error("prime range requires 1 < Y < Z");
}

void check_window(u64 M) {
  if (M < 1) throw Error("M must be positive");
  if (M > (u64{1} << 62)) throw Error("window [M, 2M) overflows 64 bits");
}

std::vector<u64> range_primes(u64 Y, u64 Z) { return primes_in(Y, Z); }

}  // namespace

double RamareParams::u() const { return std::log(static_cast<double>(Z)) / std::log(static_cast<double>(Y)); }

Rational weight(u64 n, u64 Y, u64 Z, const SpfTable& table) {
  return Rational(1, static_cast<i64>(omega_in_range(n, Y, Z, table)) + 1);
}

IdentityResult identity_check(u64 n, u64 Y, u64 Z, const SpfTable& table) {
  const auto factors = factorize(n, table);
  bool divisible = false;
  for (const auto& [p, e] : factors) {
    if (p < Y || p >= Z) continue;
    if (e >= 2) return IdentityResult::not_applicable;
    divisible = true;
  }
  Rational sum;
  for (const auto& [p, e] : factors)
    if (p >= Y && p < Z) sum += weight(n / p, Y, Z, table);
  return sum == Rational(divisible ? 1 : 0) ? IdentityResult::holds : IdentityResult::fails;
}

BigRational mertens_sum_exact(u64 Y, u64 Z) {
  check_range(Y, Z);
  BigRational s = 0;
  for (const u64 p : range_primes(Y, Z)) s += BigRational(1, p);
  return s;
}

double mertens_sum(u64 Y, u64 Z) { return mertens_sum_exact(Y, Z).convert_to<double>(); }

OmegaHistogram omega_histogram(u64 M, u64 Y, u64 Z) {
  check_range(Y, Z);
  check_window(M);
  const auto primes = range_primes(Y, Z);
  const u64 top = 2 * M - 1;
  const std::size_t K = primes.size();

  // S[j] = sum over j-subsets T of #{m in [M, 2M) : prod(T) | m}.
  std::vector<BigInt> S(K + 1);
  std::function<void(std::size_t, u64, std::size_t)> walk = [&](std::size_t from, u64 d, std::size_t j) {
    S[j] += top / d - (M - 1) / d;
    for (std::size_t i = from; i < K; ++i) {
      const u64 p = primes[i];
      if (d > top / p) break;
      walk(i + 1, d * p, j + 1);
    }
  };
  walk(0, 1, 0);

  std::size_t jmax = 0;
  for (std::size_t j = 0; j <= K; ++j)
    if (S[j] != 0) jmax = j;

  OmegaHistogram h{M, Y, Z, std::vector<u64>(jmax + 1, 0)};
  for (std::size_t k = 0; k <= jmax; ++k) {
    BigInt acc = 0;
    BigInt binom = 1;  // C(j, k), starting at j = k
    for (std::size_t j = k; j <= jmax; ++j) {
      if ((j - k) % 2 == 0)
        acc += binom * S[j];
      else
        acc -= binom * S[j];
      binom = binom * (j + 1) / (j + 1 - k);
    }
    h.counts[k] = acc.convert_to<u64>();
  }
  return h;
}

OmegaHistogram omega_histogram_direct(u64 M, u64 Y, u64 Z, u64 segment_length) {
  check_range(Y, Z);
  check_window(M);
  const auto primes = range_primes(Y, Z);
  OmegaHistogram h{M, Y, Z, {}};
  std::vector<std::uint8_t> omega;
  const u64 end = 2 * M;
  for (u64 lo = M; lo < end; lo += segment_length) {
    const u64 hi = std::min(end, lo + segment_length);
    omega.assign(static_cast<std::size_t>(hi - lo), 0);
    for (const u64 p : primes)
      for (u64 m = (lo + p - 1) / p * p; m < hi; m += p) ++omega[static_cast<std::size_t>(m - lo)];
    for (const auto w : omega) {
      if (w >= h.counts.size()) h.counts.resize(w + 1, 0);
      ++h.counts[w];
    }
  }
  while (h.counts.size() > 1 && h.counts.back() == 0) h.counts.pop_back();
  return h;
}

BigRational second_moment_exact(const OmegaHistogram& h) {
  BigRational s = 0;
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    s += BigRational(BigInt(h.counts[k]), BigInt((k + 1) * (k + 1)));
  return s / BigRational(BigInt(h.M));
}

BigRational fourth_moment_centered_exact(const OmegaHistogram& h) {
  const BigRational centre = mertens_sum_exact(h.Y, h.Z);
  BigRational s = 0;
  for (std::size_t k = 0; k < h.counts.size(); ++k) {
    if (h.counts[k] == 0) continue;
    const BigRational d = BigRational(static_cast<u64>(k)) - centre;
    const BigRational d2 = d * d;
    s += BigRational(BigInt(h.counts[k])) * d2 * d2;
  }
  return s / BigRational(BigInt(h.M));
}

double second_moment(u64 M, u64 Y, u64 Z) {
  return second_moment_exact(omega_histogram(M, Y, Z)).convert_to<double>();
}

double fourth_moment_centered(u64 M, u64 Y, u64 Z) {
  return fourth_moment_centered_exact(omega_histogram(M, Y, Z)).convert_to<double>();
}

bool meets_lemma_regime(u64 M, u64 Z) {
  u128 z8 = 1;
  for (int i = 0; i < 8; ++i) {
    z8 *= Z;
    if (z8 > M) return false;
  }
  return z8 <= M;
}

MomentReport moments(u64 M, u64 Y, u64 Z, bool strict) {
  check_range(Y, Z);
  MomentReport r;
  r.M = M;
  r.Y = Y;
  r.Z = Z;
  r.u = RamareParams{Y, Z}.u();
  r.log_u = std::log(r.u);
  r.lemma_regime = meets_lemma_regime(M, Z);
  if (strict && !r.lemma_regime) throw Error("strict mode requires M >= Z^8");
  if (strict && r.u < 2) throw Error("strict mode requires u = log Z / log Y >= 2");
  const auto h = omega_histogram(M, Y, Z);
  r.mertens = mertens_sum(Y, Z);
  r.second_moment = second_moment_exact(h).convert_to<double>();
  r.fourth_centered = fourth_moment_centered_exact(h).convert_to<double>();
  return r;
}

}  // namespace progdist

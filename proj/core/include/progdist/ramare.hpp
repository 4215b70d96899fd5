#pragma once

#include <string>
#include <vector>

#include "progdist/rational.hpp"
#include "progdist/sieve.hpp"

namespace progdist {

struct RamareParams {
  u64 Y = 0;
  u64 Z = 0;

  /// log Z / log Y.
  [[nodiscard]] double u() const;
};

/// 1 / (#{p in [Y, Z) : p | n} + 1).
Rational weight(u64 n, u64 Y, u64 Z, const SpfTable& table);

enum class IdentityResult { holds, fails, not_applicable };

/// Checks sum_{Y <= p < Z, p | n} w(n/p) = 1_{some p in [Y,Z) divides n}
/// exactly. Returns not_applicable when p^2 | n for a range prime.
IdentityResult identity_check(u64 n, u64 Y, u64 Z, const SpfTable& table);

BigRational mertens_sum_exact(u64 Y, u64 Z);
double mertens_sum(u64 Y, u64 Z);

/// counts[k] = #{m in [M, 2M) : exactly k primes of [Y, Z) divide m}.
struct OmegaHistogram {
  u64 M = 0;
  u64 Y = 0;
  u64 Z = 0;
  std::vector<u64> counts;
};

/// Exact histogram by inclusion-exclusion over squarefree products of the
/// range primes not exceeding 2M - 1. Cost is governed by the number of such
/// products, not by M.
OmegaHistogram omega_histogram(u64 M, u64 Y, u64 Z);

/// Same histogram by segmented enumeration of [M, 2M).
OmegaHistogram omega_histogram_direct(u64 M, u64 Y, u64 Z, u64 segment_length = u64{1} << 20);

struct MomentReport {
  u64 M = 0;
  u64 Y = 0;
  u64 Z = 0;
  double u = 0;
  double mertens = 0;
  double second_moment = 0;
  double fourth_centered = 0;
  double log_u = 0;
  bool lemma_regime = false;  // M >= Z^8
};

/// E_{M <= m < 2M} w(m)^2, exact then rounded.
BigRational second_moment_exact(const OmegaHistogram& h);
/// E_{M <= m < 2M} (omega(m) - sum_{Y<=p<Z} 1/p)^4, exact then rounded.
BigRational fourth_moment_centered_exact(const OmegaHistogram& h);

double second_moment(u64 M, u64 Y, u64 Z);
double fourth_moment_centered(u64 M, u64 Y, u64 Z);

/// All moment quantities for one (M, Y, Z). In strict mode M >= Z^8 and
/// u >= 2 are required; otherwise the report is labelled by lemma_regime.
MomentReport moments(u64 M, u64 Y, u64 Z, bool strict = false);

/// True when M >= Z^8 (computed without overflow).
bool meets_lemma_regime(u64 M, u64 Z);

}  // namespace progdist

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "progdist/multfn.hpp"

namespace progdist {

/// Parameters of a prime-modulus discrepancy scan. `strict` turns the
/// X^{1/3} < Q < X^{1/2 + 1/78 - sigma} regime check from a warning into
/// an error.
struct DiscrepancyParams {
  u64 X = 0;
  u64 Q = 0;
  i64 a = 1;
  double eps = 0.1;
  double sigma = 0.01;
  bool strict = false;

  /// log Q / log X - 1/2.
  [[nodiscard]] double eta() const;
};

/// Validates the hard invariants (0 < |a| < 10Q, eps > 0, 0 < sigma < 1/2)
/// and returns warnings for a Q outside the theorem's regime. Throws in
/// strict mode instead of warning.
std::vector<std::string> check_regime(const DiscrepancyParams& params);

struct DiscrepancyRecord {
  u64 q = 0;
  u64 a_reduced = 0;
  Value D{};
  u64 terms = 0;
};

struct DiscrepancyReport {
  DiscrepancyParams params;
  std::vector<DiscrepancyRecord> records;
  u64 exceptional_count = 0;
  Value global_mean{};
  std::vector<std::string> warnings;

  /// #{records : |D| > eps}.
  [[nodiscard]] u64 exceptional_at(double eps) const;
};

struct ScanOptions {
  SieveOptions sieve{};
  unsigned threads = 1;
};

/// Discrepancy records for an arbitrary ascending list of moduli, plus the
/// global mean, from one streamed pass over [1, X].
std::vector<DiscrepancyRecord> progression_discrepancies(const MultiplicativeSpec& f, u64 X, i64 a,
                                                         const std::vector<u64>& moduli, Value& global_mean,
                                                         const ScanOptions& options = {});

/// One record per prime q in [Q, 2Q), ascending. f(n) is streamed over
/// [1, X] segment by segment; nothing of size X is held in memory.
DiscrepancyReport scan(const MultiplicativeSpec& f, const DiscrepancyParams& params,
                       const ScanOptions& options = {});

/// Q / eps * X^{-c_fit * sigma * eps}.
double exceptional_bound(const DiscrepancyParams& params, double c_fit);

struct CounterexampleReport {
  u64 X = 0;
  std::string function;
  Value global_mean{};
  Value mean_odd{};   // n = 1 (mod 2)
  Value mean_even{};  // n = 2 (mod 2)
  Value D_odd{};
  Value D_even{};
};

/// Even-modulus bias demo: discrepancies of f at q = 2 for a = 1, 2.
CounterexampleReport composite_counterexample(u64 X, const MultiplicativeSpec& f,
                                              const SieveOptions& options = {});
CounterexampleReport composite_counterexample(u64 X);

}  // namespace progdist

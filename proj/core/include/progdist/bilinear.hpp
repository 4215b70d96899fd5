#pragma once

// Decomposition of E_{n<=X} f(n) F(n) into trivial, sieve and bilinear
// error terms, and the progression test function
//
//   F(n) = sum_q xi_q (1_{n = a (mod q)} - 1/q)   for n != a,   F(a) = 0,
//
// with xi_q supported on primes q in [Q, 2Q).

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "progdist/discrepancy.hpp"
#include "progdist/multfn.hpp"

namespace progdist {

class ProgressionF {
 public:
  /// Throws on a non-prime key, a key outside [Q, 2Q), or |xi_q| > 1.
  ProgressionF(u64 Q, i64 a, const std::map<u64, Value>& xi);

  [[nodiscard]] u64 Q() const { return Q_; }
  [[nodiscard]] i64 a() const { return a_; }
  [[nodiscard]] const std::vector<std::pair<u64, Value>>& xi() const { return xi_; }

  /// Direct evaluation, summing over q in ascending order.
  [[nodiscard]] Value operator()(u64 n) const;

  /// F(1), ..., F(X) in O(X + sum X/q).
  [[nodiscard]] ValueTable table(u64 X) const;

 private:
  u64 Q_;
  i64 a_;
  std::vector<std::pair<u64, Value>> xi_;
};

ProgressionF make_progression_F(u64 Q, i64 a, const std::map<u64, Value>& xi);

/// Unit-modulus xi_q for q in S with xi_q * D_q real and non-negative, where
/// D_q is the progression discrepancy of f at (q, a). Entries off S are absent.
std::map<u64, Value> align_xi(const MultiplicativeSpec& f, u64 X, u64 Q, i64 a, const std::vector<u64>& S,
                              const ScanOptions& options = {});

/// Y^{-1/2} * sup|F|.
double e_triv(double F_inf, u64 Y);

/// E_{n<=X} |F(n)| 1_{(n, prod_{Y<=p<Z} p) = 1}; X is the table length.
double e_sieve(const ValueTable& F, u64 Y, u64 Z);
double e_sieve(const ProgressionF& F, u64 X, u64 Y, u64 Z);

/// Finite stand-in for the supremum over all intervals: exponential ranges
/// m in (e^{-i-1}X, e^{-i}X], capped at X/p', kept while the range top
/// exceeds X/(10YZ); each range contributes the prefix intervals ending at
/// `subdivisions` equally spaced points. If s2 is a multiple of s1 the s2
/// policy samples a superset of the s1 intervals.
struct IntervalPolicy {
  unsigned subdivisions = 8;
};

/// Closed integer interval [first, last].
struct Interval {
  u64 first = 0;
  u64 last = 0;
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// The sampled intervals for a prime pair whose larger prime is p2, grouped
/// by range: each inner vector shares its `first`.
std::vector<std::vector<Interval>> policy_intervals(u64 X, u64 Y, u64 Z, u64 p2, const IntervalPolicy& policy);

struct BilinearWitness {
  double value = 0;  // (1/max I) |sum_{m in I, (m,pp')=1} F(pm) conj F(p'm)|
  u64 p = 0;
  u64 p2 = 0;
  Interval interval{};
};

/// Largest sampled value over primes Y <= p < p' < Z; ties keep the
/// lexicographically first (p, p', interval start).
BilinearWitness bilinear_sup(const ValueTable& F, u64 Y, u64 Z, const IntervalPolicy& policy = {},
                             unsigned threads = 1);

/// sqrt of bilinear_sup.
double e_bilinear(const ValueTable& F, u64 Y, u64 Z, const IntervalPolicy& policy = {}, unsigned threads = 1);

struct BilinearDecomposition {
  Value lhs{};
  double F_inf = 0;
  double e_triv = 0;
  double e_sieve = 0;
  double e_bilinear = 0;
  BilinearWitness bilinear{};
  std::optional<double> fitted_C;  // |lhs| / (e_triv + e_sieve + e_bilinear)
  std::vector<std::string> warnings;
};

struct DecomposeOptions {
  IntervalPolicy policy{};
  bool strict = false;
  unsigned threads = 1;
};

/// Requires 1 < Y < Z; Z < X^{1/16} is enforced in strict mode and reported
/// as a warning otherwise. F is given by its values on [1, X].
BilinearDecomposition decompose(const MultiplicativeSpec& f, const ValueTable& F, u64 Y, u64 Z,
                                const DecomposeOptions& options = {});

struct SieveCount {
  u64 count = 0;
  double ratio = 0;  // count / ((log Y / log Z) * X / q)
  std::vector<std::string> warnings;
};

/// #{n <= X : n = a (mod q), (n, prod_{Y<=p<Z} p) = 1}.
SieveCount sieve_count(u64 X, u64 q, i64 a, u64 Y, u64 Z, bool strict = false);

/// prod_{Y<=p<Z} (1 - 1/p).
double rough_density(u64 Y, u64 Z);

}  // namespace progdist

#pragma once

// Modular machinery for Kloosterman-fraction bilinear sums
//
//   Sigma = sum_{q != q'} alpha(q) beta(q') e_{qq'}(-h r(q, q')),
//
// where q, q' run over primes in [Q, 2Q) and r(q, q') is the residue mod qq'
// with p r = a (mod q) and p' r = a (mod q'). e_m(x) = exp(2 pi i x / m).
// Phase arguments are reduced exactly before a single conversion to the
// unit circle.

#include <functional>
#include <string>
#include <vector>

#include "progdist/rational.hpp"
#include "progdist/multfn.hpp"

namespace progdist {

/// Moduli qq' above this bound are rejected.
inline constexpr u64 kMaxModulus = u64{1} << 62;

/// y in [1, m) with x y = 1 (mod m); extended Euclid.
u64 mod_inverse(i64 x, u64 m);

/// The unique r in [0, qq') with p r = a (mod q) and p' r = a (mod q').
u64 crt_residue(u64 p, u64 p2, i64 a, u64 q, u64 q2);

/// (v^{-1} mod u)/u + (u^{-1} mod v)/v - 1/(uv), exactly.
Rational reciprocity_value(u64 u, u64 v);

/// reciprocity_value(u, v) as an integer; throws std::logic_error if it is
/// ever not integral.
i64 reciprocity_check(u64 u, u64 v);

using PrimeWeights = std::function<Value(u64)>;

PrimeWeights constant_weights(Value c);
/// e(theta_q) with theta_q uniform from a counter-based generator keyed on
/// (seed, q).
PrimeWeights random_unimodular_weights(u64 seed);

struct PhaseSpec {
  u64 p = 2;
  u64 p2 = 3;
  i64 a = 1;
  i64 h = 1;
  u64 Q = 0;
  PrimeWeights alpha = constant_weights(1.0);
  PrimeWeights beta = constant_weights(1.0);

  /// a h (p' - p).
  [[nodiscard]] i64 b() const { return a * h * (static_cast<i64>(p2) - static_cast<i64>(p)); }
};

/// Both sides of the phase factorisation for one pair (q, q').
struct PhaseCheck {
  Rational lhs_arg;          // -h r / (qq') mod 1
  Rational split_arg;        // -(A/q + B/q') mod 1 with A, B the CRT components
  Rational lifted_arg;       // -(p'A/(p'q) + pB/(pq')) mod 1
  Rational reciprocal_arg;   // ah(p - p')(pq')^{-1} mod p'q, over p'q
  Rational correction;       // lhs_arg - reciprocal_arg mod 1
  bool factorization_exact = false;  // lhs_arg == split_arg == lifted_arg
  bool correction_exact = false;     // correction == -ah/(p'qq') mod 1
  Value lhs{};
  Value rhs{};
  double scaled_error = 0;   // |lhs - rhs| Q^2 / |ah|
  double bound_constant = 0;
  bool error_bound_ok = false;
};

PhaseCheck phase_identity_check(const PhaseSpec& spec, u64 q, u64 q2);

struct BilinearSumOptions {
  unsigned threads = 1;
  bool allow_zero_h = false;
};

/// Exact double sum over ordered pairs of distinct primes in [Q, 2Q),
/// accumulated as sum_q (sum_{q'} term) in ascending order.
Value bilinear_sum(const PhaseSpec& spec, const BilinearSumOptions& options = {});

/// The same sum with each phase replaced by its post-reciprocity form
/// e_{p'q}(ah(p - p')(pq')^{-1} mod p'q).
Value bilinear_sum_reciprocal(const PhaseSpec& spec, const BilinearSumOptions& options = {});

struct KloostermanRow {
  u64 Q = 0;
  u64 n_primes = 0;
  double abs_sum = 0;
  double trivial_bound = 0;  // n_primes^2
  double ratio = 0;          // abs_sum / trivial_bound
};

struct KloostermanScan {
  std::vector<KloostermanRow> rows;
  double slope = 0;  // least squares of log|Sigma| against log Q
  double intercept = 0;
  double trivial_slope = 2.0;
  double reference_slope = 2.0 - 1.0 / 20.0;
};

struct CancellationOptions {
  u64 min_primes = 30;
  unsigned threads = 1;
};

/// Evaluates the template at each Q of the grid (at least four values).
KloostermanScan cancellation_scan(const std::vector<u64>& Q_grid, const PhaseSpec& spec,
                                  const CancellationOptions& options = {});

enum class HalfSplit {
  first_second,  // ascending primes, first half to S (the literal reading)
  alternating,   // ascending primes, even positions to S
};

struct ResidueAssignment {
  u64 q = 0;
  i64 residue = 0;
};

struct AdversarialResult {
  std::vector<ResidueAssignment> assignment;
  u64 count_sum = 0;       // sum over pairs of #{m <= X : both congruences}
  double main_term = 0;    // X (sum_q 1/q)^2
  double sum = 0;          // count_sum - main_term, from an exact rational
  double ratio = 0;        // sum / Q^2
};

/// a(q) = p on S, a(q) = p' on S'.
std::vector<ResidueAssignment> adversarial_residues(u64 Q, u64 p, u64 p2, HalfSplit split);
/// a(q) = a for every prime q in [Q, 2Q).
std::vector<ResidueAssignment> fixed_residues(u64 Q, i64 a);

/// sum_{q, q'} sum_{m <= X} (1_{pm = a(q) (q)} 1_{p'm = a(q') (q')} - 1/(qq'))
/// over all ordered pairs, diagonal included.
AdversarialResult residue_pair_sum(const std::vector<ResidueAssignment>& assignment, u64 Q, u64 p, u64 p2,
                                   u64 X);

AdversarialResult adversarial_assignment(u64 Q, u64 p, u64 p2, u64 X, HalfSplit split = HalfSplit::alternating);

}  // namespace progdist

#include "progdist/kloosterman.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace progdist {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Value unit_phase(u64 numerator, u64 modulus) {
  return std::polar(1.0, kTwoPi * static_cast<double>(numerator) / static_cast<double>(modulus));
}

u64 checked_product(u64 a, u64 b) {
  const u128 m = static_cast<u128>(a) * b;
  if (m > kMaxModulus) throw Error("modulus exceeds 2^62");
  return static_cast<u64>(m);
}

/// x mod m for a signed product a*b, formed in 128 bits.
u64 signed_product_mod(i64 a, i64 b, u64 m) {
  i128 r = static_cast<i128>(a) * b % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<u64>(r);
}

/// The r in [0, q q2) with r = r0 (mod q) and r = r1 (mod q2); q, q2 coprime.
u64 crt_pair(u64 r0, u64 q, u64 r1, u64 q2) {
  const u64 mod = checked_product(q, q2);
  const u64 x0 = mulmod(r0, mod_inverse(static_cast<i64>(q2 % q), q), q);
  const u64 x1 = mulmod(r1, mod_inverse(static_cast<i64>(q % q2), q2), q2);
  const u128 r = static_cast<u128>(x0) * q2 + static_cast<u128>(x1) * q;
  return static_cast<u64>(r % mod);
}

void check_pair(u64 p, u64 p2, u64 q, u64 q2) {
  if (q < 2 || q2 < 2) throw Error("moduli must be at least 2");
  if (q == q2) throw Error("crt_residue requires q != q'");
  if (std::gcd(q, q2) != 1) throw Error("moduli must be coprime");
  if (std::gcd(p, q) != 1 || std::gcd(p2, q2) != 1) throw Error("p, p' must be coprime to q, q'");
}

std::vector<u64> moduli_for(const PhaseSpec& spec) {
  if (spec.Q < 2) throw Error("Q must be at least 2");
  const auto primes = primes_in(spec.Q, 2 * spec.Q);
  if (primes.size() < 2) throw Error("fewer than two primes in [Q, 2Q)");
  if (spec.p == spec.p2) throw Error("p and p' must differ");
  for (const u64 q : primes)
    if (q == spec.p || q == spec.p2) throw Error("p, p' must be coprime to every modulus");
  checked_product(primes.back(), primes[primes.size() - 2]);
  return primes;
}

template <class Phase>
Value pair_sum(const PhaseSpec& spec, const BilinearSumOptions& options, Phase&& phase) {
  if (spec.h == 0 && !options.allow_zero_h) throw Error("h must be nonzero");
  const auto primes = moduli_for(spec);
  const std::size_t n = primes.size();
  std::vector<Value> alpha(n), beta(n), rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    alpha[i] = spec.alpha(primes[i]);
    beta[i] = spec.beta(primes[i]);
    if (std::abs(alpha[i]) > 1.0 + 1e-12 || std::abs(beta[i]) > 1.0 + 1e-12)
      throw Error("|alpha|, |beta| must not exceed 1");
  }
  parallel_for(n, options.threads, [&](std::size_t i) {
    if (alpha[i] == Value{}) return;
    Value row{};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i || beta[j] == Value{}) continue;
      row += beta[j] * phase(primes[i], primes[j]);
    }
    rows[i] = alpha[i] * row;
  });
  Value total{};
  for (const auto& r : rows) total += r;
  return total;
}

}  // namespace

u64 mod_inverse(i64 x, u64 m) {
  if (m < 2) throw Error("modulus must be at least 2");
  i128 old_r = static_cast<i128>(reduce_mod(x, m)), r = static_cast<i128>(m);
  i128 old_s = 1, s = 0;
  while (r != 0) {
    const i128 quotient = old_r / r;
    i128 t = old_r - quotient * r;
    old_r = r;
    r = t;
    t = old_s - quotient * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw Error(std::to_string(x) + " is not invertible mod " + std::to_string(m));
  i128 inv = old_s % static_cast<i128>(m);
  if (inv < 0) inv += m;
  return static_cast<u64>(inv);
}

u64 crt_residue(u64 p, u64 p2, i64 a, u64 q, u64 q2) {
  check_pair(p, p2, q, q2);
  const u64 r0 = mulmod(reduce_mod(a, q), mod_inverse(static_cast<i64>(p % q), q), q);
  const u64 r1 = mulmod(reduce_mod(a, q2), mod_inverse(static_cast<i64>(p2 % q2), q2), q2);
  return crt_pair(r0, q, r1, q2);
}

Rational reciprocity_value(u64 u, u64 v) {
  if (u < 2 || v < 2) throw Error("reciprocity requires u, v >= 2");
  if (std::gcd(u, v) != 1) throw Error("reciprocity requires coprime u, v");
  const auto su = static_cast<i64>(u), sv = static_cast<i64>(v);
  const auto vinv = static_cast<i64>(mod_inverse(sv, u));
  const auto uinv = static_cast<i64>(mod_inverse(su, v));
  return Rational(vinv, su) + Rational(uinv, sv) - Rational(1, static_cast<i64>(checked_product(u, v)));
}

i64 reciprocity_check(u64 u, u64 v) {
  const Rational r = reciprocity_value(u, v);
  if (!r.is_integer()) throw std::logic_error("reciprocity value " + r.str() + " is not an integer");
  return r.num();
}

PrimeWeights constant_weights(Value c) {
  return [c](u64) { return c; };
}

PrimeWeights random_unimodular_weights(u64 seed) {
  return [seed](u64 q) { return std::polar(1.0, kTwoPi * unit_interval(hash_pair(seed, q))); };
}

PhaseCheck phase_identity_check(const PhaseSpec& spec, u64 q, u64 q2) {
  check_pair(spec.p, spec.p2, q, q2);
  const u64 p = spec.p, p2 = spec.p2;
  if (p == p2 || std::gcd(p, q2) != 1 || std::gcd(p2, q) != 1)
    throw Error("phase identity requires p q' coprime to p' q");
  const u64 qq = checked_product(q, q2);
  const auto sq = static_cast<i64>(q), sq2 = static_cast<i64>(q2), sp = static_cast<i64>(p),
             sp2 = static_cast<i64>(p2);
  const i64 ah = spec.a * spec.h;

  PhaseCheck c;
  const u64 r = crt_residue(p, p2, spec.a, q, q2);
  const u64 lhs_num = mulmod(reduce_mod(-spec.h, qq), r, qq);
  c.lhs_arg = Rational(static_cast<i64>(lhs_num), static_cast<i64>(qq));

  const u64 A = mulmod(reduce_mod(ah, q), mod_inverse(static_cast<i64>(mulmod(p, q2, q)), q), q);
  const u64 B = mulmod(reduce_mod(ah, q2), mod_inverse(static_cast<i64>(mulmod(p2, q, q2)), q2), q2);
  c.split_arg = (-(Rational(static_cast<i64>(A), sq) + Rational(static_cast<i64>(B), sq2))).frac();
  c.lifted_arg = (-(Rational(sp2 * static_cast<i64>(A), sp2 * sq) + Rational(sp * static_cast<i64>(B), sp * sq2)))
                     .frac();
  c.factorization_exact = c.lhs_arg == c.split_arg && c.lhs_arg == c.lifted_arg;

  const u64 n = checked_product(p2, q);
  const u64 inv = mod_inverse(static_cast<i64>(mulmod(p, q2, n)), n);
  const u64 rec_num = mulmod(signed_product_mod(ah, sp - sp2, n), inv, n);
  c.reciprocal_arg = Rational(static_cast<i64>(rec_num), static_cast<i64>(n));
  c.correction = (c.lhs_arg - c.reciprocal_arg).frac();
  c.correction_exact = c.correction == Rational(-ah, static_cast<i64>(checked_product(p2, qq))).frac();

  c.lhs = unit_phase(lhs_num, qq);
  c.rhs = unit_phase(rec_num, n);
  c.bound_constant = kTwoPi;
  const double Qmin = static_cast<double>(spec.Q != 0 ? std::min({spec.Q, q, q2}) : std::min(q, q2));
  if (ah == 0) {
    c.scaled_error = 0;
    c.error_bound_ok = c.lhs == c.rhs;
  } else {
    c.scaled_error = std::abs(c.lhs - c.rhs) * Qmin * Qmin / std::abs(static_cast<double>(ah));
    c.error_bound_ok = c.scaled_error <= c.bound_constant;
  }
  return c;
}

Value bilinear_sum(const PhaseSpec& spec, const BilinearSumOptions& options) {
  return pair_sum(spec, options, [&](u64 q, u64 q2) {
    const u64 qq = q * q2;
    const u64 r = crt_residue(spec.p, spec.p2, spec.a, q, q2);
    return unit_phase(mulmod(reduce_mod(-spec.h, qq), r, qq), qq);
  });
}

Value bilinear_sum_reciprocal(const PhaseSpec& spec, const BilinearSumOptions& options) {
  const i64 ah = spec.a * spec.h;
  const i64 diff = static_cast<i64>(spec.p) - static_cast<i64>(spec.p2);
  return pair_sum(spec, options, [&](u64 q, u64 q2) {
    const u64 n = checked_product(spec.p2, q);
    const u64 inv = mod_inverse(static_cast<i64>(mulmod(spec.p, q2, n)), n);
    return unit_phase(mulmod(signed_product_mod(ah, diff, n), inv, n), n);
  });
}

KloostermanScan cancellation_scan(const std::vector<u64>& Q_grid, const PhaseSpec& spec,
                                  const CancellationOptions& options) {
  if (Q_grid.size() < 4) throw Error("cancellation scan needs at least 4 grid values of Q");
  KloostermanScan scan;
  for (const u64 Q : Q_grid) {
    PhaseSpec s = spec;
    s.Q = Q;
    const auto n = static_cast<u64>(primes_in(Q, 2 * Q).size());
    if (n < options.min_primes)
      throw Error("Q = " + std::to_string(Q) + " has " + std::to_string(n) + " primes in [Q, 2Q); need " +
                  std::to_string(options.min_primes));
    KloostermanRow row;
    row.Q = Q;
    row.n_primes = n;
    row.abs_sum = std::abs(bilinear_sum(s, {options.threads, false}));
    row.trivial_bound = static_cast<double>(n) * static_cast<double>(n);
    row.ratio = row.abs_sum / row.trivial_bound;
    if (!(row.abs_sum > 0)) throw Error("|Sigma| vanished at Q = " + std::to_string(Q) + "; slope undefined");
    scan.rows.push_back(row);
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const auto k = static_cast<double>(scan.rows.size());
  for (const auto& row : scan.rows) {
    const double x = std::log(static_cast<double>(row.Q)), y = std::log(row.abs_sum);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  scan.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  scan.intercept = (sy - scan.slope * sx) / k;
  return scan;
}

std::vector<ResidueAssignment> adversarial_residues(u64 Q, u64 p, u64 p2, HalfSplit split) {
  const auto primes = primes_in(Q, 2 * Q);
  std::vector<ResidueAssignment> out;
  const std::size_t half = primes.size() / 2;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    const bool in_S = split == HalfSplit::first_second ? i < half : i % 2 == 0;
    out.push_back({primes[i], static_cast<i64>(in_S ? p : p2)});
  }
  return out;
}

std::vector<ResidueAssignment> fixed_residues(u64 Q, i64 a) {
  std::vector<ResidueAssignment> out;
  for (const u64 q : primes_in(Q, 2 * Q)) out.push_back({q, a});
  return out;
}

AdversarialResult residue_pair_sum(const std::vector<ResidueAssignment>& assignment, u64 Q, u64 p, u64 p2, u64 X) {
  if (assignment.size() < 2) throw Error("need at least two primes in [Q, 2Q)");
  if (p == p2) throw Error("p and p' must differ");
  AdversarialResult res;
  res.assignment = assignment;
  BigRational reciprocal_sum = 0;
  for (const auto& [q, aq] : assignment) {
    if (std::gcd(p, q) != 1 || std::gcd(p2, q) != 1) throw Error("p, p' must be coprime to every modulus");
    reciprocal_sum += BigRational(1, q);
  }
  for (const auto& [q, aq] : assignment) {
    const u64 r0 = mulmod(reduce_mod(aq, q), mod_inverse(static_cast<i64>(p % q), q), q);
    for (const auto& [q2, aq2] : assignment) {
      if (q == q2) {
        const u64 r1 = mulmod(reduce_mod(aq2, q), mod_inverse(static_cast<i64>(p2 % q), q), q);
        if (r0 == r1) res.count_sum += progression_length(X, q, static_cast<i64>(r0));
        continue;
      }
      const u64 r1 = mulmod(reduce_mod(aq2, q2), mod_inverse(static_cast<i64>(p2 % q2), q2), q2);
      const u64 r = crt_pair(r0, q, r1, q2);
      res.count_sum += progression_length(X, q * q2, static_cast<i64>(r));
    }
  }
  const BigRational main = BigRational(X) * reciprocal_sum * reciprocal_sum;
  res.main_term = main.convert_to<double>();
  res.sum = (BigRational(res.count_sum) - main).convert_to<double>();
  res.ratio = res.sum / (static_cast<double>(Q) * static_cast<double>(Q));
  return res;
}

AdversarialResult adversarial_assignment(u64 Q, u64 p, u64 p2, u64 X, HalfSplit split) {
  return residue_pair_sum(adversarial_residues(Q, p, p2, split), Q, p, p2, X);
}

}  // namespace progdist

#include "progdist/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace progdist {
namespace {

void check_range(u64 Y, u64 Z) {
  if (Y <= 1 || Y >= Z) throw Error("prime range requires 1 < Y < Z");
}

bool is_prime_trial(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<bool> rough_mask(u64 X, u64 Y, u64 Z) {
  std::vector<bool> rough(static_cast<std::size_t>(X + 1), true);
  for (const u64 p : primes_in(Y, Z))
    for (u64 m = p; m <= X; m += p) rough[static_cast<std::size_t>(m)] = false;
  return rough;
}

}  // namespace

ProgressionF::ProgressionF(u64 Q, i64 a, const std::map<u64, Value>& xi) : Q_(Q), a_(a) {
  if (Q < 1) throw Error("Q must be positive");
  for (const auto& [q, v] : xi) {
    if (q < Q || q >= 2 * Q) throw Error("xi key " + std::to_string(q) + " outside [Q, 2Q)");
    if (!is_prime_trial(q)) throw Error("xi key " + std::to_string(q) + " is not prime");
    if (std::abs(v) > 1.0 + 1e-12) throw Error("|xi_" + std::to_string(q) + "| exceeds 1");
    if (v != Value{}) xi_.emplace_back(q, v);
  }
}

Value ProgressionF::operator()(u64 n) const {
  if (a_ > 0 && n == static_cast<u64>(a_)) return {};
  Value s{};
  for (const auto& [q, v] : xi_) {
    const double indicator = n % q == reduce_mod(a_, q) ? 1.0 : 0.0;
    s += v * (indicator - 1.0 / static_cast<double>(q));
  }
  return s;
}

ValueTable ProgressionF::table(u64 X) const {
  Value mean_part{};
  for (const auto& [q, v] : xi_) mean_part += v / static_cast<double>(q);
  ValueTable t;
  t.X = X;
  t.values.assign(static_cast<std::size_t>(X), -mean_part);
  for (const auto& [q, v] : xi_)
    for (u64 n = least_positive_residue(a_, q); n <= X; n += q) t.values[static_cast<std::size_t>(n - 1)] += v;
  if (a_ > 0 && static_cast<u64>(a_) <= X) t.values[static_cast<std::size_t>(a_ - 1)] = {};
  return t;
}

ProgressionF make_progression_F(u64 Q, i64 a, const std::map<u64, Value>& xi) { return {Q, a, xi}; }

std::map<u64, Value> align_xi(const MultiplicativeSpec& f, u64 X, u64 Q, i64 a, const std::vector<u64>& S,
                              const ScanOptions& options) {
  std::vector<u64> moduli(S);
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
  for (const u64 q : moduli)
    if (q < Q || q >= 2 * Q || !is_prime_trial(q))
      throw Error("S must consist of primes in [Q, 2Q); got " + std::to_string(q));
  Value global{};
  const auto records = progression_discrepancies(f, X, a, moduli, global, options);
  std::map<u64, Value> xi;
  for (const auto& r : records) {
    const double mag = std::abs(r.D);
    xi[r.q] = mag == 0 ? Value(1.0) : std::conj(r.D) / mag;
  }
  return xi;
}

double e_triv(double F_inf, u64 Y) {
  if (F_inf < 0) throw Error("sup norm must be non-negative");
  if (Y < 2) throw Error("Y must be at least 2");
  return F_inf / std::sqrt(static_cast<double>(Y));
}

double e_sieve(const ValueTable& F, u64 Y, u64 Z) {
  check_range(Y, Z);
  if (F.X == 0 || F.values.size() != F.X) throw Error("F table does not cover [1, X]");
  const auto rough = rough_mask(F.X, Y, Z);
  double sum = 0;
  for (u64 n = 1; n <= F.X; ++n)
    if (rough[static_cast<std::size_t>(n)]) sum += std::abs(F.values[static_cast<std::size_t>(n - 1)]);
  return sum / static_cast<double>(F.X);
}

double e_sieve(const ProgressionF& F, u64 X, u64 Y, u64 Z) { return e_sieve(F.table(X), Y, Z); }

std::vector<std::vector<Interval>> policy_intervals(u64 X, u64 Y, u64 Z, u64 p2, const IntervalPolicy& policy) {
  check_range(Y, Z);
  if (policy.subdivisions == 0) throw Error("interval policy needs at least one subdivision");
  const u64 cap = X / p2;
  const u128 threshold_scale = static_cast<u128>(10) * Y * Z;
  std::vector<std::vector<Interval>> ranges;
  for (int i = 0;; ++i) {
    const auto top = static_cast<u64>(std::floor(static_cast<double>(X) * std::exp(-static_cast<double>(i))));
    if (static_cast<u128>(top) * threshold_scale <= X) break;
    const auto bottom = static_cast<u64>(std::floor(static_cast<double>(X) * std::exp(-static_cast<double>(i + 1))));
    const u64 hi = std::min(top, cap);
    if (hi <= bottom) continue;
    const u64 len = hi - bottom;
    std::vector<Interval> group;
    for (unsigned j = 1; j <= policy.subdivisions; ++j) {
      const u64 last = bottom + static_cast<u64>((static_cast<u128>(j) * len + policy.subdivisions - 1) /
                                                 policy.subdivisions);
      if (static_cast<u128>(last) * threshold_scale <= X) continue;
      if (!group.empty() && group.back().last == last) continue;
      group.push_back({bottom + 1, last});
    }
    if (!group.empty()) ranges.push_back(std::move(group));
  }
  return ranges;
}

BilinearWitness bilinear_sup(const ValueTable& F, u64 Y, u64 Z, const IntervalPolicy& policy, unsigned threads) {
  check_range(Y, Z);
  const auto primes = primes_in(Y, Z);
  std::vector<std::pair<u64, u64>> pairs;
  for (std::size_t i = 0; i < primes.size(); ++i)
    for (std::size_t j = i + 1; j < primes.size(); ++j) pairs.emplace_back(primes[i], primes[j]);
  if (pairs.empty()) throw Error("no prime pair in [Y, Z)");

  std::vector<BilinearWitness> best(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t k) {
    const auto [p, p2] = pairs[k];
    BilinearWitness w{0, p, p2, {}};
    bool have = false;
    for (const auto& group : policy_intervals(F.X, Y, Z, p2, policy)) {
      Value sum{};
      u64 m = group.front().first;
      for (const auto& iv : group) {
        for (; m <= iv.last; ++m) {
          if (m % p == 0 || m % p2 == 0) continue;
          sum += F.at(p * m) * std::conj(F.at(p2 * m));
        }
        const double v = std::abs(sum) / static_cast<double>(iv.last);
        if (!have || v > w.value) {
          w.value = v;
          w.interval = iv;
          have = true;
        }
      }
    }
    best[k] = w;
  });

  BilinearWitness out = best.front();
  for (const auto& w : best)
    if (w.value > out.value) out = w;
  return out;
}

double e_bilinear(const ValueTable& F, u64 Y, u64 Z, const IntervalPolicy& policy, unsigned threads) {
  return std::sqrt(bilinear_sup(F, Y, Z, policy, threads).value);
}

BilinearDecomposition decompose(const MultiplicativeSpec& f, const ValueTable& F, u64 Y, u64 Z,
                                const DecomposeOptions& options) {
  check_range(Y, Z);
  const u64 X = F.X;
  if (X < 2 || F.values.size() != X) throw Error("F table does not cover [1, X]");
  BilinearDecomposition d;
  if (!(std::log(static_cast<double>(Z)) < std::log(static_cast<double>(X)) / 16.0)) {
    std::ostringstream msg;
    msg << "Z = " << Z << " violates Z < X^(1/16) for X = " << X;
    if (options.strict) throw Error(msg.str());
    d.warnings.push_back(msg.str());
  }

  Value sum{};
  for_each_segment(1, X + 1, {}, [&](const SpfTable& t) {
    for (u64 n = t.lo(); n < t.hi(); ++n) sum += f.at(n, t) * F.at(n);
  });
  d.lhs = sum / static_cast<double>(X);

  for (const auto& v : F.values) d.F_inf = std::max(d.F_inf, std::abs(v));
  d.e_triv = e_triv(d.F_inf, Y);
  d.e_sieve = e_sieve(F, Y, Z);
  d.bilinear = bilinear_sup(F, Y, Z, options.policy, options.threads);
  d.e_bilinear = std::sqrt(d.bilinear.value);
  const double denom = d.e_triv + d.e_sieve + d.e_bilinear;
  if (denom > 0) d.fitted_C = std::abs(d.lhs) / denom;
  return d;
}

double rough_density(u64 Y, u64 Z) {
  check_range(Y, Z);
  double prod = 1;
  for (const u64 p : primes_in(Y, Z)) prod *= 1.0 - 1.0 / static_cast<double>(p);
  return prod;
}

SieveCount sieve_count(u64 X, u64 q, i64 a, u64 Y, u64 Z, bool strict) {
  check_range(Y, Z);
  if (X < 1 || q < 1) throw Error("sieve_count requires X >= 1 and q >= 1");
  SieveCount out;
  const double logX = std::log(static_cast<double>(X));
  std::ostringstream msg;
  if (!(std::log(static_cast<double>(q)) < 0.75 * logX)) msg << "q = " << q << " violates q < X^(3/4); ";
  if (!(std::log(static_cast<double>(Z)) < logX / 10.0)) msg << "Z = " << Z << " violates Z < X^(1/10); ";
  if (!msg.str().empty()) {
    if (strict) throw Error(msg.str());
    out.warnings.push_back(msg.str());
  }
  const auto primes = primes_in(Y, Z);
  for (u64 n = least_positive_residue(a, q); n <= X; n += q) {
    bool rough = true;
    for (const u64 p : primes)
      if (n % p == 0) {
        rough = false;
        break;
      }
    if (rough) ++out.count;
  }
  const double main = std::log(static_cast<double>(Y)) / std::log(static_cast<double>(Z)) *
                      static_cast<double>(X) / static_cast<double>(q);
  out.ratio = static_cast<double>(out.count) / main;
  return out;
}

}  // namespace progdist

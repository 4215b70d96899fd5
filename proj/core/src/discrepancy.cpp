#include "progdist/discrepancy.hpp"

#include <cmath>
#include <sstream>

namespace progdist {

double DiscrepancyParams::eta() const {
  return std::log(static_cast<double>(Q)) / std::log(static_cast<double>(X)) - 0.5;
}

std::vector<std::string> check_regime(const DiscrepancyParams& p) {
  if (p.X < 2) throw Error("X must be at least 2");
  if (p.Q < 1) throw Error("Q must be positive");
  if (!(p.eps > 0)) throw Error("eps must be positive");
  if (!(p.sigma > 0 && p.sigma < 0.5)) throw Error("sigma must lie in (0, 1/2)");
  const u64 abs_a = p.a < 0 ? static_cast<u64>(-p.a) : static_cast<u64>(p.a);
  if (abs_a == 0 || abs_a >= 10 * p.Q) throw Error("residue must satisfy 0 < |a| < 10Q");

  std::vector<std::string> warnings;
  const double logX = std::log(static_cast<double>(p.X));
  const double logQ = std::log(static_cast<double>(p.Q));
  const double upper = 0.5 + 1.0 / 78.0 - p.sigma;
  if (!(logQ > logX / 3.0 && logQ < upper * logX)) {
    std::ostringstream msg;
    msg << "Q = " << p.Q << " outside regime X^(1/3) < Q < X^(" << upper << ") for X = " << p.X;
    if (p.strict) throw Error(msg.str());
    warnings.push_back(msg.str());
  }
  return warnings;
}

u64 DiscrepancyReport::exceptional_at(double eps) const {
  u64 count = 0;
  for (const auto& r : records)
    if (std::abs(r.D) > eps) ++count;
  return count;
}

std::vector<DiscrepancyRecord> progression_discrepancies(const MultiplicativeSpec& f, u64 X, i64 a,
                                                         const std::vector<u64>& moduli, Value& global_mean,
                                                         const ScanOptions& options) {
  if (X < 1) throw Error("X must be at least 1");
  if (X + 1 > kMaxSieveBound) throw Error("X exceeds sieve bound");
  const std::size_t k = moduli.size();
  std::vector<u64> next(k);
  std::vector<Value> sums(k);
  std::vector<DiscrepancyRecord> records(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto& rec = records[i];
    rec.q = moduli[i];
    rec.a_reduced = least_positive_residue(a, rec.q);
    rec.terms = progression_length(X, rec.q, a);
    if (rec.terms == 0) throw Error("empty progression for q = " + std::to_string(rec.q));
    next[i] = rec.a_reduced;
  }

  Value total{};
  std::vector<Value> values;
  for_each_segment(1, X + 1, options.sieve, [&](const SpfTable& t) {
    values.resize(static_cast<std::size_t>(t.size()));
    constexpr std::size_t chunk = 4096;
    const std::size_t chunks = (values.size() + chunk - 1) / chunk;
    parallel_for(chunks, options.threads, [&](std::size_t c) {
      const std::size_t end = std::min(values.size(), (c + 1) * chunk);
      for (std::size_t j = c * chunk; j < end; ++j) values[j] = f.at(t.lo() + j, t);
    });
    for (const auto& v : values) total += v;
    parallel_for(k, options.threads, [&](std::size_t i) {
      const u64 q = moduli[i];
      u64 n = next[i];
      Value s = sums[i];
      for (; n < t.hi(); n += q) s += values[static_cast<std::size_t>(n - t.lo())];
      sums[i] = s;
      next[i] = n;
    });
  });

  global_mean = total / static_cast<double>(X);
  for (std::size_t i = 0; i < k; ++i)
    records[i].D = sums[i] / static_cast<double>(records[i].terms) - global_mean;
  return records;
}

DiscrepancyReport scan(const MultiplicativeSpec& f, const DiscrepancyParams& params, const ScanOptions& options) {
  DiscrepancyReport report;
  report.params = params;
  report.warnings = check_regime(params);
  const auto moduli = primes_in(params.Q, 2 * params.Q);
  if (moduli.empty()) throw Error("no primes in [Q, 2Q)");
  report.records = progression_discrepancies(f, params.X, params.a, moduli, report.global_mean, options);
  report.exceptional_count = report.exceptional_at(params.eps);
  return report;
}

double exceptional_bound(const DiscrepancyParams& params, double c_fit) {
  if (!(c_fit > 0)) throw Error("c_fit must be positive");
  if (!(params.eps > 0)) throw Error("eps must be positive");
  return static_cast<double>(params.Q) / params.eps *
         std::pow(static_cast<double>(params.X), -c_fit * params.sigma * params.eps);
}

CounterexampleReport composite_counterexample(u64 X, const MultiplicativeSpec& f, const SieveOptions& options) {
  if (X < 1000) throw Error("counterexample requires X >= 1000");
  CounterexampleReport r;
  r.X = X;
  r.function = f.name();
  Value total{}, odd{}, even{};
  for_each_segment(1, X + 1, options, [&](const SpfTable& t) {
    for (u64 n = t.lo(); n < t.hi(); ++n) {
      const Value v = f.at(n, t);
      total += v;
      (n % 2 == 1 ? odd : even) += v;
    }
  });
  r.global_mean = total / static_cast<double>(X);
  r.mean_odd = odd / static_cast<double>(progression_length(X, 2, 1));
  r.mean_even = even / static_cast<double>(progression_length(X, 2, 2));
  r.D_odd = r.mean_odd - r.global_mean;
  r.D_even = r.mean_even - r.global_mean;
  return r;
}

CounterexampleReport composite_counterexample(u64 X) {
  return composite_counterexample(X, builtin(Builtin::parity_squarefree));
}

}  // namespace progdist

#include "progdist/multfn.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace progdist {
namespace {

constexpr std::array<std::pair<Builtin, std::string_view>, 6> kBuiltinNames{{
    {Builtin::mobius, "mobius"},
    {Builtin::liouville, "liouville"},
    {Builtin::one, "one"},
    {Builtin::parity_squarefree, "parity_squarefree"},
    {Builtin::parity_oddpart_squarefree, "parity_oddpart_squarefree"},
    {Builtin::random_pm1, "random_pm1"},
}};

void check_table_covers(const SpfTable& table, u64 X) {
  if (X < 1) throw Error("X must be at least 1");
  if (table.lo() > 1 || table.hi() <= X)
    throw Error("sieve table does not cover [1, " + std::to_string(X) + "]");
}

}  // namespace

std::string_view to_string(Builtin b) {
  for (const auto& [k, name] : kBuiltinNames)
    if (k == b) return name;
  return "unknown";
}

Builtin parse_builtin(std::string_view name) {
  for (const auto& [k, n] : kBuiltinNames)
    if (n == name) return k;
  throw Error("unknown multiplicative function '" + std::string(name) + "'");
}

MultiplicativeSpec::MultiplicativeSpec(std::string name, Rule rule, std::optional<u64> seed)
    : name_(std::move(name)), rule_(std::move(rule)), seed_(seed) {}

Value MultiplicativeSpec::prime_power(u64 p, unsigned e) const {
  const Value v = rule_(p, e);
  if (std::abs(v) > 1.0 + 1e-12)
    throw Error(name_ + ": |f(" + std::to_string(p) + "^" + std::to_string(e) + ")| exceeds 1");
  return v;
}

Value MultiplicativeSpec::operator()(const Factorization& factors) const {
  Value acc{1.0, 0.0};
  for (const auto& [p, e] : factors) {
    acc *= prime_power(p, e);
    if (acc == Value{}) break;
  }
  return acc;
}

MultiplicativeSpec builtin(Builtin which, u64 seed) {
  switch (which) {
    case Builtin::mobius:
      return {"mobius", [](u64, unsigned e) { return Value(e == 1 ? -1.0 : 0.0); }};
    case Builtin::liouville:
      return {"liouville", [](u64, unsigned e) { return Value(e % 2 == 1 ? -1.0 : 1.0); }};
    case Builtin::one:
      return {"one", [](u64, unsigned) { return Value(1.0); }};
    case Builtin::parity_squarefree:
      return {"parity_squarefree", [](u64 p, unsigned e) {
                if (e >= 2) return Value(0.0);
                return Value(p == 2 ? -1.0 : 1.0);
              }};
    case Builtin::parity_oddpart_squarefree:
      return {"parity_oddpart_squarefree", [](u64 p, unsigned e) {
                if (p == 2) return Value(-1.0);
                return Value(e == 1 ? 1.0 : 0.0);
              }};
    case Builtin::random_pm1:
      return {"random_pm1",
              [seed](u64 p, unsigned e) {
                if (e >= 2) return Value(0.0);
                return Value((hash_pair(seed, p) & 1) ? 1.0 : -1.0);
              },
              seed};
  }
  throw Error("unknown builtin");
}

MultiplicativeSpec builtin(std::string_view name, u64 seed) { return builtin(parse_builtin(name), seed); }

std::vector<Value> eval_segment(const MultiplicativeSpec& f, const SpfTable& table) {
  std::vector<Value> out;
  out.reserve(static_cast<std::size_t>(table.size()));
  for (u64 n = table.lo(); n < table.hi(); ++n) out.push_back(f.at(n, table));
  return out;
}

ValueTable eval_range(const MultiplicativeSpec& f, u64 X, const SpfTable& table) {
  check_table_covers(table, X);
  ValueTable vt;
  vt.X = X;
  vt.values.reserve(static_cast<std::size_t>(X));
  for (u64 n = 1; n <= X; ++n) vt.values.push_back(f.at(n, table));
  return vt;
}

u64 least_positive_residue(i64 a, u64 q) {
  if (q == 0) throw Error("modulus must be positive");
  const u64 r = reduce_mod(a, q);
  return r == 0 ? q : r;
}

u64 progression_length(u64 X, u64 q, i64 a) {
  const u64 start = least_positive_residue(a, q);
  return start > X ? 0 : (X - start) / q + 1;
}

Value mean(const ValueTable& values) {
  if (values.X == 0) throw Error("empty value table");
  Value sum{};
  for (const auto& v : values.values) sum += v;
  return sum / static_cast<double>(values.X);
}

Value mean(const MultiplicativeSpec& f, u64 X, const SieveOptions& options) {
  if (X < 1) throw Error("X must be at least 1");
  Value sum{};
  for_each_segment(1, X + 1, options, [&](const SpfTable& t) {
    for (u64 n = t.lo(); n < t.hi(); ++n) sum += f.at(n, t);
  });
  return sum / static_cast<double>(X);
}

Value mean_progression(const ValueTable& values, u64 q, i64 a) {
  const u64 terms = progression_length(values.X, q, a);
  if (terms == 0) throw Error("empty progression");
  Value sum{};
  for (u64 n = least_positive_residue(a, q); n <= values.X; n += q) sum += values.at(n);
  return sum / static_cast<double>(terms);
}

Value mean_progression(const MultiplicativeSpec& f, u64 X, u64 q, i64 a, const SieveOptions& options) {
  const u64 terms = progression_length(X, q, a);
  if (terms == 0) throw Error("empty progression");
  Value sum{};
  u64 next = least_positive_residue(a, q);
  for_each_segment(1, X + 1, options, [&](const SpfTable& t) {
    for (; next < t.hi(); next += q) sum += f.at(next, t);
  });
  return sum / static_cast<double>(terms);
}

}  // namespace progdist

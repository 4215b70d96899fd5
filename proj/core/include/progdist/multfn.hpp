#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "progdist/sieve.hpp"

namespace progdist {

using Value = std::complex<double>;

enum class Builtin {
  mobius,
  liouville,
  one,
  parity_squarefree,          // (-1)^{n+1} mu^2(n)
  parity_oddpart_squarefree,  // (-1)^{n+1} mu^2(odd part of n)
  random_pm1,
};

std::string_view to_string(Builtin b);
Builtin parse_builtin(std::string_view name);

/// A multiplicative function given by its values on prime powers. Values
/// are checked against |f(p^e)| <= 1 whenever they are produced.
class MultiplicativeSpec {
 public:
  using Rule = std::function<Value(u64 prime, unsigned exponent)>;

  MultiplicativeSpec(std::string name, Rule rule, std::optional<u64> seed = std::nullopt);

  [[nodiscard]] const std::string& name() const { return name_; }
  [[nodiscard]] std::optional<u64> seed() const { return seed_; }

  [[nodiscard]] Value prime_power(u64 p, unsigned e) const;
  [[nodiscard]] Value operator()(const Factorization& factors) const;
  [[nodiscard]] Value at(u64 n, const SpfTable& table) const { return (*this)(factorize(n, table)); }

 private:
  std::string name_;
  Rule rule_;
  std::optional<u64> seed_;
};

MultiplicativeSpec builtin(Builtin which, u64 seed = 0);
MultiplicativeSpec builtin(std::string_view name, u64 seed = 0);

/// f(1), ..., f(X).
struct ValueTable {
  u64 X = 0;
  std::vector<Value> values;

  [[nodiscard]] Value at(u64 n) const { return values.at(static_cast<std::size_t>(n - 1)); }
};

ValueTable eval_range(const MultiplicativeSpec& f, u64 X, const SpfTable& table);

/// f over the table's whole window, in ascending order.
std::vector<Value> eval_segment(const MultiplicativeSpec& f, const SpfTable& table);

/// Least representative of a mod q in [1, q].
u64 least_positive_residue(i64 a, u64 q);

/// #{1 <= n <= X : n = a (mod q)}.
u64 progression_length(u64 X, u64 q, i64 a);

Value mean(const ValueTable& values);
Value mean(const MultiplicativeSpec& f, u64 X, const SieveOptions& options = {});

Value mean_progression(const ValueTable& values, u64 q, i64 a);
Value mean_progression(const MultiplicativeSpec& f, u64 X, u64 q, i64 a, const SieveOptions& options = {});

}  // namespace progdist

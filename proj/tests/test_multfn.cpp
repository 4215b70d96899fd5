#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "progdist/multfn.hpp"

using namespace progdist;

namespace {

std::vector<double> real_values(const ValueTable& t) {
  std::vector<double> out;
  for (const auto& v : t.values) out.push_back(v.real());
  return out;
}

}  // namespace

TEST_CASE("builtin prime-power rules") {
  const SpfTable t = build_spf(1, 100);
  CHECK(builtin("mobius").at(1, t) == Value(1.0));
  CHECK(builtin("liouville").at(8, t) == Value(-1.0));
  CHECK(builtin("liouville").at(12, t) == Value(-1.0));
  const auto ps = builtin(Builtin::parity_squarefree);
  CHECK(ps.at(2, t) == Value(-1.0));
  CHECK(ps.at(4, t) == Value(0.0));
  CHECK(ps.at(15, t) == Value(1.0));
  CHECK_THROWS_AS(builtin("zeta"), Error);
  CHECK_THROWS_AS(parse_builtin(""), Error);
  for (auto b : {Builtin::mobius, Builtin::liouville, Builtin::one, Builtin::parity_squarefree,
                 Builtin::parity_oddpart_squarefree, Builtin::random_pm1})
    CHECK(parse_builtin(to_string(b)) == b);
}

TEST_CASE("rules outside the unit disc are rejected on evaluation") {
  MultiplicativeSpec big("big", [](u64, unsigned) { return Value(2.0); });
  CHECK_THROWS_AS((void)big.prime_power(3, 1), Error);
}

TEST_CASE("eval_range examples") {
  const SpfTable t = build_spf(1, 11);
  CHECK(real_values(eval_range(builtin("mobius"), 10, t)) ==
        std::vector<double>{1, -1, -1, 0, -1, 1, -1, 0, 0, 1});
  CHECK(real_values(eval_range(builtin("liouville"), 4, t)) == std::vector<double>{1, -1, -1, 1});
  for (auto v : eval_range(builtin("one"), 10, t).values) CHECK(v == Value(1.0));
  CHECK_THROWS_AS(eval_range(builtin("one"), 11, t), Error);
  CHECK_THROWS_AS(eval_range(builtin("one"), 5, build_spf(2, 11)), Error);
}

TEST_CASE("streamed segments reproduce the whole-window table") {
  const u64 X = 50000;
  const auto f = builtin(Builtin::random_pm1, 7);
  const ValueTable whole = eval_range(f, X, build_spf(1, X + 1));
  SieveOptions o;
  o.segment_length = 4097;
  std::vector<Value> streamed;
  for_each_segment(1, X + 1, o, [&](const SpfTable& seg) {
    auto part = eval_segment(f, seg);
    streamed.insert(streamed.end(), part.begin(), part.end());
  });
  CHECK(streamed == whole.values);
}

TEST_CASE("means") {
  const SpfTable t = build_spf(1, 200);
  CHECK(mean(eval_range(builtin("mobius"), 10, t)).real() == doctest::Approx(-0.1).epsilon(1e-15));
  CHECK(mean(builtin("one"), 7) == Value(1.0));
  CHECK(mean(builtin("liouville"), 2) == Value(0.0));
  CHECK(mean_progression(builtin("liouville"), 10, 3, 1) == Value(0.5));
  CHECK(mean_progression(builtin("mobius"), 10, 3, 1) == Value(0.25));
  CHECK(mean_progression(builtin("one"), 100, 7, 2) == Value(1.0));
  // negative residues reduce mod q
  CHECK(mean_progression(builtin("liouville"), 10, 3, -2) == Value(0.5));
  CHECK_THROWS_AS(mean_progression(builtin("one"), 5, 7, 6), Error);
  CHECK_THROWS_AS(mean(builtin("one"), 0), Error);

  const ValueTable mu = eval_range(builtin("mobius"), 150, t);
  CHECK(mean_progression(mu, 3, 1) == mean_progression(builtin("mobius"), 150, 3, 1));
}

TEST_CASE("progression bookkeeping") {
  CHECK(least_positive_residue(1, 5) == 1);
  CHECK(least_positive_residue(0, 5) == 5);
  CHECK(least_positive_residue(-1, 5) == 4);
  CHECK(least_positive_residue(10, 5) == 5);
  CHECK(progression_length(10, 3, 1) == 4);
  CHECK(progression_length(10, 11, 0) == 0);
  CHECK(progression_length(10, 5, 0) == 2);
  for (u64 q = 1; q < 30; ++q)
    for (i64 a = -40; a < 40; ++a) {
      u64 c = 0;
      for (u64 n = 1; n <= 100; ++n) c += oracle::residue(static_cast<i64>(n), q) == oracle::residue(a, q);
      CHECK(progression_length(100, q, a) == c);
    }
}

TEST_CASE("builtins against trial division to 1e6") {
  constexpr u64 X = 1000000;
  const SpfTable t = build_spf(1, X + 1);
  const ValueTable mu = eval_range(builtin("mobius"), X, t);
  const ValueTable lambda = eval_range(builtin("liouville"), X, t);
  const ValueTable ps = eval_range(builtin("parity_squarefree"), X, t);
  const ValueTable po = eval_range(builtin("parity_oddpart_squarefree"), X, t);
  u64 bad = 0, unbounded = 0;
  for (u64 n = 1; n <= X; ++n) {
    const int m = oracle::mobius(n);
    const int sign = n % 2 ? 1 : -1;
    u64 odd = n;
    while (odd % 2 == 0) odd /= 2;
    if (mu.at(n) != Value(m)) ++bad;
    if (lambda.at(n) != Value(oracle::liouville(n))) ++bad;
    // (-1)^{n+1} mu^2(n), exhaustively
    if (ps.at(n) != Value(sign * m * m)) ++bad;
    if (po.at(n) != Value(oracle::squarefree(odd) ? sign : 0)) ++bad;
    for (const auto* tab : {&mu, &lambda, &ps, &po})
      if (std::abs(tab->at(n)) > 1.0) ++unbounded;
  }
  CHECK(bad == 0);
  CHECK(unbounded == 0);
}

TEST_CASE("multiplicativity on random coprime pairs") {
  constexpr u64 X = 1000000;
  const SpfTable t = build_spf(1, X + 1);
  std::vector<MultiplicativeSpec> fs{builtin("mobius"), builtin("liouville"), builtin("parity_squarefree"),
                                     builtin("parity_oddpart_squarefree"), builtin("random_pm1", 3),
                                     builtin("one")};
  u64 state = 12345, tested = 0, bad = 0;
  while (tested < 10000) {
    state = splitmix64(state);
    const u64 m = 1 + state % 1000;
    state = splitmix64(state);
    const u64 n = 1 + state % (X / m);
    if (std::gcd(m, n) != 1) continue;
    ++tested;
    for (const auto& f : fs)
      if (f.at(m * n, t) != f.at(m, t) * f.at(n, t)) ++bad;
  }
  CHECK(bad == 0);
}

TEST_CASE("random_pm1 seeding") {
  const SpfTable t = build_spf(1, 20001);
  const auto a = eval_range(builtin("random_pm1", 11), 20000, t);
  const auto b = eval_range(builtin("random_pm1", 11), 20000, t);
  const auto c = eval_range(builtin("random_pm1", 12), 20000, t);
  CHECK(a.values == b.values);
  CHECK(a.values != c.values);
  CHECK(builtin("random_pm1", 11).seed() == 11u);
  // values on primes are +-1, on non-squarefree 0
  CHECK(std::abs(a.at(9973)) == 1.0);
  CHECK(a.at(49) == Value(0.0));
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "oracles.hpp"
#include "progdist/bilinear.hpp"

using namespace progdist;

namespace {

bool close(Value got, Value want, double rel = 1e-12) {
  return std::abs(got - want) <= rel * std::max(1.0, std::abs(want));
}

std::map<u64, Value> ones(u64 Q) {
  std::map<u64, Value> xi;
  for (u64 q : oracle::primes(Q, 2 * Q)) xi.emplace(q, 1.0);
  return xi;
}

Value naive_F(const std::map<u64, Value>& xi, i64 a, u64 n) {
  if (static_cast<i64>(n) == a) return 0.0;
  Value s{};
  for (const auto& [q, x] : xi) s += x * ((oracle::residue(static_cast<i64>(n), q) == oracle::residue(a, q) ? 1.0 : 0.0) - 1.0 / static_cast<double>(q));
  return s;
}

ValueTable constant_table(u64 X, Value c) { return {X, std::vector<Value>(X, c)}; }

bool rough(u64 n, u64 Y, u64 Z) {
  for (u64 p = Y; p < Z; ++p)
    if (oracle::is_prime(p) && n % p == 0) return false;
  return true;
}

}  // namespace

TEST_CASE("progression F examples") {
  const auto F = make_progression_F(10, 1, {{11, 1.0}});
  CHECK(F(12) == Value(1.0 - 1.0 / 11));
  CHECK(F(13) == Value(-1.0 / 11));
  CHECK(F(1) == Value(0.0));

  const auto zero = make_progression_F(10, 1, {});
  for (u64 n = 1; n < 200; ++n) CHECK(zero(n) == Value(0.0));

  const auto two = make_progression_F(10, 1, {{11, 1.0}, {13, 1.0}});
  CHECK(close(two(1 + 11 * 13), Value((1 - 1.0 / 11) + (1 - 1.0 / 13))));

  CHECK_THROWS_AS(make_progression_F(10, 1, {{12, 1.0}}), Error);
  CHECK_THROWS_AS(make_progression_F(10, 1, {{23, 1.0}}), Error);
  CHECK_THROWS_AS(make_progression_F(10, 1, {{7, 1.0}}), Error);
  CHECK_THROWS_AS(make_progression_F(10, 1, {{11, 1.5}}), Error);
}

TEST_CASE("F table agrees with the formula") {
  const u64 X = 30000;
  for (i64 a : {i64{1}, i64{-3}, i64{57}}) {
    std::map<u64, Value> xi;
    u64 s = 5;
    for (u64 q : oracle::primes(40, 80)) {
      s = splitmix64(s);
      xi.emplace(q, std::polar(1.0, 6.283185307179586 * unit_interval(s)));
    }
    const auto F = make_progression_F(40, a, xi);
    const ValueTable t = F.table(X);
    u64 bad = 0;
    for (u64 n = 1; n <= X; ++n) {
      const Value want = naive_F(xi, a, n);
      if (!close(t.at(n), want) || !close(F(n), want)) ++bad;
    }
    CHECK(bad == 0);
  }
}

TEST_CASE("F mean cancels over full periods") {
  for (u64 q : {11u, 13u, 97u}) {
    const i64 a = 5;
    const auto F = make_progression_F(q == 97 ? 60 : 10, a, {{q, 1.0}});
    // q F(n) is the integer q 1_{n = a} - 1; over whole periods past n = a these sum to 0
    i64 total = 0;
    bool integral = true;
    for (u64 n = a + 1; n <= a + 7 * q; ++n) {
      const double v = F(n).real() * static_cast<double>(q);
      const double r = std::round(v);
      if (std::abs(v - r) > 1e-12) integral = false;
      total += static_cast<i64>(r);
    }
    CHECK(integral);
    CHECK(total == 0);
  }
}

TEST_CASE("sup norm of F is at most 2 when Q > X^{1/3}") {
  const u64 X = 100000, Q = 50;
  for (i64 a : {i64{1}, i64{2}, i64{-1}}) {
    const ValueTable t = make_progression_F(Q, a, ones(Q)).table(X);
    double sup = 0;
    for (const auto& v : t.values) sup = std::max(sup, std::abs(v));
    CHECK(sup <= 2.0);
  }
}

TEST_CASE("align_xi") {
  const u64 X = 50000, Q = 100;
  const auto S = primes_in(Q, 2 * Q);
  for (const char* name : {"liouville", "mobius"}) {
    const auto f = builtin(name);
    const auto xi = align_xi(f, X, Q, 1, S);
    REQUIRE(xi.size() == S.size());
    for (const auto& [q, x] : xi) {
      const Value D = oracle::discrepancy([&](u64 n) { return Value(std::string(name) == "mobius" ? oracle::mobius(n) : oracle::liouville(n)); }, X, q, 1);
      CHECK(x == Value(D.real() < 0 ? -1.0 : 1.0));
    }
  }
  const auto f = builtin("random_pm1", 4);
  std::vector<u64> half(S.begin(), S.begin() + static_cast<long>(S.size() / 2));
  const auto xi = align_xi(f, X, Q, 3, half);
  CHECK(xi.size() == half.size());
  DiscrepancyParams p{X, Q, 3, 0.1, 0.01, false};
  const auto rep = scan(f, p);
  for (const auto& r : rep.records) {
    auto it = xi.find(r.q);
    if (it == xi.end()) continue;
    CHECK(std::abs(std::abs(it->second) - 1.0) < 1e-15);
    const Value prod = it->second * r.D;
    CHECK(std::abs(prod.imag()) < 1e-15);
    CHECK(prod.real() >= 0.0);
  }
  CHECK_THROWS_AS(align_xi(f, X, Q, 1, {4}), Error);
}

TEST_CASE("e_triv") {
  CHECK(e_triv(2.0, 16) == 0.5);
  CHECK(e_triv(0.0, 7) == 0.0);
  CHECK_THROWS_AS(e_triv(-1.0, 7), Error);
  CHECK_THROWS_AS(e_triv(1.0, 1), Error);
}

TEST_CASE("e_sieve") {
  const u64 X = 10000, Y = 3, Z = 30;
  CHECK(e_sieve(constant_table(X, 0.0), Y, Z) == 0.0);
  u64 count = 0;
  for (u64 n = 1; n <= X; ++n) count += rough(n, Y, Z);
  CHECK(e_sieve(constant_table(X, 1.0), Y, Z) == doctest::Approx(static_cast<double>(count) / X).epsilon(1e-15));
  CHECK(e_sieve(constant_table(X, 1.0), Y, Z) == doctest::Approx(rough_density(Y, Z)).epsilon(0.05));

  const std::map<u64, Value> xi{{13, 1.0}};
  const auto F = make_progression_F(10, 1, xi);
  double want = 0;
  for (u64 n = 1; n <= X; ++n)
    if (rough(n, Y, Z)) want += std::abs(naive_F(xi, 1, n));
  want /= X;
  CHECK(e_sieve(F.table(X), Y, Z) == doctest::Approx(want).epsilon(1e-12));
  CHECK(e_sieve(F, X, Y, Z) == doctest::Approx(want).epsilon(1e-12));
  CHECK_THROWS_AS(e_sieve(constant_table(X, 1.0), 5, 5), Error);
}

TEST_CASE("interval policy") {
  const u64 X = 100000, Y = 3, Z = 30;
  const auto groups = policy_intervals(X, Y, Z, 29, {8});
  REQUIRE_FALSE(groups.empty());
  for (const auto& g : groups) {
    for (const auto& iv : g) {
      CHECK(iv.first == g.front().first);
      CHECK(iv.last >= iv.first);
      CHECK(iv.last <= X / 29);
      CHECK(static_cast<double>(iv.last) > static_cast<double>(X) / (10.0 * Y * Z));
    }
  }
  // refinement: the s = 8 sample set contains the s = 4 set
  for (u64 p2 : {5u, 13u, 29u}) {
    std::set<std::pair<u64, u64>> coarse, fine;
    for (const auto& g : policy_intervals(X, Y, Z, p2, {4}))
      for (const auto& iv : g) coarse.insert({iv.first, iv.last});
    for (const auto& g : policy_intervals(X, Y, Z, p2, {8}))
      for (const auto& iv : g) fine.insert({iv.first, iv.last});
    CHECK(std::includes(fine.begin(), fine.end(), coarse.begin(), coarse.end()));
  }
  CHECK_THROWS_AS(policy_intervals(X, Y, Z, 29, {0}), Error);
}

TEST_CASE("e_bilinear against exhaustive evaluation") {
  const u64 X = 100000, Y = 3, Z = 30, Q = 60;
  std::map<u64, Value> xi;
  u64 s = 17;
  for (u64 q : oracle::primes(Q, 2 * Q)) {
    s = splitmix64(s);
    xi.emplace(q, std::polar(1.0, 6.283185307179586 * unit_interval(s)));
  }
  const ValueTable F = make_progression_F(Q, 1, xi).table(X);
  const IntervalPolicy policy{8};

  BilinearWitness want{-1, 0, 0, {}};
  const auto ps = oracle::primes(Y, Z);
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      const u64 p = ps[i], p2 = ps[j];
      for (const auto& g : policy_intervals(X, Y, Z, p2, policy))
        for (const auto& iv : g) {
          Value sum{};
          for (u64 m = iv.first; m <= iv.last; ++m)
            if (std::gcd(m, p * p2) == 1) sum += F.at(p * m) * std::conj(F.at(p2 * m));
          const double v = std::abs(sum) / static_cast<double>(iv.last);
          if (v > want.value) want = {v, p, p2, iv};
        }
    }
  const BilinearWitness got = bilinear_sup(F, Y, Z, policy);
  CHECK(got.value == doctest::Approx(want.value).epsilon(1e-12));
  CHECK(got.p == want.p);
  CHECK(got.p2 == want.p2);
  CHECK(got.interval == want.interval);
  CHECK(e_bilinear(F, Y, Z, policy) == doctest::Approx(std::sqrt(want.value)).epsilon(1e-12));
  CHECK(bilinear_sup(F, Y, Z, policy, 4).value == got.value);

  // refinement never lowers the value
  double prev = 0;
  for (unsigned sub : {1u, 2u, 4u, 8u, 16u}) {
    const double v = e_bilinear(F, Y, Z, {sub});
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("e_bilinear trivial inputs") {
  const u64 X = 20000;
  CHECK(e_bilinear(constant_table(X, 0.0), 3, 30) == 0.0);
  const double one = bilinear_sup(constant_table(X, 1.0), 3, 30).value;
  CHECK(one <= 1.0);
  CHECK(one > 0.5);
  CHECK_THROWS_AS(e_bilinear(constant_table(X, 1.0), 3, 5), Error);
}

TEST_CASE("decompose") {
  const u64 X = 100000, Y = 3, Z = 30, Q = 177;
  const auto f = builtin("mobius");
  const auto xi = align_xi(f, X, Q, 1, primes_in(Q, 2 * Q));
  const ValueTable F = make_progression_F(Q, 1, xi).table(X);
  const BilinearDecomposition d = decompose(f, F, Y, Z);
  Value lhs{};
  double sup = 0;
  for (u64 n = 1; n <= X; ++n) {
    lhs += static_cast<double>(oracle::mobius(n)) * F.at(n);
    sup = std::max(sup, std::abs(F.at(n)));
  }
  lhs /= static_cast<double>(X);
  CHECK(close(d.lhs, lhs));
  CHECK(d.F_inf == sup);
  CHECK(d.e_triv == doctest::Approx(sup / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(d.e_sieve == doctest::Approx(e_sieve(F, Y, Z)).epsilon(1e-15));
  CHECK(d.e_bilinear == doctest::Approx(e_bilinear(F, Y, Z)).epsilon(1e-15));
  REQUIRE(d.fitted_C.has_value());
  CHECK(*d.fitted_C == doctest::Approx(std::abs(d.lhs) / (d.e_triv + d.e_sieve + d.e_bilinear)));
  CHECK_FALSE(d.warnings.empty());  // Z >= X^{1/16}
  DecomposeOptions strict;
  strict.strict = true;
  CHECK_THROWS_AS(decompose(f, F, Y, Z, strict), Error);

  const BilinearDecomposition zero = decompose(f, constant_table(X, 0.0), Y, Z);
  CHECK(zero.lhs == Value(0.0));
  CHECK(zero.e_triv == 0.0);
  CHECK(zero.e_sieve == 0.0);
  CHECK(zero.e_bilinear == 0.0);
  CHECK_FALSE(zero.fitted_C.has_value());

  // f = one with xi = 1: lhs is the mean of F
  const ValueTable G = make_progression_F(Q, 1, ones(Q)).table(X);
  Value mean_G{};
  for (const auto& v : G.values) mean_G += v;
  mean_G /= static_cast<double>(X);
  const BilinearDecomposition g = decompose(builtin("one"), G, Y, Z);
  CHECK(close(g.lhs, mean_G));
  CHECK(std::abs(g.lhs) <= g.e_triv + g.e_sieve + g.e_bilinear);
}

TEST_CASE("sieve_count") {
  const auto c = sieve_count(100000, 101, 1, 3, 30);
  u64 want = 0;
  for (u64 n = 1; n <= 100000; ++n)
    if (n % 101 == 1 && rough(n, 3, 30)) ++want;
  CHECK(c.count == want);
  CHECK(c.ratio == doctest::Approx(static_cast<double>(want) / ((std::log(3.0) / std::log(30.0)) * 100000.0 / 101)));
  // Z = X^{1/10} = 3.16 fails the Z < X^{1/10} condition: warning, then error in strict mode
  CHECK_FALSE(c.warnings.empty());
  CHECK_THROWS_AS(sieve_count(100000, 101, 1, 3, 30, true), Error);

  // no primes in [24, 29): every progression element counts
  CHECK(sieve_count(100000, 101, 7, 24, 29).count == progression_length(100000, 101, 7));
  CHECK(sieve_count(1000000, 97, 5, 2, 3, true).warnings.empty());
  CHECK_THROWS_AS(sieve_count(1000, 500, 1, 2, 3, true), Error);  // q >= X^{3/4}
}

TEST_CASE("rough_density") {
  CHECK(rough_density(3, 10) == doctest::Approx((2.0 / 3) * (4.0 / 5) * (6.0 / 7)).epsilon(1e-15));
  CHECK(rough_density(24, 29) == 1.0);
}

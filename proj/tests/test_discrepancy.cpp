#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "progdist/discrepancy.hpp"

using namespace progdist;

namespace {

template <class Fn>
void check_against_naive(const MultiplicativeSpec& f, Fn&& naive_f, const DiscrepancyParams& params) {
  const DiscrepancyReport rep = scan(f, params);
  const auto qs = oracle::primes(params.Q, 2 * params.Q);
  REQUIRE(rep.records.size() == qs.size());
  u64 exceptional = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto& r = rep.records[i];
    CHECK(r.q == qs[i]);
    const Value want = oracle::discrepancy(naive_f, params.X, qs[i], params.a);
    CHECK(r.D == want);
    u64 a1 = oracle::residue(params.a, qs[i]);
    if (a1 == 0) a1 = qs[i];
    CHECK(r.a_reduced == a1);
    CHECK(r.terms == (params.X - a1) / qs[i] + 1);
    CHECK(std::abs(r.D) <= 2.0);
    if (std::abs(want) > params.eps) ++exceptional;
  }
  CHECK(rep.exceptional_count == exceptional);
}

}  // namespace

TEST_CASE("scan with f = one has no discrepancy") {
  DiscrepancyParams p{100000, 350, 1, 0.1, 0.01, false};
  const DiscrepancyReport rep = scan(builtin("one"), p);
  CHECK(rep.exceptional_count == 0);
  CHECK(rep.global_mean == Value(1.0));
  for (const auto& r : rep.records) CHECK(r.D == Value(0.0));
}

TEST_CASE("scan agrees with a naive double loop") {
  check_against_naive(builtin("liouville"), [](u64 n) { return Value(oracle::liouville(n)); },
                      {100000, 350, 1, 0.1, 0.01, false});
  check_against_naive(builtin("parity_squarefree"),
                      [](u64 n) { return Value((n % 2 ? 1 : -1) * (oracle::squarefree(n) ? 1 : 0)); },
                      {100000, 350, 1, 0.2, 0.01, false});
  check_against_naive(builtin("mobius"), [](u64 n) { return Value(oracle::mobius(n)); },
                      {30000, 100, -7, 0.05, 0.01, false});
  // a = 0 mod q for one modulus in range
  check_against_naive(builtin("mobius"), [](u64 n) { return Value(oracle::mobius(n)); },
                      {30000, 100, 103, 0.05, 0.01, false});
}

TEST_CASE("scan is thread-count and segment-length independent") {
  DiscrepancyParams p{200000, 400, 3, 0.05, 0.01, false};
  const auto f = builtin("random_pm1", 99);
  const DiscrepancyReport base = scan(f, p);
  for (unsigned th : {2u, 3u, 8u}) {
    ScanOptions o;
    o.threads = th;
    o.sieve.threads = th;
    o.sieve.segment_length = 10007;
    const DiscrepancyReport other = scan(f, p, o);
    REQUIRE(other.records.size() == base.records.size());
    for (std::size_t i = 0; i < base.records.size(); ++i) CHECK(other.records[i].D == base.records[i].D);
    CHECK(other.global_mean == base.global_mean);
  }
}

TEST_CASE("exceptional count is non-increasing in eps") {
  DiscrepancyParams p{100000, 300, 1, 0.01, 0.01, false};
  const DiscrepancyReport rep = scan(builtin("liouville"), p);
  u64 prev = rep.records.size() + 1;
  for (double eps = 0.0; eps < 0.5; eps += 0.005) {
    const u64 c = rep.exceptional_at(eps);
    CHECK(c <= prev);
    prev = c;
  }
  CHECK(rep.exceptional_at(2.5) == 0);
}

TEST_CASE("parameter validation and regime warnings") {
  CHECK_THROWS_AS(check_regime({100000, 100, 0, 0.1, 0.01, false}), Error);
  CHECK_THROWS_AS(check_regime({100000, 100, 1000, 0.1, 0.01, false}), Error);
  CHECK_THROWS_AS(check_regime({100000, 100, -1000, 0.1, 0.01, false}), Error);
  CHECK_THROWS_AS(check_regime({100000, 100, 1, 0.0, 0.01, false}), Error);
  CHECK_THROWS_AS(check_regime({100000, 100, 1, 0.1, 0.5, false}), Error);
  CHECK_THROWS_AS(check_regime({100000, 100, 1, 0.1, 0.0, false}), Error);
  // Q = 20 < X^{1/3}: warning normally, error in strict mode
  CHECK_FALSE(check_regime({100000, 20, 1, 0.1, 0.01, false}).empty());
  CHECK_THROWS_AS(check_regime({100000, 20, 1, 0.1, 0.01, true}), Error);
  // inside the regime: X^{1/3} ~ 46.4, X^{1/2+1/78-0.001} ~ 366
  CHECK(check_regime({100000, 300, 1, 0.1, 0.001, true}).empty());
  CHECK(DiscrepancyParams{10000, 100, 1, 0.1, 0.01, false}.eta() == doctest::Approx(0.0));
  // no primes in [1, 2)
  CHECK_THROWS_AS(scan(builtin("one"), {1000, 1, 1, 0.1, 0.01, false}), Error);
}

TEST_CASE("exceptional_bound closed form") {
  DiscrepancyParams p{1000000, 1000, 1, 0.5, 0.1, false};
  CHECK(exceptional_bound(p, 1.0) == doctest::Approx(1000.0 / 0.5 * std::pow(1e6, -0.05)).epsilon(1e-14));
  DiscrepancyParams big = p;
  big.eps = 1e3;
  CHECK(exceptional_bound(big, 1.0) < 1e-10);
  DiscrepancyParams twice = p;
  twice.Q = 2000;
  CHECK(exceptional_bound(twice, 1.0) == doctest::Approx(2 * exceptional_bound(p, 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(exceptional_bound(p, 0.0), Error);
}

TEST_CASE("composite modulus counterexample") {
  const CounterexampleReport small = composite_counterexample(1000);
  CHECK(std::abs(small.D_odd) > 0.5);

  const CounterexampleReport r = composite_counterexample(1000000);
  u64 odd_sf = 0, even_sf = 0;
  for (u64 n = 1; n <= 1000000; ++n)
    if (oracle::squarefree(n)) ++(n % 2 ? odd_sf : even_sf);
  // mean over odd n equals the odd squarefree density, near 8/pi^2
  CHECK(r.mean_odd.real() == doctest::Approx(static_cast<double>(odd_sf) / 500000.0).epsilon(1e-15));
  CHECK(r.mean_odd.real() == doctest::Approx(8.0 / (M_PI * M_PI)).epsilon(1e-3));
  CHECK(r.global_mean.real() ==
        doctest::Approx((static_cast<double>(odd_sf) - static_cast<double>(even_sf)) / 1e6).epsilon(1e-15));
  // regression values from the first oracle run
  CHECK(r.mean_odd.real() == doctest::Approx(0.810572).epsilon(1e-6));
  CHECK(r.global_mean.real() == doctest::Approx(0.202646).epsilon(1e-6));
  CHECK(r.D_odd.real() == doctest::Approx(0.607926).epsilon(1e-6));
  CHECK(std::abs(r.D_odd) > 0.5);

  const CounterexampleReport flat = composite_counterexample(10000, builtin("one"));
  CHECK(flat.D_odd == Value(0.0));
  CHECK(flat.D_even == Value(0.0));
  CHECK_THROWS_AS(composite_counterexample(999), Error);
}

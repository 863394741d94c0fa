#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>
#include <vector>

#include "bplab/classical.hpp"
#include "bplab/error.hpp"
#include "bplab/matching.hpp"

using namespace bplab;

TEST_CASE("ladder recurrence") {
  auto l = build_ladder(0.5, 5.0);
  REQUIRE(l.breakpoints.size() >= 4);
  CHECK(l.breakpoints[0] == 1.0);
  CHECK(l.breakpoints[1] == 2.0);
  CHECK(l.breakpoints[2] == doctest::Approx(3.414214).epsilon(1e-6));
  CHECK(l.breakpoints[3] == doctest::Approx(5.261972).epsilon(1e-6));

  auto d = build_ladder(1.0, 1000.0);
  for (std::size_t n = 0; n < d.breakpoints.size(); ++n) CHECK(d.breakpoints[n] == std::ldexp(1.0, n));

  auto c = build_ladder(0.5, 100.0);
  CHECK(c.breakpoints.back() >= 100.0);
  CHECK(c.breakpoints[c.breakpoints.size() - 2] < 100.0);
  CHECK(std::is_sorted(c.breakpoints.begin(), c.breakpoints.end()));

  CHECK(d.interval_of(1.0) == 0);
  CHECK(d.interval_of(1.5) == 1);
  CHECK(d.interval_of(2.0) == 1);
  CHECK(d.interval_of(4.5) == 3);
  CHECK(d.interval_of(5000.0) == 0);

  CHECK_THROWS_AS(build_ladder(0.0, 10.0), Error);
  CHECK_THROWS_AS(build_ladder(1.5, 10.0), Error);
  CHECK_THROWS_AS(build_ladder(0.5, 10.0, 0.5), Error);
}

TEST_CASE("injection examples") {
  PairingOptions opt;
  opt.x0 = 1.0;
  auto p = build_injection(from_reals({4.5}), from_reals({2, 3, 5, 7}), 1.0, opt);
  REQUIRE(p.pairs.size() == 1);
  CHECK(p.pairs[0].source == 4.5);
  CHECK(p.pairs[0].target == 5.0);
  CHECK(p.pairs[0].interval == 3);
  CHECK(audit_pairing(p).ok());
  CHECK(std::abs(quotient_product(p, {2, 0}) - Complex(1.00987012987013)) < 1e-13);

  try {
    build_injection(from_reals({2.1, 2.2}), from_reals({2.5}), 0.1);
    FAIL("expected IntervalDeficit");
  } catch (const IntervalDeficitError& e) {
    CHECK(e.kind() == ErrorKind::IntervalDeficit);
    CHECK(e.interval == 0);
    CHECK(e.sources == 2);
    CHECK(e.targets == 1);
  }

  auto empty = build_injection(from_reals({}, 10.0), from_reals({2, 3}, 10.0), 0.5);
  CHECK(empty.pairs.empty());
  CHECK(quotient_product(empty, {0.5, 3}) == Complex(1.0));

  CHECK_THROWS_AS(build_injection(from_reals({2}, 20.0), from_reals({2, 3}, 10.0), 0.5), Error);
}

TEST_CASE("identity pairing gives product exactly 1") {
  auto t = sieve_primes(10'000);
  auto r = from_reals(std::vector<double>(t.primes.begin(), t.primes.end()), 10'000.0);
  for (PairingRule rule : {PairingRule::rank_order, PairingRule::ceiling}) {
    PairingOptions opt;
    opt.rule = rule;
    auto p = build_injection(r, r, 0.75, opt);
    REQUIRE(p.pairs.size() == r.size());
    for (const Pair& pr : p.pairs) REQUIRE(pr.source == pr.target);
    CHECK(quotient_product(p, {0.9, 0}) == Complex(1.0));
    CHECK(quotient_tail_diagnostic(p, {0.9, 0}, 10'000.0) == 0.0);
  }
}

TEST_CASE("deficits carry interval index and stage") {
  // two sources in one interval past n0 with one target there
  auto q = from_reals({150.5, 151.0}, 300.0);
  auto qs = from_reals({151.5, 250.0}, 300.0);
  PairingOptions opt;
  opt.stage = 3;
  try {
    build_injection(q, qs, 0.5, opt);
    FAIL("expected IntervalDeficit");
  } catch (const IntervalDeficitError& e) {
    CHECK(e.interval > 0);
    CHECK(e.stage == 3);
    CHECK(e.lo < 150.5);
    CHECK(e.hi >= 151.0);
    CHECK(std::string(e.what()).find("stage 3") != std::string::npos);
  }
}

TEST_CASE("random pairings pass every audit under both rules") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> val(1.01, 5000.0);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<double> dst(3000);
    for (double& v : dst) v = val(rng);
    // sources: a thinned copy of the targets nudged inside their interval
    std::sort(dst.begin(), dst.end());
    const double h = 0.5 + 0.4 * (trial % 5) / 4.0;
    auto ladder = build_ladder(h, 5000.0);
    std::vector<double> src;
    std::bernoulli_distribution keep(0.4);
    for (double v : dst) {
      if (!keep(rng)) continue;
      const std::size_t n = ladder.interval_of(v);
      const double lo = ladder.breakpoints[n - 1];
      std::uniform_real_distribution<double> in(0.0, 1.0);
      src.push_back(std::max(1.001, lo + (v - lo) * in(rng)));
    }
    for (PairingRule rule : {PairingRule::rank_order, PairingRule::ceiling}) {
      PairingOptions opt;
      opt.rule = rule;
      InjectionPairing p;
      try {
        p = build_injection(from_reals(src, 5000.0), from_reals(dst, 5000.0), h, opt);
      } catch (const IntervalDeficitError&) {
        continue;  // random thinning can overfill the initial segment
      }
      auto audit = audit_pairing(p);
      CHECK(audit.pairs == src.size());
      CHECK(audit.injective);
      CHECK(audit.interval_preserving);
      CHECK(audit.close);
      CHECK(audit.max_relative_shift <= 1.0 + 1e-9);
      for (std::size_t i = 1; i < p.pairs.size(); ++i) {
        REQUIRE(p.pairs[i - 1].source <= p.pairs[i].source);
        REQUIRE(p.pairs[i - 1].target < p.pairs[i].target);
      }
    }
  }
}

TEST_CASE("ceiling rule never moves a source left when room exists") {
  PairingOptions opt;
  opt.x0 = 1.0;
  // interval (4, 8] under h = 1: targets 5, 6, 7
  auto p = build_injection(from_reals({4.2, 6.5}), from_reals({5, 6, 7}), 1.0, opt);
  REQUIRE(p.pairs.size() == 2);
  CHECK(p.pairs[0].target == 5.0);
  CHECK(p.pairs[1].target == 7.0);
  opt.rule = PairingRule::rank_order;
  auto r = build_injection(from_reals({4.2, 6.5}), from_reals({5, 6, 7}), 1.0, opt);
  CHECK(r.pairs[1].target == 6.0);
  // crowded: the last slot forces the first source leftwards
  opt.rule = PairingRule::ceiling;
  auto c = build_injection(from_reals({6.5, 6.6, 6.7}), from_reals({5, 6, 7}), 1.0, opt);
  CHECK(c.pairs[0].target == 5.0);
  CHECK(c.pairs[1].target == 6.0);
  CHECK(c.pairs[2].target == 7.0);
}

TEST_CASE("audit catches broken pairings") {
  PairingOptions opt;
  opt.x0 = 1.0;
  auto p = build_injection(from_reals({4.5, 4.6}), from_reals({5, 6, 7}), 1.0, opt);
  auto bad = p;
  bad.pairs[1].target_index = bad.pairs[0].target_index;
  CHECK_FALSE(audit_pairing(bad).injective);
  bad = p;
  bad.pairs[1].target = 9.0;
  CHECK_FALSE(audit_pairing(bad).interval_preserving);
}

TEST_CASE("quotient product and tail diagnostic") {
  PairingOptions opt;
  opt.x0 = 1.0;
  auto p = build_injection(from_reals({4.5, 9.0}, 16.0), from_reals({5, 11, 13}, 16.0), 1.0, opt);
  REQUIRE(p.pairs.size() == 2);
  const Complex s{1.3, 2.0};
  Complex expect = 1.0;
  for (const Pair& pr : p.pairs) {
    expect *= (1.0 - std::pow(pr.target, -s)) / (1.0 - std::pow(pr.source, -s));
  }
  CHECK(std::abs(quotient_product(p, s) - expect) < 1e-14);
  // the block (8, 16] holds only the second pair
  const Complex f2 = (1.0 - std::pow(11.0, -s)) / (1.0 - std::pow(9.0, -s));
  CHECK(quotient_tail_diagnostic(p, s, 16.0) == doctest::Approx(std::abs(std::log(f2))));
  const double f2r = (1.0 - std::pow(11.0, -0.9)) / (1.0 - std::pow(9.0, -0.9));
  CHECK(quotient_tail_diagnostic(p, {0.9, 0}, 16.0) == doctest::Approx(std::abs(std::log(f2r))));
  CHECK_THROWS_AS(quotient_product(p, {0.0, 1.0}), Error);
}

TEST_CASE("pairing csv") {
  PairingOptions opt;
  opt.x0 = 1.0;
  auto p = build_injection(from_reals({4.5}), from_reals({2, 3, 5, 7}), 1.0, opt);
  std::ostringstream os;
  write_pairing_csv(os, p);
  CHECK(os.str() == "source,target,interval_index\n4.5,5,3\n");
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <tuple>
#include <vector>

#include "bplab/error.hpp"
#include "bplab/gprimes.hpp"

using namespace bplab;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::ValueOutOfRange;
}

struct Brute {
  double value;
  int omega;
  bool squarefree;
};

// Every exponent vector with product <= x.
std::vector<Brute> brute_force(const std::vector<double>& p, double x) {
  std::vector<Brute> out;
  std::vector<int> e(p.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, double v) -> void {
    if (i == p.size()) {
      int omega = 0;
      bool sf = true;
      for (int k : e) {
        omega += k;
        if (k >= 2) sf = false;
      }
      out.push_back({v, omega, sf});
      return;
    }
    double w = v;
    for (int k = 0; w <= x; ++k) {
      e[i] = k;
      self(self, i + 1, w);
      w *= p[i];
    }
    e[i] = 0;
  };
  rec(rec, 0, 1.0);
  return out;
}

}  // namespace

TEST_CASE("from_reals normalizes and validates") {
  auto s = from_reals({3.0, 2.0});
  CHECK(s.size() == 2);
  CHECK(s.values == std::vector<double>{2.0, 3.0});
  CHECK(s.cutoff == 3.0);

  auto empty = from_reals({});
  CHECK(empty.empty());
  CHECK(std::isinf(empty.cutoff));

  auto twin = from_reals({2.5198421, 2.5198421});
  CHECK(twin.size() == 2);

  CHECK(kind_of([] { from_reals({1.0, 2.0}); }) == ErrorKind::ValueOutOfRange);
  CHECK(kind_of([] { from_reals({0.5}); }) == ErrorKind::ValueOutOfRange);
  CHECK(kind_of([] { from_reals({2.0, NAN}); }) == ErrorKind::ValueOutOfRange);
  CHECK(kind_of([] { from_reals({2.0, 5.0}, 4.0); }) == ErrorKind::ValueOutOfRange);
  CHECK(from_reals({2.0}, 10.0).cutoff == 10.0);
}

TEST_CASE("scale maps p to p^{1/a}") {
  CHECK(scale(from_reals({2.0}), 0.5).values[0] == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(scale(from_reals({4.0}), 0.5).values[0] == doctest::Approx(16.0).epsilon(1e-15));
  auto id = scale(from_reals({2.0, 3.0}), 1.0);
  CHECK(id.values == std::vector<double>{2.0, 3.0});
  CHECK(id.cutoff == 3.0);
  auto sc = scale(from_reals({2.0}, 10.0), 0.5);
  CHECK(sc.cutoff == doctest::Approx(100.0));
  CHECK(kind_of([] { scale(from_reals({2.0}), 0.0); }) == ErrorKind::InvalidExponent);
  CHECK(kind_of([] { scale(from_reals({2.0}), 1.5); }) == ErrorKind::InvalidExponent);
}

TEST_CASE("multiset union") {
  auto u = multiset_union(from_reals({2.0}), from_reals({3.0}));
  CHECK(u.values == std::vector<double>{2.0, 3.0});
  CHECK(u.cutoff == 2.0);
  CHECK(multiset_union(from_reals({2.0}), from_reals({2.0})).values ==
        std::vector<double>{2.0, 2.0});
  auto e = multiset_union(from_reals({}), from_reals({2.0}));
  CHECK(e.values == std::vector<double>{2.0});
  CHECK(e.cutoff == 2.0);
}

TEST_CASE("truncate and remove_indices") {
  auto s = from_reals({2, 3, 5, 7}, 10.0);
  auto t = truncate(s, 5.5);
  CHECK(t.values == std::vector<double>{2, 3, 5});
  CHECK(t.cutoff == 5.5);
  CHECK(kind_of([&] { truncate(s, 11.0); }) == ErrorKind::CutoffExceeded);
  std::vector<std::size_t> drop{0, 2};
  auto r = remove_indices(s, drop);
  CHECK(r.values == std::vector<double>{3, 7});
  CHECK(r.cutoff == 10.0);
}

TEST_CASE("enumerate {2,3} up to 10") {
  auto list = enumerate_gintegers(from_reals({2, 3}, 10.0), 10.0);
  std::vector<double> v;
  std::vector<int> lam, mu;
  for (const auto& g : list.entries) {
    v.push_back(g.value);
    lam.push_back(g.lambda);
    mu.push_back(g.mu);
  }
  CHECK(v == std::vector<double>{1, 2, 3, 4, 6, 8, 9});
  CHECK(lam == std::vector<int>{1, -1, -1, 1, 1, -1, 1});
  CHECK(mu == std::vector<int>{1, -1, -1, 0, 1, 0, 0});
  CHECK(list.complete);
  CHECK(count_upto(list, 10.0) == 7);
}

TEST_CASE("enumerate edge cases") {
  auto empty = enumerate_gintegers(from_reals({}), 100.0);
  REQUIRE(empty.size() == 1);
  CHECK(empty.entries[0].value == 1.0);
  CHECK(empty.entries[0].omega_total == 0);
  CHECK(empty.entries[0].mu == 1);

  const double q = std::pow(2.0, 4.0 / 3.0);
  auto one = enumerate_gintegers(from_reals({q}), 7.0);
  REQUIRE(one.size() == 3);
  CHECK(one.entries[1].value == doctest::Approx(2.5198421));
  CHECK(one.entries[2].value == doctest::Approx(6.3496042));
  CHECK_FALSE(one.complete);

  // equal members are distinct primes: 4 appears three times, once squarefree
  auto twin = enumerate_gintegers(from_reals({2.0, 2.0}), 4.0);
  REQUIRE(twin.size() == 6);
  int fours = 0, sf = 0;
  for (const auto& g : twin.entries) {
    if (g.value == 4.0) {
      ++fours;
      sf += g.squarefree;
    }
  }
  CHECK(fours == 3);
  CHECK(sf == 1);

  CHECK(kind_of([] { enumerate_gintegers(from_reals({2.0}, 1e6), 1e6, 5); }) ==
        ErrorKind::BudgetExceeded);
}

TEST_CASE("enumeration agrees with exponent-vector brute force") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> val(1.05, 12.0);
  std::uniform_int_distribution<int> size(0, 4);
  std::uniform_real_distribution<double> xd(1.0, 4.0);
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<double> p(size(rng));
    for (double& v : p) v = val(rng);
    const double x = std::pow(10.0, xd(rng));
    auto list = enumerate_gintegers(from_reals(p, std::max(x, 12.0)), x);
    auto brute = brute_force(p, x);
    REQUIRE(list.size() == brute.size());
    std::sort(brute.begin(), brute.end(), [](const Brute& a, const Brute& b) {
      return std::tie(a.value, a.omega, a.squarefree) < std::tie(b.value, b.omega, b.squarefree);
    });
    auto mine = list.entries;
    std::sort(mine.begin(), mine.end(), [](const GInteger& a, const GInteger& b) {
      return std::make_tuple(a.value, a.omega_total, a.squarefree) <
             std::make_tuple(b.value, b.omega_total, b.squarefree);
    });
    for (std::size_t i = 0; i < brute.size(); ++i) {
      CHECK(mine[i].value == doctest::Approx(brute[i].value).epsilon(1e-9));
      CHECK(static_cast<int>(mine[i].omega_total) == brute[i].omega);
      CHECK(mine[i].squarefree == brute[i].squarefree);
      CHECK(mine[i].lambda == (brute[i].omega % 2 ? -1 : 1));
      CHECK(mine[i].mu == (brute[i].squarefree ? mine[i].lambda : 0));
    }
    CHECK(std::is_sorted(list.entries.begin(), list.entries.end(),
                         [](const GInteger& a, const GInteger& b) { return a.value < b.value; }));
  }
}

TEST_CASE("counting") {
  CHECK(count_upto(from_reals({2, 3, 5, 7, 11}, 12.0), 10.0) == 4);
  std::vector<double> ints;
  for (int n = 1; n <= 20; ++n) ints.push_back(n);
  CHECK(count_upto(std::span<const double>(ints), 10.5) == 10);
  CHECK(kind_of([] { count_upto(from_reals({2, 3}), 4.0); }) == ErrorKind::CutoffExceeded);
}

TEST_CASE("scaling and union count laws") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> val(1.01, 1000.0);
  std::uniform_real_distribution<double> ad(0.2, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> p(30), q(20);
    for (double& v : p) v = val(rng);
    for (double& v : q) v = val(rng);
    auto s = from_reals(p, 1000.0);
    auto t = from_reals(q, 1000.0);
    const double a = ad(rng);
    auto sc = scale(s, a);
    for (double x : {1.5, 10.0, 77.7, 500.0, 999.0}) {
      const double xs = std::pow(x, 1.0 / a);
      if (xs <= sc.cutoff) CHECK(count_upto(sc, xs * (1 + 1e-12)) == count_upto(s, x));
      CHECK(count_upto(multiset_union(s, t), x) == count_upto(s, x) + count_upto(t, x));
    }
  }
}

TEST_CASE("short interval counts") {
  std::vector<double> primes;
  for (int n = 2; n <= 200; ++n) {
    bool pr = true;
    for (int d = 2; d * d <= n; ++d) pr = pr && n % d != 0;
    if (pr) primes.push_back(n);
  }
  auto P = from_reals(primes, 200.0);
  CHECK(short_interval_count(P, 100.0, 0.5) == 4);
  CHECK(kind_of([&] { short_interval_count(P, 190.0, 0.9); }) == ErrorKind::CutoffExceeded);
  CHECK(short_interval_count(from_reals({2, 3}, 6.0), 3.0, 1.0) == 0);
  CHECK(kind_of([] { short_interval_count(from_reals({2, 3}), 3.0, 1.0); }) ==
        ErrorKind::CutoffExceeded);
  CHECK(short_interval_main_term(0.5, 0.75, 100.0) ==
        doctest::Approx(std::pow(100.0, 0.25) / std::log(100.0)));
}

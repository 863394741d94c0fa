#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include <boost/math/special_functions/expint.hpp>
#include <boost/math/special_functions/zeta.hpp>

#include "bplab/classical.hpp"
#include "bplab/error.hpp"
#include "bplab/parallel.hpp"
#include "bplab/series.hpp"

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

GPrimeSystem primes_upto(std::uint64_t n) {
  auto t = sieve_primes(n);
  return from_reals(std::vector<double>(t.primes.begin(), t.primes.end()), static_cast<double>(n));
}

}  // namespace

TEST_CASE("Euler products") {
  CHECK(std::abs(zeta_euler(from_reals({2}), {2, 0}) - Complex(4.0 / 3.0)) < 1e-15);
  CHECK(std::abs(zeta_euler(from_reals({2, 3}), {1, 0}) - Complex(3.0)) < 1e-15);
  CHECK(zeta_euler(from_reals({}), {0.3, 7}) == Complex(1.0));
  CHECK(std::abs(lambda_quotient(from_reals({2}), {1, 0}) - Complex(2.0 / 3.0)) < 1e-15);

  auto p = from_reals({2, 3, 5});
  const Complex s{2, 0};
  CHECK(std::abs(lambda_quotient(p, s) - zeta_euler(p, 2.0 * s) / zeta_euler(p, s)) < 1e-12);

  auto big = primes_upto(1'000'000);
  const double pi = std::acos(-1.0);
  CHECK(std::abs(lambda_quotient(big, s) - Complex(pi * pi / 15.0)) < 1e-6);

  CHECK(kind_of([] { zeta_euler(from_reals({2}), {0, 1}); }) == ErrorKind::ValueOutOfRange);
  CHECK(kind_of([] { zeta_euler(from_reals({2}, 5.0), {2, 0}, 6.0); }) == ErrorKind::CutoffExceeded);

  // cutoff keeps only members <= cutoff
  CHECK(std::abs(zeta_euler(p, {1, 0}, 3.5) - Complex(3.0)) < 1e-15);
}

TEST_CASE("Euler product identity at complex s on random systems") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> val(1.1, 50.0);
  std::uniform_real_distribution<double> sig(0.3, 3.0), tt(-20.0, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(25);
    for (double& x : v) x = val(rng);
    auto sys = from_reals(v);
    const Complex s{sig(rng), tt(rng)};
    const Complex lhs = lambda_quotient(sys, s) * zeta_euler(sys, s);
    const Complex rhs = zeta_euler(sys, 2.0 * s);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("Dirichlet partial sums") {
  auto table = sieve_primes(1'000'000);
  auto lam = liouville_sieve(table, [](std::uint64_t) { return true; });
  auto tr = dirichlet_partial_sum(lam, {1, 0}, {10.0, 1.0});
  REQUIRE(tr.checkpoints.size() == 2);
  CHECK(tr.checkpoints[0].x == 1.0);
  CHECK(tr.checkpoints[0].value == Complex(1.0));
  CHECK(tr.checkpoints[1].value.real() == doctest::Approx(0.326587301587302).epsilon(1e-14));

  std::vector<std::uint64_t> two{2};
  auto l2 = liouville_sieve(table, two);
  auto g = dirichlet_partial_sum(l2, {2, 0}, {1024.0});
  // sum_{k <= 10} (-1/4)^k
  CHECK(g.checkpoints[0].value.real() == doctest::Approx((1.0 - std::pow(-0.25, 11)) / 1.25));
  CHECK(g.checkpoints[0].value.real() == doctest::Approx(0.8).epsilon(1e-6));

  // block boundaries and recomputation by direct summation in long double
  std::vector<double> cps{65535, 65536, 65537, 131072, 200000.5, 999999};
  auto t2 = dirichlet_partial_sum(lam, {0.7, 3.0}, cps);
  for (const auto& pt : t2.checkpoints) {
    long double re = 0, im = 0;
    const auto n_max = static_cast<std::uint64_t>(pt.x);
    for (std::uint64_t n = 1; n <= n_max; ++n) {
      if (!lam[n]) continue;
      const long double mag = std::pow(static_cast<long double>(n), -0.7L);
      const long double ang = -3.0L * std::log(static_cast<long double>(n));
      re += lam[n] * mag * std::cos(ang);
      im += lam[n] * mag * std::sin(ang);
    }
    CHECK(pt.value.real() == doctest::Approx(static_cast<double>(re)).epsilon(1e-11));
    CHECK(pt.value.imag() == doctest::Approx(static_cast<double>(im)).epsilon(1e-11));
  }

  CHECK(kind_of([&] { dirichlet_partial_sum(lam, {1, 0}, {2e6}); }) == ErrorKind::CutoffExceeded);
}

TEST_CASE("conjugate symmetry is exact for real coefficients") {
  auto table = sieve_primes(300'000);
  auto lam = liouville_sieve(table, [](std::uint64_t p) { return p % 4 == 1; });
  std::vector<double> cps{1000, 100000, 300000};
  auto up = dirichlet_partial_sum(lam, {0.8, 14.1}, cps);
  auto down = dirichlet_partial_sum(lam, {0.8, -14.1}, cps);
  for (std::size_t i = 0; i < cps.size(); ++i) {
    CHECK(down.checkpoints[i].value == std::conj(up.checkpoints[i].value));
  }
}

TEST_CASE("partial sums do not depend on the worker count") {
  auto table = sieve_primes(500'000);
  auto lam = liouville_sieve(table, [](std::uint64_t p) { return p % 3 != 2; });
  std::vector<double> cps{1000, 77777, 500000};
  setenv("BPLAB_THREADS", "1", 1);
  auto one = dirichlet_partial_sum(lam, {0.6, 2.0}, cps);
  setenv("BPLAB_THREADS", "4", 1);
  auto four = dirichlet_partial_sum(lam, {0.6, 2.0}, cps);
  unsetenv("BPLAB_THREADS");
  for (std::size_t i = 0; i < cps.size(); ++i) {
    CHECK(one.checkpoints[i].value == four.checkpoints[i].value);
  }
}

TEST_CASE("partial sums over generalized integers") {
  auto list = enumerate_gintegers(from_reals({2, 3}, 100.0), 100.0);
  auto tr = dirichlet_partial_sum(list, GIntegerWeight::lambda, {1, 0}, {10.0});
  // 1 - 1/2 - 1/3 + 1/4 + 1/6 - 1/8 + 1/9
  const double expect = 1 - 0.5 - 1.0 / 3 + 0.25 + 1.0 / 6 - 0.125 + 1.0 / 9;
  CHECK(tr.checkpoints[0].value.real() == doctest::Approx(expect).epsilon(1e-15));
  auto mu = dirichlet_partial_sum(list, GIntegerWeight::mu, {1, 0}, {10.0});
  CHECK(mu.checkpoints[0].value.real() == doctest::Approx(1 - 0.5 - 1.0 / 3 + 1.0 / 6));
  auto one = dirichlet_partial_sum(list, GIntegerWeight::one, {0, 0}, {10.0, 100.0});
  CHECK(one.checkpoints[0].value.real() == 7.0);
}

TEST_CASE("finite Euler product against the partial sum") {
  auto table = sieve_primes(1'000'000);
  std::vector<std::uint64_t> small;
  for (auto p : table.primes) {
    if (p <= 100) small.push_back(p);
  }
  auto lam = liouville_sieve(table, small);
  auto tr = dirichlet_partial_sum(lam, {2, 0}, {1e6});
  auto sys = from_reals(std::vector<double>(small.begin(), small.end()));
  CHECK(std::abs(tr.checkpoints[0].value - lambda_quotient(sys, {2, 0})) < 1e-4);
}

TEST_CASE("running sup") {
  auto table = sieve_primes(1000);
  auto lam = liouville_sieve(table, [](std::uint64_t) { return true; });
  auto sup = running_sup_abs(lam, 0.0, {10.0, 1000.0});
  // partial sums of lambda up to 10: 1,0,-1,0,-1,0,-1,-2,-1,0
  CHECK(sup[0] == 2.0);
  long s = 0, m = 0;
  for (int n = 1; n <= 1000; ++n) {
    s += lam[n];
    m = std::max(m, std::abs(s));
  }
  CHECK(sup[1] == static_cast<double>(m));
}

TEST_CASE("classical zeta at real arguments") {
  CHECK(classical_zeta_real(2.0) == doctest::Approx(1.6449340668482264).epsilon(1e-14));
  CHECK(classical_zeta_real(4.0) == doctest::Approx(1.0823232337111382).epsilon(1e-14));
  CHECK(std::abs(classical_zeta_real(2.0) - 1.644934066848226436472) < 1e-9);
  CHECK(std::abs(classical_zeta_real(4.0) - 1.082323233711138191516) < 1e-9);
  CHECK(classical_zeta_real(0.75) == doctest::Approx(-3.44128538694522).epsilon(1e-12));
  CHECK(classical_zeta_real(4.0 / 3.0) == doctest::Approx(3.60093775045886).epsilon(1e-12));
  for (double s : {0.05, 0.3, 0.5, 0.6, 0.9, 0.999, 1.001, 1.2, 1.5, 3.0, 7.5, 20.0, 60.0}) {
    const double oracle = boost::math::zeta(s);
    CHECK(std::abs(classical_zeta_real(s) - oracle) <= 1e-13 * std::max(1.0, std::abs(oracle)));
  }
  CHECK(kind_of([] { classical_zeta_real(1.0); }) == ErrorKind::PoleAtOne);
  CHECK(kind_of([] { classical_zeta_real(1.0 + 1e-10); }) == ErrorKind::PoleAtOne);
  CHECK(kind_of([] { classical_zeta_real(0.0); }) == ErrorKind::ValueOutOfRange);
}

TEST_CASE("logarithmic integral") {
  CHECK(logarithmic_integral(2.0) == 0.0);
  CHECK(logarithmic_integral(1.5) == 0.0);
  for (double x : {3.0, 10.0, 1000.0, 1e5, 251188.6, 1e7, 1e12}) {
    const double oracle = boost::math::expint(std::log(x)) - boost::math::expint(std::log(2.0));
    CHECK(logarithmic_integral(x) == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("abscissa estimates") {
  RealCoefficients ones;
  ones.limit = 1'000'000;
  ones.values.assign(ones.limit + 1, 1.0);
  ones.values[0] = 0.0;
  auto e1 = estimate_abscissa(ones);
  CHECK(std::abs(e1.sigma_hat - 1.0) <= 0.05);
  CHECK(e1.slope_stderr >= 0.0);

  RealCoefficients pw = ones;
  for (std::uint64_t n = 1; n <= pw.limit; ++n) pw.values[n] = std::pow(static_cast<double>(n), 0.3);
  CHECK(std::abs(estimate_abscissa(pw).sigma_hat - 1.3) <= 0.05);

  auto table = sieve_primes(1'000'000);
  std::vector<std::uint64_t> two{2};
  auto finite = estimate_abscissa(liouville_sieve(table, two));
  CHECK(finite.sigma_hat <= 0.05);

  RealCoefficients zero = ones;
  std::fill(zero.values.begin(), zero.values.end(), 0.0);
  CHECK(kind_of([&] { estimate_abscissa(zero); }) == ErrorKind::DegenerateData);
  RealCoefficients small;
  small.limit = 999;
  small.values.assign(1000, 1.0);
  CHECK(kind_of([&] { estimate_abscissa(small); }) == ErrorKind::ValueOutOfRange);
}

TEST_CASE("real zero bisection") {
  CHECK(scan_real_zero([](double s) { return s - 0.9; }, 0.5, 1.0, 1e-10) ==
        doctest::Approx(0.9).epsilon(1e-9));
  CHECK(kind_of([] { scan_real_zero([](double s) { return s * s + 1; }, -1, 1, 1e-6); }) ==
        ErrorKind::NoSignChange);

  auto table = sieve_primes(1'000'000);
  auto lam = liouville_sieve(table, [](std::uint64_t) { return true; });
  auto f = [&](double sigma) {
    return dirichlet_partial_sum(lam, {sigma, 0}, {1e6}).checkpoints[0].value.real();
  };
  const double root = scan_real_zero(f, 0.9, 1.1, 1e-4);
  CHECK(std::abs(root - 1.0) <= 0.05);
}

TEST_CASE("line fit") {
  std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  auto fit = fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(2.0));
  CHECK(fit.intercept == doctest::Approx(1.0));
  CHECK(fit.slope_stderr == doctest::Approx(0.0));
}

TEST_CASE("compensated sum") {
  NeumaierSum s;
  s.add(1.0);
  s.add(1e100);
  s.add(1.0);
  s.add(-1e100);
  CHECK(s.value() == 2.0);
}

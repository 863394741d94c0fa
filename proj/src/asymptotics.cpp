#include "bplab/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "bplab/error.hpp"
#include "bplab/gprimes.hpp"
#include "bplab/parallel.hpp"
#include "bplab/series.hpp"

namespace bplab {

namespace {

using Big = boost::multiprecision::cpp_bin_float_50;

constexpr std::uint64_t kBlock = std::uint64_t{1} << 16;

void check_c(double c) {
  if (!(c > 0.5 && c < 1.0)) {
    throw Error(ErrorKind::InvalidC, "c must lie in (1/2, 1), got " + std::to_string(c));
  }
}

std::uint64_t floor_u64(double x) {
  return x < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(x));
}

}  // namespace

WeightedSum weighted_sum(double alpha, double x) {
  if (!(alpha > 0.0)) throw Error(ErrorKind::ValueOutOfRange, "alpha must be positive");
  if (std::abs(alpha - 1.0) < 1e-9) throw Error(ErrorKind::PoleAtOne, "alpha = 1 has no power main term");
  WeightedSum w;
  w.alpha = alpha;
  w.x = x;
  w.predicted_error_exponent = 0.5 - alpha;
  const std::uint64_t n = floor_u64(x);
  const std::uint64_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> sums(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    NeumaierSum acc;
    const std::uint64_t hi = std::min(n, (b + 1) * kBlock);
    for (std::uint64_t m = b * kBlock + 1; m <= hi; ++m) {
      acc.add(std::pow(static_cast<double>(m), -alpha));
    }
    sums[b] = acc.value();
  });
  NeumaierSum total;
  for (double s : sums) total.add(s);
  w.exact = total.value();
  if (x > 0.0) {
    w.main_term = std::pow(x, 1.0 - alpha) / (1.0 - alpha);
    if (alpha > 0.5) w.main_term += classical_zeta_real(alpha);
  }
  w.error = w.exact - w.main_term;
  return w;
}

PairPredicate::PairPredicate(double c, double x) : c_(c), x_(x), inv_c_(1.0L / c) {
  check_c(c);
}

bool PairPredicate::holds(std::uint64_t k, std::uint64_t l) const {
  if (k == 0 || l == 0) return true;
  const long double v = static_cast<long double>(k) * std::pow(static_cast<long double>(l), inv_c_);
  const long double x = x_;
  const long double gap = v - x;
  if (std::abs(gap) > 1e-9L * std::max(x, 1.0L)) return gap < 0;
  const Big vb = Big(k) * boost::multiprecision::pow(Big(l), Big(1) / Big(c_));
  const Big xb(x_);
  const Big diff = vb - xb;
  if (boost::multiprecision::abs(diff) <= Big("1e-40") * xb) return true;
  return diff < 0;
}

std::uint64_t PairPredicate::kmax(std::uint64_t l) const {
  if (!holds(1, l)) return 0;
  const long double r = std::pow(static_cast<long double>(l), inv_c_);
  auto k = static_cast<std::uint64_t>(std::floor(static_cast<long double>(x_) / r));
  while (k > 0 && !holds(k, l)) --k;
  while (holds(k + 1, l)) ++k;
  return k;
}

std::uint64_t PairPredicate::lmax(std::uint64_t k) const {
  if (!holds(k, 1)) return 0;
  auto l = static_cast<std::uint64_t>(
      std::floor(std::pow(static_cast<long double>(x_) / k, static_cast<long double>(c_))));
  while (l > 0 && !holds(k, l)) --l;
  while (holds(k, l + 1)) ++l;
  return l;
}

HyperbolaCount hyperbola_count(double c, double x) {
  check_c(c);
  HyperbolaCount h;
  if (x < 1.0) return h;
  const PairPredicate pred(c, x);
  h.y = std::pow(x, 1.0 / (1.0 + c));
  h.l_split = std::max<std::uint64_t>(1, floor_u64(std::pow(h.y, c)));
  h.k_split = pred.kmax(h.l_split);
  for (std::uint64_t l = 1; l <= h.l_split; ++l) h.s1 += pred.kmax(l);
  for (std::uint64_t k = 1; k <= h.k_split; ++k) h.s2 += pred.lmax(k);
  h.s3 = h.l_split * h.k_split;
  h.count = h.s1 + h.s2 - h.s3;
  return h;
}

MertensTable::MertensTable(std::uint64_t limit) : MertensTable(sieve_primes(limit)) {}

MertensTable::MertensTable(const PrimeTable& table) {
  const SignCoefficients mu = mobius_sieve(table);
  prefix_.assign(table.limit + 1, 0);
  for (std::uint64_t n = 1; n <= table.limit; ++n) prefix_[n] = prefix_[n - 1] + mu.values[n];
}

double mobius_sum_ii(double c, double x, const MertensTable& mertens) {
  check_c(c);
  if (x < 1.0) return 0.0;
  if (floor_u64(x) > mertens.limit()) {
    throw Error(ErrorKind::CutoffExceeded, "Mertens table too short for x = " + std::to_string(x));
  }
  const PairPredicate pred(c, x);
  const std::uint64_t lmax = pred.lmax(1);
  const std::uint64_t blocks = (lmax + kBlock - 1) / kBlock;
  std::vector<std::int64_t> sums(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    std::int64_t acc = 0;
    const std::uint64_t hi = std::min(lmax, (b + 1) * kBlock);
    for (std::uint64_t l = b * kBlock + 1; l <= hi; ++l) acc += mertens(pred.kmax(l));
    sums[b] = acc;
  });
  std::int64_t total = 0;
  for (auto s : sums) total += s;
  return static_cast<double>(total);
}

double mobius_sum_ii(double c, double x) {
  check_c(c);
  if (x < 1.0) return 0.0;
  return mobius_sum_ii(c, x, MertensTable(floor_u64(x)));
}

double mobius_sum_i(double c, double x, std::size_t cap) {
  check_c(c);
  if (x < 2.0) return 1.0;
  const PrimeTable table = sieve_primes(floor_u64(x));
  GPrimeSystem r;
  r.values.assign(table.primes.begin(), table.primes.end());
  r.cutoff = x;
  const GPrimeSystem qc = multiset_union(r, truncate(scale(r, c), x));
  const GIntegerList list = enumerate_gintegers(qc, x, cap);
  std::int64_t total = 0;
  for (const GInteger& g : list.entries) total += g.mu;
  return static_cast<double>(total);
}

double predicted_counting_exponent(double c) { return 3.0 * c / (2.0 * (1.0 + c)); }

std::vector<double> log_grid(double xmin, double xmax, int per_decade) {
  if (!(xmin >= 1.0 && xmax >= xmin && per_decade >= 1)) {
    throw Error(ErrorKind::ValueOutOfRange, "grid needs 1 <= xmin <= xmax");
  }
  std::vector<double> grid;
  const double lo = std::log10(xmin);
  const double hi = std::log10(xmax);
  for (int k = 0;; ++k) {
    const double e = lo + static_cast<double>(k) / per_decade;
    if (e > hi + 1e-9) break;
    grid.push_back(std::round(std::pow(10.0, e) * 1e6) / 1e6);
  }
  if (grid.back() < xmax * (1 - 1e-12)) grid.push_back(xmax);
  return grid;
}

namespace {

void fit(AsymptoticReport& rep) {
  rep.fitted_error_exponent = std::numeric_limits<double>::quiet_NaN();
  rep.fitted_stderr = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < rep.x_grid.size(); ++i) {
    if (rep.error[i] != 0.0 && rep.x_grid[i] > 1.0) {
      lx.push_back(std::log(rep.x_grid[i]));
      ly.push_back(std::log(std::abs(rep.error[i])));
    }
  }
  if (lx.size() < 3) return;
  if ((lx.back() - lx.front()) / std::log(10.0) < 3.0 - 1e-9) return;
  const LineFit f = fit_line(lx, ly);
  rep.fitted_error_exponent = f.slope;
  rep.fitted_stderr = f.slope_stderr;
}

template <class Exact, class Main>
AsymptoticReport build_report(std::string quantity, double parameter,
                              const std::vector<double>& grid, Exact exact, Main main) {
  AsymptoticReport rep;
  rep.quantity = std::move(quantity);
  rep.parameter = parameter;
  rep.x_grid = grid;
  std::sort(rep.x_grid.begin(), rep.x_grid.end());
  for (double x : rep.x_grid) {
    const double e = exact(x);
    const double m = main(x);
    rep.exact.push_back(e);
    rep.main_term.push_back(m);
    rep.error.push_back(e - m);
  }
  fit(rep);
  return rep;
}

double grid_top(const std::vector<double>& grid) {
  return grid.empty() ? 1.0 : *std::max_element(grid.begin(), grid.end());
}

}  // namespace

AsymptoticReport weighted_sum_report(double alpha, const std::vector<double>& grid) {
  AsymptoticReport rep = build_report(
      "weighted_sum", alpha, grid, [&](double x) { return weighted_sum(alpha, x).exact; },
      [&](double x) { return weighted_sum(alpha, x).main_term; });
  rep.predicted_exponent = 0.5 - alpha;
  return rep;
}

AsymptoticReport hyperbola_report(double c, const std::vector<double>& grid) {
  check_c(c);
  const double z1 = classical_zeta_real(1.0 / c);
  const double zc = classical_zeta_real(c);
  AsymptoticReport rep = build_report(
      "hyperbola_count", c, grid,
      [&](double x) { return static_cast<double>(hyperbola_count(c, x).count); },
      [&](double x) { return z1 * x + zc * std::pow(x, c); });
  rep.predicted_exponent = predicted_counting_exponent(c);
  return rep;
}

AsymptoticReport mobius_ii_report(double c, const std::vector<double>& grid) {
  check_c(c);
  const double zc = classical_zeta_real(c);
  const MertensTable mertens(floor_u64(grid_top(grid)));
  AsymptoticReport rep = build_report(
      "mobius_sum_ii", c, grid, [&](double x) { return mobius_sum_ii(c, x, mertens); },
      [&](double x) { return std::pow(x, c) / zc; });
  rep.predicted_exponent = predicted_counting_exponent(c);
  return rep;
}

AsymptoticReport mobius_i_report(double c, const std::vector<double>& grid) {
  check_c(c);
  AsymptoticReport rep = build_report(
      "mobius_sum_i", c, grid, [&](double x) { return mobius_sum_i(c, x); },
      [](double) { return 0.0; });
  rep.predicted_exponent = predicted_counting_exponent(c);
  return rep;
}

void write_report_csv(std::ostream& out, const AsymptoticReport& rep) {
  out << "x,exact,main,error,fitted_exponent,fitted_stderr,predicted_exponent\n";
  char buf[256];
  for (std::size_t i = 0; i < rep.x_grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", rep.x_grid[i],
                  rep.exact[i], rep.main_term[i], rep.error[i], rep.fitted_error_exponent,
                  rep.fitted_stderr, rep.predicted_exponent);
    out << buf;
  }
}

std::vector<BhpReport> bhp_grid(std::uint64_t x_last, double first_exponent, double step) {
  std::vector<std::uint64_t> xs;
  for (int k = 0;; ++k) {
    const double x = std::floor(std::pow(10.0, first_exponent + k * step) + 1e-6);
    if (x > static_cast<double>(x_last)) break;
    xs.push_back(static_cast<std::uint64_t>(x));
  }
  std::vector<BhpReport> out;
  if (xs.empty()) return out;
  const auto y = static_cast<std::uint64_t>(
      std::ceil(std::pow(static_cast<long double>(xs.back()), 21.0L / 40.0L)));
  const PrimeTable table = sieve_primes(xs.back() + y);
  for (std::uint64_t x : xs) out.push_back(check_bhp(table, x));
  return out;
}

}  // namespace bplab

#pragma once

// Counting functions over ordinary integers: sums of n^{-alpha}, the count
// M_c(x) of pairs (k, l) with k l^{1/c} <= x, and the Moebius sums over the
// same pairs. Every left-hand side is an exact count or sum.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "bplab/classical.hpp"

namespace bplab {

struct WeightedSum {
  double alpha = 0.0;
  double x = 0.0;
  double exact = 0.0;
  double main_term = 0.0;
  double error = 0.0;
  double predicted_error_exponent = 0.0;  // 1/2 - alpha
};

// exact = sum_{n <= x} n^{-alpha}; main term x^{1-alpha}/(1-alpha) for
// alpha <= 1/2, plus zeta(alpha) above 1/2 (the same expression as
// zeta(alpha) - 1/((alpha-1) x^{alpha-1}) when alpha > 1). PoleAtOne at
// alpha = 1, ValueOutOfRange for alpha <= 0.
WeightedSum weighted_sum(double alpha, double x);

// Exact pair predicate k * l^{1/c} <= x. Long double first; within 1e-9 of
// the boundary the comparison is redone in 50-digit arithmetic, where a
// relative gap below 1e-40 counts as equality.
class PairPredicate {
 public:
  PairPredicate(double c, double x);
  bool holds(std::uint64_t k, std::uint64_t l) const;
  // Largest k >= 0 with holds(k, l).
  std::uint64_t kmax(std::uint64_t l) const;
  // Largest l >= 0 with holds(k, l).
  std::uint64_t lmax(std::uint64_t k) const;
  double c() const { return c_; }
  double x() const { return x_; }

 private:
  double c_;
  double x_;
  long double inv_c_;
};

struct HyperbolaCount {
  std::uint64_t count = 0;  // M_c(x) = s1 + s2 - s3
  std::uint64_t s1 = 0;
  std::uint64_t s2 = 0;
  std::uint64_t s3 = 0;
  double y = 0.0;  // x^{1/(1+c)}
  std::uint64_t l_split = 0;  // number of l with l^{1/c} <= y
  std::uint64_t k_split = 0;  // kmax(l_split)
};

// M_c(x) by the hyperbola method with y = x^{1/(1+c)}. The k-split is taken
// as kmax(l_split) (which is floor(x/y) up to the rounding of y) so that
// S1 + S2 - S3 is an exact identity. InvalidC unless 1/2 < c < 1.
HyperbolaCount hyperbola_count(double c, double x);

// Prefix sums M(n) = sum_{m <= n} mu(m) for n <= limit.
class MertensTable {
 public:
  explicit MertensTable(std::uint64_t limit);
  explicit MertensTable(const PrimeTable& table);
  std::int64_t operator()(std::uint64_t n) const { return prefix_[n]; }
  std::uint64_t limit() const { return prefix_.size() - 1; }

 private:
  std::vector<std::int32_t> prefix_;
};

// sum over pairs k l^{1/c} <= x of mu(k), i.e. sum_l M(floor(x / l^{1/c})).
// InvalidC unless 1/2 < c < 1; CutoffExceeded when x is beyond the table.
double mobius_sum_ii(double c, double x, const MertensTable& mertens);
double mobius_sum_ii(double c, double x);

// sum of mu over the generalized integers <= x of R u R^{1/c} with R the
// ordinary primes, by enumeration. InvalidC; BudgetExceeded past cap.
double mobius_sum_i(double c, double x, std::size_t cap = 100'000'000);

// 3c / (2(1+c)), the error exponent of both counting lemmas.
double predicted_counting_exponent(double c);

struct AsymptoticReport {
  std::string quantity;
  double parameter = 0.0;  // alpha or c
  std::vector<double> x_grid;
  std::vector<double> exact;
  std::vector<double> main_term;
  std::vector<double> error;
  // Slope of log|error| against log x. NaN unless the grid spans at least
  // three decades with at least three nonzero errors.
  double fitted_error_exponent = 0.0;
  double fitted_stderr = 0.0;
  double predicted_exponent = 0.0;
};

// x = 10^{e} for e = lo, lo + 1/per_decade, ... up to log10(xmax); xmax
// itself is appended when it is off the grid.
std::vector<double> log_grid(double xmin, double xmax, int per_decade = 1);

AsymptoticReport weighted_sum_report(double alpha, const std::vector<double>& grid);
AsymptoticReport hyperbola_report(double c, const std::vector<double>& grid);
AsymptoticReport mobius_ii_report(double c, const std::vector<double>& grid);
// Main term zero: the fit is the growth exponent of |sum|.
AsymptoticReport mobius_i_report(double c, const std::vector<double>& grid);

// x,exact,main,error rows; the fit columns repeat on every row.
void write_report_csv(std::ostream& out, const AsymptoticReport& report);

// check_bhp on x = floor(10^e), e = 4, 4.5, ... up to x_last, sieving far
// enough to cover the last interval.
std::vector<BhpReport> bhp_grid(std::uint64_t x_last, double first_exponent = 4.0,
                                double step = 0.5);

}  // namespace bplab

#pragma once

// Euler products, Dirichlet partial sums, the classical zeta function at
// real arguments, abscissa estimation and real-zero bracketing.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "bplab/classical.hpp"
#include "bplab/gprimes.hpp"

namespace bplab {

using Complex = std::complex<double>;

struct TracePoint {
  double x = 0.0;
  Complex value;
};

struct PartialSumTrace {
  std::vector<TracePoint> checkpoints;
};

// Product of 1/(1 - p^{-s}) over members p <= cutoff, ascending.
// SingularFactor when |1 - p^{-s}| < 1e-14; CutoffExceeded when cutoff is
// beyond the system's cutoff.
Complex zeta_euler(const GPrimeSystem& system, Complex s, double cutoff);
Complex zeta_euler(const GPrimeSystem& system, Complex s);

// Product of 1/(1 + p^{-s}) over members p <= cutoff, i.e. zeta(2s)/zeta(s).
Complex lambda_quotient(const GPrimeSystem& system, Complex s, double cutoff);
Complex lambda_quotient(const GPrimeSystem& system, Complex s);

// S(x) = sum_{n <= x} a_n n^{-s} at each checkpoint. Block sums are formed
// in fixed-size ascending blocks and combined in order, so the result does
// not depend on the worker count. Checkpoints are sorted and deduplicated;
// CutoffExceeded when one lies beyond the coefficient limit.
PartialSumTrace dirichlet_partial_sum(const SignCoefficients& coeffs, Complex s,
                                      std::vector<double> checkpoints);
PartialSumTrace dirichlet_partial_sum(const RealCoefficients& coeffs, Complex s,
                                      std::vector<double> checkpoints);

// sup_{t <= x} |sum_{n <= t} a_n n^{-sigma}| at each checkpoint, for real
// sigma. Checkpoints are normalized as above.
std::vector<double> running_sup_abs(const SignCoefficients& coeffs, double sigma,
                                    std::vector<double> checkpoints);

enum class GIntegerWeight { one, lambda, mu };

// Generalized Dirichlet series over an enumerated list of generalized integers.
PartialSumTrace dirichlet_partial_sum(const GIntegerList& list, GIntegerWeight weight, Complex s,
                                      std::vector<double> checkpoints);

// zeta(sigma) for real sigma > 0 via the alternating eta series with
// Borwein acceleration: zeta = eta / (1 - 2^{1-sigma}). PoleAtOne when
// |sigma - 1| < 1e-9; ValueOutOfRange for sigma <= 0.
double classical_zeta_real(double sigma, double tol = 1e-15);

// li(x) = integral of 1/log t over [2, x], by adaptive Gauss-Kronrod
// quadrature in the variable u = log t. Zero for x <= 2.
double logarithmic_integral(double x);

enum class AbscissaMethod { partial_sum_growth };

struct AbscissaEstimate {
  double sigma_hat = 0.0;
  double slope_stderr = 0.0;
  AbscissaMethod method = AbscissaMethod::partial_sum_growth;
  std::size_t points = 0;
  std::string limitations;
};

// Least-squares slope of log(sup_{t <= x} |A(t)|) against log x on a
// log-spaced grid (10 points per decade from 100 up to the limit), where
// A(x) = sum_{n <= x} a_n. Only meaningful when the true abscissa is > 0.
AbscissaEstimate estimate_abscissa(const SignCoefficients& coeffs);
AbscissaEstimate estimate_abscissa(const RealCoefficients& coeffs);

// Bisection root of f on [lo, hi]; NoSignChange unless f(lo) f(hi) <= 0.
double scan_real_zero(const std::function<double(double)>& f, double lo, double hi, double tol);

// Slope and standard error of an ordinary least-squares line fit.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
};
LineFit fit_line(std::span<const double> xs, std::span<const double> ys);

}  // namespace bplab

#include "bplab/series.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bplab/error.hpp"
#include "bplab/parallel.hpp"
#include "power.hpp"

namespace bplab {

namespace {

constexpr double kSingularTol = 1e-14;
constexpr std::uint64_t kBlock = std::uint64_t{1} << 16;

using detail::power_neg;

// Complex product with its magnitude kept in a separate log scale once the
// mantissa drifts outside [1e-3, 1e3].
class ScaledProduct {
 public:
  void multiply(Complex f) {
    mantissa_ *= f;
    const double m = std::abs(mantissa_);
    if (m > 1e3 || (m < 1e-3 && m > 0.0)) {
      log_scale_ += std::log(m);
      mantissa_ /= m;
    }
  }
  Complex value() const { return mantissa_ * std::exp(log_scale_); }

 private:
  Complex mantissa_{1.0, 0.0};
  double log_scale_ = 0.0;
};

template <class Factor>
Complex euler_product(const GPrimeSystem& system, double cutoff, Factor factor) {
  if (cutoff > system.cutoff) {
    throw Error(ErrorKind::CutoffExceeded, "product cutoff " + std::to_string(cutoff) +
                                               " beyond system cutoff " +
                                               std::to_string(system.cutoff));
  }
  ScaledProduct acc;
  for (double p : system.values) {
    if (p > cutoff) break;
    acc.multiply(factor(p));
  }
  return acc.value();
}

void check_half_plane(Complex s) {
  if (!(s.real() > 0.0)) {
    throw Error(ErrorKind::ValueOutOfRange, "Euler products need Re s > 0");
  }
}

std::vector<double> normalize_checkpoints(std::vector<double> checkpoints, double limit) {
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  if (!checkpoints.empty() && checkpoints.back() > limit) {
    throw Error(ErrorKind::CutoffExceeded, "checkpoint " + std::to_string(checkpoints.back()) +
                                               " beyond coefficient limit " +
                                               std::to_string(limit));
  }
  return checkpoints;
}

struct ComplexSum {
  NeumaierSum re;
  NeumaierSum im;
  void add(Complex v) {
    re.add(v.real());
    im.add(v.imag());
  }
  Complex value() const { return {re.value(), im.value()}; }
};

template <class T>
Complex range_sum(const Coefficients<T>& coeffs, Complex s, std::uint64_t first,
                  std::uint64_t last) {
  ComplexSum acc;
  for (std::uint64_t n = first; n <= last; ++n) {
    const T a = coeffs.values[n];
    if (a == T{}) continue;
    acc.add(static_cast<double>(a) * power_neg(static_cast<double>(n), s));
  }
  return acc.value();
}

template <class T>
PartialSumTrace partial_sums(const Coefficients<T>& coeffs, Complex s,
                             std::vector<double> checkpoints) {
  checkpoints = normalize_checkpoints(std::move(checkpoints), static_cast<double>(coeffs.limit));
  PartialSumTrace trace;
  if (checkpoints.empty()) return trace;

  const auto top = static_cast<std::uint64_t>(std::floor(checkpoints.back()));
  // Block b covers [b*kBlock + 1, (b+1)*kBlock].
  const std::uint64_t full_blocks = top / kBlock;
  std::vector<Complex> block_sums(full_blocks);
  parallel_for(full_blocks, [&](std::size_t b) {
    block_sums[b] = range_sum(coeffs, s, b * kBlock + 1, (b + 1) * kBlock);
  });

  ComplexSum prefix;
  std::uint64_t blocks_added = 0;
  for (double x : checkpoints) {
    TracePoint point;
    point.x = x;
    if (x < 1.0) {
      trace.checkpoints.push_back(point);
      continue;
    }
    const auto n = static_cast<std::uint64_t>(std::floor(x));
    const std::uint64_t whole = n / kBlock;
    while (blocks_added < whole) prefix.add(block_sums[blocks_added++]);
    ComplexSum total = prefix;
    if (n % kBlock != 0) total.add(range_sum(coeffs, s, whole * kBlock + 1, n));
    point.value = total.value();
    trace.checkpoints.push_back(point);
  }
  return trace;
}

template <class T>
AbscissaEstimate abscissa(const Coefficients<T>& coeffs) {
  if (coeffs.limit < 1000) {
    throw Error(ErrorKind::ValueOutOfRange, "abscissa estimation needs a limit of at least 1000");
  }
  std::vector<double> grid;
  const double top = std::log10(static_cast<double>(coeffs.limit));
  for (int k = 0;; ++k) {
    const double e = 2.0 + k / 10.0;
    if (e > top + 1e-12) break;
    grid.push_back(std::floor(std::pow(10.0, e) + 1e-6));
  }

  NeumaierSum running;
  double sup = 0.0;
  bool tail_nonzero = false;
  std::vector<double> lx, ly;
  std::size_t next = 0;
  for (std::uint64_t n = 1; n <= coeffs.limit && next < grid.size(); ++n) {
    running.add(static_cast<double>(coeffs.values[n]));
    const double a = std::abs(running.value());
    sup = std::max(sup, a);
    if (2 * n >= coeffs.limit && a != 0.0) tail_nonzero = true;
    while (next < grid.size() && static_cast<double>(n) >= grid[next]) {
      if (sup > 0.0) {
        lx.push_back(std::log(grid[next]));
        ly.push_back(std::log(sup));
      }
      ++next;
    }
  }
  if (!tail_nonzero || lx.size() < 3) {
    throw Error(ErrorKind::DegenerateData, "partial sums vanish identically in the tail");
  }
  LineFit fit = fit_line(lx, ly);
  AbscissaEstimate est;
  est.sigma_hat = fit.slope;
  est.slope_stderr = fit.slope_stderr;
  est.points = lx.size();
  est.limitations =
      "growth exponent of sup|A(x)|; equals the abscissa of convergence only when it is "
      "positive, a value near 0 means bounded partial sums";
  return est;
}

}  // namespace

Complex zeta_euler(const GPrimeSystem& system, Complex s, double cutoff) {
  check_half_plane(s);
  return euler_product(system, cutoff, [&](double p) {
    const Complex d = 1.0 - power_neg(p, s);
    if (std::abs(d) < kSingularTol) {
      throw Error(ErrorKind::SingularFactor, "1 - p^{-s} vanishes at p = " + std::to_string(p));
    }
    return 1.0 / d;
  });
}

Complex zeta_euler(const GPrimeSystem& system, Complex s) {
  return zeta_euler(system, s, system.cutoff);
}

Complex lambda_quotient(const GPrimeSystem& system, Complex s, double cutoff) {
  check_half_plane(s);
  return euler_product(system, cutoff, [&](double p) {
    const Complex d = 1.0 + power_neg(p, s);
    if (std::abs(d) < kSingularTol) {
      throw Error(ErrorKind::SingularFactor, "1 + p^{-s} vanishes at p = " + std::to_string(p));
    }
    return 1.0 / d;
  });
}

Complex lambda_quotient(const GPrimeSystem& system, Complex s) {
  return lambda_quotient(system, s, system.cutoff);
}

PartialSumTrace dirichlet_partial_sum(const SignCoefficients& coeffs, Complex s,
                                      std::vector<double> checkpoints) {
  return partial_sums(coeffs, s, std::move(checkpoints));
}

PartialSumTrace dirichlet_partial_sum(const RealCoefficients& coeffs, Complex s,
                                      std::vector<double> checkpoints) {
  return partial_sums(coeffs, s, std::move(checkpoints));
}

std::vector<double> running_sup_abs(const SignCoefficients& coeffs, double sigma,
                                    std::vector<double> checkpoints) {
  checkpoints = normalize_checkpoints(std::move(checkpoints), static_cast<double>(coeffs.limit));
  std::vector<double> out;
  out.reserve(checkpoints.size());
  NeumaierSum running;
  double sup = 0.0;
  std::uint64_t n = 0;
  for (double x : checkpoints) {
    const auto upto = x < 1.0 ? 0 : static_cast<std::uint64_t>(std::floor(x));
    while (n < upto) {
      ++n;
      const auto a = coeffs.values[n];
      if (a == 0) continue;
      running.add(a * std::pow(static_cast<double>(n), -sigma));
      sup = std::max(sup, std::abs(running.value()));
    }
    out.push_back(sup);
  }
  return out;
}

PartialSumTrace dirichlet_partial_sum(const GIntegerList& list, GIntegerWeight weight, Complex s,
                                      std::vector<double> checkpoints) {
  checkpoints = normalize_checkpoints(std::move(checkpoints), list.x_max);
  PartialSumTrace trace;
  ComplexSum acc;
  std::size_t i = 0;
  for (double x : checkpoints) {
    for (; i < list.entries.size() && list.entries[i].value <= x; ++i) {
      const GInteger& g = list.entries[i];
      const int w = weight == GIntegerWeight::one ? 1
                    : weight == GIntegerWeight::lambda ? g.lambda
                                                       : g.mu;
      if (w != 0) acc.add(static_cast<double>(w) * power_neg(g.value, s));
    }
    trace.checkpoints.push_back({x, acc.value()});
  }
  return trace;
}

double classical_zeta_real(double sigma, double tol) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorKind::ValueOutOfRange, "zeta needs a finite sigma > 0");
  }
  if (std::abs(sigma - 1.0) < 1e-9) {
    throw Error(ErrorKind::PoleAtOne, "zeta has a pole at sigma = 1");
  }
  tol = std::max(tol, 1e-18);
  const long double s = sigma;
  const long double denom = 1.0L - std::pow(2.0L, 1.0L - s);
  // Truncation error of the accelerated eta series is at most
  // 3 (3 + sqrt 8)^{-n} / |1 - 2^{1-s}| on the positive real axis.
  const long double rate = std::log(3.0L + std::sqrt(8.0L));
  int n = static_cast<int>(std::ceil((std::log(3.0L / std::abs(denom)) - std::log((long double)tol)) /
                                     rate)) + 2;
  n = std::clamp(n, 8, 200);

  // d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!)
  std::vector<long double> d(n + 1);
  long double term = 1.0L;
  long double acc = term;
  d[0] = acc;
  for (int i = 1; i <= n; ++i) {
    term *= 4.0L * (n + i - 1) * (n - i + 1) / ((2.0L * i - 1.0L) * (2.0L * i));
    acc += term;
    d[i] = acc;
  }
  long double sum = 0.0L;
  for (int k = 0; k < n; ++k) {
    const long double t = (d[k] - d[n]) / std::pow(static_cast<long double>(k + 1), s);
    sum += (k % 2 == 0) ? t : -t;
  }
  const long double eta = -sum / d[n];
  return static_cast<double>(eta / denom);
}

double logarithmic_integral(double x) {
  if (!(x > 2.0)) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  auto integrand = [](double u) { return std::exp(u) / u; };
  return gauss_kronrod<double, 31>::integrate(integrand, std::log(2.0), std::log(x), 30, 1e-13);
}

AbscissaEstimate estimate_abscissa(const SignCoefficients& coeffs) { return abscissa(coeffs); }
AbscissaEstimate estimate_abscissa(const RealCoefficients& coeffs) { return abscissa(coeffs); }

double scan_real_zero(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (lo > hi) std::swap(lo, hi);
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (std::signbit(flo) == std::signbit(fhi) || std::isnan(flo) || std::isnan(fhi)) {
    throw Error(ErrorKind::NoSignChange, "no sign change on [" + std::to_string(lo) + ", " +
                                             std::to_string(hi) + "]");
  }
  for (int iter = 0; iter < 400 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (std::signbit(fm) == std::signbit(flo)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LineFit fit_line(std::span<const double> xs, std::span<const double> ys) {
  const std::size_t m = xs.size();
  if (m < 2 || ys.size() != m) {
    throw Error(ErrorKind::DegenerateData, "line fit needs at least two points");
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::DegenerateData, "line fit with a single abscissa");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (m > 2) {
    double ssr = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
      ssr += r * r;
    }
    fit.slope_stderr = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
  }
  return fit;
}

}  // namespace bplab

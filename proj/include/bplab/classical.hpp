#pragma once

// Ordinary-prime infrastructure: segmented smallest-prime-factor sieve,
// completely multiplicative coefficient sieves and the short-interval
// prime count inequality check.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace bplab {

inline constexpr std::uint64_t kDefaultSegmentSize = std::uint64_t{1} << 22;

struct PrimeTable {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> primes;
  // spf[n] for n in [0, limit]; spf[0] = spf[1] = 0.
  std::vector<std::uint32_t> spf;

  std::uint64_t pi(std::uint64_t x) const;  // x <= limit
  bool is_prime(std::uint64_t n) const { return n >= 2 && n <= limit && spf[n] == n; }
};

PrimeTable sieve_primes(std::uint64_t limit, std::uint64_t segment_size = kDefaultSegmentSize);

// Coefficients a_1..a_limit of a Dirichlet series, stored at values[n];
// values[0] is unused and zero.
template <class T>
struct Coefficients {
  std::uint64_t limit = 0;
  std::vector<T> values;

  T operator[](std::uint64_t n) const { return values[n]; }
};

using SignCoefficients = Coefficients<std::int8_t>;
using RealCoefficients = Coefficients<double>;

// lambda_P(n): 0 when some prime factor of n lies outside subset, otherwise
// (-1)^Omega(n). subset must be sorted and contain primes <= table.limit.
SignCoefficients liouville_sieve(const PrimeTable& table, std::span<const std::uint64_t> subset);
SignCoefficients liouville_sieve(const PrimeTable& table,
                                 const std::function<bool(std::uint64_t)>& in_subset);

// mu(n) over [1, table.limit].
SignCoefficients mobius_sieve(const PrimeTable& table);

// Completely multiplicative f with f(p) = prime_value(p).
RealCoefficients cm_from_prime_values(const PrimeTable& table,
                                      const std::function<double(std::uint64_t)>& prime_value);

// f(p) = -1/log log p for p >= 29, 0 below.
double loglog_prime_value(std::uint64_t p);

struct BhpReport {
  std::uint64_t x = 0;
  std::uint64_t y = 0;  // ceil(x^{21/40})
  std::uint64_t count = 0;  // pi(x + y) - pi(x)
  double bound = 0.0;  // y / (12 log x)
  bool holds = false;
};

// Checks pi(x + y) - pi(x) >= y / (12 log x) at y = ceil(x^{21/40}).
// CutoffExceeded when x + y > table.limit.
BhpReport check_bhp(const PrimeTable& table, std::uint64_t x);

}  // namespace bplab

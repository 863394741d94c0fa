#include "bplab/classical.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bplab/error.hpp"
#include "bplab/parallel.hpp"

namespace bplab {

std::uint64_t PrimeTable::pi(std::uint64_t x) const {
  return static_cast<std::uint64_t>(std::upper_bound(primes.begin(), primes.end(), x) -
                                    primes.begin());
}

PrimeTable sieve_primes(std::uint64_t limit, std::uint64_t segment_size) {
  PrimeTable table;
  table.limit = limit;
  table.spf.assign(limit + 1, 0);
  if (limit < 2) return table;
  if (limit > 0xffffffffull) {
    throw Error(ErrorKind::ValueOutOfRange, "sieve limit above 2^32 is not supported");
  }
  segment_size = std::max<std::uint64_t>(segment_size, 1024);

  // Base primes up to sqrt(limit) by a plain sieve.
  auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while ((root + 1) * (root + 1) <= limit) ++root;
  while (root * root > limit) --root;
  std::vector<char> composite(root + 1, 0);
  std::vector<std::uint32_t> base;
  for (std::uint64_t i = 2; i <= root; ++i) {
    if (composite[i]) continue;
    base.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= root; j += i) composite[j] = 1;
  }

  // Each segment owns spf[lo, hi), so segments can be filled independently.
  const std::uint64_t segments = (limit + 1 + segment_size - 1) / segment_size;
  parallel_for(segments, [&](std::size_t s) {
    const std::uint64_t lo = std::max<std::uint64_t>(2, s * segment_size);
    const std::uint64_t hi = std::min<std::uint64_t>(limit + 1, (s + 1) * segment_size);
    if (lo >= hi) return;
    for (std::uint32_t p : base) {
      const std::uint64_t pp = std::uint64_t{p} * p;
      if (pp >= hi) break;
      std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
      for (std::uint64_t m = start; m < hi; m += p) {
        if (table.spf[m] == 0) table.spf[m] = p;
      }
    }
    for (std::uint64_t n = lo; n < hi; ++n) {
      if (table.spf[n] == 0) table.spf[n] = static_cast<std::uint32_t>(n);
    }
  });

  for (std::uint64_t n = 2; n <= limit; ++n) {
    if (table.spf[n] == n) table.primes.push_back(n);
  }
  return table;
}

SignCoefficients liouville_sieve(const PrimeTable& table,
                                 const std::function<bool(std::uint64_t)>& in_subset) {
  SignCoefficients out;
  out.limit = table.limit;
  out.values.assign(table.limit + 1, 0);
  if (table.limit == 0) return out;
  out.values[1] = 1;
  for (std::uint64_t n = 2; n <= table.limit; ++n) {
    const std::uint64_t p = table.spf[n];
    if (p == n) {
      out.values[n] = in_subset(n) ? -1 : 0;
    } else {
      out.values[n] = static_cast<std::int8_t>(out.values[p] * out.values[n / p]);
    }
  }
  return out;
}

SignCoefficients liouville_sieve(const PrimeTable& table, std::span<const std::uint64_t> subset) {
  std::vector<char> member(table.limit + 1, 0);
  for (std::uint64_t p : subset) {
    if (p > table.limit) {
      throw Error(ErrorKind::CutoffExceeded,
                  "subset prime " + std::to_string(p) + " beyond sieve limit");
    }
    if (!table.is_prime(p)) {
      throw Error(ErrorKind::ValueOutOfRange, std::to_string(p) + " is not prime");
    }
    member[p] = 1;
  }
  return liouville_sieve(table, [&](std::uint64_t p) { return member[p] != 0; });
}

SignCoefficients mobius_sieve(const PrimeTable& table) {
  SignCoefficients out;
  out.limit = table.limit;
  out.values.assign(table.limit + 1, 0);
  if (table.limit == 0) return out;
  out.values[1] = 1;
  for (std::uint64_t n = 2; n <= table.limit; ++n) {
    const std::uint64_t p = table.spf[n];
    const std::uint64_t rest = n / p;
    if (rest % p == 0) {
      out.values[n] = 0;
    } else {
      out.values[n] = static_cast<std::int8_t>(-out.values[rest]);
    }
  }
  return out;
}

RealCoefficients cm_from_prime_values(const PrimeTable& table,
                                      const std::function<double(std::uint64_t)>& prime_value) {
  RealCoefficients out;
  out.limit = table.limit;
  out.values.assign(table.limit + 1, 0.0);
  if (table.limit == 0) return out;
  out.values[1] = 1.0;
  for (std::uint64_t n = 2; n <= table.limit; ++n) {
    const std::uint64_t p = table.spf[n];
    out.values[n] = (p == n) ? prime_value(n) : out.values[p] * out.values[n / p];
  }
  return out;
}

double loglog_prime_value(std::uint64_t p) {
  if (p < 29) return 0.0;
  return -1.0 / std::log(std::log(static_cast<double>(p)));
}

BhpReport check_bhp(const PrimeTable& table, std::uint64_t x) {
  if (x < 2) throw Error(ErrorKind::ValueOutOfRange, "check_bhp needs x >= 2");
  BhpReport r;
  r.x = x;
  r.y = static_cast<std::uint64_t>(
      std::ceil(std::pow(static_cast<long double>(x), 21.0L / 40.0L)));
  if (x + r.y > table.limit) {
    throw Error(ErrorKind::CutoffExceeded, "x + y = " + std::to_string(x + r.y) +
                                               " beyond sieve limit " +
                                               std::to_string(table.limit));
  }
  r.count = table.pi(x + r.y) - table.pi(x);
  r.bound = static_cast<double>(r.y) / (12.0 * std::log(static_cast<double>(x)));
  r.holds = static_cast<double>(r.count) >= r.bound;
  return r;
}

}  // namespace bplab

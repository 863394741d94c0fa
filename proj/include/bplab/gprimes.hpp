#pragma once

// Finite truncations of Beurling generalized prime systems.
//
// A GPrimeSystem is a sorted multiset of reals > 1 that is known to be
// complete below its cutoff. Equal values are distinct members; their order
// is the insertion order, which the matching code relies on for stable
// pairing.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace bplab {

struct GPrimeSystem {
  std::vector<double> values;
  double cutoff = std::numeric_limits<double>::infinity();

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
};

struct GInteger {
  double value = 1.0;
  std::uint32_t omega_total = 0;
  bool squarefree = true;
  std::int8_t lambda = 1;
  std::int8_t mu = 1;
};

struct GIntegerList {
  std::vector<GInteger> entries;
  double x_max = 0.0;
  // false when x_max exceeded the cutoff of the source system
  bool complete = true;

  std::size_t size() const { return entries.size(); }
};

inline constexpr std::size_t kDefaultEnumerationCap = 100'000'000;

// Throws ValueOutOfRange for any value <= 1 (or non-finite), and when the
// override cutoff lies below the largest value. An empty system is complete
// everywhere, so its default cutoff is +inf.
GPrimeSystem from_reals(std::vector<double> values, std::optional<double> cutoff = std::nullopt);

// p -> p^{1/a}; cutoff -> cutoff^{1/a}. Throws InvalidExponent unless 0 < a <= 1.
GPrimeSystem scale(const GPrimeSystem& system, double a);

// Multiset union. Members of s1 precede equal members of s2.
GPrimeSystem multiset_union(const GPrimeSystem& s1, const GPrimeSystem& s2);

// Keeps members <= x and lowers the cutoff to x. Throws CutoffExceeded when
// x is beyond the current cutoff.
GPrimeSystem truncate(const GPrimeSystem& system, double x);

// Removes the members at the given indices (positions in system.values).
GPrimeSystem remove_indices(const GPrimeSystem& system, std::span<const std::size_t> indices);

// All generalized integers <= x_max, one entry per factorization, sorted by
// value. Priority-queue expansion over non-decreasing factor indices.
GIntegerList enumerate_gintegers(const GPrimeSystem& system, double x_max,
                                 std::size_t cap = kDefaultEnumerationCap);

// Number of sorted values <= x.
std::size_t count_upto(std::span<const double> sorted_values, double x);
// R(x) for the system; CutoffExceeded when x > cutoff.
std::size_t count_upto(const GPrimeSystem& system, double x);
// N(x) for the enumerated integers; CutoffExceeded when x > x_max.
std::size_t count_upto(const GIntegerList& list, double x);

// Members in (x, x + x^h]. CutoffExceeded when x + x^h > cutoff.
std::size_t short_interval_count(const GPrimeSystem& system, double x, double h);

// Main term x^{c+h-1}/log x expected for a short-interval count in a
// system scaled by 1/c from a good base system.
double short_interval_main_term(double c, double h, double x);

}  // namespace bplab

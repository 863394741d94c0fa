#pragma once

// Interval-matching injection between two multisets of generalized primes.
//
// Breakpoints T_1 = t1, T_{n+1} = T_n + T_n^h cut (1, inf) into intervals
// (T_n, T_{n+1}]. Beyond the first breakpoint T_{n0} >= x0 every source is
// paired with a target from its own interval; sources in the initial segment
// (1, T_{n0}] take the smallest targets of that segment in order.

#include <cstdint>
#include <ostream>
#include <vector>

#include "bplab/gprimes.hpp"
#include "bplab/series.hpp"

namespace bplab {

struct IntervalLadder {
  std::vector<double> breakpoints;
  double h = 1.0;

  // 1-based index n of the interval (T_n, T_{n+1}] that contains x, or 0 when
  // x <= T_1 or x > T_last.
  std::size_t interval_of(double x) const;
  double width(std::size_t n) const { return breakpoints[n] - breakpoints[n - 1]; }
};

// Breakpoints from t1 until the last one is >= x_max. Requires 0 < h <= 1
// and t1 >= 1.
IntervalLadder build_ladder(double h, double x_max, double t1 = 1.0);

// How sources are paired with the free targets of their interval.
enum class PairingRule {
  // k-th smallest source to the k-th smallest target.
  rank_order,
  // each source to the smallest free target >= itself, moving left only as
  // far as needed to leave room for the remaining sources of the interval.
  ceiling,
};

struct Pair {
  double source = 0.0;
  double target = 0.0;
  std::size_t source_index = 0;  // position in Q.values
  std::size_t target_index = 0;  // position in Qstar.values
  std::size_t interval = 0;  // 0 = initial segment, else ladder interval n
};

struct InjectionPairing {
  std::vector<Pair> pairs;  // ascending source order
  IntervalLadder ladder;
  std::size_t n0 = 1;  // ladder index of the first breakpoint >= x0
  double n0_breakpoint = 1.0;
  PairingRule rule = PairingRule::ceiling;
};

struct PairingOptions {
  double x0 = 100.0;
  double t1 = 1.0;
  PairingRule rule = PairingRule::ceiling;
  int stage = 0;  // copied into IntervalDeficitError
};

// IntervalDeficitError when an interval (or the initial segment) has more
// sources than free targets; CutoffExceeded when Q extends past Qstar's cutoff.
InjectionPairing build_injection(const GPrimeSystem& q, const GPrimeSystem& qstar, double h,
                                 const PairingOptions& options = {});

struct PairingAudit {
  std::size_t pairs = 0;
  std::size_t initial_pairs = 0;
  bool injective = true;
  bool interval_preserving = true;
  bool close = true;
  double max_abs_shift = 0.0;
  double mean_abs_shift = 0.0;
  // max |target - source| / T_n^h over pairs beyond the initial segment
  double max_relative_shift = 0.0;

  bool ok() const { return injective && interval_preserving && close; }
};

// Re-checks injectivity, interval preservation and closeness
// |target - source| <= T_n^h (1 + 1e-9) pair by pair.
PairingAudit audit_pairing(const InjectionPairing& pairing);

// Product over pairs of (1 - I(q)^{-s}) / (1 - q^{-s}) in ascending source
// order. SingularFactor when a denominator nearly vanishes.
Complex quotient_product(const InjectionPairing& pairing, Complex s);

// |log(partial product over q <= cutoff) - log(partial over q <= cutoff/2)|,
// i.e. the size of the contribution of the dyadic block (cutoff/2, cutoff].
double quotient_tail_diagnostic(const InjectionPairing& pairing, Complex s, double cutoff);

// CSV with header source,target,interval_index.
void write_pairing_csv(std::ostream& out, const InjectionPairing& pairing);

}  // namespace bplab

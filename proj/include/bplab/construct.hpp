#pragma once

// Prime sets whose Liouville-type series vanish at prescribed real points,
// built by injecting scaled copies of the primes back into the primes, and
// numerical zero checks on the result.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bplab/matching.hpp"
#include "bplab/series.hpp"

namespace bplab {

enum class Theorem { single_zero, thm1, thm2 };

// "single", "1", "2"
std::string theorem_id(Theorem t);
// Accepts the ids above; InvalidParameters otherwise.
Theorem parse_theorem(const std::string& id);

struct ConstructionParams {
  Theorem theorem = Theorem::thm2;
  double a = 0.9;
  std::optional<double> b;
  std::optional<double> eps;  // defaults to a/8
  std::uint64_t limit = 1'000'000;
  // Relaxes the (a, b) constraint to the one that holds under RH. Nothing
  // else changes.
  bool assume_rh = false;

  double effective_eps() const { return eps ? *eps : a / 8.0; }
};

// Throws InvalidParameters with the violated condition in the message.
void validate(const ConstructionParams& params);

// h = 1 - a/2 + 2 eps, the exponent for injecting R^{1/b} into R^{1/a}.
double stage_one_h(double a, double eps);
// h = max{1 - a/2 + 2 eps, 21/40}, the exponent for injections into the primes.
double prime_injection_h(double a, double eps);

struct CountingPoint {
  double x = 0.0;
  std::size_t count = 0;
  double target = 0.0;
  double ratio = 0.0;  // count / target
};

struct CountingSanity {
  std::vector<CountingPoint> points;  // upper decade of the range
  double tolerance = 0.25;
  bool holds = false;
};

struct PrimeSetArtifact {
  std::vector<std::uint64_t> primes;
  ConstructionParams params;
  double h_used = 0.0;
  double stage_one_h = 0.0;  // thm1 only
  PairingAudit pairing_audit;
  PairingAudit stage_one_audit;  // thm1 only
  InjectionPairing pairing;  // the injection into the primes; empty when read from file
  std::vector<double> intended_zeros;
  double sigma_a = 0.0;
  double sigma_c = 0.0;  // NaN when not predicted
  CountingSanity counting;
};

// li-shaped main term for |{p in P : p <= x}|.
double counting_target(const ConstructionParams& params, double x);
// Counting check on x = limit * 10^{-k/4}, k = 0..4.
CountingSanity counting_sanity(const std::vector<std::uint64_t>& primes,
                               const ConstructionParams& params, double tolerance = 0.25);

PrimeSetArtifact construct_single_zero(double a, std::uint64_t limit,
                                       std::optional<double> eps = std::nullopt);
PrimeSetArtifact construct_thm2(const ConstructionParams& params);
PrimeSetArtifact construct_thm1(const ConstructionParams& params);
// Dispatches on params.theorem.
PrimeSetArtifact construct(const ConstructionParams& params);

enum class Trend { shrinking, stabilizing, growing };
std::string trend_name(Trend t);

struct VerifyOptions {
  // Empty means decades 10^3, 10^4, ... up to the limit (limit included).
  std::vector<double> checkpoints;
  // Stabilizing when the last two |S| differ by at most this fraction of the last.
  double stabilize_tol = 0.05;
};

struct ZeroReport {
  double s0 = 0.0;
  PartialSumTrace trace;
  std::vector<TracePoint> quotient;  // truncated lambda quotient at each checkpoint
  std::vector<double> running_sup;
  Trend verdict = Trend::growing;
};

std::vector<double> decade_checkpoints(std::uint64_t limit);
Trend classify_trend(const PartialSumTrace& trace, double stabilize_tol = 0.05);

// Partial sums of lambda_P(n) n^{-s0} for P = primes (all <= limit).
ZeroReport verify_zero(const std::vector<std::uint64_t>& primes, std::uint64_t limit, double s0,
                       const VerifyOptions& options = {});
ZeroReport verify_zero(const PrimeSetArtifact& artifact, double s0,
                       const VerifyOptions& options = {});
// Same, reusing a sieve that reaches at least the last checkpoint.
ZeroReport verify_zero(const PrimeTable& table, const std::vector<std::uint64_t>& primes,
                       double s0, const VerifyOptions& options = {});

}  // namespace bplab

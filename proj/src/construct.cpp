#include "bplab/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "bplab/classical.hpp"
#include "bplab/error.hpp"

namespace bplab {

std::string theorem_id(Theorem t) {
  switch (t) {
    case Theorem::single_zero:
      return "single";
    case Theorem::thm1:
      return "1";
    case Theorem::thm2:
      return "2";
  }
  return "?";
}

Theorem parse_theorem(const std::string& id) {
  if (id == "single") return Theorem::single_zero;
  if (id == "1") return Theorem::thm1;
  if (id == "2") return Theorem::thm2;
  throw Error(ErrorKind::InvalidParameters, "unknown theorem id '" + id + "'");
}

namespace {

[[noreturn]] void reject(const std::string& why) { throw Error(ErrorKind::InvalidParameters, why); }

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

}  // namespace

void validate(const ConstructionParams& p) {
  if (!std::isfinite(p.a)) reject("a must be finite");
  if (p.limit < 10'000) reject("limit must be at least 10000");
  if (p.limit > 0xffffffffull) reject("limit above 2^32 is not supported");

  if (p.theorem == Theorem::single_zero) {
    if (!(p.a > 0.0 && p.a <= 1.0)) reject("single zero needs 0 < a <= 1, got a = " + num(p.a));
    if (p.b) reject("single zero takes no b");
  } else {
    if (!p.b) reject("theorem " + theorem_id(p.theorem) + " needs b");
    const double a = p.a;
    const double b = *p.b;
    if (!std::isfinite(b)) reject("b must be finite");
    const bool rh_endpoint = p.assume_rh && p.theorem == Theorem::thm1 && a == 1.0 && b == 0.5;
    if (!rh_endpoint) {
      const double lower = p.assume_rh ? a / 2.0 : std::max(a / 2.0, a - 19.0 / 40.0);
      if (!(a > 0.0 && lower > 0.0 && lower < b && b < a && a < 1.0)) {
        reject("need 0 < " + num(lower) + " < b < a < 1, got a = " + num(a) + ", b = " + num(b));
      }
    }
  }
  const double eps = p.effective_eps();
  if (!(eps > 0.0 && eps < p.a / 4.0)) {
    reject("eps must lie in (0, a/4) = (0, " + num(p.a / 4.0) + "), got " + num(eps));
  }
}

double stage_one_h(double a, double eps) { return 1.0 - a / 2.0 + 2.0 * eps; }

double prime_injection_h(double a, double eps) {
  return std::max(stage_one_h(a, eps), 21.0 / 40.0);
}

double counting_target(const ConstructionParams& p, double x) {
  const double main = logarithmic_integral(std::pow(x, p.a));
  switch (p.theorem) {
    case Theorem::single_zero:
      return main;
    case Theorem::thm1:
      return main - logarithmic_integral(std::pow(x, *p.b));
    case Theorem::thm2:
      return main + logarithmic_integral(std::pow(x, *p.b));
  }
  return main;
}

CountingSanity counting_sanity(const std::vector<std::uint64_t>& primes,
                               const ConstructionParams& params, double tolerance) {
  CountingSanity out;
  out.tolerance = tolerance;
  out.holds = true;
  const auto limit = static_cast<double>(params.limit);
  for (int k = 4; k >= 0; --k) {
    CountingPoint pt;
    pt.x = std::floor(limit * std::pow(10.0, -k / 4.0));
    pt.count = static_cast<std::size_t>(
        std::upper_bound(primes.begin(), primes.end(), static_cast<std::uint64_t>(pt.x)) -
        primes.begin());
    pt.target = counting_target(params, pt.x);
    pt.ratio = pt.target > 0.0 ? static_cast<double>(pt.count) / pt.target
                               : std::numeric_limits<double>::infinity();
    if (!(std::abs(pt.ratio - 1.0) <= tolerance)) out.holds = false;
    out.points.push_back(pt);
  }
  return out;
}

namespace {

GPrimeSystem prime_system(const PrimeTable& table) {
  GPrimeSystem r;
  r.values.assign(table.primes.begin(), table.primes.end());
  r.cutoff = static_cast<double>(table.limit);
  return r;
}

// Final stage shared by all pipelines: inject Q into the primes <= limit.
void inject_into_primes(PrimeSetArtifact& art, const GPrimeSystem& q, const GPrimeSystem& r,
                        int stage) {
  PairingOptions opts;
  opts.stage = stage;
  art.pairing = build_injection(q, r, art.h_used, opts);
  art.pairing_audit = audit_pairing(art.pairing);
  art.primes.reserve(art.pairing.pairs.size());
  for (const Pair& pr : art.pairing.pairs) {
    art.primes.push_back(static_cast<std::uint64_t>(pr.target));
  }
  std::sort(art.primes.begin(), art.primes.end());
  art.counting = counting_sanity(art.primes, art.params);
}

}  // namespace

PrimeSetArtifact construct_single_zero(double a, std::uint64_t limit, std::optional<double> eps) {
  ConstructionParams params;
  params.theorem = Theorem::single_zero;
  params.a = a;
  params.eps = eps;
  params.limit = limit;
  validate(params);

  PrimeSetArtifact art;
  art.params = params;
  art.h_used = prime_injection_h(a, params.effective_eps());
  art.intended_zeros = {a};
  art.sigma_a = a;
  art.sigma_c = std::numeric_limits<double>::quiet_NaN();

  const PrimeTable table = sieve_primes(limit);
  const GPrimeSystem r = prime_system(table);
  const GPrimeSystem q = truncate(scale(r, a), static_cast<double>(limit));
  inject_into_primes(art, q, r, 0);
  return art;
}

PrimeSetArtifact construct_thm2(const ConstructionParams& params) {
  if (params.theorem != Theorem::thm2) reject("construct_thm2 called with another theorem id");
  validate(params);
  const double a = params.a;
  const double b = *params.b;

  PrimeSetArtifact art;
  art.params = params;
  art.h_used = prime_injection_h(a, params.effective_eps());
  art.intended_zeros = {a, b};
  art.sigma_a = a;
  const double conv = 3.0 * a * b / (2.0 * (a + b));
  art.sigma_c = params.assume_rh ? conv : std::max(conv, a - 19.0 / 40.0);

  const PrimeTable table = sieve_primes(params.limit);
  const GPrimeSystem r = prime_system(table);
  const auto lim = static_cast<double>(params.limit);
  const GPrimeSystem q = truncate(multiset_union(scale(r, a), scale(r, b)), lim);
  inject_into_primes(art, q, r, 0);
  return art;
}

PrimeSetArtifact construct_thm1(const ConstructionParams& params) {
  if (params.theorem != Theorem::thm1) reject("construct_thm1 called with another theorem id");
  validate(params);
  const double a = params.a;
  const double b = *params.b;
  const double eps = params.effective_eps();

  PrimeSetArtifact art;
  art.params = params;
  art.stage_one_h = stage_one_h(a, eps);
  art.h_used = prime_injection_h(a, eps);
  art.intended_zeros = {a};
  art.sigma_a = a;
  art.sigma_c = b;

  const PrimeTable table = sieve_primes(params.limit);
  const GPrimeSystem r = prime_system(table);
  const auto lim = static_cast<double>(params.limit);
  const GPrimeSystem ra = truncate(scale(r, a), lim);
  const GPrimeSystem rb = truncate(scale(r, b), lim);

  // Stage 1: R^{1/b} into R^{1/a}.
  PairingOptions opts;
  opts.stage = 1;
  const InjectionPairing first = build_injection(rb, ra, art.stage_one_h, opts);
  art.stage_one_audit = audit_pairing(first);

  // Stage 2: drop the paired copies by position.
  std::vector<std::size_t> used;
  used.reserve(first.pairs.size());
  for (const Pair& pr : first.pairs) used.push_back(pr.target_index);
  const GPrimeSystem q = remove_indices(ra, used);

  // Stage 3: the remainder into the primes.
  inject_into_primes(art, q, r, 3);
  return art;
}

PrimeSetArtifact construct(const ConstructionParams& params) {
  switch (params.theorem) {
    case Theorem::single_zero:
      if (params.b) reject("single zero takes no b");
      return construct_single_zero(params.a, params.limit, params.eps);
    case Theorem::thm1:
      return construct_thm1(params);
    case Theorem::thm2:
      return construct_thm2(params);
  }
  reject("unknown theorem");
}

std::string trend_name(Trend t) {
  switch (t) {
    case Trend::shrinking:
      return "shrinking";
    case Trend::stabilizing:
      return "stabilizing";
    case Trend::growing:
      return "growing";
  }
  return "?";
}

std::vector<double> decade_checkpoints(std::uint64_t limit) {
  std::vector<double> cps;
  const auto top = static_cast<double>(limit);
  for (double x = 1000.0; x < top; x *= 10.0) cps.push_back(x);
  cps.push_back(top);
  return cps;
}

Trend classify_trend(const PartialSumTrace& trace, double stabilize_tol) {
  const auto& c = trace.checkpoints;
  if (c.size() < 2) return Trend::stabilizing;
  const Complex first = c.front().value;
  const Complex prev = c[c.size() - 2].value;
  const Complex last = c.back().value;
  if (std::abs(last) != 0.0 && std::abs(last - prev) <= stabilize_tol * std::abs(last)) {
    return Trend::stabilizing;
  }
  return std::abs(last) < std::abs(first) ? Trend::shrinking : Trend::growing;
}

ZeroReport verify_zero(const PrimeTable& table, const std::vector<std::uint64_t>& primes,
                       double s0, const VerifyOptions& options) {
  std::vector<double> cps =
      options.checkpoints.empty() ? decade_checkpoints(table.limit) : options.checkpoints;
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());

  const auto in_range = std::upper_bound(primes.begin(), primes.end(), table.limit);
  const std::span<const std::uint64_t> subset(primes.data(),
                                              static_cast<std::size_t>(in_range - primes.begin()));
  const SignCoefficients lambda = liouville_sieve(table, subset);

  ZeroReport rep;
  rep.s0 = s0;
  rep.trace = dirichlet_partial_sum(lambda, Complex{s0, 0.0}, cps);
  rep.running_sup = running_sup_abs(lambda, s0, cps);

  GPrimeSystem system;
  system.values.assign(subset.begin(), subset.end());
  system.cutoff = static_cast<double>(table.limit);
  if (s0 > 0.0) {
    for (double x : cps) rep.quotient.push_back({x, lambda_quotient(system, Complex{s0, 0.0}, x)});
  }
  rep.verdict = classify_trend(rep.trace, options.stabilize_tol);
  return rep;
}

ZeroReport verify_zero(const std::vector<std::uint64_t>& primes, std::uint64_t limit, double s0,
                       const VerifyOptions& options) {
  std::uint64_t top = limit;
  if (!options.checkpoints.empty()) {
    const double last = *std::max_element(options.checkpoints.begin(), options.checkpoints.end());
    if (last > static_cast<double>(limit)) {
      throw Error(ErrorKind::CutoffExceeded, "checkpoint beyond the prime-set limit");
    }
    top = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::floor(last)));
  }
  const PrimeTable table = sieve_primes(top);
  VerifyOptions opts = options;
  if (opts.checkpoints.empty()) opts.checkpoints = decade_checkpoints(limit);
  return verify_zero(table, primes, s0, opts);
}

ZeroReport verify_zero(const PrimeSetArtifact& artifact, double s0, const VerifyOptions& options) {
  return verify_zero(artifact.primes, artifact.params.limit, s0, options);
}

}  // namespace bplab

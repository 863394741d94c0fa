#include "bplab/matching.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "bplab/error.hpp"
#include "power.hpp"

namespace bplab {

std::size_t IntervalLadder::interval_of(double x) const {
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
  if (it == breakpoints.begin() || it == breakpoints.end()) return 0;
  return static_cast<std::size_t>(it - breakpoints.begin());
}

IntervalLadder build_ladder(double h, double x_max, double t1) {
  if (!(h > 0.0 && h <= 1.0)) {
    throw Error(ErrorKind::ValueOutOfRange, "ladder exponent h must lie in (0,1]");
  }
  if (!(t1 >= 1.0)) throw Error(ErrorKind::ValueOutOfRange, "ladder start must be >= 1");
  if (!std::isfinite(x_max)) throw Error(ErrorKind::ValueOutOfRange, "ladder end must be finite");
  IntervalLadder ladder;
  ladder.h = h;
  double t = t1;
  ladder.breakpoints.push_back(t);
  while (t < x_max) {
    t += std::pow(t, h);
    ladder.breakpoints.push_back(t);
  }
  return ladder;
}

namespace {

// Chooses, for k sorted sources, k distinct increasing indices into the m
// sorted candidates (k <= m).
std::vector<std::size_t> choose_targets(std::span<const double> sources,
                                        std::span<const double> candidates, PairingRule rule) {
  const std::size_t k = sources.size();
  const std::size_t m = candidates.size();
  std::vector<std::size_t> chosen(k);
  if (rule == PairingRule::rank_order) {
    for (std::size_t j = 0; j < k; ++j) chosen[j] = j;
    return chosen;
  }
  std::size_t next_free = 0;
  for (std::size_t j = 0; j < k; ++j) {
    auto lb = static_cast<std::size_t>(
        std::lower_bound(candidates.begin(), candidates.end(), sources[j]) - candidates.begin());
    std::size_t t = std::max(lb, next_free);
    t = std::min(t, m - (k - j));
    chosen[j] = t;
    next_free = t + 1;
  }
  return chosen;
}

}  // namespace

InjectionPairing build_injection(const GPrimeSystem& q, const GPrimeSystem& qstar, double h,
                                 const PairingOptions& options) {
  if (q.cutoff > qstar.cutoff) {
    throw Error(ErrorKind::CutoffExceeded,
                "source system reaches " + std::to_string(q.cutoff) +
                    " but targets are only complete to " + std::to_string(qstar.cutoff));
  }
  const double top = q.empty() ? options.x0 : std::max(options.x0, q.values.back());
  InjectionPairing pairing;
  pairing.rule = options.rule;
  pairing.ladder = build_ladder(h, top, options.t1);
  const auto& T = pairing.ladder.breakpoints;
  pairing.n0 = static_cast<std::size_t>(std::lower_bound(T.begin(), T.end(), options.x0) -
                                        T.begin()) + 1;
  pairing.n0_breakpoint = T[pairing.n0 - 1];
  pairing.pairs.reserve(q.size());

  std::span<const double> src(q.values);
  std::span<const double> dst(qstar.values);

  // Initial segment (1, T_{n0}]: the k-th source takes the k-th target.
  const std::size_t init_src = count_upto(src, pairing.n0_breakpoint);
  const std::size_t init_dst = count_upto(dst, pairing.n0_breakpoint);
  if (init_src > init_dst) {
    throw IntervalDeficitError(0, T.front(), pairing.n0_breakpoint, init_src, init_dst,
                               options.stage);
  }
  for (std::size_t j = 0; j < init_src; ++j) {
    pairing.pairs.push_back({src[j], dst[j], j, j, 0});
  }

  std::size_t si = init_src;
  std::size_t di = init_dst;
  for (std::size_t n = pairing.n0; si < src.size() && n < T.size(); ++n) {
    const double lo = T[n - 1];
    const double hi = T[n];
    std::size_t s_end = si;
    while (s_end < src.size() && src[s_end] <= hi) ++s_end;
    while (di < dst.size() && dst[di] <= lo) ++di;
    std::size_t d_end = di;
    while (d_end < dst.size() && dst[d_end] <= hi) ++d_end;
    const std::size_t k = s_end - si;
    const std::size_t m = d_end - di;
    if (k > m) throw IntervalDeficitError(static_cast<std::int64_t>(n), lo, hi, k, m, options.stage);
    if (k > 0) {
      auto chosen = choose_targets(src.subspan(si, k), dst.subspan(di, m), options.rule);
      for (std::size_t j = 0; j < k; ++j) {
        pairing.pairs.push_back({src[si + j], dst[di + chosen[j]], si + j, di + chosen[j], n});
      }
    }
    si = s_end;
    di = d_end;
  }
  return pairing;
}

PairingAudit audit_pairing(const InjectionPairing& pairing) {
  PairingAudit audit;
  audit.pairs = pairing.pairs.size();
  std::vector<std::size_t> targets;
  targets.reserve(audit.pairs);
  double total_shift = 0.0;
  const auto& ladder = pairing.ladder;
  for (const Pair& p : pairing.pairs) {
    targets.push_back(p.target_index);
    const double shift = std::abs(p.target - p.source);
    total_shift += shift;
    audit.max_abs_shift = std::max(audit.max_abs_shift, shift);
    if (p.interval == 0) {
      ++audit.initial_pairs;
      if (p.source > pairing.n0_breakpoint || p.target > pairing.n0_breakpoint) {
        audit.interval_preserving = false;
      }
      continue;
    }
    if (ladder.interval_of(p.source) != p.interval || ladder.interval_of(p.target) != p.interval) {
      audit.interval_preserving = false;
    }
    const double width = ladder.width(p.interval);
    if (shift > width * (1.0 + 1e-9)) audit.close = false;
    audit.max_relative_shift = std::max(audit.max_relative_shift, shift / width);
  }
  std::sort(targets.begin(), targets.end());
  audit.injective = std::adjacent_find(targets.begin(), targets.end()) == targets.end();
  if (audit.pairs > 0) audit.mean_abs_shift = total_shift / static_cast<double>(audit.pairs);
  return audit;
}

namespace {

Complex log_factor(const Pair& p, Complex s) {
  if (s.imag() == 0.0) {
    const double sigma = s.real();
    const double den = -std::pow(p.source, -sigma);
    if (std::abs(1.0 + den) < 1e-14) {
      throw Error(ErrorKind::SingularFactor, "1 - q^{-s} vanishes at q = " + std::to_string(p.source));
    }
    return {std::log1p(-std::pow(p.target, -sigma)) - std::log1p(den), 0.0};
  }
  const Complex num = 1.0 - detail::power_neg(p.target, s);
  const Complex den = 1.0 - detail::power_neg(p.source, s);
  if (std::abs(den) < 1e-14) {
    throw Error(ErrorKind::SingularFactor, "1 - q^{-s} vanishes at q = " + std::to_string(p.source));
  }
  return std::log(num) - std::log(den);
}

}  // namespace

Complex quotient_product(const InjectionPairing& pairing, Complex s) {
  if (!(s.real() > 0.0)) throw Error(ErrorKind::ValueOutOfRange, "quotient product needs Re s > 0");
  Complex acc{1.0, 0.0};
  for (const Pair& p : pairing.pairs) {
    const Complex den = 1.0 - detail::power_neg(p.source, s);
    if (std::abs(den) < 1e-14) {
      throw Error(ErrorKind::SingularFactor, "1 - q^{-s} vanishes at q = " + std::to_string(p.source));
    }
    acc *= (1.0 - detail::power_neg(p.target, s)) / den;
  }
  return acc;
}

double quotient_tail_diagnostic(const InjectionPairing& pairing, Complex s, double cutoff) {
  if (!(s.real() > 0.0)) throw Error(ErrorKind::ValueOutOfRange, "quotient product needs Re s > 0");
  Complex block{0.0, 0.0};
  for (const Pair& p : pairing.pairs) {
    if (p.source > cutoff / 2 && p.source <= cutoff) block += log_factor(p, s);
  }
  return std::abs(block);
}

void write_pairing_csv(std::ostream& out, const InjectionPairing& pairing) {
  out << "source,target,interval_index\n";
  char buf[96];
  for (const Pair& p : pairing.pairs) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu\n", p.source, p.target, p.interval);
    out << buf;
  }
}

}  // namespace bplab

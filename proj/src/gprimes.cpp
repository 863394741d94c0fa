#include "bplab/gprimes.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "bplab/error.hpp"

namespace bplab {

GPrimeSystem from_reals(std::vector<double> values, std::optional<double> cutoff) {
  for (double v : values) {
    if (!(v > 1.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::ValueOutOfRange,
                  "generalized primes must be finite and > 1, got " + std::to_string(v));
    }
  }
  std::stable_sort(values.begin(), values.end());
  GPrimeSystem system;
  if (cutoff) {
    if (!values.empty() && *cutoff < values.back()) {
      throw Error(ErrorKind::ValueOutOfRange, "cutoff lies below the largest member");
    }
    system.cutoff = *cutoff;
  } else if (!values.empty()) {
    system.cutoff = values.back();
  }
  system.values = std::move(values);
  return system;
}

GPrimeSystem scale(const GPrimeSystem& system, double a) {
  if (!(a > 0.0 && a <= 1.0)) {
    throw Error(ErrorKind::InvalidExponent, "scale exponent must lie in (0,1], got " +
                                                std::to_string(a));
  }
  GPrimeSystem out;
  out.values.reserve(system.size());
  const double inv = 1.0 / a;
  for (double p : system.values) out.values.push_back(a == 1.0 ? p : std::pow(p, inv));
  out.cutoff = a == 1.0 ? system.cutoff : std::pow(system.cutoff, inv);
  return out;
}

GPrimeSystem multiset_union(const GPrimeSystem& s1, const GPrimeSystem& s2) {
  GPrimeSystem out;
  out.values.resize(s1.size() + s2.size());
  std::merge(s1.values.begin(), s1.values.end(), s2.values.begin(), s2.values.end(),
             out.values.begin());
  out.cutoff = std::min(s1.cutoff, s2.cutoff);
  return out;
}

GPrimeSystem truncate(const GPrimeSystem& system, double x) {
  if (x > system.cutoff) {
    throw Error(ErrorKind::CutoffExceeded, "truncation point " + std::to_string(x) +
                                               " exceeds cutoff " +
                                               std::to_string(system.cutoff));
  }
  GPrimeSystem out;
  auto end = std::upper_bound(system.values.begin(), system.values.end(), x);
  out.values.assign(system.values.begin(), end);
  out.cutoff = x;
  return out;
}

GPrimeSystem remove_indices(const GPrimeSystem& system, std::span<const std::size_t> indices) {
  std::vector<char> drop(system.size(), 0);
  for (std::size_t i : indices) {
    if (i >= system.size()) {
      throw Error(ErrorKind::ValueOutOfRange, "member index out of range");
    }
    drop[i] = 1;
  }
  GPrimeSystem out;
  out.cutoff = system.cutoff;
  out.values.reserve(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (!drop[i]) out.values.push_back(system.values[i]);
  }
  return out;
}

namespace {

constexpr std::uint32_t kNoIndex = 0xffffffffu;

// Node of the left-child/right-sibling expansion. value = parent * p[idx];
// the first child multiplies by p[idx] again, the sibling replaces p[idx]
// by p[idx + 1].
struct Frontier {
  double value;
  double parent;
  std::uint32_t idx;
  std::uint32_t parent_idx;
  std::uint32_t omega;
  bool parent_squarefree;
  std::uint64_t seq;

  bool squarefree() const { return parent_squarefree && parent_idx != idx; }
};

struct Later {
  bool operator()(const Frontier& a, const Frontier& b) const {
    if (a.value != b.value) return a.value > b.value;
    return a.seq > b.seq;
  }
};

}  // namespace

GIntegerList enumerate_gintegers(const GPrimeSystem& system, double x_max, std::size_t cap) {
  GIntegerList list;
  list.x_max = x_max;
  list.complete = x_max <= system.cutoff;
  if (x_max < 1.0) return list;

  auto emit = [&](double value, std::uint32_t omega, bool squarefree) {
    if (list.entries.size() >= cap) {
      throw Error(ErrorKind::BudgetExceeded,
                  "more than " + std::to_string(cap) + " generalized integers below " +
                      std::to_string(x_max));
    }
    GInteger g;
    g.value = value;
    g.omega_total = omega;
    g.squarefree = squarefree;
    g.lambda = (omega % 2 == 0) ? 1 : -1;
    g.mu = squarefree ? g.lambda : 0;
    list.entries.push_back(g);
  };

  emit(1.0, 0, true);
  const auto& p = system.values;
  const auto n = static_cast<std::uint32_t>(p.size());
  std::priority_queue<Frontier, std::vector<Frontier>, Later> queue;
  std::uint64_t seq = 0;
  if (n > 0 && p[0] <= x_max) queue.push({p[0], 1.0, 0, kNoIndex, 1, true, seq++});

  while (!queue.empty()) {
    Frontier node = queue.top();
    queue.pop();
    emit(node.value, node.omega, node.squarefree());

    double child = node.value * p[node.idx];
    if (child <= x_max) {
      queue.push({child, node.value, node.idx, node.idx, node.omega + 1, node.squarefree(),
                  seq++});
    }
    if (node.idx + 1 < n) {
      double sibling = node.parent * p[node.idx + 1];
      if (sibling <= x_max) {
        queue.push({sibling, node.parent, node.idx + 1, node.parent_idx, node.omega,
                    node.parent_squarefree, seq++});
      }
    }
  }
  return list;
}

std::size_t count_upto(std::span<const double> sorted_values, double x) {
  return static_cast<std::size_t>(
      std::upper_bound(sorted_values.begin(), sorted_values.end(), x) - sorted_values.begin());
}

std::size_t count_upto(const GPrimeSystem& system, double x) {
  if (x > system.cutoff) {
    throw Error(ErrorKind::CutoffExceeded, "count at " + std::to_string(x) +
                                               " beyond cutoff " +
                                               std::to_string(system.cutoff));
  }
  return count_upto(std::span<const double>(system.values), x);
}

std::size_t count_upto(const GIntegerList& list, double x) {
  if (x > list.x_max) {
    throw Error(ErrorKind::CutoffExceeded, "count at " + std::to_string(x) +
                                               " beyond enumeration bound " +
                                               std::to_string(list.x_max));
  }
  auto it = std::upper_bound(list.entries.begin(), list.entries.end(), x,
                             [](double v, const GInteger& g) { return v < g.value; });
  return static_cast<std::size_t>(it - list.entries.begin());
}

std::size_t short_interval_count(const GPrimeSystem& system, double x, double h) {
  const double hi = x + std::pow(x, h);
  if (hi > system.cutoff) {
    throw Error(ErrorKind::CutoffExceeded, "short interval end " + std::to_string(hi) +
                                               " beyond cutoff " +
                                               std::to_string(system.cutoff));
  }
  std::span<const double> v(system.values);
  return count_upto(v, hi) - count_upto(v, x);
}

double short_interval_main_term(double c, double h, double x) {
  return std::pow(x, c + h - 1.0) / std::log(x);
}

}  // namespace bplab

#pragma once

#include <cstddef>
#include <functional>

namespace bplab {

// Worker count: BPLAB_THREADS when set to an integer >= 1, otherwise the
// hardware concurrency.
unsigned thread_count();

// Runs body(i) for every i in [0, count). Work items are claimed dynamically,
// so callers must make body(i) write only to slot i for deterministic output.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

// Compensated (Neumaier) running sum.
class NeumaierSum {
 public:
  void add(double v) {
    double t = sum_ + v;
    if ((sum_ < 0 ? -sum_ : sum_) >= (v < 0 ? -v : v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace bplab

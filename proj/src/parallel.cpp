#include "bplab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "bplab/error.hpp"

namespace bplab {

std::string_view error_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ValueOutOfRange: return "ValueOutOfRange";
    case ErrorKind::InvalidExponent: return "InvalidExponent";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::CutoffExceeded: return "CutoffExceeded";
    case ErrorKind::SingularFactor: return "SingularFactor";
    case ErrorKind::PoleAtOne: return "PoleAtOne";
    case ErrorKind::DegenerateData: return "DegenerateData";
    case ErrorKind::NoSignChange: return "NoSignChange";
    case ErrorKind::IntervalDeficit: return "IntervalDeficit";
    case ErrorKind::InvalidParameters: return "InvalidParameters";
    case ErrorKind::InvalidC: return "InvalidC";
    case ErrorKind::MalformedFile: return "MalformedFile";
    case ErrorKind::FileNotFound: return "FileNotFound";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(error_name(kind)) + ": " + detail), kind_(kind) {}

IntervalDeficitError::IntervalDeficitError(std::int64_t interval_, double lo_, double hi_,
                                           std::size_t sources_, std::size_t targets_,
                                           int stage_)
    : Error(ErrorKind::IntervalDeficit,
            (stage_ ? "stage " + std::to_string(stage_) + ", " : std::string()) + "interval " +
                std::to_string(interval_) + " (" + std::to_string(lo_) + ", " +
                std::to_string(hi_) + "] has " + std::to_string(sources_) +
                " sources but only " + std::to_string(targets_) + " free targets"),
      interval(interval_),
      lo(lo_),
      hi(hi_),
      sources(sources_),
      targets(targets_),
      stage(stage_) {}

MalformedFileError::MalformedFileError(std::size_t line_, const std::string& detail)
    : Error(ErrorKind::MalformedFile, "line " + std::to_string(line_) + ": " + detail),
      line(line_) {}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IntervalDeficit:
    case ErrorKind::BudgetExceeded:
    case ErrorKind::CutoffExceeded:
      return 3;
    case ErrorKind::MalformedFile:
    case ErrorKind::FileNotFound:
      return 4;
    default:
      return 2;
  }
}

unsigned thread_count() {
  if (const char* env = std::getenv("BPLAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace bplab

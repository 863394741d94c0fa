#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bplab {

enum class ErrorKind {
  ValueOutOfRange,
  InvalidExponent,
  BudgetExceeded,
  CutoffExceeded,
  SingularFactor,
  PoleAtOne,
  DegenerateData,
  NoSignChange,
  IntervalDeficit,
  InvalidParameters,
  InvalidC,
  MalformedFile,
  FileNotFound,
};

std::string_view error_name(ErrorKind kind);

// Every failure raised by the library. what() starts with the error name so
// that command-line callers can report it verbatim.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }
  std::string_view name() const { return error_name(kind_); }

 private:
  ErrorKind kind_;
};

// Raised by the interval matching when an interval holds more sources than
// free targets. interval == 0 denotes the initial segment (1, T_{n0}].
class IntervalDeficitError : public Error {
 public:
  IntervalDeficitError(std::int64_t interval, double lo, double hi,
                       std::size_t sources, std::size_t targets, int stage = 0);

  std::int64_t interval;
  double lo;
  double hi;
  std::size_t sources;
  std::size_t targets;
  int stage;
};

class MalformedFileError : public Error {
 public:
  MalformedFileError(std::size_t line, const std::string& detail);
  std::size_t line;
};

// 2 parameter error, 3 capacity/deficit error, 4 I/O error.
int exit_code(ErrorKind kind);

}  // namespace bplab

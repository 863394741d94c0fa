#pragma once

// Text formats: prime-set files and partial-sum trace CSVs.
//
// Prime-set file:
//   #bplab v1 theorem=<id> a=<a> b=<b|none> eps=<e> h=<h> limit=<L> [assume_rh=1]
//   one decimal prime per line, strictly increasing

#include <filesystem>
#include <functional>
#include <istream>
#include <ostream>
#include <string>

#include "bplab/construct.hpp"
#include "bplab/series.hpp"

namespace bplab {

// %.17g
std::string format_double(double v);

void write_prime_set(std::ostream& out, const PrimeSetArtifact& artifact);
// Restores primes, params and h_used. MalformedFile (with the 1-based line
// number) on a bad header, a non-numeric or non-increasing prime line, or a
// prime beyond the declared limit.
PrimeSetArtifact read_prime_set(std::istream& in);
PrimeSetArtifact read_prime_set_file(const std::filesystem::path& path);

// Header x,re,im,abs.
void write_trace_csv(std::ostream& out, const PartialSumTrace& trace);

// Writes through a temporary file in the same directory and renames it into
// place. Parent directories are created.
void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer);

}  // namespace bplab

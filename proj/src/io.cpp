#include "bplab/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

#include "bplab/error.hpp"

namespace bplab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_prime_set(std::ostream& out, const PrimeSetArtifact& art) {
  const ConstructionParams& p = art.params;
  out << "#bplab v1 theorem=" << theorem_id(p.theorem) << " a=" << format_double(p.a)
      << " b=" << (p.b ? format_double(*p.b) : std::string("none"))
      << " eps=" << format_double(p.effective_eps()) << " h=" << format_double(art.h_used)
      << " limit=" << p.limit;
  if (p.assume_rh) out << " assume_rh=1";
  out << '\n';
  for (std::uint64_t q : art.primes) out << q << '\n';
}

namespace {

double parse_real(const std::string& text, std::size_t line, const std::string& key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw MalformedFileError(line, "bad value for " + key + ": '" + text + "'");
  }
  return v;
}

std::uint64_t parse_uint(const std::string& text, std::size_t line, const std::string& what) {
  std::uint64_t v = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw MalformedFileError(line, "bad " + what + ": '" + text + "'");
  }
  return v;
}

}  // namespace

PrimeSetArtifact read_prime_set(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedFileError(1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  std::istringstream hs(line);
  std::string magic, version;
  hs >> magic >> version;
  if (magic != "#bplab" || version != "v1") throw MalformedFileError(1, "expected '#bplab v1'");
  std::map<std::string, std::string> fields;
  std::string tok;
  while (hs >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw MalformedFileError(1, "header token without '=': " + tok);
    const std::string key = tok.substr(0, eq);
    if (!fields.emplace(key, tok.substr(eq + 1)).second) {
      throw MalformedFileError(1, "duplicate header key " + key);
    }
  }
  for (const char* key : {"theorem", "a", "b", "eps", "h", "limit"}) {
    if (!fields.count(key)) throw MalformedFileError(1, std::string("header lacks ") + key);
  }
  for (const auto& [key, value] : fields) {
    if (key != "theorem" && key != "a" && key != "b" && key != "eps" && key != "h" &&
        key != "limit" && key != "assume_rh") {
      throw MalformedFileError(1, "unknown header key " + key);
    }
  }

  PrimeSetArtifact art;
  ConstructionParams& p = art.params;
  try {
    p.theorem = parse_theorem(fields["theorem"]);
  } catch (const Error&) {
    throw MalformedFileError(1, "unknown theorem '" + fields["theorem"] + "'");
  }
  p.a = parse_real(fields["a"], 1, "a");
  if (fields["b"] != "none") p.b = parse_real(fields["b"], 1, "b");
  p.eps = parse_real(fields["eps"], 1, "eps");
  art.h_used = parse_real(fields["h"], 1, "h");
  p.limit = parse_uint(fields["limit"], 1, "limit");
  if (fields.count("assume_rh")) {
    const std::string& v = fields["assume_rh"];
    if (v != "0" && v != "1") throw MalformedFileError(1, "assume_rh must be 0 or 1");
    p.assume_rh = v == "1";
  }

  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::uint64_t q = parse_uint(line, lineno, "prime line");
    if (q < 2) throw MalformedFileError(lineno, "value " + line + " is not a prime");
    if (!art.primes.empty() && q <= art.primes.back()) {
      throw MalformedFileError(lineno, "primes must be strictly increasing");
    }
    if (q > p.limit) throw MalformedFileError(lineno, "prime " + line + " beyond limit");
    art.primes.push_back(q);
  }
  return art;
}

PrimeSetArtifact read_prime_set_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, "cannot open " + path.string());
  return read_prime_set(in);
}

void write_trace_csv(std::ostream& out, const PartialSumTrace& trace) {
  out << "x,re,im,abs\n";
  char buf[128];
  for (const TracePoint& t : trace.checkpoints) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", t.x, t.value.real(),
                  t.value.imag(), std::abs(t.value));
    out << buf;
  }
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::function<void(std::ostream&)>& writer) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  if (ec) throw Error(ErrorKind::FileNotFound, "cannot create " + path.parent_path().string());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::FileNotFound, "cannot write " + tmp.string());
    writer(out);
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw Error(ErrorKind::FileNotFound, "write failed for " + path.string());
    }
  }
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::FileNotFound, "cannot rename into " + path.string());
  }
}

}  // namespace bplab

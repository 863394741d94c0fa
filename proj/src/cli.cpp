#include "bplab/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "bplab/asymptotics.hpp"
#include "bplab/classical.hpp"
#include "bplab/construct.hpp"
#include "bplab/error.hpp"
#include "bplab/io.hpp"
#include "bplab/matching.hpp"

namespace bplab {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunConfig {
  std::string theorem = "2";
  double a = 0.9;
  std::optional<double> b;
  std::optional<double> eps;
  std::optional<double> limit;
  bool assume_rh = false;
  std::string output_dir = ".";
  std::string format = "csv";
  std::vector<double> s0;
  std::vector<double> checkpoints;
  std::string set_path;
  std::string demo;
  std::string lemma;
  double c = 0.75;
  double alpha = 0.5;
  double xmin = 1000.0;
  double xmax = 1e6;
  int per_decade = 1;
};

std::uint64_t integral_limit(double v, const char* what) {
  if (!(v >= 1.0) || v > 1.8e19 || std::floor(v) != v) {
    throw Error(ErrorKind::InvalidParameters,
                std::string(what) + " must be a positive integer, got " + format_double(v));
  }
  return static_cast<std::uint64_t>(v);
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

json audit_json(const PairingAudit& a) {
  return {{"pairs", a.pairs},
          {"initial_pairs", a.initial_pairs},
          {"injective", a.injective},
          {"interval_preserving", a.interval_preserving},
          {"close", a.close},
          {"max_abs_shift", a.max_abs_shift},
          {"mean_abs_shift", a.mean_abs_shift},
          {"max_relative_shift", a.max_relative_shift}};
}

json zero_json(const ZeroReport& r) {
  json points = json::array();
  for (std::size_t i = 0; i < r.trace.checkpoints.size(); ++i) {
    const TracePoint& t = r.trace.checkpoints[i];
    json p = {{"x", t.x}, {"re", t.value.real()}, {"im", t.value.imag()}, {"abs", std::abs(t.value)}};
    if (i < r.quotient.size()) p["quotient"] = r.quotient[i].value.real();
    if (i < r.running_sup.size()) p["running_sup"] = r.running_sup[i];
    points.push_back(p);
  }
  return {{"s0", r.s0}, {"verdict", trend_name(r.verdict)}, {"checkpoints", points}};
}

void write_zero_rows(std::ostream& out, const std::vector<ZeroReport>& reports) {
  out << "s0,x,re,im,abs,quotient,running_sup,verdict\n";
  for (const ZeroReport& r : reports) {
    for (std::size_t i = 0; i < r.trace.checkpoints.size(); ++i) {
      const TracePoint& t = r.trace.checkpoints[i];
      out << format_double(r.s0) << ',' << format_double(t.x) << ',' << format_double(t.value.real())
          << ',' << format_double(t.value.imag()) << ',' << format_double(std::abs(t.value)) << ','
          << format_double(i < r.quotient.size() ? r.quotient[i].value.real() : 0.0) << ','
          << format_double(i < r.running_sup.size() ? r.running_sup[i] : 0.0) << ','
          << trend_name(r.verdict) << '\n';
    }
  }
}

void report_zero(std::ostream& out, const ZeroReport& r) {
  const auto& last = r.trace.checkpoints.back();
  out << "s0=" << short_num(r.s0) << " verdict=" << trend_name(r.verdict)
      << " |S(" << short_num(last.x) << ")|=" << format_double(std::abs(last.value)) << '\n';
}

int cmd_construct(const RunConfig& cfg, std::ostream& out) {
  ConstructionParams params;
  params.theorem = parse_theorem(cfg.theorem);
  params.a = cfg.a;
  params.b = cfg.b;
  params.eps = cfg.eps;
  params.assume_rh = cfg.assume_rh;
  if (cfg.limit) params.limit = integral_limit(*cfg.limit, "limit");
  validate(params);

  const PrimeSetArtifact art = construct(params);

  std::string stem = "p_";
  if (params.theorem != Theorem::thm2) stem += theorem_id(params.theorem) == "1" ? "thm1_" : "single_";
  stem += short_num(params.a);
  if (params.b) stem += "_" + short_num(*params.b);
  const fs::path dir(cfg.output_dir);

  std::vector<double> s0s = cfg.s0;
  if (s0s.empty()) {
    s0s = art.intended_zeros;
    const double mid = (1.0 + params.a) / 2.0;
    if (std::find(s0s.begin(), s0s.end(), mid) == s0s.end()) s0s.push_back(mid);
  }
  VerifyOptions vopts;
  vopts.checkpoints = cfg.checkpoints;
  const PrimeTable table = sieve_primes(params.limit);
  std::vector<ZeroReport> reports;
  for (double s0 : s0s) reports.push_back(verify_zero(table, art.primes, s0, vopts));

  const fs::path primes_path = dir / (stem + ".primes");
  const fs::path pairing_path = dir / (stem + ".pairing.csv");
  write_file_atomic(primes_path, [&](std::ostream& o) { write_prime_set(o, art); });
  write_file_atomic(pairing_path, [&](std::ostream& o) { write_pairing_csv(o, art.pairing); });

  fs::path report_path;
  if (cfg.format == "json") {
    json j;
    j["theorem"] = theorem_id(params.theorem);
    j["a"] = params.a;
    j["b"] = params.b ? json(*params.b) : json(nullptr);
    j["eps"] = params.effective_eps();
    j["h"] = art.h_used;
    if (params.theorem == Theorem::thm1) j["stage_one_h"] = art.stage_one_h;
    j["limit"] = params.limit;
    j["assume_rh"] = params.assume_rh;
    j["primes"] = art.primes.size();
    j["intended_zeros"] = art.intended_zeros;
    j["sigma_a"] = art.sigma_a;
    j["sigma_c"] = std::isnan(art.sigma_c) ? json(nullptr) : json(art.sigma_c);
    j["pairing_audit"] = audit_json(art.pairing_audit);
    if (params.theorem == Theorem::thm1) j["stage_one_audit"] = audit_json(art.stage_one_audit);
    json counting = json::array();
    for (const CountingPoint& p : art.counting.points) {
      counting.push_back({{"x", p.x}, {"count", p.count}, {"target", p.target}, {"ratio", p.ratio}});
    }
    j["counting"] = {{"holds", art.counting.holds}, {"tolerance", art.counting.tolerance},
                     {"points", counting}};
    json zs = json::array();
    for (const ZeroReport& r : reports) zs.push_back(zero_json(r));
    j["verification"] = zs;
    report_path = dir / (stem + ".report.json");
    write_file_atomic(report_path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  } else {
    report_path = dir / (stem + ".report.csv");
    write_file_atomic(report_path, [&](std::ostream& o) { write_zero_rows(o, reports); });
    const fs::path summary_path = dir / (stem + ".summary.csv");
    write_file_atomic(summary_path, [&](std::ostream& o) {
      o << "key,value\n";
      o << "theorem," << theorem_id(params.theorem) << '\n';
      o << "a," << format_double(params.a) << '\n';
      o << "b," << (params.b ? format_double(*params.b) : "none") << '\n';
      o << "eps," << format_double(params.effective_eps()) << '\n';
      o << "h," << format_double(art.h_used) << '\n';
      if (params.theorem == Theorem::thm1) o << "stage_one_h," << format_double(art.stage_one_h) << '\n';
      o << "limit," << params.limit << '\n';
      o << "primes," << art.primes.size() << '\n';
      o << "sigma_a," << format_double(art.sigma_a) << '\n';
      o << "sigma_c," << format_double(art.sigma_c) << '\n';
      o << "pairs," << art.pairing_audit.pairs << '\n';
      o << "injective," << art.pairing_audit.injective << '\n';
      o << "interval_preserving," << art.pairing_audit.interval_preserving << '\n';
      o << "close," << art.pairing_audit.close << '\n';
      o << "max_relative_shift," << format_double(art.pairing_audit.max_relative_shift) << '\n';
      o << "counting_holds," << art.counting.holds << '\n';
      for (const CountingPoint& p : art.counting.points) {
        o << "count_ratio@" << format_double(p.x) << ',' << format_double(p.ratio) << '\n';
      }
    });
  }

  out << "theorem=" << theorem_id(params.theorem) << " primes=" << art.primes.size()
      << " h=" << format_double(art.h_used)
      << " audit=" << (art.pairing_audit.ok() ? "ok" : "FAILED")
      << " counting=" << (art.counting.holds ? "ok" : "outside tolerance") << '\n';
  for (const ZeroReport& r : reports) report_zero(out, r);
  out << "wrote " << primes_path.string() << ", " << pairing_path.string() << ", "
      << report_path.string() << '\n';
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir(cfg.output_dir);
  std::vector<ZeroReport> reports;
  std::string name;

  if (!cfg.set_path.empty()) {
    const PrimeSetArtifact art = read_prime_set_file(cfg.set_path);
    std::uint64_t limit = art.params.limit;
    if (cfg.limit) limit = std::min(limit, integral_limit(*cfg.limit, "limit"));
    std::vector<double> s0s = cfg.s0;
    if (s0s.empty()) s0s = {art.params.a};
    VerifyOptions vopts;
    vopts.checkpoints = cfg.checkpoints.empty() ? decade_checkpoints(limit) : cfg.checkpoints;
    const PrimeTable table = sieve_primes(limit);
    for (double s0 : s0s) reports.push_back(verify_zero(table, art.primes, s0, vopts));
    name = fs::path(cfg.set_path).stem().string();
  } else if (cfg.demo == "euler1737" || cfg.demo == "cmo-loglog") {
    const std::uint64_t limit = integral_limit(cfg.limit.value_or(1e6), "limit");
    if (limit < 1000) throw Error(ErrorKind::InvalidParameters, "demo limit must be at least 1000");
    const PrimeTable table = sieve_primes(limit);
    std::vector<double> s0s = cfg.s0.empty() ? std::vector<double>{1.0} : cfg.s0;
    std::vector<double> cps = cfg.checkpoints.empty() ? decade_checkpoints(limit) : cfg.checkpoints;
    if (cfg.demo == "euler1737") {
      VerifyOptions vopts;
      vopts.checkpoints = cps;
      for (double s0 : s0s) reports.push_back(verify_zero(table, table.primes, s0, vopts));
    } else {
      // f vanishes on 2..28, so S(28) = 1 is the first checkpoint.
      if (cfg.checkpoints.empty()) cps.insert(cps.begin(), 28.0);
      const RealCoefficients f = cm_from_prime_values(table, loglog_prime_value);
      for (double s0 : s0s) {
        ZeroReport r;
        r.s0 = s0;
        r.trace = dirichlet_partial_sum(f, Complex{s0, 0.0}, cps);
        r.verdict = classify_trend(r.trace);
        reports.push_back(std::move(r));
      }
    }
    name = cfg.demo;
  } else {
    throw Error(ErrorKind::InvalidParameters, "verify needs --set FILE or --demo euler1737|cmo-loglog");
  }

  std::vector<fs::path> written;
  if (cfg.format == "json") {
    json zs = json::array();
    for (const ZeroReport& r : reports) zs.push_back(zero_json(r));
    const fs::path path = dir / ("verify_" + name + ".json");
    write_file_atomic(path, [&](std::ostream& o) { o << json{{"source", name}, {"reports", zs}}.dump(2) << '\n'; });
    written.push_back(path);
  } else {
    for (const ZeroReport& r : reports) {
      const fs::path path = dir / ("verify_" + name + "_s" + short_num(r.s0) + ".csv");
      write_file_atomic(path, [&](std::ostream& o) { write_trace_csv(o, r.trace); });
      written.push_back(path);
    }
  }
  for (const ZeroReport& r : reports) report_zero(out, r);
  for (const auto& p : written) out << "wrote " << p.string() << '\n';
  return 0;
}

int cmd_asymptotics(const RunConfig& cfg, std::ostream& out) {
  const fs::path dir(cfg.output_dir);
  const std::string& lemma = cfg.lemma;
  if (lemma == "bhp") {
    const std::uint64_t xmax = integral_limit(cfg.xmax, "xmax");
    const std::vector<BhpReport> rows = bhp_grid(xmax);
    bool all = true;
    for (const BhpReport& r : rows) all = all && r.holds;
    fs::path path = dir / (cfg.format == "json" ? "bhp.json" : "bhp.csv");
    if (cfg.format == "json") {
      json arr = json::array();
      for (const BhpReport& r : rows) {
        arr.push_back({{"x", r.x}, {"y", r.y}, {"count", r.count}, {"bound", r.bound}, {"holds", r.holds}});
      }
      write_file_atomic(path, [&](std::ostream& o) { o << arr.dump(2) << '\n'; });
    } else {
      write_file_atomic(path, [&](std::ostream& o) {
        o << "x,y,count,bound,holds\n";
        for (const BhpReport& r : rows) {
          o << r.x << ',' << r.y << ',' << r.count << ',' << format_double(r.bound) << ','
            << (r.holds ? "true" : "false") << '\n';
        }
      });
    }
    out << "bhp points=" << rows.size() << " all_hold=" << (all ? "true" : "false") << '\n';
    out << "wrote " << path.string() << '\n';
    return 0;
  }

  const std::vector<double> grid = log_grid(cfg.xmin, cfg.xmax, cfg.per_decade);
  AsymptoticReport rep;
  std::string tag;
  if (lemma == "7.1") {
    rep = weighted_sum_report(cfg.alpha, grid);
    tag = "lemma7.1_alpha" + short_num(cfg.alpha);
  } else if (lemma == "7.2") {
    rep = hyperbola_report(cfg.c, grid);
    tag = "lemma7.2_c" + short_num(cfg.c);
  } else if (lemma == "7.3i") {
    rep = mobius_i_report(cfg.c, grid);
    tag = "lemma7.3i_c" + short_num(cfg.c);
  } else if (lemma == "7.3ii") {
    rep = mobius_ii_report(cfg.c, grid);
    tag = "lemma7.3ii_c" + short_num(cfg.c);
  } else {
    throw Error(ErrorKind::InvalidParameters, "unknown lemma '" + lemma + "'");
  }

  fs::path path = dir / (tag + (cfg.format == "json" ? ".json" : ".csv"));
  if (cfg.format == "json") {
    auto num_or_null = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
    json j = {{"quantity", rep.quantity},
              {"parameter", rep.parameter},
              {"x", rep.x_grid},
              {"exact", rep.exact},
              {"main", rep.main_term},
              {"error", rep.error},
              {"fitted_exponent", num_or_null(rep.fitted_error_exponent)},
              {"fitted_stderr", num_or_null(rep.fitted_stderr)},
              {"predicted_exponent", rep.predicted_exponent}};
    write_file_atomic(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  } else {
    write_file_atomic(path, [&](std::ostream& o) { write_report_csv(o, rep); });
  }
  out << rep.quantity << " fitted_exponent=" << format_double(rep.fitted_error_exponent)
      << " stderr=" << format_double(rep.fitted_stderr)
      << " predicted=" << format_double(rep.predicted_exponent) << '\n';
  out << "wrote " << path.string() << '\n';
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dirichlet series with prescribed real zeros over subsets of the primes", "bplab"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--output-dir", cfg.output_dir, "directory for all outputs");
    sub->add_option("--format", cfg.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* construct_cmd = app.add_subcommand("construct", "build a prime set and verify its zeros");
  construct_cmd->add_option("--theorem", cfg.theorem, "1, 2 or single")
      ->check(CLI::IsMember({"1", "2", "single"}));
  construct_cmd->add_option("--a", cfg.a, "first zero");
  construct_cmd->add_option("--b", cfg.b, "second parameter (theorems 1 and 2)");
  construct_cmd->add_option("--eps", cfg.eps, "epsilon in (0, a/4), default a/8");
  construct_cmd->add_option("--limit", cfg.limit, "prime bound (default 1e6)");
  construct_cmd->add_flag("--assume-rh", cfg.assume_rh, "accept the parameter range valid under RH");
  construct_cmd->add_option("--s0", cfg.s0, "points to verify (default: the intended zeros and (1+a)/2)");
  construct_cmd->add_option("--checkpoints", cfg.checkpoints, "partial-sum checkpoints");
  add_common(construct_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "partial sums of lambda_P(n) n^{-s0}");
  auto* set_opt = verify_cmd->add_option("--set", cfg.set_path, "prime-set file");
  verify_cmd->add_option("--demo", cfg.demo, "built-in example")
      ->check(CLI::IsMember({"euler1737", "cmo-loglog"}))
      ->excludes(set_opt);
  verify_cmd->add_option("--s0", cfg.s0, "real points s0");
  verify_cmd->add_option("--limit", cfg.limit, "summation bound");
  verify_cmd->add_option("--checkpoints", cfg.checkpoints, "partial-sum checkpoints");
  add_common(verify_cmd);

  CLI::App* asym_cmd = app.add_subcommand("asymptotics", "counting-function error fits");
  asym_cmd->add_option("--lemma", cfg.lemma, "7.1, 7.2, 7.3i, 7.3ii or bhp")
      ->required()
      ->check(CLI::IsMember({"7.1", "7.2", "7.3i", "7.3ii", "bhp"}));
  asym_cmd->add_option("--c", cfg.c, "exponent c in (1/2, 1)");
  asym_cmd->add_option("--alpha", cfg.alpha, "exponent for 7.1");
  asym_cmd->add_option("--xmin", cfg.xmin, "first grid point");
  asym_cmd->add_option("--xmax", cfg.xmax, "last grid point");
  asym_cmd->add_option("--per-decade", cfg.per_decade, "grid points per decade");
  add_common(asym_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "InvalidParameters: " << e.what() << '\n';
    return 2;
  }

  try {
    if (construct_cmd->parsed()) return cmd_construct(cfg, out);
    if (verify_cmd->parsed()) return cmd_verify(cfg, out);
    return cmd_asymptotics(cfg, out);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::bad_alloc&) {
    err << "BudgetExceeded: out of memory\n";
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 4;
  }
}

}  // namespace bplab

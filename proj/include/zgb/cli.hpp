#pragma once

// Batch front end: argument parsing and the subcommands behind the zgb tool.
// Reports go to stdout (or --out) as JSON or CSV; failures print a JSON
// object {"error": {"type", "message"}}.
//
// Exit status: 0 all checks passed, 1 a check failed, 2 invalid input,
// 3 computation error.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "zgb/bounds.hpp"
#include "zgb/constants.hpp"
#include "zgb/errors.hpp"
#include "zgb/ingestion.hpp"
#include "zgb/summation.hpp"
#include "zgb/version.hpp"
#include "zgb/zero_finder.hpp"

namespace zgb::cli {

enum class Subcommand { zeros, count, sum, constants, verify, ingest };
enum class Format { json, csv };

inline const char* to_string(Subcommand s) {
  switch (s) {
    case Subcommand::zeros: return "zeros";
    case Subcommand::count: return "count";
    case Subcommand::sum: return "sum";
    case Subcommand::constants: return "constants";
    case Subcommand::verify: return "verify";
    case Subcommand::ingest: return "ingest";
  }
  return "unknown";
}

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInvalidInput = 2, kComputationError = 3 };

inline constexpr double kDefaultVerifyHeight = 1000.0;
inline constexpr std::size_t kDefaultSamples = 500;

struct RunConfig {
  Subcommand subcommand = Subcommand::constants;
  std::optional<double> t_min;
  std::optional<double> t_max;
  std::optional<double> at;
  std::size_t samples = kDefaultSamples;
  std::optional<std::string> table_path;  // existing table to use
  std::optional<std::string> file_path;   // reference file for ingest
  std::optional<std::string> out_path;
  std::optional<std::string> table_dir;   // cache directory, from ZGB_TABLE_DIR
  Format format = Format::json;
  unsigned threads = 0;

  /// Throws DomainError on an inconsistent configuration.
  void validate() const {
    auto need = [](bool ok, const char* msg) {
      if (!ok) throw DomainError(msg);
    };
    if (t_min && t_max) need(*t_min < *t_max, "--t-min must be below --t-max");
    need(samples >= 1, "--samples must be at least 1");
    switch (subcommand) {
      case Subcommand::zeros: need(t_max.has_value(), "zeros: --t-max is required"); break;
      case Subcommand::count: need(at.has_value(), "count: --at is required"); break;
      case Subcommand::sum: need(at.has_value(), "sum: --at is required"); break;
      case Subcommand::ingest: need(file_path.has_value(), "ingest: --file is required"); break;
      default: break;
    }
  }
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  int exit_code = kOk;
  std::string text;  // help or usage error when config is empty
};

/// Parses arguments (without the program name). table_dir is left unset;
/// main() fills it from the environment.
inline ParseOutcome parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Zeta zero ordinates, A(T) = sum 1/gamma and its explicit bounds", "zgb"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig c;
  std::string format = "json";
  double t_min = 0, t_max = 0, at = 0;
  std::string table, out, file;
  app.add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out, "Write the report (zeros: the table) to FILE");
  app.add_option("--table", table, "Use an existing table file");
  app.add_option("--threads", c.threads, "Worker threads (0 = hardware)");

  auto* zeros = app.add_subcommand("zeros", "Build, audit and persist a zero table");
  zeros->add_option("--t-max", t_max, "Coverage height")->required();
  auto* count = app.add_subcommand("count", "N(T) against the envelope F(T) +- R(T)");
  count->add_option("--at", at, "Height T")->required();
  auto* sum = app.add_subcommand("sum", "A(T), M(T) and their difference");
  sum->add_option("--at", at, "Height T")->required();
  app.add_subcommand("constants", "Recompute gamma_1, c_au and c_al");
  auto* verify = app.add_subcommand("verify", "Sweep A(T) - M(T) against 3/50 and 109/250");
  auto* vmin = verify->add_option("--t-min", t_min, "Lowest height (default 2)");
  auto* vmax = verify->add_option("--t-max", t_max, "Highest height (default: table t_max or 1000)");
  verify->add_option("--samples", c.samples, "Evenly spaced sample heights");
  auto* ingest = app.add_subcommand("ingest", "Parse a reference table and cross-validate it");
  ingest->add_option("--file", file, "Reference ordinate file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success& e) {
    std::ostringstream os;
    os << (dynamic_cast<const CLI::CallForVersion*>(&e) ? std::string(kVersion) + "\n" : app.help());
    return {std::nullopt, kOk, os.str()};
  } catch (const CLI::Error& e) {
    return {std::nullopt, kInvalidInput, e.what()};
  }

  if (zeros->parsed()) {
    c.subcommand = Subcommand::zeros;
    c.t_max = t_max;
  } else if (count->parsed()) {
    c.subcommand = Subcommand::count;
    c.at = at;
  } else if (sum->parsed()) {
    c.subcommand = Subcommand::sum;
    c.at = at;
  } else if (verify->parsed()) {
    c.subcommand = Subcommand::verify;
    if (vmin->count() > 0) c.t_min = t_min;
    if (vmax->count() > 0) c.t_max = t_max;
  } else if (ingest->parsed()) {
    c.subcommand = Subcommand::ingest;
    c.file_path = file;
  } else {
    c.subcommand = Subcommand::constants;
  }
  c.format = format == "csv" ? Format::csv : Format::json;
  if (!table.empty()) c.table_path = table;
  if (!out.empty()) c.out_path = out;
  return {c, kOk, {}};
}

namespace detail {

// Shortest representation that round-trips.
inline std::string num(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline const char* yes_no(bool b) { return b ? "true" : "false"; }
inline const char* verdict(bool b) { return b ? "PASS" : "FAIL"; }

inline std::string height_tag(double h) {
  std::string s = num(h);
  std::replace(s.begin(), s.end(), '.', 'p');
  return s;
}

struct TableSourceInfo {
  ZeroTable table;
  std::string origin;  // "computed", a path, or "cache:<path>"
};

inline TableSourceInfo load_audited(const std::string& path, unsigned threads) {
  AuditOptions opts;
  opts.threads = threads;
  auto r = ingest_file(path, opts);
  if (!r.table.audited) throw AuditError("table " + path + " failed its audit: " + r.audit.message);
  return {std::move(r.table), path};
}

inline ZeroTable compute_table(double height, unsigned threads) {
  BuildOptions opts;
  opts.isolate.threads = threads;
  return build_table(height, opts);
}

/// Table covering `needed`: --table, else the ZGB_TABLE_DIR cache, else computed.
inline TableSourceInfo acquire_table(const RunConfig& c, double needed) {
  if (c.table_path) {
    auto t = load_audited(*c.table_path, c.threads);
    if (t.table.t_max < needed) throw RangeError("table coverage t_max is below the requested height");
    return t;
  }
  const double height = std::max(20.0, needed);
  if (c.table_dir) {
    const auto path = (std::filesystem::path(*c.table_dir) / ("zeros_" + height_tag(height) + ".txt")).string();
    if (std::filesystem::exists(path)) {
      auto t = load_audited(path, c.threads);
      t.origin = "cache:" + path;
      return t;
    }
    std::filesystem::create_directories(*c.table_dir);
    write_table_file(path, compute_table(height, c.threads));
    // Reload so the first run sees the same rounded ordinates as later hits.
    auto t = load_audited(path, c.threads);
    t.origin = "cache:" + path;
    return t;
  }
  return {compute_table(height, c.threads), "computed"};
}

inline nlohmann::json table_summary(const TableSourceInfo& t) {
  return {{"origin", t.origin},
          {"count", t.table.size()},
          {"t_max", t.table.t_max},
          {"source", zgb::to_string(t.table.source)}};
}

inline nlohmann::json audit_json(const AuditReport& a) {
  return {{"passed", a.passed},
          {"envelope_ok", a.envelope_ok},
          {"checkpoints", a.checkpoints},
          {"mismatches", a.mismatches},
          {"reisolated_windows", a.reisolated.size()},
          {"missing_windows", a.missing.size()},
          {"assumption", a.assumption},
          {"message", a.message}};
}

inline void emit_json(std::ostream& os, const nlohmann::json& j) { os << j.dump(2) << "\n"; }

inline int run_zeros(const RunConfig& c, std::ostream& os) {
  BuildOptions opts;
  opts.isolate.threads = c.threads;
  const auto built = build_table_with_report(*c.t_max, opts);
  const auto& table = built.table;

  std::optional<std::string> dest = c.out_path;
  if (!dest && c.table_dir) {
    std::filesystem::create_directories(*c.table_dir);
    dest = (std::filesystem::path(*c.table_dir) / ("zeros_" + height_tag(*c.t_max) + ".txt")).string();
  }
  if (!dest) {
    write_table(os, table);
    return table.audited ? kOk : kCheckFailed;
  }
  write_table_file(*dest, table);
  const double max_err = std::accumulate(table.ordinates.begin(), table.ordinates.end(), 0.0,
                                         [](double m, const ZeroOrdinate& z) { return std::max(m, z.abs_err); });
  if (c.format == Format::csv) {
    os << "t_max,count,audited,max_abs_err,path\n"
       << num(table.t_max) << "," << table.size() << "," << yes_no(table.audited) << "," << num(max_err) << ","
       << *dest << "\n";
  } else {
    emit_json(os, {{"command", "zeros"},
                   {"t_max", table.t_max},
                   {"count", table.size()},
                   {"audited", table.audited},
                   {"max_abs_err", max_err},
                   {"path", *dest},
                   {"audit", audit_json(built.audit)}});
  }
  return table.audited ? kOk : kCheckFailed;
}

inline int run_count(const RunConfig& c, std::ostream& os) {
  const double T = *c.at;
  if (!(T >= 2.0)) throw DomainError("count: requires T >= 2");
  const auto t = acquire_table(c, T);
  const std::size_t n = count_up_to(t.table, T);
  const auto env = bounds::envelope(T);
  const bool ok = std::fabs(static_cast<double>(n) - env.f_val) <= env.r_val;
  if (c.format == Format::csv) {
    os << "T,N,F,R,envelope_ok\n"
       << num(T) << "," << n << "," << num(env.f_val) << "," << num(env.r_val) << "," << yes_no(ok) << "\n";
  } else {
    emit_json(os, {{"command", "count"},
                   {"T", T},
                   {"N", n},
                   {"F", env.f_val},
                   {"R", env.r_val},
                   {"lower", env.lower},
                   {"upper", env.upper},
                   {"envelope_ok", ok},
                   {"table", table_summary(t)}});
  }
  return ok ? kOk : kCheckFailed;
}

inline int run_sum(const RunConfig& c, std::ostream& os) {
  const double T = *c.at;
  if (!(T > 1.0)) throw DomainError("sum: requires T > 1");
  const auto t = acquire_table(c, T);
  const double a = a_of_t(t.table, T);
  const double m = bounds::main_term(T);
  std::optional<TheoremCheck> chk;
  if (T >= bounds::kLowerThreshold) chk = check_theorem_at(ReciprocalSums(t.table), T);
  const bool ok = !chk || chk->ok();
  if (c.format == Format::csv) {
    os << "T,A,M,delta,lower_ok,upper_ok,margin_lo,margin_hi\n" << num(T) << "," << num(a) << "," << num(m) << ","
       << num(a - m);
    if (chk)
      os << "," << yes_no(chk->lower_ok) << "," << yes_no(chk->upper_ok) << "," << num(chk->margin_lo) << ","
         << num(chk->margin_hi);
    else
      os << ",,,,";
    os << "\n";
  } else {
    nlohmann::json j{{"command", "sum"}, {"T", T}, {"A", a}, {"M", m}, {"delta", a - m}};
    if (chk) {
      j["lower_ok"] = chk->lower_ok;
      j["upper_applies"] = chk->upper_applies;
      j["upper_ok"] = chk->upper_ok;
      j["margin_lo"] = chk->margin_lo;
      j["margin_hi"] = chk->margin_hi;
    }
    j["table"] = table_summary(t);
    emit_json(os, j);
  }
  return ok ? kOk : kCheckFailed;
}

inline int run_constants(const RunConfig& c, std::ostream& os) {
  const auto k = bounds::compute_constants();
  const bool au = k.c_au_below_cap();
  const bool al = k.c_al_above_floor();
  const bool ok = au && al && k.converged;
  if (c.format == Format::csv) {
    os << "name,value,verdict\n"
       << "gamma1," << num(k.gamma1) << ",\n"
       << "c_au," << num(k.c_au) << "," << verdict(au) << "\n"
       << "c_al," << num(k.c_al) << "," << verdict(al) << "\n"
       << "c_au_exact_e," << num(k.c_au_exact_e) << ",\n"
       << "c_al_exact_e," << num(k.c_al_exact_e) << ",\n"
       << "convergence_gap," << num(k.convergence_gap) << "," << verdict(k.converged) << "\n";
  } else {
    emit_json(os, {{"command", "constants"},
                   {"gamma1", k.gamma1},
                   {"gamma1_abs_err", k.gamma1_err},
                   {"c_au", k.c_au},
                   {"c_al", k.c_al},
                   {"c_au_cap", "109/250"},
                   {"c_al_floor", "3/50"},
                   {"c_au_verdict", verdict(au)},
                   {"c_al_verdict", verdict(al)},
                   {"c_au_exact_e", k.c_au_exact_e},
                   {"c_al_exact_e", k.c_al_exact_e},
                   {"limit_height", k.limit_height},
                   {"convergence_gap", k.convergence_gap},
                   {"converged", k.converged}});
  }
  return ok ? kOk : kCheckFailed;
}

inline int run_verify(const RunConfig& c, std::ostream& os) {
  const double lo = c.t_min.value_or(2.0);
  TableSourceInfo t;
  double hi = 0.0;
  if (c.table_path) {
    t = load_audited(*c.table_path, c.threads);
    hi = c.t_max.value_or(t.table.t_max);
    if (hi > t.table.t_max) throw RangeError("verify: --t-max beyond table coverage");
  } else {
    hi = c.t_max.value_or(kDefaultVerifyHeight);
    if (!(lo < hi)) throw DomainError("verify: --t-min must be below --t-max");
    t = acquire_table(c, hi);
  }
  const auto sweep = theorem_sweep(t.table, lo, hi, c.samples, c.threads);
  if (c.format == Format::csv) {
    os << "T,A,M,delta,lower_ok,upper_ok,margin_lo,margin_hi\n";
    for (const auto& r : sweep.records)
      os << num(r.T) << "," << num(r.a_val) << "," << num(r.m_val) << "," << num(r.delta) << ","
         << yes_no(r.lower_ok) << "," << yes_no(r.upper_ok) << "," << num(r.margin_lo) << ","
         << num(r.margin_hi) << "\n";
    os << "# records " << sweep.records.size() << "\n"
       << "# failures " << sweep.failures << "\n"
       << "# min_delta " << num(sweep.min_delta) << "\n"
       << "# max_delta " << num(sweep.max_delta) << "\n"
       << "# min_margin_lo " << num(sweep.min_margin_lo) << " at " << num(sweep.min_margin_lo_at) << "\n"
       << "# min_margin_hi " << num(sweep.min_margin_hi) << " at " << num(sweep.min_margin_hi_at) << "\n"
       << "# verdict " << verdict(sweep.all_ok()) << "\n";
  } else {
    emit_json(os, {{"command", "verify"},
                   {"t_min", lo},
                   {"t_max", hi},
                   {"samples", c.samples},
                   {"records", sweep.records.size()},
                   {"failures", sweep.failures},
                   {"min_delta", sweep.min_delta},
                   {"max_delta", sweep.max_delta},
                   {"min_margin_lo", sweep.min_margin_lo},
                   {"min_margin_lo_at", sweep.min_margin_lo_at},
                   {"min_margin_hi", sweep.min_margin_hi},
                   {"min_margin_hi_at", sweep.min_margin_hi_at},
                   {"verdict", verdict(sweep.all_ok())},
                   {"table", table_summary(t)}});
  }
  return sweep.all_ok() ? kOk : kCheckFailed;
}

inline int run_ingest(const RunConfig& c, std::ostream& os) {
  AuditOptions opts;
  opts.threads = c.threads;
  auto ref = ingest_file(*c.file_path, opts);

  nlohmann::json j{{"command", "ingest"},
                   {"file", *c.file_path},
                   {"parsed", ref.file.parsed.size()},
                   {"columns", ref.file.columns},
                   {"decimals", ref.file.decimals},
                   {"abs_err", ref.table.ordinates.front().abs_err},
                   {"t_max", ref.table.t_max},
                   {"audit", audit_json(ref.audit)}};
  if (ref.file.declared_count) j["declared_count"] = *ref.file.declared_count;

  bool ok = ref.audit.passed;
  std::optional<CrossValidationReport> cv;
  if (ok) {
    const auto computed = acquire_table(c, std::min(ref.table.t_max, 1e6));
    cv = cross_validate(computed.table, ref.table);
    j["cross_validation"] = to_json(*cv);
    j["cross_validation"]["against"] = table_summary(computed);
    ok = cv->passed;
  }
  j["verdict"] = verdict(ok);

  if (c.format == Format::csv) {
    os << "file,parsed,decimals,t_max,audit_passed,pairs,max_diff,counts_match,verdict\n"
       << *c.file_path << "," << ref.file.parsed.size() << "," << ref.file.decimals << "," << num(ref.table.t_max)
       << "," << yes_no(ref.audit.passed) << "," << (cv ? std::to_string(cv->pairs) : "") << ","
       << (cv ? num(cv->max_diff) : "") << "," << (cv ? yes_no(cv->counts_match) : "") << "," << verdict(ok)
       << "\n";
  } else {
    emit_json(os, j);
  }
  return ok ? kOk : kCheckFailed;
}

inline int dispatch(const RunConfig& c, std::ostream& os) {
  switch (c.subcommand) {
    case Subcommand::zeros: return run_zeros(c, os);
    case Subcommand::count: return run_count(c, os);
    case Subcommand::sum: return run_sum(c, os);
    case Subcommand::constants: return run_constants(c, os);
    case Subcommand::verify: return run_verify(c, os);
    case Subcommand::ingest: return run_ingest(c, os);
  }
  return kInvalidInput;
}

inline int report_error(std::ostream& os, const char* type, const std::string& msg, int code) {
  emit_json(os, {{"error", {{"type", type}, {"message", msg}, {"exit_code", code}}}});
  return code;
}

}  // namespace detail

/// Runs one subcommand, writing the report to `out` (or to --out) and
/// diagnostics to `err`. Returns the exit status.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    c.validate();
    if (c.out_path && c.subcommand != Subcommand::zeros) {
      std::ostringstream buf;
      const int code = detail::dispatch(c, buf);
      std::ofstream f(*c.out_path);
      if (!f) throw DomainError("cannot open " + *c.out_path + " for writing");
      f << buf.str();
      return code;
    }
    return detail::dispatch(c, out);
  } catch (const zgb::ParseError& e) {
    return detail::report_error(out, "ParseError", e.what(), kInvalidInput);
  } catch (const DomainError& e) {
    return detail::report_error(out, "DomainError", e.what(), kInvalidInput);
  } catch (const RangeError& e) {
    return detail::report_error(out, "RangeError", e.what(), kInvalidInput);
  } catch (const AuditError& e) {
    return detail::report_error(out, "AuditError", e.what(), kComputationError);
  } catch (const ConvergenceError& e) {
    return detail::report_error(out, "ConvergenceError", e.what(), kComputationError);
  } catch (const AccuracyError& e) {
    return detail::report_error(out, "AccuracyError", e.what(), kComputationError);
  } catch (const std::exception& e) {
    err << "zgb: " << e.what() << "\n";
    return detail::report_error(out, "Error", e.what(), kComputationError);
  }
}

/// Entry point for the executable: parse, pick up ZGB_TABLE_DIR, run.
inline int main_entry(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args(argv + 1, argv + argc);
  auto parsed = parse_args(args);
  if (!parsed.config) {
    if (parsed.exit_code == kOk) {
      out << parsed.text;
      return kOk;
    }
    return detail::report_error(out, "UsageError", parsed.text, parsed.exit_code);
  }
  if (const char* dir = std::getenv("ZGB_TABLE_DIR"); dir != nullptr && *dir != '\0')
    parsed.config->table_dir = dir;
  return run(*parsed.config, out, err);
}

}  // namespace zgb::cli

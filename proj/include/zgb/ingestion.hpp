#pragma once

// Reading reference ordinate tables and cross-checking them against
// computed ones.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "zgb/errors.hpp"
#include "zgb/zero_finder.hpp"

namespace zgb {

struct ReferenceTableFile {
  std::string path;
  std::optional<std::size_t> declared_count;  // last index, when an index column is present
  std::vector<double> parsed;
  std::vector<std::size_t> lines;  // source line of each parsed value
  int decimals = 0;                // fewest decimal places seen
  int columns = 0;
};

inline constexpr double kFirstOrdinateGate = 14.1347;
inline constexpr double kFirstOrdinateGateTolerance = 1e-3;

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

inline double parse_ordinate(std::string_view tok, std::size_t line, int& decimals) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v, std::chars_format::fixed);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v) || !(v > 0.0))
    throw ParseError("not a positive decimal: '" + std::string(tok) + "'", line);
  const auto dot = tok.find('.');
  decimals = dot == std::string_view::npos ? 0 : static_cast<int>(tok.size() - dot - 1);
  return v;
}

inline std::size_t parse_index(std::string_view tok, std::size_t line) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || v == 0)
    throw ParseError("not a positive index: '" + std::string(tok) + "'", line);
  return v;
}

}  // namespace detail

/// Parses a one- or two-column ordinate listing. Blank lines and lines
/// starting with '#' are skipped; with two columns the second is the
/// ordinate and the first a 1-based index that must count up by one.
inline ReferenceTableFile parse_reference_text(std::istream& in, const std::string& name = "<stream>") {
  ReferenceTableFile f;
  f.path = name;
  f.decimals = -1;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const auto toks = detail::split_ws(raw);
    if (toks.empty() || toks.front().front() == '#') continue;
    if (toks.size() > 2) throw ParseError("expected one or two columns, found " + std::to_string(toks.size()), line);
    const int cols = static_cast<int>(toks.size());
    if (f.columns == 0) f.columns = cols;
    if (cols != f.columns) throw ParseError("column count changed from " + std::to_string(f.columns), line);

    if (cols == 2) {
      const std::size_t idx = detail::parse_index(toks[0], line);
      if (idx != f.parsed.size() + 1)
        throw ParseError("index " + std::to_string(idx) + " out of sequence", line);
      f.declared_count = idx;
    }
    int d = 0;
    const double v = detail::parse_ordinate(toks.back(), line, d);
    if (!f.parsed.empty() && !(v > f.parsed.back())) {
      std::ostringstream msg;
      msg.precision(12);
      msg << "ordinates not increasing: " << v << " follows " << f.parsed.back() << " from line "
          << f.lines.back();
      throw ParseError(msg.str(), line);
    }
    if (f.parsed.empty() && std::fabs(v - kFirstOrdinateGate) > kFirstOrdinateGateTolerance)
      throw ParseError("first ordinate is not gamma_1 ~ 14.1347", line);
    f.decimals = f.decimals < 0 ? d : std::min(f.decimals, d);
    f.parsed.push_back(v);
    f.lines.push_back(line);
  }
  if (f.parsed.empty()) throw ParseError("no ordinates in " + name, line);
  return f;
}

inline ReferenceTableFile read_reference_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  return parse_reference_text(in, path);
}

struct IngestResult {
  ReferenceTableFile file;
  ZeroTable table;
  AuditReport audit;
};

/// ZeroTable from parsed ordinates: abs_err = 10^-d for d printed decimals,
/// t_max = last ordinate unless given, audited if audit_completeness passes.
inline IngestResult ingest(ReferenceTableFile file, std::optional<double> t_max = std::nullopt,
                           const AuditOptions& opts = {}) {
  const double abs_err = std::pow(10.0, -file.decimals);
  const double cover = t_max.value_or(file.parsed.back());
  if (cover < file.parsed.back()) throw DomainError("ingest: t_max below the last ordinate");
  IngestResult r{std::move(file), {}, {}};
  r.table = make_table(r.file.parsed, abs_err, cover, TableSource::ingested);
  r.audit = audit_completeness(r.table, opts);
  r.table.audited = r.audit.passed;
  return r;
}

/// Reads `path` and, when present, its JSON sidecar for t_max.
inline IngestResult ingest_file(const std::string& path, const AuditOptions& opts = {}) {
  std::optional<double> t_max;
  const std::string meta = sidecar_path(path);
  if (std::filesystem::exists(meta)) {
    std::ifstream in(meta);
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.contains("t_max") || !j["t_max"].is_number())
      throw ParseError("malformed sidecar " + meta, 0);
    t_max = j["t_max"].get<double>();
  }
  return ingest(read_reference_file(path), t_max, opts);
}

/// Audited table from file; throws AuditError when the audit fails.
inline ZeroTable parse_reference(const std::string& path, const AuditOptions& opts = {}) {
  auto r = ingest_file(path, opts);
  if (!r.table.audited) throw AuditError("parse_reference: " + r.audit.message);
  return std::move(r.table);
}

struct CrossValidationReport {
  double common_t_max = 0.0;
  std::size_t computed_count = 0;
  std::size_t reference_count = 0;
  bool counts_match = false;
  std::size_t pairs = 0;
  std::vector<double> diffs;
  double max_diff = 0.0;
  std::size_t max_diff_index = 0;  // 1-based
  double tolerance = 0.0;          // combined bound at max_diff_index
  bool within_tolerance = false;
  bool passed = false;
};

/// Pairs ordinates by index over the common coverage. A count mismatch is
/// fatal; otherwise passes when every |difference| is below the sum of the
/// two error bounds.
inline CrossValidationReport cross_validate(const ZeroTable& computed, const ZeroTable& reference) {
  if (computed.empty() || reference.empty()) throw RangeError("cross_validate: empty table");
  const double lo = std::max(computed.ordinates.front().gamma, reference.ordinates.front().gamma);
  CrossValidationReport r;
  r.common_t_max = std::min(computed.t_max, reference.t_max);
  if (r.common_t_max < lo) throw RangeError("cross_validate: coverage-disjoint tables");

  // Ordinates within the error bounds of the cut belong to both sides or neither.
  double slack = 0.0;
  for (const auto* t : {&computed, &reference})
    for (const auto& z : t->ordinates) slack = std::max(slack, z.abs_err);
  const double cut = r.common_t_max + 2 * slack;
  r.computed_count = detail::count_le(computed, std::min(cut, computed.t_max));
  r.reference_count = detail::count_le(reference, std::min(cut, reference.t_max));
  r.counts_match = r.computed_count == r.reference_count;
  r.pairs = std::min(r.computed_count, r.reference_count);

  r.within_tolerance = true;
  for (std::size_t i = 0; i < r.pairs; ++i) {
    const auto& a = computed.ordinates[i];
    const auto& b = reference.ordinates[i];
    const double d = std::fabs(a.gamma - b.gamma);
    const double tol = a.abs_err + b.abs_err;
    r.diffs.push_back(d);
    if (d > r.max_diff || i == 0) {
      r.max_diff = d;
      r.max_diff_index = i + 1;
      r.tolerance = tol;
    }
    if (!(d < tol) && !(d == 0.0)) r.within_tolerance = false;
  }
  r.passed = r.counts_match && r.within_tolerance;
  return r;
}

inline nlohmann::json to_json(const CrossValidationReport& r) {
  return {{"common_t_max", r.common_t_max},
          {"computed_count", r.computed_count},
          {"reference_count", r.reference_count},
          {"counts_match", r.counts_match},
          {"pairs", r.pairs},
          {"max_diff", r.max_diff},
          {"max_diff_index", r.max_diff_index},
          {"tolerance_at_max", r.tolerance},
          {"passed", r.passed}};
}

}  // namespace zgb

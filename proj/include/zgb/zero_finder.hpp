#pragma once

// Locating ordinates of zeros on the critical line, auditing the resulting
// table for completeness, and persisting tables as plain text.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zgb/bounds.hpp"
#include "zgb/detail/parallel.hpp"
#include "zgb/errors.hpp"
#include "zgb/version.hpp"
#include "zgb/zeta_core.hpp"

namespace zgb {

struct ZeroOrdinate {
  std::size_t index = 0;  // 1-based rank
  double gamma = 0.0;
  double abs_err = 0.0;
};

enum class TableSource { computed, ingested, merged };

inline const char* to_string(TableSource s) {
  switch (s) {
    case TableSource::computed: return "computed";
    case TableSource::ingested: return "ingested";
    case TableSource::merged: return "merged";
  }
  return "unknown";
}

inline std::optional<TableSource> table_source_from_string(const std::string& s) {
  if (s == "computed") return TableSource::computed;
  if (s == "ingested") return TableSource::ingested;
  if (s == "merged") return TableSource::merged;
  return std::nullopt;
}

/// Sorted ordinates up to t_max. Treated as immutable once audited.
struct ZeroTable {
  std::vector<ZeroOrdinate> ordinates;
  double t_max = 0.0;
  bool audited = false;
  TableSource source = TableSource::computed;

  std::size_t size() const { return ordinates.size(); }
  bool empty() const { return ordinates.empty(); }

  std::vector<double> gammas() const {
    std::vector<double> out;
    out.reserve(ordinates.size());
    for (const auto& z : ordinates) out.push_back(z.gamma);
    return out;
  }
};

/// Builds an unaudited table from ascending ordinates, assigning indices 1..n.
inline ZeroTable make_table(const std::vector<double>& gammas, double abs_err, double t_max,
                            TableSource source) {
  ZeroTable table;
  table.t_max = t_max;
  table.source = source;
  table.ordinates.reserve(gammas.size());
  for (std::size_t i = 0; i < gammas.size(); ++i)
    table.ordinates.push_back({i + 1, gammas[i], abs_err});
  return table;
}

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
};

namespace detail {

inline constexpr double kTwoPiD = 2 * std::numbers::pi;

// Number of ordinates <= T, without the audited precondition.
inline std::size_t count_le(const ZeroTable& table, double T) {
  auto it = std::upper_bound(table.ordinates.begin(), table.ordinates.end(), T,
                             [](double v, const ZeroOrdinate& z) { return v < z.gamma; });
  return static_cast<std::size_t>(it - table.ordinates.begin());
}

inline std::size_t count_in(const ZeroTable& table, double lo, double hi) {
  const std::size_t a = count_le(table, lo);
  const std::size_t b = count_le(table, hi);
  return b > a ? b - a : 0;
}

inline bool positive(double z) { return z >= 0.0; }

// Principal branch of Lambert W for x >= 0 by Halley iteration.
inline double lambert_w(double x) {
  double w = x < 1.0 ? x : std::log(x) - std::log(std::log(x) + 1.0) + 0.5;
  if (w < 0) w = 0;
  for (int i = 0; i < 50; ++i) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double step = f / (ew * (w + 1) - (w + 2) * f / (2 * w + 2));
    w -= step;
    if (std::fabs(step) <= 1e-15 * (1 + std::fabs(w))) break;
  }
  return w;
}

}  // namespace detail

/// n-th Gram point: theta(g_n) = n pi, n >= 0 (g_0 ~ 17.8456).
inline double gram_point(long n) {
  if (n < 0) throw DomainError("gram_point: requires n >= 0");
  const double x = (static_cast<double>(n) + 0.125) / std::numbers::e;
  double t = detail::kTwoPiD * std::numbers::e * std::exp(detail::lambert_w(x));
  const double target = static_cast<double>(n) * std::numbers::pi;
  for (int i = 0; i < 30; ++i) {
    const double step = (rs_theta(t) - target) / (0.5 * std::log(t / detail::kTwoPiD));
    t -= step;
    if (std::fabs(step) <= 1e-13 * t) break;
  }
  return t;
}

/// Gram points strictly inside (lo, hi), ascending.
inline std::vector<double> gram_points_between(double lo, double hi) {
  std::vector<double> out;
  if (hi <= gram_point(0)) return out;
  long n = 0;
  if (lo >= 18.0) n = std::max(0L, static_cast<long>(std::floor(rs_theta(lo) / std::numbers::pi)) - 1);
  for (;; ++n) {
    const double g = gram_point(n);
    if (g >= hi) break;
    if (g > lo) out.push_back(g);
  }
  return out;
}

/// round(theta(t)/pi + 1): the zero count predicted when S(t) is negligible.
inline long smooth_count(double t) { return std::lround(rs_theta(t) / std::numbers::pi + 1.0); }

/// Initial grid step min(0.5, pi / log(t_hi / 2pi)).
inline double initial_grid_step(double t_hi) {
  const double l = std::log(t_hi / detail::kTwoPiD);
  return l > 0 ? std::min(0.5, std::numbers::pi / l) : 0.5;
}

struct IsolateOptions {
  double step_scale = 1.0;     // multiplies the initial grid step
  double refine_floor = 1e-4;  // smallest cell produced by local halving
  unsigned threads = 0;        // 0: hardware concurrency
};

namespace detail {

struct Sample {
  double t;
  double z;
};

// Brackets in one window [a, b]. Cells next to a local minimum of |Z| with
// no sign change on either side are halved until no such dip remains or the
// cells reach the floor; a dip that actually crosses zero turns into a pair
// of sign changes. The guard samples one step outside the window only take
// part in detecting dips at the window edges.
inline std::vector<Bracket> isolate_window(double a, double b, double step, double floor,
                                           double t_floor) {
  const auto cells = static_cast<std::size_t>(std::max(1.0, std::ceil((b - a) / step)));
  const double h = (b - a) / static_cast<double>(cells);
  std::vector<Sample> pts;
  pts.reserve(cells + 1);
  for (std::size_t i = 0; i <= cells; ++i) {
    const double t = (i == cells) ? b : a + h * static_cast<double>(i);
    pts.push_back({t, hardy_z(t)});
  }
  const double guard_lo = a - h >= t_floor ? hardy_z(a - h) : std::nan("");
  const double guard_hi = hardy_z(b + h);

  for (int level = 0; level < 64; ++level) {
    const std::size_t last = pts.size() - 1;
    auto z_at = [&](std::ptrdiff_t i) -> double {
      if (i < 0) return guard_lo;
      if (static_cast<std::size_t>(i) > last) return guard_hi;
      return pts[static_cast<std::size_t>(i)].z;
    };
    std::vector<char> split(pts.size(), 0);  // split[i]: halve cell (i, i+1)
    bool any = false;
    for (std::size_t i = 0; i <= last; ++i) {
      const auto left = z_at(static_cast<std::ptrdiff_t>(i) - 1);
      const auto right = z_at(static_cast<std::ptrdiff_t>(i) + 1);
      if (std::isnan(left)) continue;
      const double zi = pts[i].z;
      const bool dip = positive(left) == positive(zi) && positive(right) == positive(zi) &&
                       std::fabs(zi) < std::fabs(left) && std::fabs(zi) <= std::fabs(right);
      if (!dip) continue;
      if (i > 0 && (pts[i].t - pts[i - 1].t) / 2 >= floor) split[i - 1] = any = true;
      if (i < last && (pts[i + 1].t - pts[i].t) / 2 >= floor) split[i] = any = true;
    }
    if (!any) break;
    std::vector<Sample> next;
    next.reserve(pts.size() * 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      next.push_back(pts[i]);
      if (i < last && split[i]) {
        const double m = 0.5 * (pts[i].t + pts[i + 1].t);
        next.push_back({m, hardy_z(m)});
      }
    }
    pts.swap(next);
  }

  std::vector<Bracket> out;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (positive(pts[i].z) != positive(pts[i + 1].z)) out.push_back({pts[i].t, pts[i + 1].t});
  return out;
}

}  // namespace detail

/// Sign-change brackets of Z on [t_lo, t_hi], processed window by window
/// between consecutive Gram points (one zero expected per window). Every
/// window is searched for sign-preserving dips of |Z|, not only windows whose
/// count disagrees with the expectation, since a missed close pair can hide
/// behind an agreeing count. Under-detection is left to the audit.
inline std::vector<Bracket> isolate_zeros(double t_lo, double t_hi, const IsolateOptions& opts = {}) {
  if (!(t_lo >= 2.0)) throw DomainError("isolate_zeros: requires t_lo >= 2");
  if (!(t_hi > t_lo)) throw DomainError("isolate_zeros: requires t_hi > t_lo");
  if (t_hi > 1e6) throw DomainError("isolate_zeros: requires t_hi <= 1e6");

  std::vector<double> edges{t_lo};
  for (double g : gram_points_between(t_lo, t_hi)) edges.push_back(g);
  edges.push_back(t_hi);

  const double step = initial_grid_step(t_hi) * opts.step_scale;
  const std::size_t n_windows = edges.size() - 1;
  std::vector<std::vector<Bracket>> per_window(n_windows);
  detail::parallel_for(n_windows, opts.threads, [&](std::size_t w) {
    per_window[w] = detail::isolate_window(edges[w], edges[w + 1], step, opts.refine_floor, 2.0);
  });

  std::vector<Bracket> out;
  for (auto& v : per_window) out.insert(out.end(), v.begin(), v.end());
  return out;
}

/// Target accuracy for refined ordinates.
inline constexpr double kRefineTarget = 1e-9;
inline constexpr int kRefineMaxIterations = 200;

namespace detail {

struct RootResult {
  double root;
  double lo, hi;
  double slope;  // secant slope over the last bisection bracket
  double z_at_root;
  double z_err;
  int iterations;
};

// Bisection down to width 1e-6, then Illinois regula falsi until the
// bracket is below 2e-10 or |Z| is within its own error estimate.
template <class Eval>
RootResult find_root(Eval&& eval, double a, double b, int budget) {
  CriticalLinePoint fa = eval(a);
  CriticalLinePoint fb = eval(b);
  if (positive(fa.z_value) == positive(fb.z_value))
    throw DomainError("refine_zero: no sign change across bracket");
  int iters = 0;
  auto spend = [&] {
    if (++iters > budget) throw ConvergenceError("refine_zero: no convergence within 200 iterations", a, b);
  };
  while (b - a > 1e-6) {
    spend();
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const CriticalLinePoint fm = eval(m);
    if (positive(fm.z_value) == positive(fa.z_value)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  const double slope = (fb.z_value - fa.z_value) / (b - a);
  double x = 0.5 * (a + b);
  double z_at = 0.5 * (fa.z_value + fb.z_value);
  double z_err = std::max(fa.abs_err_est, fb.abs_err_est);
  double ya = fa.z_value;
  double yb = fb.z_value;
  int side = 0;
  while (b - a > 2e-10) {
    spend();
    x = (a * yb - b * ya) / (yb - ya);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    const CriticalLinePoint fx = eval(x);
    z_at = fx.z_value;
    z_err = fx.abs_err_est;
    if (fx.z_value == 0.0 || std::fabs(fx.z_value) <= fx.abs_err_est) break;
    if (positive(fx.z_value) == positive(ya)) {
      a = x;
      ya = fx.z_value;
      if (side == -1) yb /= 2;
      side = -1;
    } else {
      b = x;
      yb = fx.z_value;
      if (side == 1) ya /= 2;
      side = 1;
    }
    x = 0.5 * (a + b);
    z_at = 0.5 * (ya + yb);
  }
  return {x, a, b, slope, z_at, z_err, iters};
}

// Distance to the true zero: bounded by the bracket, and by the residual
// |Z(x)| plus the evaluation error divided by |Z'| (linearised, which is
// accurate once the bracket is below 1e-6).
inline double root_error(const RootResult& r) {
  const double width = std::max(r.hi - r.root, r.root - r.lo);
  const double slope = std::max(std::fabs(r.slope), 1e-300);
  const double linear = (std::fabs(r.z_at_root) + r.z_err) / slope;
  return std::min(width + r.z_err / slope, linear * 1.01);
}

}  // namespace detail

/// Refines one sign-change bracket to an ordinate. Uses hardy_z, then
/// repolishes with the Euler-Maclaurin evaluator when the Riemann-Siegel
/// error estimate alone cannot reach kRefineTarget and t <= 1e4.
inline ZeroOrdinate refine_zero(const Bracket& bracket, std::size_t index = 0) {
  if (!(bracket.lo < bracket.hi))
    throw DomainError("refine_zero: degenerate bracket, no sign change");
  auto fast = [](double t) { return hardy_z_point(t); };
  detail::RootResult r = detail::find_root(fast, bracket.lo, bracket.hi, kRefineMaxIterations);
  double err = detail::root_error(r);
  int used = r.iterations;

  if (err > kRefineTarget && r.root <= kEulerMaclaurinMaxHeight) {
    auto precise = [](double t) { return hardy_z_euler_maclaurin(t); };
    double half = std::max(4 * err, 1e-8);
    for (;;) {
      const double lo = std::max(bracket.lo, r.root - half);
      const double hi = std::min(bracket.hi, r.root + half);
      const bool whole = lo == bracket.lo && hi == bracket.hi;
      const auto zlo = precise(lo).z_value;
      const auto zhi = precise(hi).z_value;
      used += 2;
      if (detail::positive(zlo) != detail::positive(zhi)) {
        detail::RootResult p = detail::find_root(precise, lo, hi, kRefineMaxIterations - used);
        // keep the bracket slope: the polish bracket can be too narrow to resolve Z'
        p.slope = r.slope;
        r = p;
        err = detail::root_error(r);
        break;
      }
      if (whole) break;
      half *= 4;
    }
  }
  return {index, r.root, err};
}

struct EnvelopeCheck {
  double T = 0.0;
  std::size_t count = 0;
  bounds::EnvelopeEval env;
  bool ok = false;
};

struct WindowFinding {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t table_count = 0;     // table entries in (lo, hi]
  std::size_t isolated_count = 0;  // sign-change brackets found on re-isolation
};

struct AuditReport {
  bool passed = false;
  bool structure_ok = false;
  bool envelope_ok = false;
  bool heuristic_ok = false;
  std::vector<EnvelopeCheck> envelope_checks;
  std::size_t checkpoints = 0;
  std::size_t mismatches = 0;
  std::vector<WindowFinding> reisolated;
  std::vector<WindowFinding> missing;
  std::vector<Bracket> missing_brackets;  // brackets with no table entry inside
  std::string assumption;
  std::string message;
};

struct AuditOptions {
  std::size_t envelope_samples = 100;
  double near_integer = 0.3;
  double step_scale = 0.5;  // re-isolation step relative to the initial grid
  double match_tolerance = 1e-6;
  unsigned threads = 0;
};

/// Completeness audit. (i) Rosser envelope |N - F| <= R at t_max and at
/// evenly spaced heights; a violation is fatal. (ii) At Gram points (and at
/// t_max when theta/pi + 1 is within 0.3 of an integer) the count must equal
/// round(theta/pi + 1); on mismatch the stretch since the last agreeing
/// checkpoint is re-isolated at half step, and any bracket without a table
/// entry is reported as a missed zero.
inline AuditReport audit_completeness(const ZeroTable& table, const AuditOptions& opts = {}) {
  AuditReport rep;
  rep.assumption =
      "zeros simple; no pair closer than the 1e-4 refinement floor; S(t) excursions at "
      "checkpoints are resolved by re-isolation, not by Turing's method";

  rep.structure_ok = true;
  for (std::size_t i = 0; i < table.ordinates.size(); ++i) {
    const auto& z = table.ordinates[i];
    const bool ordered = i == 0 || z.gamma > table.ordinates[i - 1].gamma;
    if (z.index != i + 1 || !ordered || !(z.gamma > 14.0) || z.gamma > table.t_max ||
        !(z.abs_err >= 0.0)) {
      rep.structure_ok = false;
      rep.message = "table structure violated at index " + std::to_string(i + 1);
      return rep;
    }
  }

  rep.envelope_ok = true;
  if (table.t_max >= 2.0) {
    std::vector<double> heights;
    for (std::size_t k = 0; k < opts.envelope_samples; ++k)
      heights.push_back(2.0 + (table.t_max - 2.0) * static_cast<double>(k) /
                                  static_cast<double>(opts.envelope_samples));
    heights.push_back(table.t_max);
    for (double T : heights) {
      EnvelopeCheck c;
      c.T = T;
      c.count = detail::count_le(table, T);
      c.env = bounds::envelope(T);
      c.ok = std::fabs(static_cast<double>(c.count) - c.env.f_val) <= c.env.r_val;
      if (!c.ok) {
        rep.envelope_ok = false;
        if (rep.message.empty()) rep.message = "Rosser envelope violated at T = " + std::to_string(T);
      }
      rep.envelope_checks.push_back(c);
    }
  }
  if (!rep.envelope_ok) return rep;

  std::vector<double> checkpoints;
  if (table.t_max > 2.0) {
    checkpoints = gram_points_between(2.0, table.t_max);
    const double x = rs_theta(table.t_max) / std::numbers::pi + 1.0;
    if (std::fabs(x - std::round(x)) <= opts.near_integer) checkpoints.push_back(table.t_max);
  }
  rep.checkpoints = checkpoints.size();

  std::vector<Bracket> windows;
  double last_match = 2.0;
  double covered = 2.0;
  for (double c : checkpoints) {
    const long expected = smooth_count(c);
    const auto have = static_cast<long>(detail::count_le(table, c));
    if (have == expected) {
      last_match = c;
      continue;
    }
    ++rep.mismatches;
    const double lo = std::max(last_match, covered);
    if (c > lo) windows.push_back({lo, c});
    covered = c;
  }

  const double step = initial_grid_step(std::max(table.t_max, 20.0)) * opts.step_scale;
  std::vector<std::vector<Bracket>> found(windows.size());
  detail::parallel_for(windows.size(), opts.threads, [&](std::size_t w) {
    found[w] = detail::isolate_window(windows[w].lo, windows[w].hi, step, 1e-4, 2.0);
  });

  for (std::size_t w = 0; w < windows.size(); ++w) {
    WindowFinding f{windows[w].lo, windows[w].hi, detail::count_in(table, windows[w].lo, windows[w].hi),
                    found[w].size()};
    rep.reisolated.push_back(f);
    bool missing_here = false;
    for (const auto& b : found[w]) {
      if (detail::count_in(table, b.lo - opts.match_tolerance, b.hi + opts.match_tolerance) == 0) {
        rep.missing_brackets.push_back(b);
        missing_here = true;
      }
    }
    if (missing_here) rep.missing.push_back(f);
  }
  rep.heuristic_ok = rep.missing.empty();
  rep.passed = rep.structure_ok && rep.envelope_ok && rep.heuristic_ok;
  if (!rep.heuristic_ok) {
    const auto& f = rep.missing.front();
    rep.message = "missed zeros in window [" + std::to_string(f.lo) + ", " + std::to_string(f.hi) + "]";
  }
  return rep;
}

struct BuildOptions {
  IsolateOptions isolate;
  int max_repair_rounds = 3;
};

struct BuildResult {
  ZeroTable table;
  AuditReport audit;
};

namespace detail {

inline std::vector<ZeroOrdinate> refine_all(const std::vector<Bracket>& brackets, unsigned threads) {
  std::vector<ZeroOrdinate> out(brackets.size());
  parallel_for(brackets.size(), threads, [&](std::size_t i) { out[i] = refine_zero(brackets[i]); });
  return out;
}

inline void reindex(ZeroTable& table) {
  std::sort(table.ordinates.begin(), table.ordinates.end(),
            [](const ZeroOrdinate& x, const ZeroOrdinate& y) { return x.gamma < y.gamma; });
  for (std::size_t i = 0; i < table.ordinates.size(); ++i) table.ordinates[i].index = i + 1;
}

}  // namespace detail

/// Isolates and refines every zero in [2, t_max], then audits. Zeros the
/// audit finds on re-isolation are merged in and the audit repeated.
inline BuildResult build_table_with_report(double t_max, const BuildOptions& opts = {}) {
  if (!(t_max >= 20.0 && t_max <= 1e6)) throw DomainError("build_table: requires 20 <= t_max <= 1e6");
  ZeroTable table;
  table.t_max = t_max;
  table.source = TableSource::computed;
  table.ordinates = detail::refine_all(isolate_zeros(2.0, t_max, opts.isolate), opts.isolate.threads);
  detail::reindex(table);

  AuditOptions audit_opts;
  audit_opts.threads = opts.isolate.threads;
  for (int round = 0;; ++round) {
    AuditReport rep = audit_completeness(table, audit_opts);
    if (!rep.structure_ok || !rep.envelope_ok) throw AuditError("build_table: " + rep.message);
    if (rep.passed) {
      table.audited = true;
      return {std::move(table), std::move(rep)};
    }
    if (round >= opts.max_repair_rounds) throw AuditError("build_table: " + rep.message);
    for (auto& z : detail::refine_all(rep.missing_brackets, opts.isolate.threads))
      table.ordinates.push_back(z);
    detail::reindex(table);
  }
}

inline ZeroTable build_table(double t_max, const BuildOptions& opts = {}) {
  return build_table_with_report(t_max, opts).table;
}

/// N(T): ordinates with gamma <= T (inclusive).
inline std::size_t count_up_to(const ZeroTable& table, double T) {
  if (!table.audited) throw AuditError("count_up_to: table is not audited");
  if (T > table.t_max) throw RangeError("count_up_to: T beyond table coverage t_max");
  return detail::count_le(table, T);
}

// Persistence: one ordinate per line, ascending, fixed decimals, right-aligned.

inline void write_table(std::ostream& os, const ZeroTable& table, int decimals = 9) {
  char buf[64];
  for (const auto& z : table.ordinates) {
    std::snprintf(buf, sizeof buf, "%*.*f\n", 6 + decimals, decimals, z.gamma);
    os << buf;
  }
}

inline nlohmann::json table_metadata(const ZeroTable& table) {
  return {{"t_max", table.t_max},
          {"source", to_string(table.source)},
          {"audited", table.audited},
          {"count", table.size()},
          {"tool_version", kVersion}};
}

inline std::string sidecar_path(const std::string& table_path) { return table_path + ".json"; }

inline void write_table_file(const std::string& path, const ZeroTable& table, int decimals = 9) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_table(out, table, decimals);
  std::ofstream meta(sidecar_path(path));
  if (!meta) throw std::runtime_error("cannot open " + sidecar_path(path) + " for writing");
  meta << table_metadata(table).dump(2) << "\n";
}

}  // namespace zgb

#pragma once

// Sums over zero ordinates: A(T), general weighted sums checked against the
// Stieltjes partial-summation identity, and sweeps of A(T) - M(T) against
// the bounds 3/50 and 109/250.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "zgb/bounds.hpp"
#include "zgb/compensated.hpp"
#include "zgb/detail/parallel.hpp"
#include "zgb/errors.hpp"
#include "zgb/quadrature.hpp"
#include "zgb/zero_finder.hpp"

namespace zgb {

namespace detail {

inline void require_coverage(const ZeroTable& table, double T, const char* what) {
  if (!table.audited) throw AuditError(std::string(what) + ": table is not audited");
  if (T > table.t_max) throw RangeError(std::string(what) + ": T beyond table coverage t_max");
}

}  // namespace detail

/// A(T) = sum of 1/gamma over gamma <= T, ascending, compensated.
inline double a_of_t(const ZeroTable& table, double T) {
  detail::require_coverage(table, T, "a_of_t");
  CompensatedSum acc;
  for (const auto& z : table.ordinates) {
    if (z.gamma > T) break;
    acc += 1.0 / z.gamma;
  }
  return acc.value();
}

/// Prefix sums of 1/gamma for repeated A(T) queries.
class ReciprocalSums {
 public:
  explicit ReciprocalSums(const ZeroTable& table) : table_(&table) {
    if (!table.audited) throw AuditError("ReciprocalSums: table is not audited");
    prefix_.reserve(table.size() + 1);
    err_.reserve(table.size() + 1);
    prefix_.push_back(0.0);
    err_.push_back(0.0);
    CompensatedSum acc;
    double err = 0.0;
    for (const auto& z : table.ordinates) {
      acc += 1.0 / z.gamma;
      err += z.abs_err / (z.gamma * (z.gamma - z.abs_err));
      prefix_.push_back(acc.value());
      err_.push_back(err);
    }
  }

  const ZeroTable& table() const { return *table_; }

  double at(double T) const { return prefix_[index(T)]; }

  /// Bound on |computed A(T) - exact A(T)| from ordinate errors and rounding.
  double error_at(double T) const {
    const std::size_t k = index(T);
    return err_[k] + 4 * DBL_EPSILON * prefix_[k];
  }

 private:
  std::size_t index(double T) const {
    detail::require_coverage(*table_, T, "ReciprocalSums");
    return detail::count_le(*table_, T);
  }

  const ZeroTable* table_;
  std::vector<double> prefix_;
  std::vector<double> err_;
};

/// Nonnegative C^1 weight and its derivative.
struct Weight {
  std::string name;
  std::function<double(double)> phi;
  std::function<double(double)> dphi;
};

namespace weights {

inline Weight unit() {
  return {"1", [](double) { return 1.0; }, [](double) { return 0.0; }};
}
inline Weight reciprocal() {
  return {"1/t", [](double t) { return 1.0 / t; }, [](double t) { return -1.0 / (t * t); }};
}
inline Weight reciprocal_square() {
  return {"1/t^2", [](double t) { return 1.0 / (t * t); }, [](double t) { return -2.0 / (t * t * t); }};
}
inline Weight log_over_t() {
  return {"log(t)/t", [](double t) { return std::log(t) / t; },
          [](double t) { return (1.0 - std::log(t)) / (t * t); }};
}
inline Weight log() {
  return {"log(t)", [](double t) { return std::log(t); }, [](double t) { return 1.0 / t; }};
}

}  // namespace weights

struct PartialSumResult {
  double direct = 0.0;     // sum over U < gamma <= V of phi(gamma)
  double stieltjes = 0.0;  // -int N phi' + N(V) phi(V) - N(U) phi(U), pieces integrated exactly
  double stieltjes_quadrature = 0.0;  // same, int phi' by Gauss-Kronrod on each piece
  double difference = 0.0;             // stieltjes - direct
  double quadrature_difference = 0.0;  // stieltjes_quadrature - direct
  double quadrature_abs_err = 0.0;
  bool quadrature_converged = false;
  std::size_t terms = 0;
};

/// Evaluates both sides of
///   sum_{U<gamma<=V} phi(gamma) = -int_U^V N(t) phi'(t) dt + N(V) phi(V) - N(U) phi(U).
/// N is constant on [gamma_k, gamma_{k+1}), so the integral splits into
/// pieces; on each piece int phi' = phi(b) - phi(a) exactly, and the
/// quadrature route integrates phi' numerically as a second check.
inline PartialSumResult partial_sum(const ZeroTable& table, const Weight& w, double U, double V) {
  if (!(U > 1.0)) throw DomainError("partial_sum: requires U > 1");
  if (!(V >= U)) throw DomainError("partial_sum: requires V >= U");
  detail::require_coverage(table, V, "partial_sum");

  const std::size_t first = detail::count_le(table, U);  // index of first gamma > U
  const std::size_t last = detail::count_le(table, V);   // gammas [first, last) lie in (U, V]
  PartialSumResult r;
  r.terms = last - first;

  CompensatedSum direct;
  for (std::size_t k = first; k < last; ++k) direct += w.phi(table.ordinates[k].gamma);
  r.direct = direct.value();

  CompensatedSum exact;
  CompensatedSum quad;
  r.quadrature_converged = true;
  auto piece = [&](double a, double b, double count) {
    if (b <= a || count == 0.0) return;
    exact += -count * (w.phi(b) - w.phi(a));
    const auto q = integrate(w.dphi, a, b, 1e-15, 1e-13);
    quad += -count * q.value;
    r.quadrature_abs_err += count * q.abs_err;
    r.quadrature_converged = r.quadrature_converged && q.converged;
  };
  double left = U;
  auto n_left = static_cast<double>(first);
  for (std::size_t k = first; k < last; ++k) {
    const double g = table.ordinates[k].gamma;
    piece(left, g, n_left);
    left = g;
    n_left = static_cast<double>(k + 1);
  }
  piece(left, V, n_left);

  const double boundary = static_cast<double>(last) * w.phi(V) - static_cast<double>(first) * w.phi(U);
  exact += boundary;
  quad += boundary;
  r.stieltjes = exact.value();
  r.stieltjes_quadrature = quad.value();
  r.difference = r.stieltjes - r.direct;
  r.quadrature_difference = r.stieltjes_quadrature - r.direct;
  return r;
}

/// One evaluation of A(T) - M(T) against 3/50 (T >= 2) and 109/250 (T >= 2.222).
struct TheoremCheck {
  double T = 0.0;
  double a_val = 0.0;
  double m_val = 0.0;
  double delta = 0.0;  // a_val - m_val
  bool lower_ok = false;
  bool upper_ok = false;
  bool upper_applies = false;
  double margin_lo = 0.0;  // delta - 3/50
  double margin_hi = 0.0;  // 109/250 - delta
  double err_est = 0.0;    // bound on the error of delta

  bool ok() const { return lower_ok && upper_ok; }
};

inline TheoremCheck check_theorem_at(const ReciprocalSums& sums, double T) {
  if (!(T >= bounds::kLowerThreshold)) throw DomainError("theorem check: requires T >= 2");
  TheoremCheck c;
  c.T = T;
  c.a_val = sums.at(T);
  c.m_val = bounds::main_term(T);
  c.delta = c.a_val - c.m_val;
  const double l = std::log(T);
  c.err_est = sums.error_at(T) + 8 * DBL_EPSILON * (l * l + 2 * l + std::fabs(c.delta));
  c.margin_lo = c.delta - bounds::kLowerFloor.value();
  c.margin_hi = bounds::kUpperCap.value() - c.delta;
  c.lower_ok = c.margin_lo > c.err_est;
  c.upper_applies = T >= bounds::kUpperThreshold.value();
  c.upper_ok = !c.upper_applies || c.margin_hi > c.err_est;
  return c;
}

struct SweepResult {
  std::vector<TheoremCheck> records;
  double min_delta = 0.0;
  double max_delta = 0.0;
  double min_margin_lo = 0.0;
  double min_margin_lo_at = 0.0;
  double min_margin_hi = 0.0;  // over records where the upper side applies
  double min_margin_hi_at = 0.0;
  std::size_t failures = 0;

  bool all_ok() const { return failures == 0 && !records.empty(); }
};

inline constexpr double kSweepEpsilon = 1e-6;

/// TheoremCheck at `samples` evenly spaced heights in [t_min, t_max], at
/// every ordinate in range and at ordinate +- 1e-6, where A jumps.
inline SweepResult theorem_sweep(const ZeroTable& table, double t_min, double t_max, std::size_t samples,
                                 unsigned threads = 0) {
  if (!(t_min >= 2.0)) throw DomainError("theorem_sweep: requires t_min >= 2");
  if (!(t_max >= t_min)) throw DomainError("theorem_sweep: requires t_max >= t_min");
  if (samples == 0) throw DomainError("theorem_sweep: requires samples >= 1");
  const ReciprocalSums sums(table);
  detail::require_coverage(table, t_max, "theorem_sweep");

  std::vector<double> heights;
  heights.reserve(samples + 3 * table.size());
  for (std::size_t i = 0; i < samples; ++i)
    heights.push_back(samples == 1 ? t_min
                                   : t_min + (t_max - t_min) * static_cast<double>(i) /
                                                 static_cast<double>(samples - 1));
  for (const auto& z : table.ordinates) {
    for (double T : {z.gamma - kSweepEpsilon, z.gamma, z.gamma + kSweepEpsilon})
      if (T >= t_min && T <= t_max) heights.push_back(T);
  }
  std::sort(heights.begin(), heights.end());

  SweepResult out;
  out.records.resize(heights.size());
  detail::parallel_for(heights.size(), threads,
                       [&](std::size_t i) { out.records[i] = check_theorem_at(sums, heights[i]); });

  bool first = true;
  bool first_hi = true;
  for (const auto& r : out.records) {
    if (!r.ok()) ++out.failures;
    if (first || r.delta < out.min_delta) out.min_delta = r.delta;
    if (first || r.delta > out.max_delta) out.max_delta = r.delta;
    if (first || r.margin_lo < out.min_margin_lo) {
      out.min_margin_lo = r.margin_lo;
      out.min_margin_lo_at = r.T;
    }
    first = false;
    if (r.upper_applies && (first_hi || r.margin_hi < out.min_margin_hi)) {
      out.min_margin_hi = r.margin_hi;
      out.min_margin_hi_at = r.T;
      first_hi = false;
    }
  }
  return out;
}

struct Residual {
  double T = 0.0;
  double residual = 0.0;  // A(T) - M(T)
  bool lower_applies = false;
  bool upper_applies = false;
  bool in_range = false;  // strictly inside the applicable bounds

  bool ok() const { return in_range; }
};

/// A(T) - M(T) at the given heights, in input order.
inline std::vector<Residual> asymptotic_residual(const ZeroTable& table, std::span<const double> heights) {
  std::vector<Residual> out;
  out.reserve(heights.size());
  for (double T : heights) {
    Residual r;
    r.T = T;
    r.residual = a_of_t(table, T) - bounds::main_term(T);
    r.lower_applies = T >= bounds::kLowerThreshold;
    r.upper_applies = T >= bounds::kUpperThreshold.value();
    r.in_range = (!r.lower_applies || r.residual > bounds::kLowerFloor.value()) &&
                 (!r.upper_applies || r.residual < bounds::kUpperCap.value());
    out.push_back(r);
  }
  return out;
}

}  // namespace zgb

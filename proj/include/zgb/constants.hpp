#pragma once

// Additive constants of the explicit bounds for A(T) - M(T), recomputed as
// limits of the exact bounds obtained by partial summation against the
// envelope F +- R, starting at the first ordinate gamma_1.

#include <cmath>

#include "zgb/bounds.hpp"
#include "zgb/zero_finder.hpp"

namespace zgb::bounds {

struct BoundConstants {
  double gamma1 = 0.0;
  double gamma1_err = 0.0;
  // E(gamma_1) replaced by its sandwich upper bound 1/(t log t) - (31/95)/(t log^2 t),
  // which keeps both constants on the safe side of the exact ones.
  double c_au = 0.0;
  double c_al = 0.0;
  // Same limits with E(gamma_1) itself.
  double c_au_exact_e = 0.0;
  double c_al_exact_e = 0.0;
  Rational c_au_cap = kUpperCap;
  Rational c_al_floor = kLowerFloor;
  double limit_height = 1e10;
  double convergence_gap = 0.0;  // |value at 1e10 - value at 1e9|, max over both constants
  bool converged = false;

  bool c_au_below_cap() const {
    return c_au * static_cast<double>(c_au_cap.den) < static_cast<double>(c_au_cap.num);
  }
  bool c_al_above_floor() const {
    return c_al * static_cast<double>(c_al_floor.den) > static_cast<double>(c_al_floor.num);
  }
};

namespace detail {

// antideriv_r with a caller-supplied value for E(t).
inline double antideriv_r_with(double t, double e_value) {
  const double l = std::log(t);
  return -kEnvelopeLogLogCoeff.value() * std::log(l) / t - kEnvelopeLogCoeff.value() * l / t -
         69.0 / (40.0 * t) - kEnvelopeLogLogCoeff.value() * e_value;
}

struct ExtractedPair {
  double upper;  // UB_exact(T) - M(T)
  double lower;  // LB_exact(T) - M(T)
};

// Exact bounds from integrating N(t)/t^2 between gamma_1 and T, minus M(T):
//   UB = [P(T) - P(g1)] + [Q(T) - Q(g1)] + (F(T) + R(T)) / T
//   LB = [P(T) - P(g1)] - [Q(T) - Q(g1)] + (F(T) - R(T)) / T
inline ExtractedPair extract_at(double T, double gamma1, double q_gamma1) {
  const double p = antideriv_f(T) - antideriv_f(gamma1);
  const double q = antideriv_r(T) - q_gamma1;
  const double f_over_t = big_f(T) / T;
  const double r_over_t = big_r(T) / T;
  const double m = main_term(T);
  return {p + q + f_over_t + r_over_t - m, p - q + f_over_t - r_over_t - m};
}

}  // namespace detail

/// Recomputes c_au and c_al from the exact pre-extraction bounds at
/// T = 1e10, with a convergence check against T = 1e9 (gap must be <= 1e-7).
inline BoundConstants compute_constants(double gamma1, double gamma1_err = 0.0) {
  BoundConstants c;
  c.gamma1 = gamma1;
  c.gamma1_err = gamma1_err;
  const Sandwich s = e_frak_sandwich(gamma1);
  const double q_sandwich = detail::antideriv_r_with(gamma1, s.hi);
  const double q_exact = detail::antideriv_r_with(gamma1, s.value);

  const auto far = detail::extract_at(c.limit_height, gamma1, q_sandwich);
  const auto near = detail::extract_at(c.limit_height / 10, gamma1, q_sandwich);
  c.c_au = far.upper;
  c.c_al = far.lower;
  c.convergence_gap = std::max(std::fabs(far.upper - near.upper), std::fabs(far.lower - near.lower));
  c.converged = c.convergence_gap <= 1e-7;

  const auto exact = detail::extract_at(c.limit_height, gamma1, q_exact);
  c.c_au_exact_e = exact.upper;
  c.c_al_exact_e = exact.lower;
  return c;
}

/// As above, locating gamma_1 with the zero finder.
inline BoundConstants compute_constants() {
  const ZeroOrdinate g1 = refine_zero({14.0, 14.5}, 1);
  return compute_constants(g1.gamma, g1.abs_err);
}

/// Process-wide constants, computed once on first use.
inline const BoundConstants& constants() {
  static const BoundConstants c = compute_constants();
  return c;
}

struct BoundPair {
  double sharp = 0.0;       // with c_au / c_al and the tail term
  double simplified = 0.0;  // with 109/250 or 3/50
};

/// A(T) < M(T) + c_au + tail_upper(T) <= M(T) + 109/250 for T >= 2.222.
inline BoundPair upper_bound_a(double T, const BoundConstants& c = constants()) {
  if (!(T >= kUpperThreshold.value())) throw DomainError("upper_bound_a: requires T >= 2.222");
  const double m = main_term(T);
  return {m + c.c_au + tail_upper(T), m + c.c_au_cap.value()};
}

/// M(T) + c_al + tail_lower(T) and M(T) + 3/50, for T >= 2.
inline BoundPair lower_bound_a(double T, const BoundConstants& c = constants()) {
  if (!(T >= kLowerThreshold)) throw DomainError("lower_bound_a: requires T >= 2");
  const double m = main_term(T);
  return {m + c.c_al + tail_lower(T), m + c.c_al_floor.value()};
}

}  // namespace zgb::bounds

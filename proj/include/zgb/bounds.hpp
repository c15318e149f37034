#pragma once

// Closed-form pieces of the explicit estimate for A(T) = sum_{0<gamma<=T} 1/gamma:
// the zero-counting envelope F(T) +- R(T), the main term M(T), antiderivatives
// of F(t)/t^2 and R(t)/t^2, the special function E(t) = int_1^inf ds/(s t^s),
// and the two tail terms.

#include <cfloat>
#include <cmath>
#include <numbers>

#include "zgb/errors.hpp"
#include "zgb/quadrature.hpp"

namespace zgb::bounds {

/// Exact rational constant, kept symbolic so comparisons can be done on
/// num/den rather than on a rounded decimal.
struct Rational {
  long num;
  long den;

  constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline constexpr Rational kEnvelopeLogCoeff{137, 1000};
inline constexpr Rational kEnvelopeLogLogCoeff{433, 1000};
inline constexpr Rational kEnvelopeConst{397, 250};
inline constexpr Rational kCountOffset{7, 8};
inline constexpr Rational kLowerFloor{3, 50};   // equals 15/250
inline constexpr Rational kUpperCap{109, 250};
inline constexpr Rational kSandwichUpperCoeff{31, 95};
inline constexpr Rational kUpperThreshold{2222, 1000};
inline constexpr double kLowerThreshold = 2.0;

namespace detail {

inline constexpr double kTwoPi = 2 * std::numbers::pi;
inline constexpr double kFourPi = 4 * std::numbers::pi;
inline const double kLogTwoPi = std::log(kTwoPi);

inline void require_at_least(double x, double lo, const char* what) {
  if (!(x >= lo)) throw DomainError(what);
}

}  // namespace detail

/// F(T) = (T/2pi) log(T/2pi) - T/2pi + 7/8.
inline double big_f(double T) {
  detail::require_at_least(T, 2.0, "big_f: requires T >= 2");
  const double u = T / detail::kTwoPi;
  return u * std::log(u) - u + kCountOffset.value();
}

/// R(T) = 0.137 log T + 0.433 log log T + 1.588.
inline double big_r(double T) {
  detail::require_at_least(T, 2.0, "big_r: requires T >= 2");
  const double l = std::log(T);
  return kEnvelopeLogCoeff.value() * l + kEnvelopeLogLogCoeff.value() * std::log(l) +
         kEnvelopeConst.value();
}

struct EnvelopeEval {
  double T = 0.0;
  double f_val = 0.0;
  double r_val = 0.0;
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double count) const { return count >= lower && count <= upper; }
};

inline EnvelopeEval envelope(double T) {
  const double f = big_f(T);
  const double r = big_r(T);
  return {T, f, r, f - r, f + r};
}

/// M(T) = log^2 T / (4 pi) - log(2 pi) log T / (2 pi).
inline double main_term(double T) {
  if (!(T > 1.0)) throw DomainError("main_term: requires T > 1");
  const double l = std::log(T);
  return l * l / detail::kFourPi - detail::kLogTwoPi * l / detail::kTwoPi;
}

/// Antiderivative of F(t)/t^2.
inline double antideriv_f(double t) {
  detail::require_at_least(t, 2.0, "antideriv_f: requires t >= 2");
  const double l = std::log(t);
  const double c = detail::kLogTwoPi;
  return l * l / detail::kFourPi - (1 + c) * l / detail::kTwoPi + (c * c - 2 * c) / detail::kFourPi -
         kCountOffset.value() / t;
}

/// E1(x) for x > 0: power series for x <= 1, Lentz continued fraction above.
inline double expint_e1(double x) {
  if (!(x > 0.0)) throw DomainError("expint_e1: requires x > 0");
  if (x <= 1.0) {
    double sum = 0.0;
    double term = 1.0;  // (-x)^k / k!
    for (int k = 1; k < 60; ++k) {
      term *= -x / k;
      const double add = term / k;
      sum += add;
      if (std::fabs(add) < 1e-18 * std::fabs(sum)) break;
    }
    return -std::numbers::egamma - std::log(x) - sum;
  }
  // E1(x) = e^-x / (x + 1 - 1^2 / (x + 3 - 2^2 / (x + 5 - ...)))
  constexpr double kTiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const double delta = c * d;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-17) break;
  }
  return h * std::exp(-x);
}

/// E(t) = int_1^inf ds / (s t^s) = E1(log t).
inline double e_frak(double t) {
  if (!(t >= 1.0 + 1e-6)) throw DomainError("e_frak: requires t >= 1 + 1e-6");
  return expint_e1(std::log(t));
}

/// Absolute error bound for e_frak at t.
inline double e_frak_error(double t) { return 8 * DBL_EPSILON * std::fabs(e_frak(t)) + 1e-300; }

/// E(t) by adaptive quadrature of the defining integral, independent of the
/// E1 route. After s = 1 + x / log t the integrand is e^-x / (log t + x).
inline QuadratureResult e_frak_quadrature(double t) {
  if (!(t > 1.0)) throw DomainError("e_frak_quadrature: requires t > 1");
  const double l = std::log(t);
  auto integrand = [l](double x) { return std::exp(-x) / (l + x); };
  auto r = integrate_to_infinity(integrand, 0.0, 1e-17, 1e-14);
  const double scale = std::exp(-l);
  r.value *= scale;
  r.abs_err *= scale;
  return r;
}

struct Sandwich {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;
  double value_err = 0.0;
  double margin_lo = 0.0;  // value - lo
  double margin_hi = 0.0;  // hi - value
  bool holds = false;
};

/// 1/(t log t) - 1/(t log^2 t) < E(t) < 1/(t log t) - (31/95)/(t log^2 t).
/// holds requires both margins to exceed the evaluation error of E and of
/// the bracket expressions.
inline Sandwich e_frak_sandwich(double t) {
  detail::require_at_least(t, 2.0, "e_frak_sandwich: requires t >= 2");
  const double l = std::log(t);
  const double a = 1.0 / (t * l);
  const double b = 1.0 / (t * l * l);
  Sandwich s;
  s.lo = a - b;
  s.hi = a - kSandwichUpperCoeff.value() * b;
  s.value = e_frak(t);
  s.value_err = e_frak_error(t);
  s.margin_lo = s.value - s.lo;
  s.margin_hi = s.hi - s.value;
  const double bracket_err = 8 * DBL_EPSILON * (a + b);
  const double err = s.value_err + bracket_err;
  s.holds = s.margin_lo > err && s.margin_hi > err;
  return s;
}

/// Antiderivative of R(t)/t^2:
/// -0.433 log log t / t - 0.137 log t / t - 69/(40 t) - 0.433 E(t).
inline double antideriv_r(double t) {
  detail::require_at_least(t, 2.0, "antideriv_r: requires t >= 2");
  const double l = std::log(t);
  return -kEnvelopeLogLogCoeff.value() * std::log(l) / t - kEnvelopeLogCoeff.value() * l / t -
         69.0 / (40.0 * t) - kEnvelopeLogLogCoeff.value() * e_frak(t);
}

/// -(137 log^2 T + 433 log T - 433) / (1000 T log^2 T); negative for T >= 2.222.
inline double tail_upper(double T) {
  detail::require_at_least(T, 2.0, "tail_upper: requires T >= 2");
  const double l = std::log(T);
  return -(137 * l * l + 433 * l - 433) / (1000 * T * l * l);
}

/// (274 log^3 T + 866 log log T log^2 T + 3313 log^2 T + 433 log T - 433)
///   / (1000 T log^2 T).
inline double tail_lower(double T) {
  detail::require_at_least(T, 2.0, "tail_lower: requires T >= 2");
  const double l = std::log(T);
  const double l2 = l * l;
  return (274 * l2 * l + 866 * std::log(l) * l2 + 3313 * l2 + 433 * l - 433) / (1000 * T * l2);
}

}  // namespace zgb::bounds

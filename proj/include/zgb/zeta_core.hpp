#pragma once

// Riemann-Siegel theta, the Hardy Z-function, and an Euler-Maclaurin
// evaluation of zeta(s) that serves as an independent oracle for Z.

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>

#include "zgb/detail/rs_coefficients.hpp"
#include "zgb/errors.hpp"

namespace zgb {

enum class ZMethod { riemann_siegel, euler_maclaurin };

inline const char* to_string(ZMethod m) {
  return m == ZMethod::riemann_siegel ? "riemann_siegel" : "euler_maclaurin";
}

/// Z(t) at one height together with the method used and a bound on the
/// absolute error of z_value.
struct CriticalLinePoint {
  double t = 0.0;
  double z_value = 0.0;
  ZMethod method = ZMethod::riemann_siegel;
  double abs_err_est = 0.0;
};

struct ZetaValue {
  std::complex<double> value;
  double abs_err_est = 0.0;
};

/// Below this height hardy_z rotates the Euler-Maclaurin value instead of
/// using the Riemann-Siegel expansion.
inline constexpr double kRiemannSiegelCutoff = 30.0;

/// Largest |t| for which zeta_euler_maclaurin honours its accuracy contract.
inline constexpr double kEulerMaclaurinMaxHeight = 1e4;

namespace detail {

using Real = long double;

inline constexpr Real kPiL = std::numbers::pi_v<Real>;
inline constexpr double kPi = std::numbers::pi;

// Asymptotic expansion of theta, truncated after the t^-9 term. All terms of
// the tail are positive; the first omitted one is below 1e-14 for t >= 10.
inline Real theta_asymptotic(Real t) {
  const Real inv = 1.0L / t;
  const Real inv2 = inv * inv;
  const Real series =
      inv * (1.0L / 48 +
             inv2 * (7.0L / 5760 +
                     inv2 * (31.0L / 80640 + inv2 * (127.0L / 430080 + inv2 * (511.0L / 1216512)))));
  return t / 2 * std::log(t / (2 * kPiL)) - t / 2 - kPiL / 8 + series;
}

// theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log(pi), with log Gamma taken
// on its continuous branch: shift the argument by 16 and apply Stirling.
inline Real theta_log_gamma(Real t) {
  using C = std::complex<Real>;
  const C z(0.25L, t / 2);
  constexpr int kShift = 16;
  C shift_sum(0.0L, 0.0L);
  for (int k = 0; k < kShift; ++k) shift_sum += std::log(z + static_cast<Real>(k));
  const C w = z + static_cast<Real>(kShift);
  const C iw = 1.0L / w;
  const C iw2 = iw * iw;
  // Bernoulli tail B_2k / (2k (2k - 1) w^(2k-1)), k = 1..7.
  const C stirling =
      iw * (1.0L / 12 +
            iw2 * (-1.0L / 360 +
                   iw2 * (1.0L / 1260 +
                          iw2 * (-1.0L / 1680 +
                                 iw2 * (1.0L / 1188 + iw2 * (-691.0L / 360360 + iw2 * (1.0L / 156)))))));
  const C lg = (w - 0.5L) * std::log(w) - w + 0.5L * std::log(2 * kPiL) + stirling - shift_sum;
  return lg.imag() - t / 2 * std::log(kPiL);
}

inline Real theta_ld(Real t) { return t >= 10 ? theta_asymptotic(t) : theta_log_gamma(t); }

template <std::size_t N>
Real horner(const std::array<double, N>& coeffs, Real x) {
  Real acc = 0.0L;
  for (std::size_t i = N; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

struct ZetaLd {
  std::complex<Real> value;
  double abs_err_est;
};

inline ZetaLd zeta_em_ld(double sigma, double t) {
  using C = std::complex<Real>;
  if (sigma == 1.0 && t == 0.0) throw DomainError("zeta_euler_maclaurin: pole at s = 1");
  if (!std::isfinite(sigma) || !std::isfinite(t))
    throw DomainError("zeta_euler_maclaurin: non-finite argument");
  if (std::fabs(t) > kEulerMaclaurinMaxHeight)
    throw AccuracyError("zeta_euler_maclaurin: |t| beyond the oracle range 1e4");
  constexpr int kTerms = 5;  // Bernoulli corrections through B_10
  if (sigma <= -(2 * kTerms + 1))
    throw AccuracyError("zeta_euler_maclaurin: remainder bound invalid for sigma <= -11");

  const std::size_t n_terms =
      std::max<std::size_t>(20, static_cast<std::size_t>(std::ceil(2.0 * std::fabs(t))));
  const Real ts = t;
  const Real ss = sigma;

  Real re = 0.0L;
  Real im = 0.0L;
  Real magnitude_sum = 0.0L;
  for (std::size_t n = 1; n < n_terms; ++n) {
    const Real logn = std::log(static_cast<Real>(n));
    const Real mag = std::exp(-ss * logn);
    const Real phase = ts * logn;
    re += mag * std::cos(phase);
    im -= mag * std::sin(phase);
    magnitude_sum += mag;
  }
  const C s(ss, ts);
  const Real big_n = static_cast<Real>(n_terms);
  const C n_pow = std::exp(-s * std::log(big_n));  // N^-s
  C total(re, im);
  total += big_n * n_pow / (s - 1.0L) + n_pow / 2.0L;

  // B_2k / (2k)!
  constexpr Real kBernoulliOverFactorial[kTerms] = {1.0L / 12, -1.0L / 720, 1.0L / 30240,
                                                    -1.0L / 1209600, 1.0L / 47900160};
  C factor = s * n_pow / big_n;  // s (s+1) ... (s+2k-2) N^(-s-2k+1), starting at k = 1
  for (int k = 1; k <= kTerms; ++k) {
    total += kBernoulliOverFactorial[k - 1] * factor;
    factor *= (s + static_cast<Real>(2 * k - 1)) * (s + static_cast<Real>(2 * k)) / (big_n * big_n);
  }
  // |R| <= |s (s+1) ... (s+2m+1) B_{2m+2} N^(-sigma-2m-1) / ((2m+2)! (sigma+2m+1))|, m = 5.
  constexpr Real kB12OverFactorial = 691.0L / 1307674368000.0L;
  const Real trunc = std::abs(factor * (s + static_cast<Real>(2 * kTerms + 1))) *
                     kB12OverFactorial / (ss + (2 * kTerms + 1));
  const Real rounding = 16 * LDBL_EPSILON * (1 + std::fabs(ts) * std::log(big_n)) * magnitude_sum;
  return {total, static_cast<double>(trunc + rounding)};
}

}  // namespace detail

/// Riemann-Siegel theta function. Uses the asymptotic expansion for t >= 10
/// and the log-Gamma definition below that, where the expansion loses accuracy.
inline double rs_theta(double t) {
  if (!(t >= 1.0)) throw DomainError("rs_theta: requires t >= 1");
  return static_cast<double>(detail::theta_ld(t));
}

/// zeta(sigma + it) by Euler-Maclaurin summation with N = max(20, ceil(2|t|))
/// terms and Bernoulli corrections through B_10. abs_err_est bounds the
/// truncation remainder plus accumulated rounding.
inline ZetaValue zeta_euler_maclaurin(double sigma, double t) {
  const auto r = detail::zeta_em_ld(sigma, t);
  const std::complex<double> v(static_cast<double>(r.value.real()),
                               static_cast<double>(r.value.imag()));
  return {v, r.abs_err_est + 2 * DBL_EPSILON * std::abs(v)};
}

/// Z(t) = exp(i theta(t)) zeta(1/2 + it), evaluated through Euler-Maclaurin.
inline CriticalLinePoint hardy_z_euler_maclaurin(double t) {
  if (!(t >= 2.0)) throw DomainError("hardy_z: requires t >= 2");
  const auto zeta = detail::zeta_em_ld(0.5, t);
  const detail::Real theta = detail::theta_ld(t);
  const std::complex<detail::Real> rot(std::cos(theta), std::sin(theta));
  const detail::Real z = (rot * zeta.value).real();
  // theta error (< 1e-14 absolute) rotates the value by at most that angle.
  const double err = zeta.abs_err_est + 1e-14 * static_cast<double>(std::abs(zeta.value)) +
                     2 * DBL_EPSILON * std::fabs(static_cast<double>(z));
  return {t, static_cast<double>(z), ZMethod::euler_maclaurin, err};
}

/// Z(t) from the Riemann-Siegel main sum plus corrections C0..C3. The
/// remainder is O(t^-9/4); 0.053 t^-9/4 dominates it for t >= 30.
inline CriticalLinePoint hardy_z_riemann_siegel(double t) {
  if (!(t >= 2 * detail::kPi)) throw DomainError("hardy_z_riemann_siegel: requires t >= 2 pi");
  using detail::Real;
  const Real tl = t;
  const Real tau = std::sqrt(tl / (2 * detail::kPiL));
  const auto n_main = static_cast<std::size_t>(std::floor(tau));
  const Real p = tau - static_cast<Real>(n_main);
  const Real theta = detail::theta_ld(tl);

  Real sum = 0.0L;
  Real weight_sum = 0.0L;
  for (std::size_t n = 1; n <= n_main; ++n) {
    const Real nl = static_cast<Real>(n);
    const Real w = 1.0L / std::sqrt(nl);
    sum += w * std::cos(theta - tl * std::log(nl));
    weight_sum += w;
  }

  const Real z = 2 * p - 1;
  const Real z2 = z * z;
  const Real c0 = detail::horner(detail::kC0, z2);
  const Real c1 = z * detail::horner(detail::kC1, z2);
  const Real c2 = detail::horner(detail::kC2, z2);
  const Real c3 = z * detail::horner(detail::kC3, z2);
  const Real inv_tau = 1.0L / tau;
  const Real correction = c0 + inv_tau * (c1 + inv_tau * (c2 + inv_tau * c3));
  const Real sign = (n_main % 2 == 1) ? 1.0L : -1.0L;  // (-1)^(N-1)
  const Real value = 2 * sum + sign * std::sqrt(inv_tau) * correction;

  const double remainder = 0.053 * std::pow(t, -2.25);
  // Each phase carries a few ulps of |theta| + t log N.
  const Real phase_err = 4 * LDBL_EPSILON * (std::fabs(theta) + tl * std::log(static_cast<Real>(n_main)));
  const double rounding = static_cast<double>((16 * DBL_EPSILON + 2 * phase_err) * weight_sum + 8 * DBL_EPSILON);
  return {t, static_cast<double>(value), ZMethod::riemann_siegel, remainder + rounding};
}

/// Hardy Z-function with method selection: Riemann-Siegel for t >= 30,
/// rotated Euler-Maclaurin below.
inline CriticalLinePoint hardy_z_point(double t) {
  if (!(t >= 2.0)) throw DomainError("hardy_z: requires t >= 2");
  return t >= kRiemannSiegelCutoff ? hardy_z_riemann_siegel(t) : hardy_z_euler_maclaurin(t);
}

inline double hardy_z(double t) { return hardy_z_point(t).z_value; }

}  // namespace zgb

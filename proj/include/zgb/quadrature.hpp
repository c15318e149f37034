#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace zgb {

struct QuadratureResult {
  double value = 0.0;
  double abs_err = 0.0;  // summed Kronrod-vs-Gauss differences
  bool converged = false;
  std::size_t intervals = 0;
};

namespace detail {

// 15-point Kronrod nodes on [0, 1] (symmetric), with the embedded 7-point Gauss weights.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

template <class F>
Segment gauss_kronrod_15(F& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = h * kKronrodNodes[j];
    const double pair = f(c - dx) + f(c + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {a, b, kronrod * h, std::fabs((kronrod - gauss) * h)};
}

}  // namespace detail

/// Adaptive Gauss-Kronrod (G7/K15) on a finite interval. Bisects the
/// segment with the largest error estimate until the total estimate falls
/// below max(abs_tol, rel_tol * |value|) or max_intervals is reached.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, double abs_tol = 1e-14,
                           double rel_tol = 1e-13, std::size_t max_intervals = 2000) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<detail::Segment> heap;
  heap.push(detail::gauss_kronrod_15(f, a, b));
  double total = heap.top().value;
  double err = heap.top().err;
  while (true) {
    const double target = std::max(abs_tol, rel_tol * std::fabs(total));
    if (err <= target) {
      out.converged = true;
      break;
    }
    if (heap.size() >= max_intervals) break;
    const detail::Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval exhausted in binary64
    const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
    const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }
  // Re-sum from the segments to shed drift from the incremental updates.
  double value = 0.0;
  double abs_err = 0.0;
  out.intervals = heap.size();
  while (!heap.empty()) {
    value += heap.top().value;
    abs_err += heap.top().err;
    heap.pop();
  }
  out.value = value;
  out.abs_err = abs_err;
  return out;
}

/// Integral over [a, inf) via the map x = a + u / (1 - u), u in [0, 1).
template <class F>
QuadratureResult integrate_to_infinity(F&& f, double a, double abs_tol = 1e-14,
                                       double rel_tol = 1e-13) {
  auto mapped = [&f, a](double u) {
    if (u >= 1.0) return 0.0;
    const double w = 1.0 - u;
    const double x = a + u / w;
    const double fx = f(x);
    return fx == 0.0 ? 0.0 : fx / (w * w);
  };
  return integrate(mapped, 0.0, 1.0, abs_tol, rel_tol);
}

}  // namespace zgb

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <span>
#include <vector>

#include "dsft/grid.hpp"

namespace dsft::test {

inline CVector sampled(const GridSpec& g, const std::function<cd(double)>& f) {
  CVector out(g.n_points);
  for (std::size_t i = 0; i < g.n_points; ++i) out[i] = f(g.point(i));
  return out;
}

inline CVector gaussian(const GridSpec& g, double center, double width) {
  return sampled(g, [=](double x) {
    const double t = (x - center) / width;
    return cd{std::exp(-0.5 * t * t), 0.0};
  });
}

// C-infinity bump supported on [center - radius, center + radius].
inline CVector bump(const GridSpec& g, double center, double radius) {
  return sampled(g, [=](double x) {
    const double t = (x - center) / radius;
    return std::abs(t) < 1.0 ? cd{std::exp(1.0 - 1.0 / (1.0 - t * t)), 0.0} : cd{0.0, 0.0};
  });
}

inline double l2(std::span<const cd> f, const GridSpec& g) {
  return weighted_norm(f, g.trapezoid_weights());
}

inline double l2_diff(std::span<const cd> a, std::span<const cd> b, const GridSpec& g) {
  CVector d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return l2(d, g);
}

inline double sup_diff(std::span<const cd> a, std::span<const cd> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double sup_norm(std::span<const cd> a) {
  double m = 0.0;
  for (auto v : a) m = std::max(m, std::abs(v));
  return m;
}

inline cd inner(std::span<const cd> a, std::span<const cd> b, std::span<const double> w) {
  cd s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += w[i] * std::conj(a[i]) * b[i];
  return s;
}

// Composite Gauss-Legendre (8 points per panel) for smooth integrands.
template <class F>
auto gauss_legendre(F&& f, double a, double b, int panels) -> decltype(f(a)) {
  static constexpr double xg[4] = {0.1834346424956498, 0.5255324099163290, 0.7966664774136267,
                                   0.9602898564975363};
  static constexpr double wg[4] = {0.3626837833783620, 0.3137066458778873, 0.2223810344533745,
                                   0.1012285362903763};
  decltype(f(a)) sum{};
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h, half = 0.5 * h;
    for (int k = 0; k < 4; ++k)
      sum += wg[k] * half * (f(mid - half * xg[k]) + f(mid + half * xg[k]));
  }
  return sum;
}

inline double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace dsft::test

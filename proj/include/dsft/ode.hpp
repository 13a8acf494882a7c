#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "dsft/error.hpp"

namespace dsft {

struct OdeTolerance {
  double atol = 1e-10;
  double rtol = 1e-10;
};

/// Dormand–Prince 5(4) with embedded error control, for small complex systems.
/// The step is clipped so that every advance_to() lands exactly on its target,
/// which lets callers collect output at arbitrary abscissae without dense
/// interpolation.
template <std::size_t N, class Rhs>
class Dopri5 {
 public:
  using State = std::array<std::complex<double>, N>;

  Dopri5(Rhs rhs, double x0, const State& y0, OdeTolerance tol = {})
      : rhs_(std::move(rhs)), x_(x0), y_(y0), tol_(tol) {
    rhs_(x_, y_, k1_);
  }

  double x() const { return x_; }
  const State& state() const { return y_; }
  long steps() const { return steps_; }

  void advance_to(double target) {
    if (target == x_) return;
    const double dir = target > x_ ? 1.0 : -1.0;
    // The loop clips to the target; a short first leg must not become the
    // working step size.
    if (h_ == 0.0 || h_ * dir < 0.0) h_ = dir * 1e-2;
    while ((target - x_) * dir > 0.0) {
      double h = h_;
      bool last = false;
      if ((x_ + h - target) * dir >= 0.0) {
        h = target - x_;
        last = true;
      }
      const double hmin = 1e-14 * (1.0 + std::abs(x_));
      if (std::abs(h) < hmin && !last)
        fail(ErrorCode::Numerical, "ODE step size underflow at x = " + std::to_string(x_));

      State ynew, err;
      attempt(h, ynew, err);
      double norm = 0.0;
      for (std::size_t i = 0; i < N; ++i) {
        const double sc = tol_.atol + tol_.rtol * std::max(std::abs(y_[i]), std::abs(ynew[i]));
        norm = std::max(norm, std::abs(err[i]) / sc);
      }
      if (!std::isfinite(norm))
        fail(ErrorCode::Numerical, "non-finite ODE state at x = " + std::to_string(x_));

      double factor = norm == 0.0 ? 5.0 : 0.9 * std::pow(norm, -0.2);
      factor = std::clamp(factor, 0.2, 5.0);
      if (norm <= 1.0) {
        x_ = last ? target : x_ + h;
        y_ = ynew;
        k1_ = k7_;  // first-same-as-last
        ++steps_;
        // Keep the proposed size when the step was clipped by the target.
        if (!last || factor < 1.0) h_ = h * factor;
      } else {
        h_ = h * std::max(factor, 0.2);
      }
    }
  }

 private:
  void attempt(double h, State& ynew, State& err) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    // b - b*, the difference to the embedded 4th order weights
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    State t, k2, k3, k4, k5, k6;
    for (std::size_t i = 0; i < N; ++i) t[i] = y_[i] + h * a21 * k1_[i];
    rhs_(x_ + c2 * h, t, k2);
    for (std::size_t i = 0; i < N; ++i) t[i] = y_[i] + h * (a31 * k1_[i] + a32 * k2[i]);
    rhs_(x_ + c3 * h, t, k3);
    for (std::size_t i = 0; i < N; ++i)
      t[i] = y_[i] + h * (a41 * k1_[i] + a42 * k2[i] + a43 * k3[i]);
    rhs_(x_ + c4 * h, t, k4);
    for (std::size_t i = 0; i < N; ++i)
      t[i] = y_[i] + h * (a51 * k1_[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    rhs_(x_ + c5 * h, t, k5);
    for (std::size_t i = 0; i < N; ++i)
      t[i] = y_[i] + h * (a61 * k1_[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    rhs_(x_ + h, t, k6);
    for (std::size_t i = 0; i < N; ++i)
      ynew[i] = y_[i] + h * (b1 * k1_[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    rhs_(x_ + h, ynew, k7_);
    for (std::size_t i = 0; i < N; ++i)
      err[i] = h * (e1 * k1_[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7_[i]);
  }

  Rhs rhs_;
  double x_;
  State y_;
  OdeTolerance tol_;
  State k1_{}, k7_{};
  double h_ = 0.0;
  long steps_ = 0;
};

}  // namespace dsft

#include "stencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace dsft::detail {

namespace {
// 6th order central second difference.
constexpr double kSecondDiff[7] = {1.0 / 90,  -3.0 / 20, 3.0 / 2,  -49.0 / 18,
                                   3.0 / 2,   -3.0 / 20, 1.0 / 90};

// Open interval between the kinks around x; a node sitting on a kink takes the
// piece to its right, or to its left at the last kink.
std::pair<double, double> smooth_piece(const std::vector<double>& kinks, double x) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (kinks.empty()) return {-inf, inf};
  auto it = std::upper_bound(kinks.begin(), kinks.end(), x);
  if (it == kinks.end() && kinks.back() == x && kinks.size() > 1) return {kinks[kinks.size() - 2], x};
  const double lo = it == kinks.begin() ? -inf : *std::prev(it);
  const double hi = it == kinks.end() ? inf : *it;
  return {lo, hi};
}
}  // namespace

StencilPlan make_stencil_plan(const Potential& pot, const GridSpec& grid, double wavenumber) {
  StencilPlan plan;
  plan.delta = 0.05 / std::max(1.0, wavenumber);
  const std::size_t n = grid.n_points;
  plan.begin.resize(n + 1);
  plan.center.resize(n);
  plan.mid.resize(n);
  plan.step.assign(n, plan.delta);
  plan.full.assign(n, 0);
  plan.xs.reserve(7 * n);
  const auto& jumps = pot.jumps();
  const auto& kinks = pot.kinks();
  for (std::size_t i = 0; i < n; ++i) {
    plan.begin[i] = plan.xs.size();
    const double x = grid.point(i);
    double d = plan.delta, c = x;
    if (!kinks.empty()) {
      const auto [lo, hi] = smooth_piece(kinks, x);
      d = std::min(d, (hi - lo) / 8.0);
      c = std::clamp(x, lo + 3.5 * d, hi - 3.5 * d);
    }
    const bool interior = i > 0 && i + 1 < n;
    const bool clean = std::none_of(jumps.begin(), jumps.end(), [&](double j) {
      return std::abs(j - c) <= 3.0 * d;
    });
    plan.center[i] = plan.xs.size();
    plan.xs.push_back(x);
    plan.mid[i] = plan.center[i];
    if (interior && clean) {
      plan.full[i] = 1;
      plan.step[i] = d;
      for (int k = -3; k <= 3; ++k) {
        if (k == 0 && c == x) continue;
        if (k == 0) plan.mid[i] = plan.xs.size();
        plan.xs.push_back(c + k * d);
      }
    }
  }
  plan.begin[n] = plan.xs.size();
  return plan;
}

double stencil_residual(const StencilPlan& plan, const Potential& pot, double energy,
                        std::span<const cd> values) {
  double scale = 1.0;
  for (std::size_t c : plan.center) scale = std::max(scale, std::abs(values[c]));
  double worst = 0.0;
  for (std::size_t i = 0; i < plan.center.size(); ++i) {
    if (!plan.full[i]) continue;
    // Block layout: node, then the stencil left to right with the centre
    // either shared with the node or stored in its own slot.
    const std::size_t b = plan.begin[i];
    const bool shared = plan.mid[i] == plan.center[i];
    auto at = [&](int k) -> cd {
      if (k == 0) return values[plan.mid[i]];
      const std::size_t off = k < 0 ? static_cast<std::size_t>(k + 3) : static_cast<std::size_t>(k + (shared ? 2 : 3));
      return values[b + 1 + off];
    };
    cd second{0.0, 0.0};
    for (int k = -3; k <= 3; ++k) second += kSecondDiff[k + 3] * at(k);
    second /= plan.step[i] * plan.step[i];
    const double x = plan.xs[plan.mid[i]];
    const cd r = -second + (pot(x) - energy) * values[plan.mid[i]];
    worst = std::max(worst, std::abs(r));
  }
  return worst / scale;
}

}  // namespace dsft::detail

#include "dsft/jost.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "dsft/error.hpp"
#include "dsft/parallel.hpp"
#include "stencil.hpp"

namespace dsft {

namespace {

constexpr cd kI{0.0, 1.0};

// a e^{s(x-xb)} + b e^{-s(x-xb)} matched to (y, y') at xb.
struct FreeWave {
  cd s, a, b;
  double xb;

  static FreeWave fit(cd s, double xb, cd y, cd dy) {
    return {s, 0.5 * (y + dy / s), 0.5 * (y - dy / s), xb};
  }
  cd value(double x) const {
    const cd t = s * (x - xb);
    return a * std::exp(t) + b * std::exp(-t);
  }
  cd derivative(double x) const {
    const cd t = s * (x - xb);
    return s * (a * std::exp(t) - b * std::exp(-t));
  }
};

cd wronskian(cd f, cd df, cd g, cd dg) { return f * dg - df * g; }

struct Pair {
  ScatteringData data;
  bool exceptional = false;
};

// Scattering data from f+ and f- sampled at the same node. xi is the signed
// frequency the Jost solutions were built for.
Pair reduce(double xi, cd fp, cd dfp, cd fm, cd dfm) {
  Pair out;
  out.data.xi = xi;
  const cd w = wronskian(fm, dfm, fp, dfp);
  out.data.wronskian = w;
  out.exceptional = is_exceptional(xi, w);
  if (out.exceptional) return out;
  const cd t = 2.0 * kI * xi / w;
  out.data.t_coeff = t;
  // f+ = (1/T) conj(f-) + (R_L/T) f-   and   f- = (1/T) conj(f+) + (R_R/T) f+
  const cd w_left = wronskian(fp, dfp, std::conj(fm), std::conj(dfm));
  const cd w_mm = wronskian(fm, dfm, std::conj(fm), std::conj(dfm));
  const cd w_right = wronskian(fm, dfm, std::conj(fp), std::conj(dfp));
  const cd w_pp = wronskian(fp, dfp, std::conj(fp), std::conj(dfp));
  out.data.r_coeff = t * w_left / w_mm;
  out.data.r_coeff_right = t * w_right / w_pp;
  return out;
}

}  // namespace

bool is_exceptional(double xi, cd w) {
  return std::abs(w) < kWronskianTol * std::max(1.0, std::abs(xi));
}

std::size_t EigenBasis::masked_count() const {
  return static_cast<std::size_t>(
      std::count(exceptional_mask.begin(), exceptional_mask.end(), std::uint8_t{1}));
}

std::vector<double> EigenBasis::xi_weights() const {
  std::vector<double> u(xi_grid.size(), xi_step);
  if (!u.empty()) {
    u.front() *= 0.5;
    u.back() *= 0.5;
  }
  return u;
}

Trajectory evaluate_jost(const Potential& pot, cd s, Side side, std::span<const double> xs,
                         bool scale_at_support, OdeTolerance tol) {
  const double sg = static_cast<double>(side);
  const double radius = pot.is_zero() ? 0.0 : pot.support_radius();
  const double x_start = sg * radius;
  // Asymptote y = y0 e^{sg s (x - x_start)} on the free side.
  const cd y0 = scale_at_support ? cd{1.0, 0.0} : std::exp(sg * s * x_start);
  const cd dy0 = sg * s * y0;

  Trajectory out;
  out.values.resize(xs.size());
  out.derivatives.resize(xs.size());

  // Integration runs from x_start towards -sg infinity; order points that way.
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return sg * xs[a] > sg * xs[b]; });

  const cd s2 = s * s;
  auto rhs = [&pot, s2](double x, const std::array<cd, 2>& y, std::array<cd, 2>& dy) {
    dy[0] = y[1];
    dy[1] = (pot(x) + s2) * y[0];
  };
  using Solver = Dopri5<2, decltype(rhs)>;
  std::optional<Solver> solver;
  std::optional<FreeWave> far;

  for (std::size_t idx : order) {
    const double x = xs[idx];
    if (sg * x >= radius) {
      const cd e = y0 * std::exp(sg * s * (x - x_start));
      out.values[idx] = e;
      out.derivatives[idx] = sg * s * e;
      continue;
    }
    if (sg * x > -radius) {
      if (!solver) solver.emplace(rhs, x_start, std::array<cd, 2>{y0, dy0}, tol);
      solver->advance_to(x);
      out.values[idx] = solver->state()[0];
      out.derivatives[idx] = solver->state()[1];
      continue;
    }
    if (!far) {
      if (!solver) solver.emplace(rhs, x_start, std::array<cd, 2>{y0, dy0}, tol);
      solver->advance_to(-x_start);
      far = FreeWave::fit(s, -x_start, solver->state()[0], solver->state()[1]);
    }
    out.values[idx] = far->value(x);
    out.derivatives[idx] = far->derivative(x);
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!std::isfinite(std::abs(out.values[i])) || !std::isfinite(std::abs(out.derivatives[i])))
      fail(ErrorCode::Numerical, "non-finite Jost solution value");
  return out;
}

namespace {

void require_covers_support(const Potential& pot, const GridSpec& grid) {
  const double r = pot.is_zero() ? 0.0 : pot.support_radius();
  if (grid.x_min > -r || grid.x_max < r)
    fail(ErrorCode::Precondition, "grid [" + num(grid.x_min) + ", " +
                                      num(grid.x_max) +
                                      "] does not cover the potential support radius " +
                                      num(r));
}

double stencil_wavenumber(const Potential& pot, double energy) {
  return std::sqrt(pot.max_abs() + std::abs(energy));
}

}  // namespace

JostSolution solve_jost(const Potential& pot, double xi, const GridSpec& grid, Side side) {
  grid.validate();
  require(std::isfinite(xi) && xi != 0.0, ErrorCode::InvalidArgument,
          "Jost solutions need a finite nonzero frequency");
  require_covers_support(pot, grid);

  const double energy = xi * xi;
  const auto plan = detail::make_stencil_plan(pot, grid, stencil_wavenumber(pot, energy));
  const Trajectory tr = evaluate_jost(pot, kI * xi, side, plan.xs);

  JostSolution sol;
  sol.side = side;
  sol.xi = xi;
  sol.grid = grid;
  sol.values.resize(grid.n_points);
  sol.derivative_values.resize(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    sol.values[i] = tr.values[plan.center[i]];
    sol.derivative_values[i] = tr.derivatives[plan.center[i]];
  }
  sol.ode_residual = detail::stencil_residual(plan, pot, energy, tr.values);
  return sol;
}

ScatteringData scattering_coefficients(const JostSolution& fp, const JostSolution& fm) {
  require(fp.side == Side::Plus && fm.side == Side::Minus, ErrorCode::InvalidArgument,
          "scattering_coefficients expects (f+, f-)");
  require(fp.xi == fm.xi && fp.xi != 0.0, ErrorCode::InvalidArgument,
          "Jost solutions must share a nonzero frequency");
  if (!(fp.grid == fm.grid)) fail(ErrorCode::GridMismatch, "Jost solutions on different grids");
  const std::size_t c = fp.grid.n_points / 2;
  const Pair p = reduce(fp.xi, fp.values[c], fp.derivative_values[c], fm.values[c],
                        fm.derivative_values[c]);
  if (p.exceptional)
    fail(ErrorCode::ExceptionalFrequency,
         "Wronskian vanishes at xi = " + num(fp.xi) + " (|W| = " +
             num(std::abs(p.data.wronskian)) + ")");
  return p.data;
}

CVector generalized_eigenfunction(const Potential& pot, double xi, const GridSpec& grid) {
  const double k = std::abs(xi);
  const JostSolution fp = solve_jost(pot, k, grid, Side::Plus);
  const JostSolution fm = solve_jost(pot, k, grid, Side::Minus);
  const ScatteringData sd = scattering_coefficients(fp, fm);
  const CVector& src = xi > 0.0 ? fp.values : fm.values;
  CVector e(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) e[i] = sd.t_coeff * src[i];
  return e;
}

std::vector<double> make_xi_grid(double xi_max, std::size_t n_xi) {
  require(std::isfinite(xi_max) && xi_max > 0.0, ErrorCode::InvalidArgument,
          "xi_max must be positive");
  require(n_xi >= 2 && n_xi % 2 == 0, ErrorCode::InvalidArgument,
          "n_xi must be even and at least 2");
  std::vector<double> xi(n_xi);
  const double m = static_cast<double>(n_xi - 1);
  const std::size_t half = n_xi / 2;
  for (std::size_t j = half; j < n_xi; ++j) {
    const double v = (2.0 * static_cast<double>(j) - m) / m * xi_max;
    xi[j] = v;
    xi[n_xi - 1 - j] = -v;
  }
  xi.back() = xi_max;
  xi.front() = -xi_max;
  return xi;
}

EigenBasis build_eigenbasis(const Potential& pot, const GridSpec& grid, double xi_max,
                            std::size_t n_xi) {
  grid.validate();
  require_covers_support(pot, grid);
  EigenBasis basis;
  basis.potential = pot;
  basis.x_grid = grid;
  basis.xi_grid = make_xi_grid(xi_max, n_xi);
  basis.xi_step = 2.0 * xi_max / static_cast<double>(n_xi - 1);
  basis.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(grid.n_points),
                                        static_cast<Eigen::Index>(n_xi));
  basis.scattering.resize(n_xi);
  basis.exceptional_mask.assign(n_xi, 0);
  basis.column_residual.assign(n_xi, 0.0);

  const std::size_t half = n_xi / 2;
  parallel_for(0, half, [&](std::size_t m) {
    const std::size_t jp = half + m, jm = half - 1 - m;
    const double k = basis.xi_grid[jp];
    const double energy = k * k;
    const auto plan = detail::make_stencil_plan(pot, grid, stencil_wavenumber(pot, energy));
    const Trajectory tp = evaluate_jost(pot, kI * k, Side::Plus, plan.xs);
    const Trajectory tm = evaluate_jost(pot, kI * k, Side::Minus, plan.xs);
    const std::size_t c = plan.center[grid.n_points / 2];
    const Pair p = reduce(k, tp.values[c], tp.derivatives[c], tm.values[c], tm.derivatives[c]);

    ScatteringData sp = p.data, sm = p.data;
    sm.xi = -k;
    std::swap(sm.r_coeff, sm.r_coeff_right);
    basis.scattering[jp] = sp;
    basis.scattering[jm] = sm;
    if (p.exceptional || k < basis.xi_min()) {
      basis.exceptional_mask[jp] = basis.exceptional_mask[jm] = 1;
      return;
    }

    const cd t = p.data.t_coeff;
    CVector ep(plan.xs.size()), em(plan.xs.size());
    for (std::size_t q = 0; q < plan.xs.size(); ++q) {
      ep[q] = t * tp.values[q];
      em[q] = t * tm.values[q];
    }
    for (std::size_t i = 0; i < grid.n_points; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      basis.values(ii, static_cast<Eigen::Index>(jp)) = ep[plan.center[i]];
      basis.values(ii, static_cast<Eigen::Index>(jm)) = em[plan.center[i]];
    }
    basis.column_residual[jp] = detail::stencil_residual(plan, pot, energy, ep);
    basis.column_residual[jm] = detail::stencil_residual(plan, pot, energy, em);
  });

  if (basis.masked_count() == n_xi)
    fail(ErrorCode::Precondition, "every xi column is exceptional; widen the xi window");
  for (std::size_t j = 0; j < n_xi; ++j) {
    if (basis.exceptional_mask[j]) continue;
    const double col = basis.values.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff();
    basis.sup_bound = std::max(basis.sup_bound, col);
  }
  return basis;
}

}  // namespace dsft

#include "dsft/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dsft/error.hpp"
#include "dsft/parallel.hpp"

namespace dsft {

namespace {

const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

void require_decay(std::span<const cd> f, const char* what) {
  const double edge = relative_edge_magnitude(f);
  if (edge > kEdgeDecayTol)
    fail(ErrorCode::Precondition, std::string(what) + ": input has relative magnitude " +
                                      num(edge) +
                                      " at the window edge; truncated integral not converged");
}

TransformResult forward_unchecked(std::span<const cd> f, const EigenBasis& basis) {
  const auto w = basis.x_grid.trapezoid_weights();
  const std::size_t nx = basis.x_grid.n_points, nxi = basis.n_xi();
  CVector wf(nx);
  for (std::size_t i = 0; i < nx; ++i) wf[i] = w[i] * f[i];

  TransformResult out;
  out.xi_grid = basis.xi_grid;
  out.masked = basis.exceptional_mask;
  out.values.assign(nxi, cd{0.0, 0.0});
  out.window = std::max(std::abs(basis.x_grid.x_min), std::abs(basis.x_grid.x_max));
  parallel_for(0, nxi, [&](std::size_t j) {
    if (basis.exceptional_mask[j]) return;
    const auto col = basis.values.col(static_cast<Eigen::Index>(j));
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < nx; ++i) acc += wf[i] * std::conj(col(static_cast<Eigen::Index>(i)));
    out.values[j] = kInvSqrt2Pi * acc;
  });
  return out;
}

double xi_norm(std::span<const cd> g, const EigenBasis& basis) {
  return weighted_norm(g, basis.xi_weights());
}

}  // namespace

TransformResult forward(std::span<const cd> f, const EigenBasis& basis) {
  require_size(basis.x_grid, f.size(), "forward");
  require_decay(f, "forward");
  return forward_unchecked(f, basis);
}

CVector adjoint(std::span<const cd> g, const EigenBasis& basis) {
  if (g.size() != basis.n_xi())
    fail(ErrorCode::GridMismatch, "adjoint: expected " + std::to_string(basis.n_xi()) +
                                      " frequency samples, got " + std::to_string(g.size()));
  require(std::isfinite(basis.sup_bound), ErrorCode::Numerical,
          "eigenfunctions are not bounded on the computed window");
  const auto u = basis.xi_weights();
  const std::size_t nx = basis.x_grid.n_points, nxi = basis.n_xi();
  CVector ug(nxi, cd{0.0, 0.0});
  for (std::size_t j = 0; j < nxi; ++j)
    if (!basis.exceptional_mask[j]) ug[j] = u[j] * g[j];

  CVector out(nx);
  parallel_for(0, nx, [&](std::size_t i) {
    const auto row = basis.values.row(static_cast<Eigen::Index>(i));
    cd acc{0.0, 0.0};
    for (std::size_t j = 0; j < nxi; ++j)
      if (!basis.exceptional_mask[j]) acc += ug[j] * row(static_cast<Eigen::Index>(j));
    out[i] = kInvSqrt2Pi * acc;
  });
  return out;
}

CVector adjoint(const TransformResult& g, const EigenBasis& basis) {
  if (g.xi_grid != basis.xi_grid) fail(ErrorCode::GridMismatch, "adjoint: frequency grids differ");
  return adjoint(std::span<const cd>(g.values), basis);
}

double plancherel_defect(std::span<const cd> f, const EigenBasis& basis,
                         std::span<const BoundState> states) {
  const TransformResult ft = forward(f, basis);
  const auto w = basis.x_grid.trapezoid_weights();
  const double fnorm = weighted_norm(f, w);
  if (fnorm == 0.0) return 0.0;

  const double edge = std::max(std::abs(ft.values.front()), std::abs(ft.values.back()));
  if (edge > kFrequencyDecayTol * fnorm) {
    const auto u = basis.xi_weights();
    const std::size_t band = std::max<std::size_t>(1, basis.n_xi() / 20);
    double tail = 0.0;
    for (std::size_t j = 0; j < band; ++j) {
      tail += u[j] * std::norm(ft.values[j]);
      tail += u[basis.n_xi() - 1 - j] * std::norm(ft.values[basis.n_xi() - 1 - j]);
    }
    fail(ErrorCode::NotConverged,
         "frequency window not converged: |F f| at xi_max is " + num(edge / fnorm) +
             " relative, tail mass " + num(tail / (fnorm * fnorm)));
  }

  const CVector pp = point_projection(states, f, basis.x_grid);
  CVector ac(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) ac[i] = f[i] - pp[i];
  const double ac_norm = weighted_norm(ac, w);
  const double ft_norm = xi_norm(ft.values, basis);
  return std::abs(ac_norm * ac_norm - ft_norm * ft_norm) / (fnorm * fnorm);
}

std::pair<double, double> roundtrip_defect(const EigenBasis& basis,
                                           std::span<const BoundState> states,
                                           std::span<const cd> f) {
  const TransformResult g = forward(f, basis);
  const CVector fstar_g = adjoint(g, basis);

  double d_ffstar = 0.0;
  const double gnorm = xi_norm(g.values, basis);
  if (gnorm > 0.0) {
    const TransformResult back = forward_unchecked(fstar_g, basis);
    CVector diff(g.values.size());
    for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = back.values[j] - g.values[j];
    d_ffstar = xi_norm(diff, basis) / gnorm;
  }

  double d_fstarf = 0.0;
  const auto w = basis.x_grid.trapezoid_weights();
  const double fnorm = weighted_norm(f, w);
  if (fnorm > 0.0) {
    const CVector pp = point_projection(states, f, basis.x_grid);
    CVector diff(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) diff[i] = fstar_g[i] - (f[i] - pp[i]);
    d_fstarf = weighted_norm(diff, w) / fnorm;
  }
  return {d_ffstar, d_fstarf};
}

CVector apply_hamiltonian(const Potential& pot, const GridSpec& grid, std::span<const cd> f) {
  require_size(grid, f.size(), "apply_hamiltonian");
  static constexpr double c[5] = {-205.0 / 72, 8.0 / 5, -1.0 / 5, 8.0 / 315, -1.0 / 560};
  const double h = grid.step();
  const double inv_h2 = 1.0 / (h * h);
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  auto at = [&](std::ptrdiff_t i) { return i < 0 || i >= n ? cd{0.0, 0.0} : f[static_cast<std::size_t>(i)]; };
  CVector out(f.size());
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    cd lap = c[0] * at(i);
    for (std::ptrdiff_t k = 1; k <= 4; ++k) lap += c[k] * (at(i - k) + at(i + k));
    const auto ui = static_cast<std::size_t>(i);
    out[ui] = -lap * inv_h2 + pot(grid.point(ui)) * f[ui];
  }
  return out;
}

double intertwining_defect(std::span<const cd> f, const EigenBasis& basis) {
  const GridSpec& grid = basis.x_grid;
  require_size(grid, f.size(), "intertwining_defect");
  double peak = 0.0;
  for (const cd& v : f) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  for (std::size_t k = 0; k < 4 && k < f.size(); ++k) {
    const double edge = std::max(std::abs(f[k]), std::abs(f[f.size() - 1 - k]));
    if (edge > kEdgeDecayTol * peak)
      fail(ErrorCode::Precondition,
           "f is not in the numerical domain of H: boundary values above tolerance");
  }

  const CVector hf = apply_hamiltonian(basis.potential, grid, f);
  const TransformResult lhs = forward_unchecked(hf, basis);
  const TransformResult ft = forward_unchecked(f, basis);
  CVector rhs(ft.values.size()), diff(ft.values.size());
  for (std::size_t j = 0; j < rhs.size(); ++j) {
    rhs[j] = basis.xi_grid[j] * basis.xi_grid[j] * ft.values[j];
    diff[j] = lhs.values[j] - rhs[j];
  }
  const double denom = xi_norm(rhs, basis);
  if (denom == 0.0) return 0.0;
  return xi_norm(diff, basis) / denom;
}

}  // namespace dsft

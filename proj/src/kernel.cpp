#include "dsft/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dsft/error.hpp"
#include "dsft/parallel.hpp"
#include "dsft/transform.hpp"

namespace dsft {

namespace {

void require_support(double center, double radius) {
  require(std::isfinite(center) && std::isfinite(radius), ErrorCode::InvalidArgument,
          "multiplier center and radius must be finite");
  require(radius > 0.0, ErrorCode::InvalidArgument, "multiplier radius must be positive");
}

std::string interval(double lo, double hi) {
  return "[" + num(lo) + ", " + num(hi) + "]";
}

bool touches_continuum(const Multiplier& phi) { return phi.support_hi() > 0.0; }

}  // namespace

Multiplier Multiplier::tent(double center, double radius) {
  require_support(center, radius);
  Multiplier m;
  m.kind_ = MultiplierKind::Tent;
  m.center_ = center;
  m.radius_ = radius;
  return m;
}

Multiplier Multiplier::smooth_bump(double center, double radius) {
  require_support(center, radius);
  Multiplier m;
  m.kind_ = MultiplierKind::SmoothBump;
  m.center_ = center;
  m.radius_ = radius;
  return m;
}

Multiplier Multiplier::sampled(std::vector<double> lambdas, std::vector<double> values) {
  require(lambdas.size() == values.size() && lambdas.size() >= 3, ErrorCode::InvalidArgument,
          "sampled multiplier needs at least 3 (lambda, phi) pairs");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    require(std::isfinite(lambdas[i]) && std::isfinite(values[i]), ErrorCode::InvalidArgument,
            "sampled multiplier has non-finite entries");
    if (i > 0)
      require(lambdas[i] > lambdas[i - 1], ErrorCode::InvalidArgument,
              "sampled multiplier abscissae must increase");
  }
  require(values.front() == 0.0 && values.back() == 0.0, ErrorCode::InvalidArgument,
          "sampled multiplier must vanish at both ends of its support");
  Multiplier m;
  m.kind_ = MultiplierKind::Sampled;
  m.center_ = 0.5 * (lambdas.front() + lambdas.back());
  m.radius_ = 0.5 * (lambdas.back() - lambdas.front());
  m.lambdas_ = std::move(lambdas);
  m.values_ = std::move(values);
  return m;
}

double Multiplier::operator()(double lambda) const {
  const double t = (lambda - center_) / radius_;
  if (!(std::abs(t) < 1.0)) return 0.0;
  switch (kind_) {
    case MultiplierKind::Tent:
      return 1.0 - std::abs(t);
    case MultiplierKind::SmoothBump:
      return std::exp(1.0 - 1.0 / (1.0 - t * t));
    case MultiplierKind::Sampled: {
      const auto it = std::upper_bound(lambdas_.begin(), lambdas_.end(), lambda);
      const std::size_t i = static_cast<std::size_t>(it - lambdas_.begin()) - 1;
      const double s = (lambda - lambdas_[i]) / (lambdas_[i + 1] - lambdas_[i]);
      return (1.0 - s) * values_[i] + s * values_[i + 1];
    }
  }
  return 0.0;
}

Multiplier multiplier_preset(std::string_view kind, double center, double radius) {
  if (kind == "tent") return Multiplier::tent(center, radius);
  if (kind == "smooth_bump") return Multiplier::smooth_bump(center, radius);
  fail(ErrorCode::InvalidArgument, "unknown multiplier kind '" + std::string(kind) + "'");
}

void check_ac_support(const EigenBasis& basis, const Multiplier& phi) {
  const double lo = phi.support_lo(), hi = phi.support_hi();
  const double dxi = basis.xi_step;
  const double guard = std::pow(basis.xi_min() + dxi, 2);
  if (lo <= guard)
    fail(ErrorCode::Precondition, "multiplier support " + interval(lo, hi) +
                                      " reaches the guard band around the threshold (lambda <= " +
                                      num(guard) + ")");
  const double top = basis.xi_max() * basis.xi_max();
  if (hi >= top)
    fail(ErrorCode::Precondition, "multiplier support " + interval(lo, hi) +
                                      " leaves the resolved frequency window (lambda < " +
                                      num(top) + ")");
  std::size_t nodes = 0;
  for (std::size_t j = 0; j < basis.n_xi(); ++j) {
    const double k = std::abs(basis.xi_grid[j]);
    if (basis.exceptional_mask[j]) {
      const double band_lo = std::pow(std::max(0.0, k - dxi), 2), band_hi = std::pow(k + dxi, 2);
      if (band_lo <= hi && lo <= band_hi)
        fail(ErrorCode::Precondition, "multiplier support " + interval(lo, hi) +
                                          " meets the guard band of the exceptional frequency " +
                                          num(basis.xi_grid[j]));
      continue;
    }
    if (basis.xi_grid[j] > 0.0 && k * k > lo && k * k < hi) ++nodes;
  }
  if (nodes < kMinSupportNodes)
    fail(ErrorCode::Precondition, "multiplier support " + interval(lo, hi) + " covers only " +
                                      std::to_string(nodes) + " positive xi-nodes (need " +
                                      std::to_string(kMinSupportNodes) + ")");
}

Kernel kernel_ac(const EigenBasis& basis, const Multiplier& phi) {
  check_ac_support(basis, phi);
  const auto u = basis.xi_weights();
  std::vector<Eigen::Index> cols;
  std::vector<double> scale;
  for (std::size_t j = 0; j < basis.n_xi(); ++j) {
    if (basis.exceptional_mask[j]) continue;
    const double v = phi(basis.xi_grid[j] * basis.xi_grid[j]);
    if (v == 0.0) continue;
    cols.push_back(static_cast<Eigen::Index>(j));
    scale.push_back(u[j] * v / (2.0 * std::numbers::pi));
  }
  const auto nx = static_cast<Eigen::Index>(basis.x_grid.n_points);
  const auto m = static_cast<Eigen::Index>(cols.size());
  Eigen::MatrixXcd sel(nx, m), scaled(nx, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    sel.col(a) = basis.values.col(cols[static_cast<std::size_t>(a)]);
    scaled.col(a) = sel.col(a) * scale[static_cast<std::size_t>(a)];
  }

  Kernel k;
  k.grid = basis.x_grid;
  k.quadrature_weights = basis.x_grid.trapezoid_weights();
  k.has_ac = true;
  k.values.resize(nx, nx);
  // Row blocks are independent; split them across threads.
  const Eigen::Index block = 64;
  const auto nblocks = static_cast<std::size_t>((nx + block - 1) / block);
  const Eigen::MatrixXcd sel_h = sel.adjoint();
  parallel_for(0, nblocks, [&](std::size_t b) {
    const Eigen::Index r0 = static_cast<Eigen::Index>(b) * block;
    const Eigen::Index rows = std::min(block, nx - r0);
    k.values.middleRows(r0, rows).noalias() = scaled.middleRows(r0, rows) * sel_h;
  });
  return k;
}

Kernel kernel_point(std::span<const BoundState> states, const Multiplier& phi,
                    const GridSpec& grid) {
  grid.validate();
  const auto n = static_cast<Eigen::Index>(grid.n_points);
  Kernel k;
  k.grid = grid;
  k.quadrature_weights = grid.trapezoid_weights();
  k.values = Eigen::MatrixXcd::Zero(n, n);
  for (const BoundState& s : states) {
    if (!(s.grid == grid)) fail(ErrorCode::GridMismatch, "bound state sampled on another grid");
    const double v = phi(s.lambda);
    if (v == 0.0) continue;
    const Eigen::Map<const Eigen::VectorXd> e(s.eigenfunction.data(), n);
    k.values += (v * (e * e.transpose())).cast<cd>();
    k.has_point = true;
  }
  return k;
}

Kernel assemble_kernel(const EigenBasis& basis, std::span<const BoundState> states,
                       const Multiplier& phi) {
  Kernel k = kernel_point(states, phi, basis.x_grid);
  if (touches_continuum(phi)) {
    const Kernel ac = kernel_ac(basis, phi);
    k.values += ac.values;
    k.has_ac = true;
  }
  return k;
}

CVector apply_spectral(const Kernel& kernel, std::span<const cd> f) {
  require_size(kernel.grid, f.size(), "apply_spectral");
  const double edge = relative_edge_magnitude(f);
  if (edge > kEdgeDecayTol)
    fail(ErrorCode::Precondition, "apply_spectral: input not decayed at the window edge (" +
                                      num(edge) + ")");
  const auto n = static_cast<Eigen::Index>(f.size());
  Eigen::VectorXcd wf(n);
  for (Eigen::Index i = 0; i < n; ++i)
    wf(i) = kernel.quadrature_weights[static_cast<std::size_t>(i)] * f[static_cast<std::size_t>(i)];
  const Eigen::VectorXcd out = kernel.values * wf;
  return CVector(out.data(), out.data() + out.size());
}

CVector apply_via_transform(const EigenBasis& basis, std::span<const BoundState> states,
                            const Multiplier& phi, std::span<const cd> f) {
  CVector out(basis.x_grid.n_points, cd{0.0, 0.0});
  if (touches_continuum(phi)) {
    check_ac_support(basis, phi);
    TransformResult g = forward(f, basis);
    for (std::size_t j = 0; j < g.values.size(); ++j)
      g.values[j] *= phi(basis.xi_grid[j] * basis.xi_grid[j]);
    out = adjoint(g, basis);
  } else {
    require_size(basis.x_grid, f.size(), "apply_via_transform");
    const double edge = relative_edge_magnitude(f);
    if (edge > kEdgeDecayTol)
      fail(ErrorCode::Precondition, "apply_via_transform: input not decayed at the window edge");
  }
  const auto w = basis.x_grid.trapezoid_weights();
  for (const BoundState& s : states) {
    if (!(s.grid == basis.x_grid)) fail(ErrorCode::GridMismatch, "bound state sampled on another grid");
    const double v = phi(s.lambda);
    if (v == 0.0) continue;
    cd c{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i) c += w[i] * s.eigenfunction[i] * f[i];
    for (std::size_t i = 0; i < f.size(); ++i) out[i] += v * c * s.eigenfunction[i];
  }
  return out;
}

}  // namespace dsft

#include "dsft/bound_states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dsft/error.hpp"
#include "dsft/jost.hpp"
#include "dsft/oracle.hpp"
#include "stencil.hpp"

namespace dsft {

namespace {

constexpr double kMatchPoint = 0.0;
constexpr std::size_t kScanPoints = 400;

struct Branches {
  cd up, dup;  // decaying at +inf, evaluated at the matching point
  cd dn, ddn;  // decaying at -inf
};

Branches match_data(const Potential& pot, double kappa) {
  const double at[1] = {kMatchPoint};
  const Trajectory p = evaluate_jost(pot, cd{-kappa, 0.0}, Side::Plus, at, true);
  const Trajectory m = evaluate_jost(pot, cd{-kappa, 0.0}, Side::Minus, at, true);
  return {p.values[0], p.derivatives[0], m.values[0], m.derivatives[0]};
}

// Wronskian of the two decaying branches, scaled to be O(1); its zeros are
// the bound-state values of kappa.
double matching_function(const Potential& pot, double kappa) {
  const Branches b = match_data(pot, kappa);
  const double np = std::hypot(std::abs(b.up), std::abs(b.dup));
  const double nm = std::hypot(std::abs(b.dn), std::abs(b.ddn));
  return ((b.dn * b.dup - b.ddn * b.up) / (np * nm)).real();
}

std::vector<double> scan_roots(const Potential& pot, double lo, double hi, std::size_t n) {
  std::vector<double> roots;
  double a = lo, fa = matching_function(pot, a);
  for (std::size_t i = 1; i <= n; ++i) {
    const double b = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    const double fb = matching_function(pot, b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if (fa * fb < 0.0) {
      double l = a, r = b, fl = fa;
      for (int it = 0; it < 200 && r - l > 4e-16 * r; ++it) {
        const double mid = 0.5 * (l + r);
        const double fm = matching_function(pot, mid);
        if (fm == 0.0) {
          l = r = mid;
          break;
        }
        if ((fm < 0.0) == (fl < 0.0)) {
          l = mid;
          fl = fm;
        } else {
          r = mid;
        }
      }
      roots.push_back(0.5 * (l + r));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

BoundState make_state(const Potential& pot, const GridSpec& grid, double kappa) {
  const double lambda = -kappa * kappa;
  const auto plan = detail::make_stencil_plan(pot, grid, std::sqrt(pot.max_abs() + kappa * kappa));

  // Every stencil point follows the branch of its node so stencils stay smooth.
  std::vector<std::uint8_t> right(plan.xs.size(), 0);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    const bool r = grid.point(i) >= kMatchPoint;
    for (std::size_t q = plan.begin[i]; q < plan.begin[i + 1]; ++q) right[q] = r;
  }
  std::vector<double> xr, xl;
  for (std::size_t q = 0; q < plan.xs.size(); ++q) (right[q] ? xr : xl).push_back(plan.xs[q]);

  const Branches b = match_data(pot, kappa);
  const double np = std::hypot(std::abs(b.up), std::abs(b.dup));
  const double nm = std::hypot(std::abs(b.dn), std::abs(b.ddn));
  const double orient = (b.up * b.dn + b.dup * b.ddn).real() < 0.0 ? -1.0 : 1.0;

  const Trajectory tr = evaluate_jost(pot, cd{-kappa, 0.0}, Side::Plus, xr, true);
  const Trajectory tl = evaluate_jost(pot, cd{-kappa, 0.0}, Side::Minus, xl, true);
  CVector vals(plan.xs.size());
  std::size_t ir = 0, il = 0;
  for (std::size_t q = 0; q < plan.xs.size(); ++q)
    vals[q] = right[q] ? tr.values[ir++] / np : orient * tl.values[il++] / nm;

  const auto w = grid.trapezoid_weights();
  std::vector<double> e(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) e[i] = vals[plan.center[i]].real();
  const double norm = weighted_norm(std::span<const double>(e), w);
  const auto peak = std::max_element(e.begin(), e.end(),
                                     [](double a, double c) { return std::abs(a) < std::abs(c); });
  const double scale = (*peak < 0.0 ? -1.0 : 1.0) / norm;
  for (double& v : e) v *= scale;
  for (cd& v : vals) v *= scale;

  BoundState st;
  st.grid = grid;
  st.lambda = lambda;
  st.eigenfunction = std::move(e);
  st.norm_defect = std::abs(weighted_norm(std::span<const double>(st.eigenfunction), w) - 1.0);
  st.residual = detail::stencil_residual(plan, pot, lambda, vals);
  return st;
}

// Oracle eigenpair used when shooting cannot bracket a state the FD count
// says exists.
BoundState oracle_state(const DiscreteHamiltonian& hd, Eigen::Index m) {
  BoundState st;
  st.grid = hd.grid;
  st.lambda = hd.eigenvalues(m);
  st.eigenfunction.resize(hd.grid.n_points);
  for (std::size_t i = 0; i < hd.grid.n_points; ++i)
    st.eigenfunction[i] = hd.eigenvectors(static_cast<Eigen::Index>(i), m);
  const auto w = hd.grid.trapezoid_weights();
  const double norm = weighted_norm(std::span<const double>(st.eigenfunction), w);
  const auto peak = std::max_element(st.eigenfunction.begin(), st.eigenfunction.end(),
                                     [](double a, double c) { return std::abs(a) < std::abs(c); });
  const double scale = (*peak < 0.0 ? -1.0 : 1.0) / norm;
  for (double& v : st.eigenfunction) v *= scale;
  st.norm_defect = 0.0;
  st.residual = 0.0;
  return st;
}

}  // namespace

std::vector<BoundState> find_bound_states(const Potential& pot, const GridSpec& grid) {
  grid.validate();
  if (pot.is_zero()) return {};
  const double r = pot.support_radius();
  if (grid.x_min > -r || grid.x_max < r)
    fail(ErrorCode::Precondition, "grid does not cover the potential support");

  const double kappa_lo = std::sqrt(kLambdaFloor);
  const double kappa_hi = std::sqrt(pot.max_abs()) * (1.0 + 1e-12);
  std::vector<double> kappas;
  const std::size_t expected = sturm_count_below(pot, grid, -kLambdaFloor);
  if (kappa_hi > kappa_lo) {
    kappas = scan_roots(pot, kappa_lo, kappa_hi, kScanPoints);
    if (kappas.size() < expected) kappas = scan_roots(pot, kappa_lo, kappa_hi, 8 * kScanPoints);
  }

  std::vector<BoundState> states;
  for (double k : kappas) states.push_back(make_state(pot, grid, k));

  if (states.size() < expected) {
    const DiscreteHamiltonian hd = discretize(pot, grid);
    for (Eigen::Index m = 0; m < hd.eigenvalues.size() && hd.eigenvalues(m) < -kLambdaFloor; ++m) {
      const double lam = hd.eigenvalues(m);
      const bool found = std::any_of(states.begin(), states.end(), [&](const BoundState& s) {
        return std::abs(s.lambda - lam) < 1e-2 * (1.0 + std::abs(lam));
      });
      if (!found) states.push_back(oracle_state(hd, m));
    }
  }

  std::sort(states.begin(), states.end(),
            [](const BoundState& a, const BoundState& b) { return a.lambda < b.lambda; });
  for (std::size_t k = 1; k < states.size(); ++k)
    if (states[k].lambda - states[k - 1].lambda < 1e-10)
      fail(ErrorCode::Numerical, "near-degenerate bound states at lambda = " +
                                     num(states[k].lambda));
  for (const BoundState& s : states) {
    const double tail = std::max(std::abs(s.eigenfunction.front()), std::abs(s.eigenfunction.back()));
    if (tail > kTailTol)
      fail(ErrorCode::Precondition,
           "grid margin insufficient: bound state at lambda = " + num(s.lambda) +
               " has magnitude " + num(tail) + " at the window edge");
  }
  return states;
}

CVector point_projection(std::span<const BoundState> states, std::span<const cd> f,
                         const GridSpec& grid) {
  require_size(grid, f.size(), "point_projection");
  const auto w = grid.trapezoid_weights();
  CVector out(f.size(), cd{0.0, 0.0});
  for (const BoundState& s : states) {
    if (!(s.grid == grid)) fail(ErrorCode::GridMismatch, "bound state sampled on another grid");
    cd c{0.0, 0.0};
    for (std::size_t i = 0; i < f.size(); ++i) c += w[i] * s.eigenfunction[i] * f[i];
    for (std::size_t i = 0; i < f.size(); ++i) out[i] += c * s.eigenfunction[i];
  }
  return out;
}

}  // namespace dsft

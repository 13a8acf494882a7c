#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "dsft/grid.hpp"
#include "dsft/ode.hpp"
#include "dsft/potential.hpp"

namespace dsft {

inline constexpr double kResidualTol = 1e-7;
inline constexpr double kUnitarityTol = 1e-6;
inline constexpr double kWronskianTol = 1e-6;

enum class Side : int { Plus = 1, Minus = -1 };

/// Jost solution f± of -f'' + V f = xi^2 f with f± ~ exp(±i xi x) as x -> ±inf.
struct JostSolution {
  Side side = Side::Plus;
  double xi = 0.0;
  GridSpec grid;
  CVector values;
  CVector derivative_values;
  /// Max over interior nodes of |-f'' + (V - xi^2) f| / max(1, max|f|), with
  /// f'' from a 7-point stencil on integrated sub-nodes around each node.
  /// Nodes whose stencil straddles a jump of V are skipped.
  double ode_residual = 0.0;
};

/// Scattering data at a frequency xi. r_coeff is the reflection amplitude of
/// the wave incident along sign(xi); r_coeff_right the opposite incidence.
struct ScatteringData {
  double xi = 0.0;
  cd t_coeff{1.0, 0.0};
  cd r_coeff{0.0, 0.0};
  cd r_coeff_right{0.0, 0.0};
  cd wronskian{0.0, 0.0};  // W[f-, f+] = f- f+' - f-' f+ = 2 i xi / T
};

/// Continuum eigenfunctions e(x_i, xi_j) on a lattice. Column j is the
/// transmission-normalized distorted plane wave for xi_j:
///   xi > 0:  T e^{i xi x} (x -> +inf),  e^{i xi x} + R_L e^{-i xi x} (x -> -inf)
///   xi < 0:  the mirror image, built from f- at |xi|.
/// Masked columns are zero-filled and must be skipped by consumers.
struct EigenBasis {
  Potential potential;
  GridSpec x_grid;
  std::vector<double> xi_grid;
  double xi_step = 0.0;
  Eigen::MatrixXcd values;                 // n_x by n_xi
  std::vector<ScatteringData> scattering;  // per column, in column orientation
  std::vector<std::uint8_t> exceptional_mask;
  std::vector<double> column_residual;
  double sup_bound = 0.0;

  std::size_t n_xi() const { return xi_grid.size(); }
  std::size_t masked_count() const;
  double xi_min() const { return 0.5 * xi_step; }
  double xi_max() const { return xi_grid.empty() ? 0.0 : xi_grid.back(); }
  /// Trapezoidal weights on the xi-grid.
  std::vector<double> xi_weights() const;
};

/// True when the Wronskian magnitude marks xi as exceptional.
bool is_exceptional(double xi, cd wronskian);

/// Evaluate the Jost solution with asymptote exp(side * s * x) for the ODE
/// y'' = (V + s^2) y at arbitrary abscissae. s = i xi gives the continuum
/// solutions, s = -kappa the decaying bound-state branches. When
/// scale_at_support is set the solution is rescaled to unit size at the edge
/// of the support, which keeps exponentially small tails representable.
struct Trajectory {
  CVector values;
  CVector derivatives;
};
Trajectory evaluate_jost(const Potential& pot, cd s, Side side, std::span<const double> xs,
                         bool scale_at_support = false, OdeTolerance tol = {});

JostSolution solve_jost(const Potential& pot, double xi, const GridSpec& grid, Side side);
ScatteringData scattering_coefficients(const JostSolution& fp, const JostSolution& fm);
CVector generalized_eigenfunction(const Potential& pot, double xi, const GridSpec& grid);

/// Uniform symmetric grid of n_xi (even) nodes on [-xi_max, xi_max]; 0 is
/// never a node.
std::vector<double> make_xi_grid(double xi_max, std::size_t n_xi);

EigenBasis build_eigenbasis(const Potential& pot, const GridSpec& grid, double xi_max,
                            std::size_t n_xi);

}  // namespace dsft

#pragma once

#include <span>
#include <vector>

#include "dsft/grid.hpp"
#include "dsft/potential.hpp"

namespace dsft {

/// Eigenvalues in (-kLambdaFloor, 0) are treated as absent.
inline constexpr double kLambdaFloor = 1e-8;
/// Largest |e_k| allowed at the window edge.
inline constexpr double kTailTol = 1e-8;

struct BoundState {
  GridSpec grid;
  double lambda = 0.0;
  std::vector<double> eigenfunction;  // trapezoid-normalized, largest lobe positive
  double norm_defect = 0.0;
  double residual = 0.0;
};

/// Point spectrum by shooting on the matching Wronskian of the decaying
/// solutions, with the FD Sturm count as completeness check.
std::vector<BoundState> find_bound_states(const Potential& pot, const GridSpec& grid);

/// sum_k <f, e_k> e_k with the trapezoid inner product.
CVector point_projection(std::span<const BoundState> states, std::span<const cd> f,
                         const GridSpec& grid);

}  // namespace dsft

#pragma once

// Sub-stencil residual machinery shared by the Jost and bound-state solvers.

#include <cstdint>
#include <span>
#include <vector>

#include "dsft/grid.hpp"
#include "dsft/potential.hpp"

namespace dsft::detail {

/// Abscissae at which a trajectory is sampled: every grid node, plus a
/// seven-point stencil of spacing step[i] for each interior node whose stencil
/// does not straddle a jump of V. Near a kink of V the stencil shrinks and
/// slides into the smooth piece holding the node, so it never spans a kink.
struct StencilPlan {
  double delta = 0.0;
  std::vector<double> xs;           // node i owns xs[begin[i] .. begin[i+1])
  std::vector<std::size_t> begin;   // n + 1 block offsets
  std::vector<std::size_t> center;  // position of node i in xs
  std::vector<std::size_t> mid;     // position of node i's stencil centre in xs
  std::vector<double> step;         // stencil spacing of node i
  std::vector<std::uint8_t> full;   // node i carries a full stencil
};

/// `wavenumber` bounds the local oscillation rate; the sub-stencil spacing is
/// 0.05 / max(1, wavenumber).
StencilPlan make_stencil_plan(const Potential& pot, const GridSpec& grid, double wavenumber);

/// max |-y'' + (V - energy) y| / max(1, max|y|) over nodes with a full stencil.
double stencil_residual(const StencilPlan& plan, const Potential& pot, double energy,
                        std::span<const cd> values);

}  // namespace dsft::detail

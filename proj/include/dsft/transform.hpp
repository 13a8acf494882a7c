#pragma once

#include <span>
#include <utility>
#include <vector>

#include "dsft/bound_states.hpp"
#include "dsft/jost.hpp"

namespace dsft {

/// f must fall below this (relative to max|f|) at the x-window edge.
inline constexpr double kEdgeDecayTol = 1e-8;
/// The transform must fall below this (relative) at ±xi_max for Plancherel.
inline constexpr double kFrequencyDecayTol = 1e-6;

struct TransformResult {
  std::vector<double> xi_grid;
  CVector values;                    // zero at masked nodes
  std::vector<std::uint8_t> masked;
  double window = 0.0;               // truncation radius of the x-integral
};

TransformResult forward(std::span<const cd> f, const EigenBasis& basis);
CVector adjoint(const TransformResult& g, const EigenBasis& basis);
CVector adjoint(std::span<const cd> g, const EigenBasis& basis);

double plancherel_defect(std::span<const cd> f, const EigenBasis& basis,
                         std::span<const BoundState> states);

/// (|F F* g - g| / |g| at g = F f,  |F* F f - (f - P_p f)| / |f|)
std::pair<double, double> roundtrip_defect(const EigenBasis& basis,
                                           std::span<const BoundState> states,
                                           std::span<const cd> f);

/// H f by the centered 9-point (8th order) Laplacian plus V f, with f taken
/// as zero outside the window.
CVector apply_hamiltonian(const Potential& pot, const GridSpec& grid, std::span<const cd> f);

double intertwining_defect(std::span<const cd> f, const EigenBasis& basis);

}  // namespace dsft

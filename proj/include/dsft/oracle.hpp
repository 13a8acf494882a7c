#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "dsft/grid.hpp"
#include "dsft/potential.hpp"

namespace dsft {

class Multiplier;

/// Dense finite-difference surrogate of H = -d^2/dx^2 + V on a Dirichlet box.
/// Eigenvectors are normalized for the inner product h * sum(conj(f) g).
struct DiscreteHamiltonian {
  GridSpec grid;
  std::vector<double> diagonal;      // 2/h^2 + V(x_i)
  std::vector<double> off_diagonal;  // -1/h^2
  Eigen::VectorXd eigenvalues;       // ascending
  Eigen::MatrixXd eigenvectors;      // columns

  Eigen::MatrixXd matrix() const;
  std::size_t count_below(double lambda) const;
  /// f minus its projection onto eigenvectors with eigenvalue below -floor.
  CVector ac_projection(std::span<const cd> f, double floor = 1e-8) const;
};

DiscreteHamiltonian discretize(const Potential& pot, const GridSpec& grid);

/// Sturm count of eigenvalues below lambda for the tridiagonal FD matrix,
/// without forming eigenvectors.
std::size_t sturm_count_below(const Potential& pot, const GridSpec& grid, double lambda);

/// Eigenvalues of the FD matrix inside (lo, hi).
std::vector<double> discrete_eigenvalues_in(const Potential& pot, const GridSpec& grid, double lo,
                                            double hi);

/// A window embedded in a larger box with the same step. Comparing a
/// whole-line operator against the Dirichlet oracle on the bare window picks
/// up reflections from the walls; padding moves them out of the way.
struct PaddedWindow {
  GridSpec inner;
  GridSpec outer;
  std::size_t offset = 0;  // index of inner node 0 in the outer grid

  CVector embed(std::span<const cd> f) const;      // zero-extend
  CVector restrict(std::span<const cd> f) const;   // cut back to inner
};

PaddedWindow pad_window(const GridSpec& grid, std::size_t pad);

/// sum_m phi(lambda_m) <f, v_m> v_m.
CVector functional_calculus(const DiscreteHamiltonian& hd, const Multiplier& phi,
                            std::span<const cd> f);

}  // namespace dsft

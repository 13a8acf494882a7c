#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace dsft {

using cd = std::complex<double>;
using CVector = std::vector<cd>;

/// Uniform grid on [x_min, x_max] with n_points nodes, endpoints included.
struct GridSpec {
  double x_min = -1.0;
  double x_max = 1.0;
  std::size_t n_points = 3;

  /// Throws InvalidArgument unless x_min < x_max, both finite, n_points >= 3.
  void validate() const;

  double step() const { return (x_max - x_min) / static_cast<double>(n_points - 1); }
  double point(std::size_t i) const;
  std::vector<double> points() const;

  /// Trapezoidal weights: h in the interior, h/2 at both ends.
  std::vector<double> trapezoid_weights() const;

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Throws GridMismatch when a sample vector does not match the grid size.
void require_size(const GridSpec& grid, std::size_t size, const char* what);

double weighted_norm(std::span<const cd> f, std::span<const double> weights);
double weighted_norm(std::span<const double> f, std::span<const double> weights);

/// max(|f(x_0)|, |f(x_{n-1})|) relative to max|f|; 0 for the zero vector.
double relative_edge_magnitude(std::span<const cd> f);

}  // namespace dsft

#include "dsft/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dsft/error.hpp"

namespace dsft {

void GridSpec::validate() const {
  require(std::isfinite(x_min) && std::isfinite(x_max), ErrorCode::InvalidArgument,
          "grid bounds must be finite");
  require(x_min < x_max, ErrorCode::InvalidArgument, "grid requires x_min < x_max");
  require(n_points >= 3, ErrorCode::InvalidArgument, "grid requires at least 3 points");
}

double GridSpec::point(std::size_t i) const {
  if (i + 1 == n_points) return x_max;
  return x_min + static_cast<double>(i) * step();
}

std::vector<double> GridSpec::points() const {
  std::vector<double> xs(n_points);
  for (std::size_t i = 0; i < n_points; ++i) xs[i] = point(i);
  return xs;
}

std::vector<double> GridSpec::trapezoid_weights() const {
  std::vector<double> w(n_points, step());
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

void require_size(const GridSpec& grid, std::size_t size, const char* what) {
  if (size != grid.n_points)
    fail(ErrorCode::GridMismatch, std::string(what) + ": expected " +
                                      std::to_string(grid.n_points) + " samples, got " +
                                      std::to_string(size));
}

double weighted_norm(std::span<const cd> f, std::span<const double> weights) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += weights[i] * std::norm(f[i]);
  return std::sqrt(s);
}

double weighted_norm(std::span<const double> f, std::span<const double> weights) {
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += weights[i] * f[i] * f[i];
  return std::sqrt(s);
}

double relative_edge_magnitude(std::span<const cd> f) {
  if (f.empty()) return 0.0;
  double peak = 0.0;
  for (const cd& v : f) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(f.front()), std::abs(f.back())) / peak;
}

}  // namespace dsft

#pragma once

#include <Eigen/Dense>
#include <span>
#include <string_view>
#include <vector>

#include "dsft/bound_states.hpp"
#include "dsft/jost.hpp"

namespace dsft {

enum class MultiplierKind { Tent, SmoothBump, Sampled };

/// Continuous compactly supported phi(lambda), lambda in energy units.
class Multiplier {
 public:
  static Multiplier tent(double center, double radius);
  static Multiplier smooth_bump(double center, double radius);
  /// Linear interpolation through (lambda_i, phi_i); zero outside. The end
  /// values must be zero so that phi stays continuous.
  static Multiplier sampled(std::vector<double> lambdas, std::vector<double> values);

  MultiplierKind kind() const { return kind_; }
  double center() const { return center_; }
  double radius() const { return radius_; }
  double support_lo() const { return center_ - radius_; }
  double support_hi() const { return center_ + radius_; }

  double operator()(double lambda) const;

 private:
  Multiplier() = default;
  MultiplierKind kind_ = MultiplierKind::Tent;
  double center_ = 0.0;
  double radius_ = 1.0;
  std::vector<double> lambdas_, values_;
};

Multiplier multiplier_preset(std::string_view kind, double center, double radius);

struct Kernel {
  GridSpec grid;
  Eigen::MatrixXcd values;  // K(x_i, y_j)
  bool has_ac = false;
  bool has_point = false;
  std::vector<double> quadrature_weights;
};

/// Throws Precondition when phi's support violates the guard band around the
/// exceptional set (including the threshold xi = 0), leaves the xi-window, or
/// is covered by fewer than kMinSupportNodes positive xi-nodes.
void check_ac_support(const EigenBasis& basis, const Multiplier& phi);
inline constexpr std::size_t kMinSupportNodes = 16;

Kernel kernel_ac(const EigenBasis& basis, const Multiplier& phi);
Kernel kernel_point(std::span<const BoundState> states, const Multiplier& phi,
                    const GridSpec& grid);
/// K_ac + K_p. The a.c. part is skipped when phi vanishes on [0, inf).
Kernel assemble_kernel(const EigenBasis& basis, std::span<const BoundState> states,
                       const Multiplier& phi);

CVector apply_spectral(const Kernel& kernel, std::span<const cd> f);
CVector apply_via_transform(const EigenBasis& basis, std::span<const BoundState> states,
                            const Multiplier& phi, std::span<const cd> f);

}  // namespace dsft

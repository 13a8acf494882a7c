#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dsft/grid.hpp"

namespace dsft {

/// |V(x)| below this value counts as zero when placing the effective support.
inline constexpr double kTruncationTol = 1e-10;

enum class PotentialKind { Zero, Sech2, SquareWell, GaussianWell, Sampled };

/// Real potential V in L1 ∩ L2, immutable once built.
///
/// Presets:
///   zero                          V = 0
///   sech2 [c, w]                  V = -c sech^2(x/w)
///   square_well [d, a]            V = -d on (-a, a), -d/2 at x = ±a, 0 outside
///   gaussian_well [d, w]          V = -d exp(-(x/w)^2)
///   sampled [x0, dx, v0, v1, ...] linear interpolation of samples, 0 outside
class Potential {
 public:
  Potential() = default;  // the zero potential
  static Potential zero();
  static Potential sampled(std::vector<double> xs, std::vector<double> vs);

  PotentialKind kind() const { return kind_; }
  std::string_view name() const;
  const std::vector<double>& params() const { return params_; }

  double operator()(double x) const;
  std::vector<double> sample(const GridSpec& grid) const;

  double support_radius() const { return support_radius_; }
  double norm_l1() const { return norm_l1_; }
  double norm_l2() const { return norm_l2_; }
  double max_abs() const { return max_abs_; }
  bool is_zero() const { return kind_ == PotentialKind::Zero; }

  /// Points where V jumps. The ODE only holds in the distributional sense there.
  const std::vector<double>& jumps() const { return jumps_; }
  /// Points where V is continuous but V' is not (knots of a sampled profile), ascending.
  const std::vector<double>& kinks() const { return kind_ == PotentialKind::Sampled ? xs_ : no_kinks_; }

  friend Potential make_preset(std::string_view name, std::span<const double> params);

 private:
  void finish();

  PotentialKind kind_ = PotentialKind::Zero;
  std::vector<double> params_;
  std::vector<double> xs_, vs_;  // sampled profile only
  double support_radius_ = 0.0;
  double norm_l1_ = 0.0;
  double norm_l2_ = 0.0;
  double max_abs_ = 0.0;
  std::vector<double> jumps_;
  inline static const std::vector<double> no_kinks_{};
};

Potential make_preset(std::string_view name, std::span<const double> params);

inline std::vector<double> sample(const Potential& pot, const GridSpec& grid) {
  return pot.sample(grid);
}

}  // namespace dsft

#include "dsft/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "dsft/error.hpp"

namespace dsft {

namespace {

void require_finite(std::span<const double> params, std::string_view name) {
  for (double p : params)
    require(std::isfinite(p), ErrorCode::InvalidArgument,
            "non-finite parameter for potential '" + std::string(name) + "'");
}

void require_count(std::span<const double> params, std::size_t n, std::string_view name) {
  require(params.size() == n, ErrorCode::InvalidArgument,
          "potential '" + std::string(name) + "' takes " + std::to_string(n) + " parameters, got " +
              std::to_string(params.size()));
}

// Integrals of |l| and l^2 for the linear l on [0, dx] with end values a, b.
double linear_abs_integral(double a, double b, double dx) {
  if (a * b >= 0.0) return 0.5 * dx * (std::abs(a) + std::abs(b));
  return 0.5 * dx * (a * a + b * b) / (std::abs(a) + std::abs(b));
}

double linear_square_integral(double a, double b, double dx) {
  return dx * (a * a + a * b + b * b) / 3.0;
}

}  // namespace

Potential Potential::zero() { return Potential{}; }

Potential Potential::sampled(std::vector<double> xs, std::vector<double> vs) {
  require(xs.size() == vs.size(), ErrorCode::InvalidArgument,
          "sampled potential: abscissae and values differ in length");
  require(xs.size() >= 2, ErrorCode::InvalidArgument, "sampled potential needs at least 2 samples");
  require_finite(xs, "sampled");
  require_finite(vs, "sampled");
  for (std::size_t i = 1; i < xs.size(); ++i)
    require(xs[i] > xs[i - 1], ErrorCode::InvalidArgument,
            "sampled potential abscissae must be strictly increasing");
  require(std::any_of(vs.begin(), vs.end(), [](double v) { return v != 0.0; }),
          ErrorCode::InvalidArgument, "sampled potential is identically zero; use 'zero'");

  Potential p;
  p.kind_ = PotentialKind::Sampled;
  p.xs_ = std::move(xs);
  p.vs_ = std::move(vs);
  p.finish();
  return p;
}

Potential make_preset(std::string_view name, std::span<const double> params) {
  require_finite(params, name);
  Potential p;
  p.params_.assign(params.begin(), params.end());
  if (name == "zero") {
    require_count(params, 0, name);
    return p;
  }
  if (name == "sech2") {
    require_count(params, 2, name);
    p.kind_ = PotentialKind::Sech2;
  } else if (name == "square_well") {
    require_count(params, 2, name);
    p.kind_ = PotentialKind::SquareWell;
  } else if (name == "gaussian_well") {
    require_count(params, 2, name);
    p.kind_ = PotentialKind::GaussianWell;
  } else if (name == "sampled") {
    require(params.size() >= 4, ErrorCode::InvalidArgument,
            "sampled potential takes [x0, dx, v0, v1, ...] with at least two values");
    require(params[1] > 0.0, ErrorCode::InvalidArgument, "sampled potential needs dx > 0");
    std::vector<double> xs, vs(params.begin() + 2, params.end());
    for (std::size_t i = 0; i < vs.size(); ++i) xs.push_back(params[0] + params[1] * i);
    Potential s = Potential::sampled(std::move(xs), std::move(vs));
    s.params_ = p.params_;
    return s;
  } else {
    fail(ErrorCode::InvalidArgument, "unknown potential preset '" + std::string(name) + "'");
  }
  require(params[0] != 0.0, ErrorCode::InvalidArgument,
          "potential '" + std::string(name) + "' needs a nonzero depth; use 'zero'");
  require(params[1] > 0.0, ErrorCode::InvalidArgument,
          "potential '" + std::string(name) + "' needs a positive width");
  p.finish();
  return p;
}

void Potential::finish() {
  using std::numbers::pi;
  const double tol = kTruncationTol;
  switch (kind_) {
    case PotentialKind::Zero:
      break;
    case PotentialKind::Sech2: {
      const double c = std::abs(params_[0]), w = params_[1];
      norm_l1_ = 2.0 * c * w;
      norm_l2_ = c * std::sqrt(4.0 * w / 3.0);
      max_abs_ = c;
      support_radius_ = c > tol ? w * std::acosh(std::sqrt(c / tol)) : 0.0;
      support_radius_ = std::max(support_radius_, w);
      break;
    }
    case PotentialKind::SquareWell: {
      const double d = std::abs(params_[0]), a = params_[1];
      norm_l1_ = 2.0 * a * d;
      norm_l2_ = d * std::sqrt(2.0 * a);
      max_abs_ = d;
      support_radius_ = a;
      jumps_ = {-a, a};
      break;
    }
    case PotentialKind::GaussianWell: {
      const double d = std::abs(params_[0]), w = params_[1];
      norm_l1_ = d * w * std::sqrt(pi);
      norm_l2_ = d * std::sqrt(w * std::sqrt(pi / 2.0));
      max_abs_ = d;
      support_radius_ = d > tol ? w * std::sqrt(std::log(d / tol)) : 0.0;
      support_radius_ = std::max(support_radius_, w);
      break;
    }
    case PotentialKind::Sampled: {
      double l1 = 0.0, l2 = 0.0;
      for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
        const double dx = xs_[i + 1] - xs_[i];
        l1 += linear_abs_integral(vs_[i], vs_[i + 1], dx);
        l2 += linear_square_integral(vs_[i], vs_[i + 1], dx);
        if (std::max(std::abs(vs_[i]), std::abs(vs_[i + 1])) > tol)
          support_radius_ = std::max({support_radius_, std::abs(xs_[i]), std::abs(xs_[i + 1])});
      }
      norm_l1_ = l1;
      norm_l2_ = std::sqrt(l2);
      for (double v : vs_) max_abs_ = std::max(max_abs_, std::abs(v));
      if (vs_.front() != 0.0) jumps_.push_back(xs_.front());
      if (vs_.back() != 0.0) jumps_.push_back(xs_.back());
      // A profile that only exceeds the tolerance at a single isolated knot
      // still has a nonzero support.
      if (support_radius_ == 0.0) support_radius_ = std::max(std::abs(xs_.front()), std::abs(xs_.back()));
      break;
    }
  }
}

std::string_view Potential::name() const {
  switch (kind_) {
    case PotentialKind::Zero: return "zero";
    case PotentialKind::Sech2: return "sech2";
    case PotentialKind::SquareWell: return "square_well";
    case PotentialKind::GaussianWell: return "gaussian_well";
    case PotentialKind::Sampled: return "sampled";
  }
  return "unknown";
}

double Potential::operator()(double x) const {
  switch (kind_) {
    case PotentialKind::Zero:
      return 0.0;
    case PotentialKind::Sech2: {
      const double s = 1.0 / std::cosh(x / params_[1]);
      return -params_[0] * s * s;
    }
    case PotentialKind::SquareWell: {
      const double a = params_[1], ax = std::abs(x);
      if (ax < a) return -params_[0];
      if (ax == a) return -0.5 * params_[0];
      return 0.0;
    }
    case PotentialKind::GaussianWell: {
      const double t = x / params_[1];
      return -params_[0] * std::exp(-t * t);
    }
    case PotentialKind::Sampled: {
      if (x < xs_.front() || x > xs_.back()) return 0.0;
      if (x == xs_.front()) return vs_.front() == 0.0 ? 0.0 : 0.5 * vs_.front();
      if (x == xs_.back()) return vs_.back() == 0.0 ? 0.0 : 0.5 * vs_.back();
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
      const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
      return (1.0 - t) * vs_[i] + t * vs_[i + 1];
    }
  }
  return 0.0;
}

std::vector<double> Potential::sample(const GridSpec& grid) const {
  grid.validate();
  std::vector<double> v(grid.n_points);
  for (std::size_t i = 0; i < grid.n_points; ++i) v[i] = (*this)(grid.point(i));
  return v;
}

}  // namespace dsft

#include "dsft/oracle.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "dsft/error.hpp"
#include "dsft/kernel.hpp"

namespace dsft {

namespace {

void assemble(const Potential& pot, const GridSpec& grid, std::vector<double>& d,
              std::vector<double>& e) {
  grid.validate();
  const double h = grid.step();
  const double inv_h2 = 1.0 / (h * h);
  d.resize(grid.n_points);
  e.assign(grid.n_points - 1, -inv_h2);
  for (std::size_t i = 0; i < grid.n_points; ++i) {
    d[i] = 2.0 * inv_h2 + pot(grid.point(i));
    require(std::isfinite(d[i]), ErrorCode::Numerical, "non-finite potential sample");
  }
}

std::size_t sturm(const std::vector<double>& d, const std::vector<double>& e, double lambda) {
  std::size_t count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double off = i == 0 ? 0.0 : e[i - 1] * e[i - 1] / q;
    q = d[i] - lambda - off;
    if (q == 0.0) q = -1e-300;
    if (q < 0.0) ++count;
  }
  return count;
}

}  // namespace

Eigen::MatrixXd DiscreteHamiltonian::matrix() const {
  const auto n = static_cast<Eigen::Index>(diagonal.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = diagonal[static_cast<std::size_t>(i)];
    if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = off_diagonal[static_cast<std::size_t>(i)];
  }
  return m;
}

std::size_t DiscreteHamiltonian::count_below(double lambda) const {
  return static_cast<std::size_t>((eigenvalues.array() < lambda).count());
}

CVector DiscreteHamiltonian::ac_projection(std::span<const cd> f, double floor) const {
  require_size(grid, f.size(), "ac_projection");
  const double h = grid.step();
  Eigen::Map<const Eigen::VectorXcd> fv(f.data(), static_cast<Eigen::Index>(f.size()));
  Eigen::VectorXcd out = fv;
  for (Eigen::Index m = 0; m < eigenvalues.size() && eigenvalues(m) < -floor; ++m) {
    const cd c = h * eigenvectors.col(m).cast<cd>().dot(fv);
    out -= c * eigenvectors.col(m).cast<cd>();
  }
  return CVector(out.data(), out.data() + out.size());
}

DiscreteHamiltonian discretize(const Potential& pot, const GridSpec& grid) {
  DiscreteHamiltonian hd;
  hd.grid = grid;
  assemble(pot, grid, hd.diagonal, hd.off_diagonal);

  const auto n = static_cast<lapack_int>(grid.n_points);
  std::vector<double> d = hd.diagonal, e = hd.off_diagonal;
  e.push_back(0.0);  // dstevr wants length n workspace here
  hd.eigenvalues.resize(n);
  hd.eigenvectors.resize(n, n);
  std::vector<lapack_int> support(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const lapack_int info =
      LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'A', n, d.data(), e.data(), 0.0, 0.0, 0, 0, 0.0,
                     &found, hd.eigenvalues.data(), hd.eigenvectors.data(), n, support.data());
  if (info != 0 || found != n)
    fail(ErrorCode::Numerical, "tridiagonal eigensolver failed (info = " + std::to_string(info) + ")");
  // Unit Euclidean columns -> unit norm under h * sum.
  hd.eigenvectors /= std::sqrt(grid.step());
  return hd;
}

std::size_t sturm_count_below(const Potential& pot, const GridSpec& grid, double lambda) {
  std::vector<double> d, e;
  assemble(pot, grid, d, e);
  return sturm(d, e, lambda);
}

std::vector<double> discrete_eigenvalues_in(const Potential& pot, const GridSpec& grid, double lo,
                                            double hi) {
  std::vector<double> d, e;
  assemble(pot, grid, d, e);
  const auto n = static_cast<lapack_int>(grid.n_points);
  e.push_back(0.0);
  std::vector<double> w(grid.n_points);
  std::vector<double> z(1);
  std::vector<lapack_int> support(2 * grid.n_points);
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'N', 'V', n, d.data(), e.data(), lo, hi,
                                         0, 0, 0.0, &found, w.data(), z.data(), 1, support.data());
  if (info != 0) fail(ErrorCode::Numerical, "tridiagonal eigensolver failed");
  w.resize(static_cast<std::size_t>(found));
  return w;
}

CVector functional_calculus(const DiscreteHamiltonian& hd, const Multiplier& phi,
                            std::span<const cd> f) {
  require_size(hd.grid, f.size(), "functional_calculus");
  const auto n = static_cast<Eigen::Index>(f.size());
  Eigen::Map<const Eigen::VectorXcd> fv(f.data(), n);
  Eigen::VectorXd weights(hd.eigenvalues.size());
  for (Eigen::Index m = 0; m < weights.size(); ++m) weights(m) = phi(hd.eigenvalues(m));

  // Only eigenvectors with phi(lambda_m) != 0 contribute.
  std::vector<Eigen::Index> active;
  for (Eigen::Index m = 0; m < weights.size(); ++m)
    if (weights(m) != 0.0) active.push_back(m);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  if (!active.empty()) {
    Eigen::MatrixXd sub(n, static_cast<Eigen::Index>(active.size()));
    for (std::size_t a = 0; a < active.size(); ++a) sub.col(static_cast<Eigen::Index>(a)) = hd.eigenvectors.col(active[a]);
    Eigen::VectorXcd coeff = hd.grid.step() * (sub.transpose().cast<cd>() * fv);
    for (std::size_t a = 0; a < active.size(); ++a) coeff(static_cast<Eigen::Index>(a)) *= weights(active[a]);
    out = sub.cast<cd>() * coeff;
  }
  return CVector(out.data(), out.data() + out.size());
}

PaddedWindow pad_window(const GridSpec& grid, std::size_t pad) {
  grid.validate();
  const double h = grid.step();
  const double ext = h * static_cast<double>(pad);
  return {grid, GridSpec{grid.x_min - ext, grid.x_max + ext, grid.n_points + 2 * pad}, pad};
}

CVector PaddedWindow::embed(std::span<const cd> f) const {
  require_size(inner, f.size(), "embed");
  CVector out(outer.n_points, cd{0.0, 0.0});
  std::copy(f.begin(), f.end(), out.begin() + static_cast<std::ptrdiff_t>(offset));
  return out;
}

CVector PaddedWindow::restrict(std::span<const cd> f) const {
  require_size(outer, f.size(), "restrict");
  auto first = f.begin() + static_cast<std::ptrdiff_t>(offset);
  return CVector(first, first + static_cast<std::ptrdiff_t>(inner.n_points));
}

}  // namespace dsft

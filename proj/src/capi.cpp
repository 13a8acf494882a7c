#include "dsft/dsft.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "dsft/bound_states.hpp"
#include "dsft/error.hpp"
#include "dsft/io.hpp"
#include "dsft/jost.hpp"
#include "dsft/kernel.hpp"
#include "dsft/oracle.hpp"
#include "dsft/parallel.hpp"
#include "dsft/potential.hpp"
#include "dsft/transform.hpp"

struct dsft_potential {
  dsft::Potential impl;
};
struct dsft_basis {
  dsft::EigenBasis impl;
};
struct dsft_bound_states {
  std::vector<dsft::BoundState> impl;
};
struct dsft_multiplier {
  dsft::Multiplier impl;
};
struct dsft_kernel {
  dsft::Kernel impl;
};
struct dsft_oracle {
  dsft::PaddedWindow window;
  dsft::DiscreteHamiltonian impl;
};

namespace {

thread_local std::string g_last_error;

using dsft::cd;
using dsft::CVector;

static_assert(sizeof(dsft_complex) == sizeof(cd));

template <class F>
int guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return DSFT_OK;
  } catch (const dsft::Error& e) {
    g_last_error = e.what();
    return static_cast<int>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return DSFT_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return DSFT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return DSFT_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) dsft::fail(dsft::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

dsft::GridSpec to_grid(dsft_grid g) {
  dsft::GridSpec spec{g.x_min, g.x_max, g.n_points};
  spec.validate();
  return spec;
}

std::span<const cd> as_span(const dsft_complex* p, std::size_t n) {
  return {reinterpret_cast<const cd*>(p), n};
}

void copy_out(const CVector& v, dsft_complex* out) {
  std::memcpy(out, v.data(), v.size() * sizeof(cd));
}

std::span<const dsft::BoundState> states_of(const dsft_bound_states* s) {
  if (s == nullptr) return {};
  return s->impl;
}

dsft_complex to_c(cd z) { return {z.real(), z.imag()}; }

}  // namespace

extern "C" {

const char* dsft_version(void) { return "0.1.0"; }

const char* dsft_last_error(void) { return g_last_error.c_str(); }

void dsft_set_threads(unsigned n) { dsft::set_thread_count(n); }

int dsft_potential_create(const char* kind, const double* params, size_t n_params,
                          dsft_potential** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    if (n_params > 0) need(params, "params");
    auto p = std::make_unique<dsft_potential>(
        dsft_potential{dsft::make_preset(kind, std::span<const double>(params, n_params))});
    *out = p.release();
  });
}

int dsft_potential_create_sampled(const double* xs, const double* vs, size_t n,
                                  dsft_potential** out) {
  return guarded([&] {
    need(xs, "xs");
    need(vs, "vs");
    need(out, "out");
    auto p = std::make_unique<dsft_potential>(dsft_potential{
        dsft::Potential::sampled(std::vector<double>(xs, xs + n), std::vector<double>(vs, vs + n))});
    *out = p.release();
  });
}

void dsft_potential_destroy(dsft_potential* pot) { delete pot; }

int dsft_potential_info(const dsft_potential* pot, double* norm_l1, double* norm_l2,
                        double* support_radius) {
  return guarded([&] {
    need(pot, "potential");
    if (norm_l1) *norm_l1 = pot->impl.norm_l1();
    if (norm_l2) *norm_l2 = pot->impl.norm_l2();
    if (support_radius) *support_radius = pot->impl.support_radius();
  });
}

int dsft_potential_load(const char* path, dsft_potential** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    std::vector<double> xs, vs;
    dsft::io::read_two_columns(path, xs, vs);
    auto p = std::make_unique<dsft_potential>(
        dsft_potential{dsft::Potential::sampled(std::move(xs), std::move(vs))});
    *out = p.release();
  });
}

int dsft_sample_file(const char* path, dsft_grid grid, double* out) {
  return guarded([&] {
    need(path, "path");
    need(out, "out");
    const auto g = to_grid(grid);
    std::vector<double> xs, ys;
    dsft::io::read_two_columns(path, xs, ys);
    if (xs.size() < 2) dsft::fail(dsft::ErrorCode::Io, std::string(path) + ": need at least two samples");
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1]))
        dsft::fail(dsft::ErrorCode::Io, std::string(path) + ": abscissae must increase");
    for (std::size_t i = 0; i < g.n_points; ++i) {
      const double x = g.point(i);
      if (x < xs.front() || x > xs.back()) {
        out[i] = 0.0;
        continue;
      }
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - xs.begin()), xs.size() - 1);
      const std::size_t lo = hi - 1;
      const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
      out[i] = (1.0 - t) * ys[lo] + t * ys[hi];
    }
  });
}

int dsft_potential_sample(const dsft_potential* pot, dsft_grid grid, double* out) {
  return guarded([&] {
    need(pot, "potential");
    need(out, "out");
    auto v = pot->impl.sample(to_grid(grid));
    std::memcpy(out, v.data(), v.size() * sizeof(double));
  });
}

int dsft_scattering_at(const dsft_potential* pot, dsft_grid grid, double xi,
                       dsft_complex* t_coeff, dsft_complex* r_coeff, dsft_complex* wronskian) {
  return guarded([&] {
    need(pot, "potential");
    auto g = to_grid(grid);
    double k = std::abs(xi);
    auto fp = dsft::solve_jost(pot->impl, k, g, dsft::Side::Plus);
    auto fm = dsft::solve_jost(pot->impl, k, g, dsft::Side::Minus);
    auto s = dsft::scattering_coefficients(fp, fm);
    if (t_coeff) *t_coeff = to_c(s.t_coeff);
    if (r_coeff) *r_coeff = to_c(xi > 0 ? s.r_coeff : s.r_coeff_right);
    if (wronskian) *wronskian = to_c(s.wronskian);
  });
}

int dsft_generalized_eigenfunction(const dsft_potential* pot, dsft_grid grid, double xi,
                                   dsft_complex* out) {
  return guarded([&] {
    need(pot, "potential");
    need(out, "out");
    copy_out(dsft::generalized_eigenfunction(pot->impl, xi, to_grid(grid)), out);
  });
}

int dsft_basis_build(const dsft_potential* pot, dsft_grid grid, double xi_max, size_t n_xi,
                     dsft_basis** out) {
  return guarded([&] {
    need(pot, "potential");
    need(out, "out");
    auto b = std::make_unique<dsft_basis>(
        dsft_basis{dsft::build_eigenbasis(pot->impl, to_grid(grid), xi_max, n_xi)});
    *out = b.release();
  });
}

void dsft_basis_destroy(dsft_basis* basis) { delete basis; }

int dsft_basis_info(const dsft_basis* basis, size_t* n_xi, size_t* n_masked, double* sup_bound,
                    double* max_residual) {
  return guarded([&] {
    need(basis, "basis");
    const auto& b = basis->impl;
    if (n_xi) *n_xi = b.n_xi();
    if (n_masked) *n_masked = b.masked_count();
    if (sup_bound) *sup_bound = b.sup_bound;
    if (max_residual) {
      double r = 0.0;
      for (std::size_t j = 0; j < b.n_xi(); ++j)
        if (!b.exceptional_mask[j]) r = std::max(r, b.column_residual[j]);
      *max_residual = r;
    }
  });
}

int dsft_basis_xi(const dsft_basis* basis, double* xi, unsigned char* masked) {
  return guarded([&] {
    need(basis, "basis");
    need(xi, "xi");
    const auto& b = basis->impl;
    std::memcpy(xi, b.xi_grid.data(), b.n_xi() * sizeof(double));
    if (masked) std::memcpy(masked, b.exceptional_mask.data(), b.n_xi());
  });
}

int dsft_basis_scattering(const dsft_basis* basis, size_t j, dsft_complex* t_coeff,
                          dsft_complex* r_coeff, dsft_complex* wronskian) {
  return guarded([&] {
    need(basis, "basis");
    if (j >= basis->impl.n_xi())
      dsft::fail(dsft::ErrorCode::InvalidArgument, "xi index out of range");
    const auto& s = basis->impl.scattering[j];
    if (t_coeff) *t_coeff = to_c(s.t_coeff);
    if (r_coeff) *r_coeff = to_c(s.r_coeff);
    if (wronskian) *wronskian = to_c(s.wronskian);
  });
}

int dsft_basis_write_csv(const dsft_basis* basis, const char* path) {
  return guarded([&] {
    need(basis, "basis");
    need(path, "path");
    dsft::io::write_eigenbasis_csv(basis->impl, path);
  });
}

int dsft_scattering_write_csv(const dsft_basis* basis, const char* path) {
  return guarded([&] {
    need(basis, "basis");
    need(path, "path");
    dsft::io::write_scattering_csv(basis->impl, path);
  });
}

int dsft_bound_states_find(const dsft_potential* pot, dsft_grid grid, dsft_bound_states** out) {
  return guarded([&] {
    need(pot, "potential");
    need(out, "out");
    auto s = std::make_unique<dsft_bound_states>(
        dsft_bound_states{dsft::find_bound_states(pot->impl, to_grid(grid))});
    *out = s.release();
  });
}

void dsft_bound_states_destroy(dsft_bound_states* states) { delete states; }

size_t dsft_bound_states_count(const dsft_bound_states* states) {
  return states ? states->impl.size() : 0;
}

int dsft_bound_state_get(const dsft_bound_states* states, size_t k, double* lambda,
                         double* eigenfunction) {
  return guarded([&] {
    need(states, "bound states");
    if (k >= states->impl.size())
      dsft::fail(dsft::ErrorCode::InvalidArgument, "bound state index out of range");
    const auto& s = states->impl[k];
    if (lambda) *lambda = s.lambda;
    if (eigenfunction)
      std::memcpy(eigenfunction, s.eigenfunction.data(), s.eigenfunction.size() * sizeof(double));
  });
}

int dsft_bound_states_write_csv(const dsft_bound_states* states, const char* path) {
  return guarded([&] {
    need(states, "bound states");
    need(path, "path");
    dsft::io::write_bound_states_csv(states->impl, path);
  });
}

int dsft_forward(const dsft_basis* basis, const dsft_complex* f, dsft_complex* out) {
  return guarded([&] {
    need(basis, "basis");
    need(f, "f");
    need(out, "out");
    const auto& b = basis->impl;
    copy_out(dsft::forward(as_span(f, b.x_grid.n_points), b).values, out);
  });
}

int dsft_adjoint(const dsft_basis* basis, const dsft_complex* g, dsft_complex* out) {
  return guarded([&] {
    need(basis, "basis");
    need(g, "g");
    need(out, "out");
    const auto& b = basis->impl;
    copy_out(dsft::adjoint(as_span(g, b.n_xi()), b), out);
  });
}

int dsft_transform_write_csv(const dsft_basis* basis, const dsft_complex* f, const char* path) {
  return guarded([&] {
    need(basis, "basis");
    need(f, "f");
    need(path, "path");
    const auto& b = basis->impl;
    dsft::io::write_transform_csv(dsft::forward(as_span(f, b.x_grid.n_points), b), path);
  });
}

int dsft_plancherel_defect(const dsft_basis* basis, const dsft_bound_states* states,
                           const dsft_complex* f, double* defect) {
  return guarded([&] {
    need(basis, "basis");
    need(f, "f");
    need(defect, "defect");
    const auto& b = basis->impl;
    *defect = dsft::plancherel_defect(as_span(f, b.x_grid.n_points), b, states_of(states));
  });
}

int dsft_roundtrip_defect(const dsft_basis* basis, const dsft_bound_states* states,
                          const dsft_complex* f, double* ffstar, double* fstarf) {
  return guarded([&] {
    need(basis, "basis");
    need(f, "f");
    const auto& b = basis->impl;
    auto [a, c] = dsft::roundtrip_defect(b, states_of(states), as_span(f, b.x_grid.n_points));
    if (ffstar) *ffstar = a;
    if (fstarf) *fstarf = c;
  });
}

int dsft_intertwining_defect(const dsft_basis* basis, const dsft_complex* f, double* defect) {
  return guarded([&] {
    need(basis, "basis");
    need(f, "f");
    need(defect, "defect");
    const auto& b = basis->impl;
    *defect = dsft::intertwining_defect(as_span(f, b.x_grid.n_points), b);
  });
}

int dsft_multiplier_create(const char* kind, double center, double radius,
                           dsft_multiplier** out) {
  return guarded([&] {
    need(kind, "kind");
    need(out, "out");
    auto m = std::make_unique<dsft_multiplier>(
        dsft_multiplier{dsft::multiplier_preset(kind, center, radius)});
    *out = m.release();
  });
}

int dsft_multiplier_create_sampled(const double* lambdas, const double* values, size_t n,
                                   dsft_multiplier** out) {
  return guarded([&] {
    need(lambdas, "lambdas");
    need(values, "values");
    need(out, "out");
    auto m = std::make_unique<dsft_multiplier>(dsft_multiplier{dsft::Multiplier::sampled(
        std::vector<double>(lambdas, lambdas + n), std::vector<double>(values, values + n))});
    *out = m.release();
  });
}

void dsft_multiplier_destroy(dsft_multiplier* phi) { delete phi; }

int dsft_multiplier_eval(const dsft_multiplier* phi, double lambda, double* out) {
  return guarded([&] {
    need(phi, "multiplier");
    need(out, "out");
    *out = phi->impl(lambda);
  });
}

int dsft_kernel_assemble(const dsft_basis* basis, const dsft_bound_states* states,
                         const dsft_multiplier* phi, dsft_kernel** out) {
  return guarded([&] {
    need(basis, "basis");
    need(phi, "multiplier");
    need(out, "out");
    auto k = std::make_unique<dsft_kernel>(
        dsft_kernel{dsft::assemble_kernel(basis->impl, states_of(states), phi->impl)});
    *out = k.release();
  });
}

int dsft_kernel_ac(const dsft_basis* basis, const dsft_multiplier* phi, dsft_kernel** out) {
  return guarded([&] {
    need(basis, "basis");
    need(phi, "multiplier");
    need(out, "out");
    auto k = std::make_unique<dsft_kernel>(dsft_kernel{dsft::kernel_ac(basis->impl, phi->impl)});
    *out = k.release();
  });
}

int dsft_kernel_point(const dsft_bound_states* states, const dsft_multiplier* phi, dsft_grid grid,
                      dsft_kernel** out) {
  return guarded([&] {
    need(phi, "multiplier");
    need(out, "out");
    auto k = std::make_unique<dsft_kernel>(
        dsft_kernel{dsft::kernel_point(states_of(states), phi->impl, to_grid(grid))});
    *out = k.release();
  });
}

void dsft_kernel_destroy(dsft_kernel* kernel) { delete kernel; }

size_t dsft_kernel_size(const dsft_kernel* kernel) {
  return kernel ? static_cast<size_t>(kernel->impl.values.rows()) : 0;
}

int dsft_kernel_entry(const dsft_kernel* kernel, size_t i, size_t j, dsft_complex* out) {
  return guarded([&] {
    need(kernel, "kernel");
    need(out, "out");
    const auto& v = kernel->impl.values;
    if (i >= static_cast<size_t>(v.rows()) || j >= static_cast<size_t>(v.cols()))
      dsft::fail(dsft::ErrorCode::InvalidArgument, "kernel index out of range");
    *out = to_c(v(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
  });
}

int dsft_kernel_apply(const dsft_kernel* kernel, const dsft_complex* f, dsft_complex* out) {
  return guarded([&] {
    need(kernel, "kernel");
    need(f, "f");
    need(out, "out");
    const auto& k = kernel->impl;
    copy_out(dsft::apply_spectral(k, as_span(f, k.grid.n_points)), out);
  });
}

int dsft_apply_via_transform(const dsft_basis* basis, const dsft_bound_states* states,
                             const dsft_multiplier* phi, const dsft_complex* f,
                             dsft_complex* out) {
  return guarded([&] {
    need(basis, "basis");
    need(phi, "multiplier");
    need(f, "f");
    need(out, "out");
    const auto& b = basis->impl;
    copy_out(dsft::apply_via_transform(b, states_of(states), phi->impl,
                                       as_span(f, b.x_grid.n_points)),
             out);
  });
}

int dsft_kernel_write_csv(const dsft_kernel* kernel, const char* path) {
  return guarded([&] {
    need(kernel, "kernel");
    need(path, "path");
    dsft::io::write_kernel_csv(kernel->impl, path);
  });
}

int dsft_kernel_write_binary(const dsft_kernel* kernel, const char* path) {
  return guarded([&] {
    need(kernel, "kernel");
    need(path, "path");
    dsft::io::write_kernel_binary(kernel->impl, path);
  });
}

int dsft_oracle_create(const dsft_potential* pot, dsft_grid grid, size_t pad, dsft_oracle** out) {
  return guarded([&] {
    need(pot, "potential");
    need(out, "out");
    auto window = dsft::pad_window(to_grid(grid), pad);
    auto hd = dsft::discretize(pot->impl, window.outer);
    auto o = std::make_unique<dsft_oracle>(dsft_oracle{window, std::move(hd)});
    *out = o.release();
  });
}

void dsft_oracle_destroy(dsft_oracle* oracle) { delete oracle; }

size_t dsft_oracle_negative_count(const dsft_oracle* oracle) {
  return oracle ? oracle->impl.count_below(-dsft::kLambdaFloor) : 0;
}

int dsft_oracle_functional_calculus(const dsft_oracle* oracle, const dsft_multiplier* phi,
                                    const dsft_complex* f, dsft_complex* out) {
  return guarded([&] {
    need(oracle, "oracle");
    need(phi, "multiplier");
    need(f, "f");
    need(out, "out");
    const auto& w = oracle->window;
    const auto big = w.embed(as_span(f, w.inner.n_points));
    copy_out(w.restrict(dsft::functional_calculus(oracle->impl, phi->impl, big)), out);
  });
}

int dsft_oracle_ac_projection(const dsft_oracle* oracle, const dsft_complex* f,
                              dsft_complex* out) {
  return guarded([&] {
    need(oracle, "oracle");
    need(f, "f");
    need(out, "out");
    const auto& w = oracle->window;
    copy_out(w.restrict(oracle->impl.ac_projection(w.embed(as_span(f, w.inner.n_points)))), out);
  });
}

int dsft_oracle_write_spectrum_csv(const dsft_oracle* oracle, const char* path) {
  return guarded([&] {
    need(oracle, "oracle");
    need(path, "path");
    dsft::io::write_spectrum_csv(oracle->impl, path);
  });
}

}  // extern "C"

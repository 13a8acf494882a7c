/* C interface to the dsft library.
 *
 * Every object is an opaque handle owned by the caller and released with the
 * matching *_destroy function. Functions return DSFT_OK or an error code; the
 * message for the most recent failure on the calling thread is available from
 * dsft_last_error(). Complex samples are passed as interleaved (re, im)
 * doubles.
 */
#ifndef DSFT_H
#define DSFT_H

#include <stddef.h>

#if defined(_WIN32)
#  define DSFT_API __declspec(dllexport)
#else
#  define DSFT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

enum dsft_status {
  DSFT_OK = 0,
  DSFT_ERR_INVALID_ARGUMENT = 1,
  DSFT_ERR_PRECONDITION = 2,
  DSFT_ERR_EXCEPTIONAL_FREQUENCY = 3,
  DSFT_ERR_GRID_MISMATCH = 4,
  DSFT_ERR_NOT_CONVERGED = 5,
  DSFT_ERR_NUMERICAL = 6,
  DSFT_ERR_IO = 7,
  DSFT_ERR_INTERNAL = 99
};

typedef struct dsft_complex {
  double re;
  double im;
} dsft_complex;

typedef struct dsft_grid {
  double x_min;
  double x_max;
  size_t n_points;
} dsft_grid;

typedef struct dsft_potential dsft_potential;
typedef struct dsft_basis dsft_basis;
typedef struct dsft_bound_states dsft_bound_states;
typedef struct dsft_multiplier dsft_multiplier;
typedef struct dsft_kernel dsft_kernel;
typedef struct dsft_oracle dsft_oracle;

DSFT_API const char* dsft_version(void);
DSFT_API const char* dsft_last_error(void);
/* 0 selects the hardware concurrency. */
DSFT_API void dsft_set_threads(unsigned n);

/* ---- potential ---------------------------------------------------------- */

/* kind: zero | sech2 | square_well | gaussian_well | sampled */
DSFT_API int dsft_potential_create(const char* kind, const double* params, size_t n_params,
                                   dsft_potential** out);
DSFT_API int dsft_potential_create_sampled(const double* xs, const double* vs, size_t n,
                                           dsft_potential** out);
DSFT_API void dsft_potential_destroy(dsft_potential* pot);
DSFT_API int dsft_potential_info(const dsft_potential* pot, double* norm_l1, double* norm_l2,
                                 double* support_radius);
/* Sampled potential from a two-column "x,V" text file. */
DSFT_API int dsft_potential_load(const char* path, dsft_potential** out);
/* out receives grid.n_points values. */
DSFT_API int dsft_potential_sample(const dsft_potential* pot, dsft_grid grid, double* out);

/* Linear interpolation of a two-column "x,value" file onto the grid; zero
 * outside the sampled range. out receives grid.n_points values. */
DSFT_API int dsft_sample_file(const char* path, dsft_grid grid, double* out);

/* ---- scattering and eigenfunctions -------------------------------------- */

DSFT_API int dsft_scattering_at(const dsft_potential* pot, dsft_grid grid, double xi,
                                dsft_complex* t_coeff, dsft_complex* r_coeff,
                                dsft_complex* wronskian);
/* out receives grid.n_points samples of e(x, xi). */
DSFT_API int dsft_generalized_eigenfunction(const dsft_potential* pot, dsft_grid grid, double xi,
                                            dsft_complex* out);

DSFT_API int dsft_basis_build(const dsft_potential* pot, dsft_grid grid, double xi_max,
                              size_t n_xi, dsft_basis** out);
DSFT_API void dsft_basis_destroy(dsft_basis* basis);
DSFT_API int dsft_basis_info(const dsft_basis* basis, size_t* n_xi, size_t* n_masked,
                             double* sup_bound, double* max_residual);
/* xi receives n_xi nodes; masked (optional) receives n_xi flags. */
DSFT_API int dsft_basis_xi(const dsft_basis* basis, double* xi, unsigned char* masked);
DSFT_API int dsft_basis_scattering(const dsft_basis* basis, size_t j, dsft_complex* t_coeff,
                                   dsft_complex* r_coeff, dsft_complex* wronskian);
DSFT_API int dsft_basis_write_csv(const dsft_basis* basis, const char* path);
DSFT_API int dsft_scattering_write_csv(const dsft_basis* basis, const char* path);

/* ---- bound states ------------------------------------------------------- */

DSFT_API int dsft_bound_states_find(const dsft_potential* pot, dsft_grid grid,
                                    dsft_bound_states** out);
DSFT_API void dsft_bound_states_destroy(dsft_bound_states* states);
DSFT_API size_t dsft_bound_states_count(const dsft_bound_states* states);
DSFT_API int dsft_bound_state_get(const dsft_bound_states* states, size_t k, double* lambda,
                                  double* eigenfunction);
DSFT_API int dsft_bound_states_write_csv(const dsft_bound_states* states, const char* path);

/* ---- distorted transform ------------------------------------------------ */
/* Functions taking dsft_bound_states accept NULL for an empty point spectrum. */

DSFT_API int dsft_forward(const dsft_basis* basis, const dsft_complex* f, dsft_complex* out);
DSFT_API int dsft_adjoint(const dsft_basis* basis, const dsft_complex* g, dsft_complex* out);
DSFT_API int dsft_transform_write_csv(const dsft_basis* basis, const dsft_complex* f,
                                      const char* path);
DSFT_API int dsft_plancherel_defect(const dsft_basis* basis, const dsft_bound_states* states,
                                    const dsft_complex* f, double* defect);
DSFT_API int dsft_roundtrip_defect(const dsft_basis* basis, const dsft_bound_states* states,
                                   const dsft_complex* f, double* ffstar, double* fstarf);
DSFT_API int dsft_intertwining_defect(const dsft_basis* basis, const dsft_complex* f,
                                      double* defect);

/* ---- spectral kernel ---------------------------------------------------- */

/* kind: tent | smooth_bump */
DSFT_API int dsft_multiplier_create(const char* kind, double center, double radius,
                                    dsft_multiplier** out);
DSFT_API int dsft_multiplier_create_sampled(const double* lambdas, const double* values, size_t n,
                                            dsft_multiplier** out);
DSFT_API void dsft_multiplier_destroy(dsft_multiplier* phi);
DSFT_API int dsft_multiplier_eval(const dsft_multiplier* phi, double lambda, double* out);

/* K_ac + K_p; the a.c. part is skipped when phi vanishes on [0, inf). */
DSFT_API int dsft_kernel_assemble(const dsft_basis* basis, const dsft_bound_states* states,
                                  const dsft_multiplier* phi, dsft_kernel** out);
DSFT_API int dsft_kernel_ac(const dsft_basis* basis, const dsft_multiplier* phi,
                            dsft_kernel** out);
DSFT_API int dsft_kernel_point(const dsft_bound_states* states, const dsft_multiplier* phi,
                               dsft_grid grid, dsft_kernel** out);
DSFT_API void dsft_kernel_destroy(dsft_kernel* kernel);
DSFT_API size_t dsft_kernel_size(const dsft_kernel* kernel);
/* Entry K(x_i, y_j). */
DSFT_API int dsft_kernel_entry(const dsft_kernel* kernel, size_t i, size_t j, dsft_complex* out);
DSFT_API int dsft_kernel_apply(const dsft_kernel* kernel, const dsft_complex* f,
                               dsft_complex* out);
DSFT_API int dsft_apply_via_transform(const dsft_basis* basis, const dsft_bound_states* states,
                                      const dsft_multiplier* phi, const dsft_complex* f,
                                      dsft_complex* out);
DSFT_API int dsft_kernel_write_csv(const dsft_kernel* kernel, const char* path);
DSFT_API int dsft_kernel_write_binary(const dsft_kernel* kernel, const char* path);

/* ---- dense oracle ------------------------------------------------------- */

/* pad > 0 embeds the grid in a box with pad extra nodes per side (same step)
 * so the Dirichlet walls sit away from the window; vectors passed to the
 * oracle functions still live on the original grid. */
DSFT_API int dsft_oracle_create(const dsft_potential* pot, dsft_grid grid, size_t pad,
                                dsft_oracle** out);
DSFT_API void dsft_oracle_destroy(dsft_oracle* oracle);
/* Number of eigenvalues below -1e-8 (of the padded box). */
DSFT_API size_t dsft_oracle_negative_count(const dsft_oracle* oracle);
DSFT_API int dsft_oracle_functional_calculus(const dsft_oracle* oracle, const dsft_multiplier* phi,
                                             const dsft_complex* f, dsft_complex* out);
DSFT_API int dsft_oracle_ac_projection(const dsft_oracle* oracle, const dsft_complex* f,
                                       dsft_complex* out);
DSFT_API int dsft_oracle_write_spectrum_csv(const dsft_oracle* oracle, const char* path);

#ifdef __cplusplus
}
#endif

#endif /* DSFT_H */

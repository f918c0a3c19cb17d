/* SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the luc library. Objects are opaque handles created by
 * luc_*_create/_load/_fit/_train and released with the matching _destroy.
 * Every fallible call returns a luc_status; on failure luc_last_error()
 * holds a message for the calling thread.
 *
 * Array outputs follow one convention: the caller passes a buffer and its
 * capacity; the call writes min(capacity, size) values and reports the full
 * size through `count` when it is non-null. Passing a null buffer with
 * capacity 0 queries the size.
 */

#ifndef LUC_LUC_H
#define LUC_LUC_H

#include <stddef.h>
#include <stdint.h>

#if defined(LUC_BUILDING_LIBRARY)
#define LUC_API __attribute__((visibility("default")))
#else
#define LUC_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum luc_status {
    LUC_OK = 0,
    LUC_ERR_INVALID_ARGUMENT = 1,
    LUC_ERR_NUMERICAL = 2,
    LUC_ERR_IO = 3,
    LUC_ERR_INTERNAL = 4
} luc_status;

typedef struct luc_mesh luc_mesh;
typedef struct luc_dataset luc_dataset;
typedef struct luc_pod luc_pod;
typedef struct luc_mlp luc_mlp;
typedef struct luc_autoencoder luc_autoencoder;
typedef struct luc_basis luc_basis;
typedef struct luc_observation luc_observation;
typedef struct luc_result luc_result;

/* ------------------------------------------------------------------------ */
/* Library */

LUC_API const char* luc_version(void);
/* Message of the last failed call on this thread ("" when none). */
LUC_API const char* luc_last_error(void);
LUC_API const char* luc_status_name(luc_status status);
/* Default worker count for training and basis construction (0 resets to 1). */
LUC_API void luc_set_threads(size_t threads);
LUC_API size_t luc_get_threads(void);

/* ------------------------------------------------------------------------ */
/* Mesh: uniform triangulation of [-0.5, 0.5]^2 with n cells per side */

LUC_API luc_status luc_mesh_create(size_t n, luc_mesh** out);
LUC_API void luc_mesh_destroy(luc_mesh* mesh);
LUC_API size_t luc_mesh_cells_per_side(const luc_mesh* mesh);
LUC_API size_t luc_mesh_num_nodes(const luc_mesh* mesh);
LUC_API size_t luc_mesh_num_boundary_nodes(const luc_mesh* mesh);
LUC_API size_t luc_mesh_num_interior_nodes(const luc_mesh* mesh);
/* Interleaved x, y coordinates (2 values per node). */
LUC_API luc_status luc_mesh_node_coords(const luc_mesh* mesh, double* xy, size_t capacity, size_t* count);
/* Nonlinear energy of a nodal field. */
LUC_API luc_status luc_nonlinear_energy(const luc_mesh* mesh, const double* dofs, size_t len, double* energy);
/* Damped-Newton solution of the nonlinear problem for boundary nodal values. */
LUC_API luc_status luc_newton_solve(const luc_mesh* mesh, const double* boundary, size_t len, double* dofs,
                                    size_t capacity);

/* ------------------------------------------------------------------------ */
/* Datasets */

/* Perturbed truncated Fourier series on the boundary; num_coeffs odd. */
LUC_API luc_status luc_dataset_fourier(const luc_mesh* mesh, size_t num_coeffs, size_t count, uint64_t seed,
                                       double noise_std, luc_dataset** out);
/* Named coefficient families: polynomial-linear, polynomial-quadratic,
 * gaussian-2-5, gaussian-3-6, gaussian-3-7, gaussian-4-8. */
LUC_API luc_status luc_dataset_parametric(const char* case_name, size_t count, uint64_t seed, luc_dataset** out);
LUC_API luc_status luc_dataset_load(const char* path, luc_dataset** out);
/* Writes the manifest at `path` and the samples next to it as CSV. */
LUC_API luc_status luc_dataset_save(const luc_dataset* data, const char* path, const char* manifest_json);
LUC_API void luc_dataset_destroy(luc_dataset* data);
LUC_API size_t luc_dataset_rows(const luc_dataset* data);
LUC_API size_t luc_dataset_cols(const luc_dataset* data);
/* 0 for coefficient datasets. */
LUC_API size_t luc_dataset_mesh_n(const luc_dataset* data);
/* Row-major samples. */
LUC_API luc_status luc_dataset_samples(const luc_dataset* data, double* values, size_t capacity, size_t* count);

/* ------------------------------------------------------------------------ */
/* POD */

/* n_keep = 0 keeps every eigenvalue >= rel_tol * largest. */
LUC_API luc_status luc_pod_fit(const luc_dataset* data, size_t n_keep, double rel_tol, int center, luc_pod** out);
LUC_API luc_status luc_pod_load(const char* path, luc_pod** out);
LUC_API luc_status luc_pod_save(const luc_pod* pod, const char* path, const char* manifest_json);
LUC_API void luc_pod_destroy(luc_pod* pod);
LUC_API size_t luc_pod_num_modes(const luc_pod* pod);
LUC_API size_t luc_pod_mesh_n(const luc_pod* pod);
/* All eigenvalues of X^T X, descending. */
LUC_API luc_status luc_pod_spectrum(const luc_pod* pod, double* values, size_t capacity, size_t* count);
/* Singular values of X, descending. */
LUC_API luc_status luc_pod_singular_values(const luc_pod* pod, double* values, size_t capacity, size_t* count);
LUC_API luc_status luc_pod_encode(const luc_pod* pod, const double* boundary, size_t len, double* coeffs,
                                  size_t capacity);
LUC_API luc_status luc_pod_decode(const luc_pod* pod, const double* coeffs, size_t len, double* boundary,
                                  size_t capacity);

/* ------------------------------------------------------------------------ */
/* Training */

typedef struct luc_train_config {
    size_t batch_size;
    size_t iterations;
    double lr_initial;
    double lr_decay_factor;
    size_t lr_decay_every;
    uint64_t seed;
    size_t element_subsample; /* 0 = all elements */
    double input_coeff_std;
    size_t log_every;         /* progress callback period; 0 = never */
} luc_train_config;

typedef void (*luc_progress_fn)(size_t iteration, double loss, void* user);

LUC_API luc_train_config luc_train_config_default(void);

/* Operator network: POD coefficients -> interior nodal values. */
LUC_API luc_status luc_operator_train(const luc_mesh* mesh, const luc_pod* pod, size_t width,
                                      const luc_train_config* config, luc_progress_fn progress, void* user,
                                      luc_mlp** out);

typedef struct luc_validation_report {
    double h1_abs;
    double h1_rel;
    double l2_abs;
    double l2_rel;
    size_t problems;
    size_t failures;
} luc_validation_report;

LUC_API luc_status luc_operator_validate(const luc_mlp* net, const luc_mesh* mesh, const luc_pod* pod,
                                         size_t n_problems, uint64_t seed, double coeff_std,
                                         luc_validation_report* report);
LUC_API luc_status luc_operator_zero_energy(const luc_mlp* net, const luc_mesh* mesh, const luc_pod* pod,
                                            double* energy);
/* Full nodal field for a coefficient vector. */
LUC_API luc_status luc_operator_field(const luc_mlp* net, const luc_mesh* mesh, const luc_pod* pod,
                                      const double* coeffs, size_t len, double* dofs, size_t capacity);

LUC_API luc_status luc_mlp_load(const char* path, luc_mlp** out, size_t* mesh_n);
LUC_API luc_status luc_mlp_save(const luc_mlp* net, const char* path, size_t mesh_n, const char* manifest_json);
LUC_API void luc_mlp_destroy(luc_mlp* net);
LUC_API size_t luc_mlp_num_params(const luc_mlp* net);
LUC_API size_t luc_mlp_input_dim(const luc_mlp* net);
LUC_API size_t luc_mlp_output_dim(const luc_mlp* net);

LUC_API luc_status luc_autoencoder_train(const luc_dataset* data, size_t latent_dim, size_t width,
                                         const luc_train_config* config, luc_progress_fn progress, void* user,
                                         luc_autoencoder** out, double* train_mse);
LUC_API luc_status luc_autoencoder_load(const char* path, luc_autoencoder** out);
LUC_API luc_status luc_autoencoder_save(const luc_autoencoder* ae, const char* path, const char* manifest_json);
LUC_API void luc_autoencoder_destroy(luc_autoencoder* ae);
LUC_API size_t luc_autoencoder_latent_dim(const luc_autoencoder* ae);
LUC_API size_t luc_autoencoder_data_dim(const luc_autoencoder* ae);
LUC_API luc_status luc_autoencoder_encode(const luc_autoencoder* ae, const double* a, size_t len, double* z,
                                          size_t capacity);
LUC_API luc_status luc_autoencoder_decode(const luc_autoencoder* ae, const double* z, size_t len, double* a,
                                          size_t capacity);
LUC_API luc_status luc_autoencoder_mse(const luc_autoencoder* ae, const luc_dataset* data, double* mse);

/* ------------------------------------------------------------------------ */
/* Inverse problem */

/* Nitsche extensions of the POD modes and their Gram matrices on the disc. */
LUC_API luc_status luc_basis_build(const luc_mesh* mesh, const luc_pod* pod, double cx, double cy, double radius,
                                   double beta, luc_basis** out);
LUC_API void luc_basis_destroy(luc_basis* basis);
LUC_API size_t luc_basis_size(const luc_basis* basis);
/* Smallest eigenvalue of the stabilized (non-zero flag) or plain Gram matrix. */
LUC_API luc_status luc_basis_rayleigh_min(const luc_basis* basis, int stabilized, double* lambda);
/* Nodal field sum_n c_n phi_n. */
LUC_API luc_status luc_basis_field(const luc_basis* basis, const double* coeffs, size_t len, double* dofs,
                                   size_t capacity);

/* Samples `field` on the nodes of the triangles in the disc and adds
 * N(0, noise_std^2) noise drawn from `seed`. */
LUC_API luc_status luc_observation_create(const luc_mesh* mesh, double cx, double cy, double radius,
                                          const double* field, size_t len, double noise_std, uint64_t seed,
                                          const char* provenance, luc_observation** out);
LUC_API luc_status luc_observation_load(const char* path, luc_observation** out);
LUC_API luc_status luc_observation_save(const luc_observation* obs, const char* path, const char* manifest_json);
LUC_API void luc_observation_destroy(luc_observation* obs);
LUC_API size_t luc_observation_size(const luc_observation* obs);
LUC_API size_t luc_observation_mesh_n(const luc_observation* obs);
LUC_API luc_status luc_observation_values(const luc_observation* obs, double* values, size_t capacity,
                                          size_t* count);

typedef enum luc_norm { LUC_NORM_L2 = 0, LUC_NORM_H1 = 1 } luc_norm;

/* Stabilized projection (non-zero flag) or plain L2 normal equations. */
LUC_API luc_status luc_solve_linear(const luc_basis* basis, const luc_mesh* mesh, const luc_observation* obs,
                                    int stabilized, luc_result** out);

typedef struct luc_latent_options {
    double lr;
    size_t iterations;
    luc_norm norm;
} luc_latent_options;

LUC_API luc_latent_options luc_latent_options_default(void);

/* Adam over z of 1/2 ||u0 - field(z)||^2 on the disc. Without a decoder z is
 * the coefficient vector itself. Returns the best iterate. */
LUC_API luc_status luc_solve_latent(const luc_mlp* net, const luc_autoencoder* decoder, const luc_pod* pod,
                                    const luc_mesh* mesh, const luc_observation* obs, const double* z0, size_t len,
                                    const luc_latent_options* options, luc_result** out);
/* Field produced by a latent point (or coefficient vector without decoder). */
LUC_API luc_status luc_latent_field(const luc_mlp* net, const luc_autoencoder* decoder, const luc_pod* pod,
                                    const luc_mesh* mesh, const double* z, size_t len, double* dofs,
                                    size_t capacity);

LUC_API void luc_result_destroy(luc_result* result);
LUC_API luc_status luc_result_save(const luc_result* result, const char* path, const char* manifest_json);
LUC_API luc_status luc_result_coefficients(const luc_result* result, double* values, size_t capacity,
                                           size_t* count);
LUC_API luc_status luc_result_field(const luc_result* result, double* values, size_t capacity, size_t* count);
LUC_API luc_status luc_result_loss_trace(const luc_result* result, double* values, size_t capacity, size_t* count);
LUC_API double luc_result_final_objective(const luc_result* result);
LUC_API size_t luc_result_iterations(const luc_result* result);

/* L2 and H1-seminorm of a nodal field over the disc (whole square when radius <= 0). */
LUC_API luc_status luc_field_norms(const luc_mesh* mesh, const double* dofs, size_t len, double cx, double cy,
                                   double radius, double* l2, double* h1_semi);

/* ------------------------------------------------------------------------ */
/* Studies */

typedef struct luc_convergence_row {
    size_t mesh_n;
    double h;
    double h1_error;
    double l2_error;
    double h1_semi_error;
} luc_convergence_row;

typedef struct luc_slopes {
    double h1;
    double l2;
    double h1_semi;
} luc_slopes;

/* Stabilized projection of a fixed Fourier-mode reference observed on the disc;
 * `rows` holds n_meshes entries. Null coefficients select the defaults. */
LUC_API luc_status luc_convergence_study(size_t modes, const size_t* meshes, size_t n_meshes, size_t ref_mesh,
                                         double cx, double cy, double radius, double beta,
                                         const double* coefficients, size_t n_coefficients,
                                         luc_convergence_row* rows, luc_slopes* slopes);

typedef struct luc_rayleigh_row {
    size_t n_modes;
    double lambda_omega;
    double lambda_mh;
} luc_rayleigh_row;

/* Nested leading blocks N = 1 .. basis size. */
LUC_API luc_status luc_rayleigh_study(const luc_basis* basis, luc_rayleigh_row* rows, size_t capacity,
                                      size_t* count);

LUC_API luc_status luc_disc_stability_constant(size_t n, double r_omega, double* value);

#ifdef __cplusplus
}
#endif

#endif /* LUC_LUC_H */

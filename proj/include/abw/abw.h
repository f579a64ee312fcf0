/* C interface to the adapted Bures-Wasserstein toolkit.
 *
 * The library computes adapted Wasserstein distances and barycenters of
 * discrete-time Gaussian processes parametrized by block-lower-triangular
 * factors. Handles are opaque; every function returns a status code and
 * leaves a human-readable message in thread-local storage on failure
 * (see abw_last_error).
 *
 * Matrix buffers are row-major doubles. A process of per-step dimension d
 * and T time steps has factor/covariance buffers of dT*dT entries and mean
 * buffers of dT entries.
 */

#ifndef ABW_ABW_H
#define ABW_ABW_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ABW_API __declspec(dllexport)
#elif defined(__GNUC__) || defined(__clang__)
#define ABW_API __attribute__((visibility("default")))
#else
#define ABW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum abw_status {
  ABW_OK = 0,
  ABW_ERR_INVALID_ARGUMENT = 1,
  ABW_ERR_DIMENSION_MISMATCH = 2,
  ABW_ERR_NON_SYMMETRIC = 3,
  ABW_ERR_INDEFINITE_INPUT = 4,
  ABW_ERR_RANK_EXCEEDED = 5,
  ABW_ERR_INDEX_OUT_OF_RANGE = 6,
  ABW_ERR_NOT_PSD = 7,
  ABW_ERR_DIMENSION_NOT_MULTIPLE = 8,
  ABW_ERR_NON_POSITIVE_SIGMA = 9,
  ABW_ERR_DIMENSION_NOT_SCALAR = 10,
  ABW_ERR_TOO_MANY_PROCESSES = 11,
  ABW_ERR_SINGULAR_INPUT = 12,
  ABW_ERR_PARSE = 13,
  ABW_ERR_NULL_POINTER = 14,
  ABW_ERR_UNKNOWN = 15
} abw_status;

typedef struct abw_process abw_process;
typedef struct abw_barycenter_result abw_barycenter_result;

typedef enum abw_method {
  ABW_METHOD_FIXED_POINT = 0,
  ABW_METHOD_COLUMNS = 1,
  ABW_METHOD_ORACLE_1D = 2
} abw_method;

typedef struct abw_solver_options {
  /* Frobenius displacement threshold; <= 0 selects the default
   * 1e-10 * (1 + norm of the initial iterate). */
  double tolerance;
  /* <= 0 selects the default of 10000. */
  int32_t max_iterations;
  abw_method method;
  /* >= 0 starts the iteration from that input; < 0 from the weighted mean. */
  int32_t init_index;
} abw_solver_options;

ABW_API const char* abw_version(void);

/* Message for the most recent failure on the calling thread; never NULL. */
ABW_API const char* abw_last_error(void);

ABW_API void abw_string_free(char* text);

/* ---- processes ------------------------------------------------------- */

/* mean may be NULL for a centered process; factor is dT*dT row-major with
 * exact zeros above the block diagonal. */
ABW_API abw_status abw_process_create(int32_t d, int32_t t_steps,
                                      const double* mean,
                                      const double* factor,
                                      abw_process** out);

ABW_API abw_status abw_process_from_json(const char* json_text,
                                         abw_process** out);

/* Zero-mean AR(1) process; alphas[0] is unused, sigmas must be positive. */
ABW_API abw_status abw_process_ar1(int32_t t_steps, const double* alphas,
                                   const double* sigmas, abw_process** out);

/* Zero-mean AR(1) process from {"alphas": [...], "sigmas": [...]}. */
ABW_API abw_status abw_process_ar1_from_json(const char* json_text,
                                             abw_process** out);

/* Factors a PSD covariance (dT*dT row-major). mean may be NULL. */
ABW_API abw_status abw_process_from_covariance(int32_t d, int32_t t_steps,
                                               const double* covariance,
                                               const double* mean,
                                               abw_process** out);

/* Serialized process JSON; release with abw_string_free. */
ABW_API abw_status abw_process_to_json(const abw_process* process,
                                       char** out_json);

ABW_API void abw_process_free(abw_process* process);

ABW_API int32_t abw_process_dim(const abw_process* process);
ABW_API int32_t abw_process_steps(const abw_process* process);

ABW_API abw_status abw_process_mean(const abw_process* process, double* out);
ABW_API abw_status abw_process_factor(const abw_process* process,
                                      double* out);
ABW_API abw_status abw_process_covariance(const abw_process* process,
                                          double* out);

/* Class representative with PSD symmetric diagonal blocks. */
ABW_API abw_status abw_process_canonicalize(const abw_process* process,
                                            abw_process** out);

/* tol < 0 selects the defaults documented in the library. */
ABW_API abw_status abw_process_is_regular(const abw_process* process,
                                          double tol, int32_t* out);
ABW_API abw_status abw_process_is_ar1(const abw_process* process, double tol,
                                      int32_t* out);
ABW_API abw_status abw_class_equal(const abw_process* lhs,
                                   const abw_process* rhs, double tol,
                                   int32_t* out);

/* ---- distances ------------------------------------------------------- */

/* Adapted Bures-Wasserstein distance between the factors. */
ABW_API abw_status abw_distance(const abw_process* lhs,
                                const abw_process* rhs, double* out);

/* Same value through the column decomposition (independent route). */
ABW_API abw_status abw_distance_via_columns(const abw_process* lhs,
                                            const abw_process* rhs,
                                            double* out);

/* Adapted 2-Wasserstein distance (includes the mean gap). */
ABW_API abw_status abw_aw2_distance(const abw_process* lhs,
                                    const abw_process* rhs, double* out);

/* ---- barycenters ------------------------------------------------------ */

/* weights may be NULL for uniform; they must be positive and sum to 1
 * within 1e-12. options may be NULL for defaults. */
ABW_API abw_status abw_barycenter(const abw_process* const* processes,
                                  int32_t count, const double* weights,
                                  const abw_solver_options* options,
                                  abw_barycenter_result** out);

ABW_API void abw_barycenter_result_free(abw_barycenter_result* result);

ABW_API abw_status abw_barycenter_result_process(
    const abw_barycenter_result* result, abw_process** out);
ABW_API int32_t abw_barycenter_result_converged(
    const abw_barycenter_result* result);
ABW_API int32_t abw_barycenter_result_iterations(
    const abw_barycenter_result* result);
ABW_API double abw_barycenter_result_residual(
    const abw_barycenter_result* result);
ABW_API int32_t abw_barycenter_result_trace_size(
    const abw_barycenter_result* result);
ABW_API abw_status abw_barycenter_result_trace(
    const abw_barycenter_result* result, double* out, int32_t capacity);

/* Classical Bures-Wasserstein barycenter of n positive definite m x m
 * covariances (concatenated row-major). tolerance <= 0 and
 * max_iterations <= 0 select the defaults. */
ABW_API abw_status abw_classical_barycenter(const double* covariances,
                                            int32_t count, int32_t m,
                                            const double* weights,
                                            double tolerance,
                                            int32_t max_iterations,
                                            double* out_covariance,
                                            int32_t* out_iterations,
                                            int32_t* out_converged,
                                            double* out_residual);

/* ||candidate - sum_i w_i L_i O_i(candidate)||_F. */
ABW_API abw_status abw_fixed_point_residual(
    const abw_process* candidate, const abw_process* const* processes,
    int32_t count, const double* weights, double* out);

/* ---- simulation and statistics ---------------------------------------- */

/* Deterministic standard normal noise (n_paths x dims row-major):
 * mt19937_64 stream through the Box-Muller transform. */
ABW_API abw_status abw_draw_noise(uint64_t seed, int64_t n_paths,
                                  int32_t dims, double* out);

/* out holds n_paths * dT doubles, row per path. */
ABW_API abw_status abw_sample_paths(const abw_process* process,
                                    int64_t n_paths, uint64_t seed,
                                    double* out);

/* Applies mean + factor to caller-supplied noise (n_paths x dT row-major),
 * so several processes can share one noise realisation. */
ABW_API abw_status abw_transform_noise(const abw_process* process,
                                       const double* noise, int64_t n_paths,
                                       double* out);

/* out holds T doubles. */
ABW_API abw_status abw_marginal_variances(const abw_process* process,
                                          double* out);
ABW_API abw_status abw_lag_covariances(const abw_process* process,
                                       double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ABW_ABW_H */

/* SPDX-License-Identifier: Apache-2.0 */
/**
 * @file krylov_certify.h
 * @brief C interface to the krylov-certify solver library.
 *
 * A sparse symmetric positive-definite system is solved by conjugate
 * gradients while the library simultaneously estimates the extremal
 * eigenvalues of the matrix and computes quadrature-based bounds and
 * estimates of the iteration error (A-norm and l2, absolute and relative),
 * which can drive the stopping decision.
 *
 * All functions return kc_status; every failure leaves a human-readable
 * message retrievable with kc_last_error() (thread-local). Handles are
 * opaque and freed with their matching *_free function. Passing NULL where
 * a handle or output pointer is required yields KC_ERR_INVALID_ARGUMENT.
 */

#ifndef KRYLOV_CERTIFY_H
#define KRYLOV_CERTIFY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define KC_API __declspec(dllexport)
#else
#define KC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum kc_status {
    KC_OK = 0,
    KC_ERR_INVALID_ARGUMENT = 1,
    KC_ERR_IO = 2,
    KC_ERR_PARSE = 3,
    KC_ERR_DIMENSION = 4,
    KC_ERR_NOT_POSITIVE_DEFINITE = 5,
    KC_ERR_SINGULAR = 6,
    KC_ERR_MAX_ITERATIONS = 7,
    KC_ERR_TOO_LARGE = 8,
    KC_ERR_INTERNAL = 9
} kc_status;

typedef enum kc_criterion {
    KC_CRITERION_REL_ANORM = 0,
    KC_CRITERION_REL_L2 = 1,
    KC_CRITERION_REL_RESIDUE = 2
} kc_criterion;

typedef enum kc_eig_source {
    KC_EIG_ESTIMATED = 0,
    KC_EIG_ORACLE = 1,
    KC_EIG_FIXED = 2
} kc_eig_source;

typedef enum kc_variant {
    KC_VARIANT_OVER_N = 0,
    KC_VARIANT_OVER_K = 1
} kc_variant;

typedef enum kc_stop_reason {
    KC_STOP_CRITERION_MET = 0,
    KC_STOP_EXACT_TERMINATION = 1,
    KC_STOP_MAX_ITERATIONS = 2
} kc_stop_reason;

/* Failure-flag bits mirrored from the estimator (kc_trace_row.failed_flags). */
#define KC_FLAG_GAUSS 1u
#define KC_FLAG_RADAU_UPPER 2u
#define KC_FLAG_RADAU_LOWER 4u
#define KC_FLAG_LOBATTO 8u
#define KC_FLAG_L2 16u
#define KC_FLAG_REL_UNDEFINED 32u

typedef struct kc_matrix kc_matrix;
typedef struct kc_report kc_report;

typedef struct kc_solve_options {
    double tol;          /**< stopping tolerance (> 0) */
    int32_t max_iter;    /**< <= 0 selects the default 4n */
    int32_t criterion;   /**< kc_criterion */
    int32_t delay;       /**< estimate delay d >= 1 */
    int32_t window;      /**< look-ahead regression window m >= 2 */
    int32_t variant;     /**< kc_variant */
    int32_t eig_source;  /**< kc_eig_source */
    double fixed_a;      /**< KC_EIG_FIXED: prescribed lower node */
    double fixed_b;      /**< KC_EIG_FIXED: prescribed upper node */
    int32_t with_truth;  /**< nonzero: dense-oracle truth columns (n capped) */
    uint64_t seed;       /**< echoed into the trace; also feeds kc_make_rhs */
} kc_solve_options;

/** Per-iteration trace snapshot. Squared-norm fields carry _sq suffixes;
 *  true_* fields are norms. Fields guarded by has_estimate / has_truth are
 *  zero when the guard is unset. */
typedef struct kc_trace_row {
    int32_t k;
    int32_t has_estimate;
    int32_t has_truth;
    uint32_t failed_flags;
    double rel_residue;
    double f_k;
    double g_k;
    double a_tilde;
    double gauss_lower_sq;
    double radau_upper_sq;
    double radau_lower_sq;
    double lobatto_upper_sq;
    double rel_anorm_upper;
    double l2_estimate_sq;
    double rel_l2_estimate;
    double a_used;
    double b_used;
    double estimator_seconds;
    double rel_residue_anorm;
    double true_anorm;
    double true_rel_anorm;
    double true_l2;
    double true_rel_l2;
} kc_trace_row;

/** Library version, "major.minor.patch". */
KC_API const char* kc_version(void);

/** Thread-local message describing the most recent failure in this thread. */
KC_API const char* kc_last_error(void);

/** Stable name for a status code. */
KC_API const char* kc_status_name(kc_status status);

/** Fill opts with the library defaults (tol 1e-8, REL_ANORM, delay 4,
 *  window 10, OVER_N, estimated eigenvalue source, truth off, seed 0). */
KC_API void kc_solve_options_init(kc_solve_options* opts);

/** Parse a MatrixMarket file (coordinate, real, symmetric). */
KC_API kc_status kc_matrix_read_file(const char* path, kc_matrix** out);

/** Build a matrix from caller-owned CSR arrays (copied). The matrix must be
 *  structurally and numerically symmetric; row_offsets has n + 1 entries. */
KC_API kc_status kc_matrix_create_csr(int32_t n, const int32_t* row_offsets,
                                      const int32_t* col_indices,
                                      const double* values, kc_matrix** out);

KC_API void kc_matrix_free(kc_matrix* m);

KC_API int32_t kc_matrix_dim(const kc_matrix* m);

KC_API int64_t kc_matrix_nnz(const kc_matrix* m);

/** Dense-oracle extremal eigenvalues (n capped at 5000). */
KC_API kc_status kc_matrix_spectrum(const kc_matrix* m, double* lambda_min,
                                    double* lambda_max);

/** Build a right-hand side from a spec string: "ones", "file:PATH",
 *  "eigmin", or "eigmin:SCALE". out must hold kc_matrix_dim(m) doubles. */
KC_API kc_status kc_make_rhs(const kc_matrix* m, const char* spec,
                             uint64_t seed, double* out);

/** Run the instrumented solve. b holds kc_matrix_dim(m) doubles; rhs_label
 *  (optional, may be NULL) is echoed into the CSV summary. */
KC_API kc_status kc_solve(const kc_matrix* m, const double* b,
                          const char* rhs_label,
                          const kc_solve_options* opts, kc_report** out);

KC_API void kc_report_free(kc_report* r);

KC_API int32_t kc_report_iterations(const kc_report* r);

KC_API int32_t kc_report_stop_reason(const kc_report* r);

KC_API double kc_report_final_rel_residue(const kc_report* r);

/** Copy the solution vector; len must equal the system dimension. */
KC_API kc_status kc_report_solution(const kc_report* r, double* out,
                                    size_t len);

KC_API double kc_report_beta_metric(const kc_report* r);

KC_API double kc_report_delta_metric(const kc_report* r);

KC_API double kc_report_lambda_min(const kc_report* r);

KC_API double kc_report_lambda_max(const kc_report* r);

KC_API double kc_report_kappa(const kc_report* r);

KC_API double kc_report_matvec_seconds(const kc_report* r);

KC_API double kc_report_estimator_seconds(const kc_report* r);

KC_API int32_t kc_report_row_count(const kc_report* r);

/** Fetch one trace row (0-based index; row i describes iteration i + 1). */
KC_API kc_status kc_report_row(const kc_report* r, int32_t index,
                               kc_trace_row* out);

/** Serialize the trace as CSV; path NULL or "-" writes to stdout. */
KC_API kc_status kc_report_write_csv(const kc_report* r, const char* path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* KRYLOV_CERTIFY_H */

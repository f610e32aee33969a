/*
 * C interface to libqclock.
 *
 * Objects are opaque handles owned by the caller and released with the
 * matching *_destroy function (NULL is accepted). Every other call returns a
 * qclock_status; on failure qclock_last_error() describes the problem for
 * the calling thread until its next failing call.
 */
#ifndef QCLOCK_H
#define QCLOCK_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QCLOCK_BUILDING_LIBRARY)
#    define QCLOCK_API __declspec(dllexport)
#  else
#    define QCLOCK_API __declspec(dllimport)
#  endif
#else
#  define QCLOCK_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qclock_status {
  QCLOCK_OK = 0,
  QCLOCK_ERR_INVALID_PARAMETER = 1,
  QCLOCK_ERR_DIMENSION = 2,
  QCLOCK_ERR_SIZE_LIMIT = 3,
  QCLOCK_ERR_NULL_EVENT = 4,
  QCLOCK_ERR_NO_TIMING_INFO = 5,
  QCLOCK_ERR_NON_X_STATE = 6,
  QCLOCK_ERR_IO = 7,
  QCLOCK_ERR_BUFFER_TOO_SMALL = 8,
  QCLOCK_ERR_NULL_ARGUMENT = 9,
  QCLOCK_ERR_INTERNAL = 10
} qclock_status;

typedef enum qclock_family {
  QCLOCK_FAMILY_NONE = -1,
  QCLOCK_FAMILY_Z = 0,
  QCLOCK_FAMILY_W = 1,
  QCLOCK_FAMILY_BIPARTITE = 2
} qclock_family;

typedef enum qclock_figure {
  QCLOCK_FIG1 = 1,
  QCLOCK_FIG2 = 2,
  QCLOCK_FIG3 = 3,
  QCLOCK_FIG4 = 4
} qclock_figure;

typedef enum qclock_format { QCLOCK_FORMAT_CSV = 0, QCLOCK_FORMAT_JSON = 1 } qclock_format;

typedef struct qclock_state qclock_state;
typedef struct qclock_matrix qclock_matrix;
typedef struct qclock_sweep qclock_sweep;

QCLOCK_API const char* qclock_version(void);
QCLOCK_API const char* qclock_last_error(void);
QCLOCK_API const char* qclock_status_string(qclock_status status);

/* Parameter conversion. */
QCLOCK_API qclock_status qclock_effective_coupling(double eps, double omega, double duration,
                                                   double kappa, double* nu);
QCLOCK_API qclock_status qclock_acceleration_to_q(double omega, double accel, double* q);

/* States. */
QCLOCK_API qclock_status qclock_state_w(int n, qclock_state** out);
QCLOCK_API qclock_status qclock_state_z(int n, int k, qclock_state** out);
QCLOCK_API qclock_status qclock_state_bipartite(double theta, qclock_state** out);
/* Qubit-only ket from 2^num_qubits real and imaginary parts. */
QCLOCK_API qclock_status qclock_state_from_amplitudes(size_t num_qubits, const double* re,
                                                      const double* im, qclock_state** out);
QCLOCK_API void qclock_state_destroy(qclock_state* state);
QCLOCK_API qclock_status qclock_state_num_qubits(const qclock_state* state, size_t* num_qubits);
QCLOCK_API qclock_status qclock_state_amplitude(const qclock_state* state, size_t index,
                                                double* re, double* im);

/* Matrices. */
QCLOCK_API void qclock_matrix_destroy(qclock_matrix* m);
QCLOCK_API qclock_status qclock_matrix_dim(const qclock_matrix* m, size_t* rows, size_t* cols);
QCLOCK_API qclock_status qclock_matrix_get(const qclock_matrix* m, size_t row, size_t col,
                                           double* re, double* im);
QCLOCK_API qclock_status qclock_matrix_is_density(const qclock_matrix* m, double tol, int* valid);
QCLOCK_API qclock_status qclock_partial_trace(const qclock_matrix* rho, const size_t* dims,
                                              size_t num_dims, const size_t* keep,
                                              size_t num_keep, qclock_matrix** out);

/* Accelerated-detector channel. */
QCLOCK_API qclock_status qclock_apply_unruh(const qclock_state* psi, size_t target, double q,
                                            double nu, qclock_matrix** rho_atoms,
                                            double* norm_const);
QCLOCK_API qclock_status qclock_closed_form_rho_ab(int n, int k, double q, double nu,
                                                   qclock_matrix** out);
QCLOCK_API qclock_status qclock_closed_form_rho_full(int n, int k, double q, double nu,
                                                     qclock_matrix** out);

/* Protocol. */
typedef struct qclock_probability {
  double p_pos;
  double p_neg;
  double amplitude;
  int family; /* qclock_family */
} qclock_probability;

typedef struct qclock_optimal_k_result {
  int k_opt;
  double amplitude;
  int y_formula_k; /* 0 where the closed-form Y is undefined */
  int agreement;
} qclock_optimal_k_result;

QCLOCK_API qclock_status qclock_prob_pos_z(int n, int k, double q, double nu, double omega_delta,
                                           qclock_probability* out);
QCLOCK_API qclock_status qclock_prob_pos_w(int n, double q, double nu, double omega_delta,
                                           qclock_probability* out);
QCLOCK_API qclock_status qclock_prob_pos_bipartite(double theta, double q, double nu,
                                                   double omega_delta, qclock_probability* out);
QCLOCK_API qclock_status qclock_pipeline_probability(const qclock_state* initial, double q,
                                                     double nu, double omega_delta,
                                                     qclock_probability* out);
QCLOCK_API qclock_status qclock_optimal_k(int n, double q, double nu, qclock_optimal_k_result* out);
/* Writes up to `capacity` candidates; *count receives the total available.
 * Returns QCLOCK_ERR_BUFFER_TOO_SMALL when capacity < *count. */
QCLOCK_API qclock_status qclock_estimate_delta(double p_obs, double amplitude, double omega,
                                               double* candidates, size_t capacity, size_t* count);
QCLOCK_API qclock_status qclock_concurrence_x_state(const qclock_matrix* rho, double* out);
QCLOCK_API qclock_status qclock_bipartite_concurrence(double theta, double q, double nu,
                                                      double* out);

/* Figure sweeps. Fill the options with qclock_sweep_options_init, override
 * fields, then run. For QCLOCK_FIG1 `n` is the largest atom count; for
 * QCLOCK_FIG3/4 it is the multipartite size. k <= 0 selects optimal k. */
typedef struct qclock_sweep_options {
  int n;
  int k;
  double q;
  double nu;
  double theta;
  double omega_delta;
  int steps;
  double q_max;
  double nu_max;
} qclock_sweep_options;

typedef struct qclock_sweep_row {
  double x;
  int family;  /* qclock_family */
  double p_pos;
  double amplitude;
  int k_used;  /* 0 when not applicable */
  int has_concurrence;
  double concurrence;
} qclock_sweep_row;

QCLOCK_API qclock_status qclock_sweep_options_init(qclock_figure figure, qclock_sweep_options* opts);
QCLOCK_API qclock_status qclock_sweep_run(qclock_figure figure, const qclock_sweep_options* opts,
                                          qclock_sweep** out);
QCLOCK_API void qclock_sweep_destroy(qclock_sweep* sweep);
QCLOCK_API qclock_status qclock_sweep_row_count(const qclock_sweep* sweep, size_t* count);
QCLOCK_API qclock_status qclock_sweep_get_row(const qclock_sweep* sweep, size_t index,
                                              qclock_sweep_row* row);
/* Renders into buf (NUL-terminated). *needed receives the byte count
 * including the terminator; pass buf = NULL to query it. */
QCLOCK_API qclock_status qclock_sweep_render(const qclock_sweep* sweep, qclock_format format,
                                             char* buf, size_t capacity, size_t* needed);
QCLOCK_API qclock_status qclock_sweep_write(const qclock_sweep* sweep, qclock_format format,
                                            const char* path);

/* Oracle-equivalence self-test. */
typedef struct qclock_selftest_report {
  int passed;
  size_t cases;
  size_t failures;
  double max_rho_error;
  double max_prob_error;
  double max_family_error;
  double seconds;
} qclock_selftest_report;

QCLOCK_API qclock_status qclock_selftest(unsigned long long seed, qclock_selftest_report* report);
/* i-th failure description of the last self-test on this thread, or NULL. */
QCLOCK_API const char* qclock_selftest_failure(size_t index);

#ifdef __cplusplus
}
#endif

#endif /* QCLOCK_H */

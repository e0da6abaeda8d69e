/* Copyright 2026 The ptdilate authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/* ptdilate: Hermitian dilations of two-dimensional PT-symmetric Hamiltonians,
 * post-selected evolution, and Bell-operator correlation pictures.
 *
 * Conventions used throughout this API:
 *   - complex scalars and vectors travel as interleaved doubles (re, im);
 *   - matrices are row-major, entries interleaved the same way;
 *   - the dilated 4-dimensional space is ordered ancilla (x) system:
 *     |0>|0>, |0>|1>, |1>|0>, |1>|1>;
 *   - angles are radians, hbar = 1.
 *
 * Every function returns a ptd_status; on failure ptd_last_error() holds a
 * human-readable message for the calling thread.
 */

#ifndef PTDILATE_H
#define PTDILATE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PTD_API __declspec(dllexport)
#else
#define PTD_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as the CLI exit codes. */
typedef enum ptd_status {
  PTD_OK = 0,
  PTD_ERROR = 1,                 /* I/O, serialization, internal */
  PTD_CONTRACT_VIOLATION = 2,    /* caller broke a precondition */
  PTD_VERIFICATION_FAILURE = 3,  /* a residual exceeded its tolerance */
  PTD_EXCEPTIONAL_POINT = 4      /* coupling undefined at |alpha| = pi/2 */
} ptd_status;

typedef enum ptd_picture {
  PTD_PICTURE_SIMULATION = 0,
  PTD_PICTURE_CLASSICAL = 1,
  PTD_PICTURE_LOCAL_HERMITIAN = 2
} ptd_picture;

typedef enum ptd_pt_kind {
  PTD_PT_UNBROKEN = 0,
  PTD_PT_EXCEPTIONAL = 1,
  PTD_PT_BROKEN = 2
} ptd_pt_kind;

typedef enum ptd_verdict {
  PTD_CONSISTENT_SIMULATION = 0,
  PTD_INCONSISTENT_SIMULATION = 1,
  PTD_OUTSIDE_ALL = 2
} ptd_verdict;

typedef enum ptd_matrix_id {
  PTD_MAT_H = 0,      /* 2x2 model Hamiltonian */
  PTD_MAT_T = 1,      /* 2x2 coupling operator */
  PTD_MAT_LAMBDA = 2, /* 2x2 Hermitian block */
  PTD_MAT_OMEGA = 3,  /* 2x2 anti-Hermitian block */
  PTD_MAT_HHAT = 4    /* 4x4 Hermitian dilation */
} ptd_matrix_id;

typedef enum ptd_convention {
  PTD_CONVENTION_PLUS = 0, /* |0>|psi> + |1>|T psi>, post-select |0> */
  PTD_CONVENTION_MINUS = 1 /* |1>|psi> - |0>|T psi>, post-select |1> */
} ptd_convention;

/* Opaque handles. */
typedef struct ptd_dilation ptd_dilation;
typedef struct ptd_shot_table ptd_shot_table;

typedef struct ptd_residuals {
  double hermiticity;
  double generator_primary;   /* |Lambda + Omega T - H| */
  double generator_secondary; /* |Lambda T - Omega - T H| */
  double evolution;           /* worst dilated-evolution deviation */
  double spectrum;            /* distance from twofold {lambda-, lambda+} */
  int pass;                   /* 1 when every residual is below tolerance */
} ptd_residuals;

typedef struct ptd_bell_report {
  double alpha, e0, s;
  int picture; /* ptd_picture */
  double b0a0, b1a0, b0a1, b1a1;
  double bell_value;     /* b0a0 + b0a1 + b1a0 - b1a1 */
  double mean_term;      /* 2 e0 */
  double deviation_term; /* bell_value - mean_term */
  double bound;          /* picture bound on |deviation_term| */
} ptd_bell_report;

typedef struct ptd_estimate {
  double mean;
  double std_error; /* sample stdev / sqrt(shots) */
  uint64_t shots;
  uint64_t seed;
  int degenerate; /* 1 when shots < 2 left no variance estimate */
} ptd_estimate;

PTD_API const char* ptd_version(void);

/* Message for the most recent failure on this thread. Never NULL. */
PTD_API const char* ptd_last_error(void);

/* ---- dilation ---------------------------------------------------------- */

/* Build H, T, Lambda, Omega and Hhat for (e0, s, alpha). */
PTD_API ptd_status ptd_dilation_create(double e0, double s, double alpha, ptd_dilation** out);
PTD_API void ptd_dilation_free(ptd_dilation* d);

/* Copy one matrix into caller storage (interleaved re/im, row-major).
 * capacity is the number of doubles available; 2*rows*cols are needed
 * (8 for the 2x2 blocks, 32 for Hhat). */
PTD_API ptd_status ptd_dilation_matrix(const ptd_dilation* d, ptd_matrix_id which, double* out,
                                       size_t capacity, size_t* rows, size_t* cols);

/* Residual bundle: Hermiticity, both generator identities, the evolution
 * identity over `trials` random states at each of the n_t times, and the
 * twofold-spectrum distance. pass = all residuals < tolerance. */
PTD_API ptd_status ptd_dilation_verify(const ptd_dilation* d, int trials, const double* t_samples,
                                       size_t n_t, uint64_t seed, double tolerance,
                                       ptd_residuals* out);

/* Spectrum-based classification of the model at (e0, s, alpha). evidence is
 * the eigenvector condition number and may be NULL. */
PTD_API ptd_status ptd_classify_model(double e0, double s, double alpha, ptd_pt_kind* kind,
                                      double* evidence);

/* Closed-form eigenvalues e0 -+ s cos(alpha). */
PTD_API ptd_status ptd_model_eigenvalues(double e0, double s, double alpha, double* lambda_minus,
                                         double* lambda_plus);

/* ---- post-selected evolution ------------------------------------------- */

/* psi is 2 complex amplitudes (4 doubles). deviation compares the
 * post-selected branch against exp(-itH) psi after normalization and global
 * phase matching; success_probability is the weight of that branch. */
PTD_API ptd_status ptd_evolve(const ptd_dilation* d, const double psi[4], double t,
                              ptd_convention convention, double* deviation,
                              double* success_probability);

/* ---- Bell pictures ------------------------------------------------------ */

/* u and v are single complex numbers (2 doubles each), |u|^2 + |v|^2 = 1. */
PTD_API ptd_status ptd_bell_simulation(const ptd_dilation* d, const double u[2], const double v[2],
                                       ptd_bell_report* out);
PTD_API ptd_status ptd_bell_classical(double e0, double s, double alpha, double p_plus,
                                      ptd_bell_report* out);
/* s_plus / s_minus are 2 complex amplitudes each (4 doubles), orthonormal. */
PTD_API ptd_status ptd_bell_local_hermitian(double e0, double s, double alpha, const double u[2],
                                            const double v[2], const double s_plus[4],
                                            const double s_minus[4], ptd_bell_report* out);

/* |2 s cos^2(alpha)| and |2 s cos(alpha)|. Either output may be NULL. */
PTD_API ptd_status ptd_bounds(double e0, double s, double alpha, double* simulation,
                              double* classical_local);

/* Singlet CHSH baseline. correlations (may be NULL) receives <A0B0>, <A1B0>,
 * <A0B1>, <A1B1>; singlet_value = 2 sqrt(2); classical_max = 2 by exhaustive
 * enumeration of deterministic strategies. */
PTD_API ptd_status ptd_chsh(double correlations[4], double* singlet_value, double* classical_max);

PTD_API ptd_status ptd_classify_picture(double observed, double e0, double s, double alpha,
                                        ptd_verdict* out);

/* One report per (alpha, picture), grid-major. rows must hold
 * steps * n_pictures entries; the grid is linear in [alpha_min, alpha_max]
 * with `steps` points (steps >= 2). Extremal settings are used so each
 * picture traces its bound. */
PTD_API ptd_status ptd_scan(double e0, double s, double alpha_min, double alpha_max, size_t steps,
                            const ptd_picture* pictures, size_t n_pictures,
                            ptd_bell_report* rows);

/* ---- finite-shot sampling ----------------------------------------------- */

/* Born sampling of Hhat eigenvalues in the four product states; terms come
 * in report order (b0a0, b1a0, b0a1, b1a1), bell is the combined estimator.
 * Either output may be NULL. */
PTD_API ptd_status ptd_sample_simulation(const ptd_dilation* d, const double u[2],
                                         const double v[2], uint64_t shots, uint64_t seed,
                                         ptd_estimate terms[4], ptd_estimate* bell);

/* Classical picture sampler. table (optional) receives the per-setting shot
 * counts; free it with ptd_shot_table_free. */
PTD_API ptd_status ptd_sample_classical(double e0, double s, double alpha, double p_plus,
                                        uint64_t shots, uint64_t seed, ptd_estimate* bell,
                                        ptd_shot_table** table);

PTD_API ptd_status ptd_sample_local_hermitian(double e0, double s, double alpha, const double u[2],
                                              const double v[2], const double s_plus[4],
                                              const double s_minus[4], uint64_t shots,
                                              uint64_t seed, ptd_estimate* bell);

PTD_API size_t ptd_shot_table_rows(const ptd_shot_table* t);
PTD_API ptd_status ptd_shot_table_row(const ptd_shot_table* t, size_t index, int* setting_i,
                                      int* setting_j, double* outcome_a, double* outcome_b,
                                      uint64_t* count);
/* max |p(ab|ij) - p(a|i) p(b|j)| over the table. */
PTD_API ptd_status ptd_shot_table_factorization_defect(const ptd_shot_table* t, double* out);
PTD_API void ptd_shot_table_free(ptd_shot_table* t);

/* ---- serialization ------------------------------------------------------ */
/* Strings returned through char** are owned by the caller; release them with
 * ptd_string_free. CSV renders reals with 8 significant digits for plotting;
 * JSON renders with 17 and round-trips bit-exactly through the decoders. */

PTD_API ptd_status ptd_bell_csv_header(char** out);
PTD_API ptd_status ptd_bell_report_to_csv(const ptd_bell_report* r, char** out);
PTD_API ptd_status ptd_bell_report_to_json(const ptd_bell_report* r, char** out);
PTD_API ptd_status ptd_bell_report_from_json(const char* text, ptd_bell_report* out);

PTD_API ptd_status ptd_estimate_to_json(const ptd_estimate* e, char** out);
PTD_API ptd_status ptd_estimate_from_json(const char* text, ptd_estimate* out);

/* Full dilation report (params, matrices, residuals). residuals may be NULL
 * to emit only the statically computed ones. */
PTD_API ptd_status ptd_dilation_report_json(const ptd_dilation* d, const ptd_residuals* residuals,
                                            char** out);

PTD_API ptd_status ptd_evolution_csv_header(char** out);
PTD_API ptd_status ptd_evolution_csv_row(double t, double deviation, double success_probability,
                                         char** out);

PTD_API ptd_status ptd_shot_table_to_csv(const ptd_shot_table* t, char** out);

PTD_API void ptd_string_free(char* s);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PTDILATE_H */

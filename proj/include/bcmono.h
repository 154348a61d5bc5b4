/*
 * bcmono -- convex-analysis toolkit around monotone operators and
 * "bigger conjugate" functions.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * JSON strings for structured results.  Every function returns a
 * bcmono_status; outputs are written through pointers on BCMONO_OK only.
 * Strings returned through char** are heap-allocated; release them with
 * bcmono_string_free.  Handles are released with the matching *_free.
 *
 * Scalars use IEEE doubles; +-infinity encode the extended reals.
 */
#ifndef BCMONO_H
#define BCMONO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define BCMONO_API __declspec(dllexport)
#else
#define BCMONO_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bcmono_status {
    BCMONO_OK = 0,
    BCMONO_ERR_INVALID_ARGUMENT = 1,
    BCMONO_ERR_DIMENSION_MISMATCH = 2,
    BCMONO_ERR_INDETERMINATE_SUM = 3,
    BCMONO_ERR_NO_CLOSED_FORM = 4,
    BCMONO_ERR_ALL_INFINITE = 5,
    BCMONO_ERR_HYPOTHESIS_FAILED = 6,
    BCMONO_ERR_NO_SOLUTION = 7,
    BCMONO_ERR_RANK_DEFICIENT = 8,
    BCMONO_ERR_PARSE = 9,
    BCMONO_ERR_VALIDATION = 10,
    BCMONO_ERR_INTERNAL = 11
} bcmono_status;

typedef struct bcmono_set bcmono_set;
typedef struct bcmono_relation bcmono_relation;
typedef struct bcmono_bivar bcmono_bivar;
typedef struct bcmono_scenario bcmono_scenario;

BCMONO_API const char* bcmono_version(void);

/* Message for the most recent error on this thread ("" when none). */
BCMONO_API const char* bcmono_last_error(void);

BCMONO_API void bcmono_string_free(char* s);

/* ---- convex sets ------------------------------------------------------- */

BCMONO_API bcmono_status bcmono_set_ball(int dim, const double* center, double radius,
                                         bcmono_set** out);
BCMONO_API bcmono_status bcmono_set_segment(int dim, const double* a, const double* b,
                                            bcmono_set** out);
/* Bounds may be +-HUGE_VAL for unbounded coordinates. */
BCMONO_API bcmono_status bcmono_set_box(int dim, const double* lower, const double* upper,
                                        bcmono_set** out);
/* basis: dim x basis_cols, column-major. */
BCMONO_API bcmono_status bcmono_set_subspace(int dim, int basis_cols, const double* basis,
                                             bcmono_set** out);
BCMONO_API bcmono_status bcmono_set_singleton(int dim, const double* point, bcmono_set** out);
/* vertices: n_vertices rows of dim doubles (row-major). */
BCMONO_API bcmono_status bcmono_set_polytope(int dim, int n_vertices, const double* vertices,
                                             bcmono_set** out);
BCMONO_API void bcmono_set_free(bcmono_set* s);

BCMONO_API bcmono_status bcmono_set_dim(const bcmono_set* s, int* out);
BCMONO_API bcmono_status bcmono_set_contains(const bcmono_set* s, const double* x, double tol,
                                             int* out);
BCMONO_API bcmono_status bcmono_set_support(const bcmono_set* s, const double* xstar, double* out);
/* JSON: {"empty":bool,"generators":[[...]],"lineality":[[...]]} */
BCMONO_API bcmono_status bcmono_set_normal_cone(const bcmono_set* s, const double* x, double tol,
                                                char** json_out);
BCMONO_API bcmono_status bcmono_set_project(const bcmono_set* s, const double* x, double* out);

/* True iff the union over lambda>0 of lambda*(D1 - D2) is a subspace. */
BCMONO_API bcmono_status bcmono_minkowski_span_subspace(const bcmono_set* d1, const bcmono_set* d2,
                                                        int* out);

/* ---- linear relations --------------------------------------------------- */

/* matrix: n x n row-major.  domain_basis (optional, may be NULL): n x
 * domain_cols column-major basis of the domain subspace. */
BCMONO_API bcmono_status bcmono_relation_from_matrix(int n, const double* matrix,
                                                     const double* domain_basis, int domain_cols,
                                                     bcmono_relation** out);
/* columns: 2n x k column-major spanning set of the graph. */
BCMONO_API bcmono_status bcmono_relation_from_graph(int n, int k, const double* columns,
                                                    bcmono_relation** out);
BCMONO_API void bcmono_relation_free(bcmono_relation* r);

BCMONO_API bcmono_status bcmono_relation_dim(const bcmono_relation* r, int* ambient,
                                             int* graph_dim);
BCMONO_API bcmono_status bcmono_relation_adjoint(const bcmono_relation* r, bcmono_relation** out);
/* JSON: {"monotone":...,"skew":...,"symmetric":...,"maximal":...,"witness":...} */
BCMONO_API bcmono_status bcmono_relation_classify(const bcmono_relation* r, int samples,
                                                  char** json_out);
/* JSON: {"kind":"empty"|"point"|"affine","point":[...],"lineality":[[...]]} */
BCMONO_API bcmono_status bcmono_relation_apply(const bcmono_relation* r, const double* x,
                                               char** json_out);
BCMONO_API bcmono_status bcmono_relation_contains(const bcmono_relation* r, const double* x,
                                                  const double* xstar, double tol, int* out);

/* Solves z in x + Ax + N_C(x); writes the solution into x_out. */
BCMONO_API bcmono_status bcmono_resolvent_solve(const bcmono_relation* a, const bcmono_set* c,
                                                const double* z, double tol, double* x_out);

/* ---- truncated shift family -------------------------------------------- */

typedef enum bcmono_shift_view {
    BCMONO_SHIFT_T_ON_HYPERPLANE = 0, /* {(x, Tx) : sum x = 0} */
    BCMONO_SHIFT_S_FULL = 1,          /* S on all of R^n */
    BCMONO_SHIFT_ADJOINT_FULL = 2     /* {(y, Sy + alpha * ones)} */
} bcmono_shift_view;

BCMONO_API bcmono_status bcmono_shift_relation(int n, bcmono_shift_view view,
                                               bcmono_relation** out);
BCMONO_API bcmono_status bcmono_shift_pairing_identity(int n, const double* x, double* lhs,
                                                       double* rhs);
BCMONO_API bcmono_status bcmono_shift_adjoint_agreement(int n, double* subspace_distance,
                                                        int* selection_member, int* adjoint_dim);

/* ---- bivariate functions ------------------------------------------------ */

BCMONO_API bcmono_status bcmono_bivar_fitz_normal_cone(const bcmono_set* c, bcmono_bivar** out);
BCMONO_API bcmono_status bcmono_bivar_fitz_linear(const bcmono_relation* a, bcmono_bivar** out);
BCMONO_API bcmono_status bcmono_bivar_graph_indicator(const bcmono_relation* a,
                                                      bcmono_bivar** out);
/* sample: count rows of (x, xstar) pairs, 2n doubles each, row-major. */
BCMONO_API bcmono_status bcmono_bivar_fitz_from_sample(int n, int count, const double* sample,
                                                       bcmono_bivar** out);
BCMONO_API void bcmono_bivar_free(bcmono_bivar* f);

BCMONO_API bcmono_status bcmono_bivar_eval(const bcmono_bivar* f, const double* x,
                                           const double* xstar, double* out);
/* F*(xstar, x); backend: 0 auto, 1 closed form only, 2 grid. */
BCMONO_API bcmono_status bcmono_bivar_flipped_conjugate(const bcmono_bivar* f, const double* xstar,
                                                        const double* x, double box_radius,
                                                        int points_per_axis, int backend,
                                                        double* out);
BCMONO_API bcmono_status bcmono_bivar_partial_inf_conv(const bcmono_bivar* f1,
                                                       const bcmono_bivar* f2, const double* x,
                                                       const double* xstar, double box_radius,
                                                       int points_per_axis, double* out);
/* JSON batch report; sample as in bcmono_bivar_fitz_from_sample. */
BCMONO_API bcmono_status bcmono_bivar_bc_check(const bcmono_bivar* f, int count,
                                               const double* sample, double box_radius,
                                               int points_per_axis, char** json_out);

/* ---- grid Legendre transform -------------------------------------------- */

/* values: n samples on [-R, R]; +-HUGE_VAL encode the infinities.  fast != 0
 * selects the divide-and-conquer path (bit-identical to brute force). */
BCMONO_API bcmono_status bcmono_legendre_1d(int n, const double* values, double box_radius,
                                            int fast, double* out);

/* ---- scenarios and verification suites ---------------------------------- */

BCMONO_API bcmono_status bcmono_scenario_load(const char* json_text, bcmono_scenario** out);
BCMONO_API void bcmono_scenario_free(bcmono_scenario* s);

/* options_json keys (all optional): seed, tol, grid_n, box_radius, n,
 * samples.  scenario may be NULL for the built-in defaults.  The verdict
 * JSON carries hypotheses, labeled values, margin, slack and pass/fail;
 * "csv" holds artifact files when the suite emits any. */
BCMONO_API bcmono_status bcmono_suite_run(const bcmono_scenario* scenario, const char* suite_name,
                                          const char* options_json, char** verdict_json_out);

/* Every suite the scenario declares (filtered when filter_csv nonempty),
 * as a JSON array; exit_code follows the 0/1/2 contract. */
BCMONO_API bcmono_status bcmono_scenario_run(const bcmono_scenario* scenario,
                                             const char* filter_csv, const char* options_json,
                                             char** verdicts_json_out, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif /* BCMONO_H */

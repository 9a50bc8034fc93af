#ifndef LIOUVILLE_H
#define LIOUVILLE_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum LvSchemeKind {
  LV_SCHEME_KIND_STANDARD = 0,
  LV_SCHEME_KIND_INVARIANT_EXPLICIT = 1,
  LV_SCHEME_KIND_INVARIANT_IMPLICIT = 2,
  LV_SCHEME_KIND_REBELO_VALIQUETTE = 3,
  LV_SCHEME_KIND_ADLER_STARTSEV = 4,
} LvSchemeKind;

/**
 * Result codes.
 */
typedef enum LvStatus {
  LV_STATUS_OK = 0,
  LV_STATUS_NULL_POINTER = 1,
  LV_STATUS_INVALID_ARGUMENT = 2,
  LV_STATUS_SINGULAR = 3,
  LV_STATUS_DOMAIN = 4,
  LV_STATUS_BREAKDOWN = 5,
  LV_STATUS_ITERATION_LIMIT = 6,
  LV_STATUS_POSITIVITY = 7,
  LV_STATUS_UNFILLED = 8,
  LV_STATUS_OUT_OF_RANGE = 9,
  LV_STATUS_CONFIG = 10,
  LV_STATUS_IO = 11,
  LV_STATUS_PANIC = 12,
} LvStatus;

/**
 * Opaque orthogonal lattice.
 */
typedef struct LvLattice LvLattice;

/**
 * Opaque result of a boundary-value solve.
 */
typedef struct LvReport LvReport;

/**
 * Opaque closed-form solution.
 */
typedef struct LvSolution LvSolution;

/**
 * Scheme selector. `kind` holds an [`LvSchemeKind`] value. `a` is used by
 * the explicit invariant scheme; `a, b, c, d` by the implicit one and must
 * sum to 1. Ignored otherwise.
 */
typedef struct LvScheme {
  uint32_t kind;
  double a;
  double b;
  double c;
  double d;
} LvScheme;

typedef struct LvChi {
  double rms;
  double relative;
  double max_abs;
  size_t count;
  double coverage;
} LvChi;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *lv_version(void);

/**
 * Length in bytes (without NUL) of the last error message on this thread,
 * 0 if none.
 */
size_t lv_last_error_length(void);

/**
 * Copies the last error message into `buf` (NUL-terminated, truncated to
 * `len - 1` bytes). Returns the number of bytes written without the NUL.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t lv_last_error_message(char *buf, size_t len);

/**
 * Uniform lattice `x_m = x0 + m h`, `y_n = y0 + n k`, `m < rows`, `n < cols`.
 *
 * # Safety
 * `out` must be null or valid for writes.
 */
enum LvStatus lv_lattice_uniform(double x0,
                                 double y0,
                                 double h,
                                 double k,
                                 size_t rows,
                                 size_t cols,
                                 struct LvLattice **out_lattice);

/**
 * Lattice from strictly increasing coordinate arrays.
 *
 * # Safety
 * `xs`/`ys` must point to `nx`/`ny` doubles; `out` must be valid for writes.
 */
enum LvStatus lv_lattice_new(const double *xs,
                             size_t nx,
                             const double *ys,
                             size_t ny,
                             struct LvLattice **out_lattice);

/**
 * # Safety
 * `lat` and the out-pointers must be valid or null.
 */
enum LvStatus lv_lattice_dims(const struct LvLattice *lat, size_t *rows, size_t *cols);

/**
 * # Safety
 * `lat` must be null or a handle from this library, not yet freed.
 */
void lv_lattice_free(struct LvLattice *lat);

/**
 * Named closed-form solution: `"s1"`, `"s2"` or `"s3"`, with the default
 * parameters.
 *
 * # Safety
 * `name` must be a NUL-terminated string; `out` valid for writes.
 */
enum LvStatus lv_solution_named(const char *name, struct LvSolution **out_solution);

/**
 * `s1` with parameters `alpha, beta, gamma, delta`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LvStatus lv_solution_s1(double alpha,
                             double beta,
                             double gamma,
                             double delta,
                             struct LvSolution **out_solution);

/**
 * `s2` with parameters `A` and `s`.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LvStatus lv_solution_s2(double a, double s, struct LvSolution **out_solution);

/**
 * Constant field `u = value`. Solves the equation only for `value = 0`;
 * useful as boundary data.
 *
 * # Safety
 * `out` must be valid for writes.
 */
enum LvStatus lv_solution_constant(double value, struct LvSolution **out_solution);

/**
 * # Safety
 * `sol` and `value` must be valid or null.
 */
enum LvStatus lv_solution_eval(const struct LvSolution *sol, double x, double y, double *value);

/**
 * # Safety
 * `sol` must be null or a handle from this library, not yet freed.
 */
void lv_solution_free(struct LvSolution *sol);

/**
 * One cell of a scheme: `u11` from `u00, u01, u10` and steps `h, k`.
 *
 * # Safety
 * `scheme` and `u11` must be valid or null.
 */
enum LvStatus lv_step(const struct LvScheme *scheme,
                      double u00,
                      double u01,
                      double u10,
                      double h,
                      double k,
                      double *u11);

/**
 * Residual of a scheme on the orthogonal stencil with corner `(x, y)`,
 * steps `h, k` and values `u[m][n]` stored as `{u00, u01, u10, u11}`.
 *
 * # Safety
 * `u` must point to 4 doubles; the other pointers valid or null.
 */
enum LvStatus lv_residual(const struct LvScheme *scheme,
                          double x,
                          double y,
                          double h,
                          double k,
                          const double *u,
                          double *residual);

/**
 * The two difference invariants of an orthogonal stencil,
 * `J1 = u01 u10 h² k²` and `J2 = u00 u11 h² k²`. `u` as in [`lv_residual`].
 *
 * # Safety
 * `u` must point to 4 doubles; the out-pointers valid or null.
 */
enum LvStatus lv_invariants_j(double h, double k, const double *u, double *j1_out, double *j2_out);

/**
 * Solves the boundary-value problem with the first row (`m = 0`, length
 * `cols`) and first column (`n = 0`, length `rows`) given. `row0[0]` and
 * `col0[0]` must agree. Cells that fail are recorded in the report, not
 * returned as an error.
 *
 * # Safety
 * Arrays must hold the stated lengths; the other pointers valid or null.
 */
enum LvStatus lv_solve_boundary(const struct LvLattice *lat,
                                const double *row0,
                                size_t row0_len,
                                const double *col0,
                                size_t col0_len,
                                const struct LvScheme *scheme,
                                struct LvReport **out_report);

/**
 * Solves with boundary data sampled from `sol`.
 *
 * # Safety
 * Pointers must be valid handles or null.
 */
enum LvStatus lv_solve(const struct LvLattice *lat,
                       const struct LvSolution *sol,
                       const struct LvScheme *scheme,
                       struct LvReport **out_report);

/**
 * Value at node `(m, n)`. `LV_STATUS_UNFILLED` if the cell was not computed.
 *
 * # Safety
 * Pointers must be valid or null.
 */
enum LvStatus lv_report_value(const struct LvReport *rep, size_t m, size_t n, double *value);

/**
 * Copies the field row-major into `buf` (`rows * cols` doubles); unfilled
 * nodes become NaN.
 *
 * # Safety
 * `buf` must hold `len` doubles.
 */
enum LvStatus lv_report_field(const struct LvReport *rep, double *buf, size_t len);

/**
 * Number of cells that failed, and fraction of nodes filled.
 *
 * # Safety
 * Pointers must be valid or null.
 */
enum LvStatus lv_report_summary(const struct LvReport *rep, size_t *failures, double *coverage);

/**
 * Status of the `i`-th failed cell and its indices.
 *
 * # Safety
 * Pointers must be valid or null.
 */
enum LvStatus lv_report_failure(const struct LvReport *rep,
                                size_t i,
                                size_t *m,
                                size_t *n,
                                enum LvStatus *kind);

/**
 * Error of the computed field against `sol` over the filled nodes.
 *
 * # Safety
 * Pointers must be valid or null.
 */
enum LvStatus lv_report_chi(const struct LvReport *rep,
                            const struct LvSolution *sol,
                            struct LvChi *result);

/**
 * # Safety
 * `rep` must be null or a handle from this library, not yet freed.
 */
void lv_report_free(struct LvReport *rep);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* LIOUVILLE_H */

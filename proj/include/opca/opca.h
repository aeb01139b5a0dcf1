/* opca: exact and randomized solvers for PCA with row outliers.
 *
 * Given an n x d data matrix, a target rank r and an outlier budget k, the
 * solver picks k rows to discard so that the rest best fits an r-dimensional
 * subspace through the origin, returning the decomposition
 * data ~ low_rank + sparse. The library also generates clique-gadget
 * instances whose optimal cost certifies the presence or absence of a
 * multicolored clique in an input graph.
 *
 * Every object crossing this boundary is an opaque handle owned by the
 * library; functions report an opca_status and the last failure message is
 * kept per thread.
 */

#ifndef OPCA_H
#define OPCA_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define OPCA_API __declspec(dllexport)
#else
#define OPCA_API __attribute__((visibility("default")))
#endif

typedef enum opca_status {
  OPCA_OK = 0,
  OPCA_ERROR_INVALID_ARGUMENT,
  OPCA_ERROR_PARSE,
  OPCA_ERROR_DIMENSION_MISMATCH,
  OPCA_ERROR_RANK_DEFICIENT,
  OPCA_ERROR_NOT_SYMMETRIC,
  OPCA_ERROR_NO_CONVERGENCE,
  OPCA_ERROR_BAD_INDEX,
  OPCA_ERROR_BUDGET_EXCEEDED,
  OPCA_ERROR_DIMENSION_UNSUPPORTED,
  OPCA_ERROR_NEGATIVE_BUDGET,
  OPCA_ERROR_NOT_A_CLIQUE,
  OPCA_ERROR_IO,
  OPCA_ERROR_INTERNAL
} opca_status;

OPCA_API const char *opca_status_name(opca_status status);

/* Message for the most recent failure on the calling thread; empty string
 * when the last call succeeded. The pointer stays valid until the next
 * library call on the same thread. */
OPCA_API const char *opca_last_error_message(void);

OPCA_API const char *opca_version(void);

/* ---- instances ---------------------------------------------------- */

typedef struct opca_instance opca_instance;

OPCA_API opca_status opca_instance_create(const double *row_major, int64_t rows,
                                          int64_t cols, int64_t rank, int64_t outliers,
                                          opca_instance **out);
OPCA_API opca_status opca_instance_read_csv(const char *path, int64_t rank,
                                            int64_t outliers, opca_instance **out);
OPCA_API opca_status opca_instance_read_json(const char *path, opca_instance **out);
OPCA_API opca_status opca_instance_write_json(const opca_instance *inst, const char *path);
/* Replace rank and outlier budget, validated against the data shape. */
OPCA_API opca_status opca_instance_set_params(opca_instance *inst, int64_t rank,
                                              int64_t outliers);
OPCA_API int64_t opca_instance_rows(const opca_instance *inst);
OPCA_API int64_t opca_instance_cols(const opca_instance *inst);
OPCA_API int64_t opca_instance_rank(const opca_instance *inst);
OPCA_API int64_t opca_instance_outliers(const opca_instance *inst);
/* Row-major borrow, rows*cols entries, valid while the instance lives. */
OPCA_API const double *opca_instance_data(const opca_instance *inst);
OPCA_API void opca_instance_destroy(opca_instance *inst);

/* ---- solving ------------------------------------------------------ */

typedef enum opca_mode {
  OPCA_MODE_EXACT_2D = 0,  /* exact cell enumeration; requires d = 2, r = 1 */
  OPCA_MODE_SAMPLE = 1,    /* randomized frame sampling, any dimension */
  OPCA_MODE_BRUTE = 2      /* exhaustive subset enumeration, capped */
} opca_mode;

typedef enum opca_rep {
  OPCA_REP_AUTO = 0,
  OPCA_REP_SPAN = 1,
  OPCA_REP_COMPLEMENT = 2
} opca_rep;

typedef struct opca_solver_config {
  opca_mode mode;
  uint64_t sample_budget; /* frames drawn in sample mode */
  uint64_t seed;
  double zero_tol;        /* sign classification tolerance */
  opca_rep rep_choice;
  unsigned threads;
  uint64_t enum_cap;      /* subset cap for brute mode */
} opca_solver_config;

/* Fills the documented defaults: exact2d, budget 1000, seed 0, zero_tol
 * 1e-10, auto rep, 1 thread, cap 10^7. */
OPCA_API void opca_solver_config_init(opca_solver_config *cfg);

typedef struct opca_solve_stats {
  uint64_t candidates;
  uint64_t distinct_subsets;
  uint64_t boundary_angles; /* exact2d only, zero otherwise */
  double wall_ms;
} opca_solve_stats;

typedef struct opca_solution opca_solution;

/* cell_dump_path, when non-NULL, receives one JSON line per candidate cell
 * (ignored in brute mode, which has no cells). stats may be NULL. */
OPCA_API opca_status opca_solve(const opca_instance *inst, const opca_solver_config *cfg,
                                const char *cell_dump_path, opca_solution **out,
                                opca_solve_stats *stats);

OPCA_API double opca_solution_cost(const opca_solution *sol);
OPCA_API int64_t opca_solution_outlier_count(const opca_solution *sol);
/* out must hold opca_solution_outlier_count entries; ascending indices. */
OPCA_API void opca_solution_outliers(const opca_solution *sol, int64_t *out);
OPCA_API int64_t opca_solution_basis_rows(const opca_solution *sol);
/* out must hold basis_rows * cols entries, row-major. */
OPCA_API void opca_solution_basis(const opca_solution *sol, double *out);
/* out must hold rows * cols entries each, row-major. */
OPCA_API void opca_solution_low_rank(const opca_solution *sol, double *out);
OPCA_API void opca_solution_sparse(const opca_solution *sol, double *out);
OPCA_API void opca_solution_destroy(opca_solution *sol);

/* Result record as a JSON string (caller frees with opca_string_free).
 * Records from identical runs are byte-identical apart from wall_ms. */
OPCA_API opca_status opca_solution_record(const opca_solution *sol,
                                          const opca_solve_stats *stats,
                                          const char *mode_name, char **out);
OPCA_API opca_status opca_solution_write_json(const opca_solution *sol,
                                              const opca_solve_stats *stats,
                                              const char *mode_name, const char *path);
/* Rebuilds a solution from a result record against its instance. */
OPCA_API opca_status opca_solution_read_json(const opca_instance *inst, const char *path,
                                             opca_solution **out);
OPCA_API void opca_string_free(char *s);

/* ---- verification ------------------------------------------------- */

typedef struct opca_verify_report {
  int feasible;
  double recomputed_cost;
  double stored_cost;
  double cost_error;
  int cost_ok;
  int sparsity_ok;
  int support_ok;
  int rank_ok;
  int basis_ok;
  int shape_ok;
  int64_t sparse_row_count;
  double max_low_rank_residual_sq;
} opca_verify_report;

OPCA_API opca_status opca_verify(const opca_instance *inst, const opca_solution *sol,
                                 double tol, opca_verify_report *report);

/* ---- exhaustive oracle -------------------------------------------- */

/* Exact optimum over all C(n, k) outlier subsets; OPCA_ERROR_BUDGET_EXCEEDED
 * when that count is above cap. */
OPCA_API opca_status opca_brute_force(const opca_instance *inst, uint64_t cap,
                                      unsigned threads, opca_solution **out);

/* ---- hardness instances ------------------------------------------- */

typedef struct opca_graph opca_graph;
typedef struct opca_hard_bundle opca_hard_bundle;

/* Graph file: header "colors per_color", then one edge per line as
 * "color_a index_a color_b index_b" (1-based). */
OPCA_API opca_status opca_graph_read(const char *path, opca_graph **out);
/* edges holds 4 * edge_count entries: color_a, index_a, color_b, index_b. */
OPCA_API opca_status opca_graph_create(int64_t colors, int64_t per_color,
                                       const int64_t *edges, int64_t edge_count,
                                       opca_graph **out);
OPCA_API opca_status opca_graph_complete_multipartite(int64_t colors, int64_t per_color,
                                                      opca_graph **out);
OPCA_API int64_t opca_graph_edge_count(const opca_graph *g);
/* found gets 0 or 1; selection (length colors, may be NULL) gets the 1-based
 * vertex per color of the first multicolored clique. */
OPCA_API opca_status opca_graph_find_clique(const opca_graph *g, int64_t *selection,
                                            int *found);
OPCA_API void opca_graph_destroy(opca_graph *g);

OPCA_API opca_status opca_hardness_build(const opca_graph *g, double omega,
                                         opca_hard_bundle **out);
/* Borrowed pointer, valid while the bundle lives. */
OPCA_API const opca_instance *opca_hard_bundle_instance(const opca_hard_bundle *b);
OPCA_API double opca_hard_bundle_diag_scale(const opca_hard_bundle *b);   /* a */
OPCA_API double opca_hard_bundle_edge_scale(const opca_hard_bundle *b);   /* c */
OPCA_API double opca_hard_bundle_yes_bound(const opca_hard_bundle *b);    /* D */
OPCA_API double opca_hard_bundle_gap_bound(const opca_hard_bundle *b);    /* D' */
OPCA_API double opca_hard_bundle_omega(const opca_hard_bundle *b);
OPCA_API int64_t opca_hard_bundle_edge_count(const opca_hard_bundle *b);
OPCA_API int64_t opca_hard_bundle_edge_row(const opca_hard_bundle *b, int64_t edge);
OPCA_API opca_status opca_hard_bundle_write_json(const opca_hard_bundle *b,
                                                 const char *path);
OPCA_API void opca_hard_bundle_destroy(opca_hard_bundle *b);

/* selection: one 1-based vertex index per color. */
OPCA_API opca_status opca_hardness_certificate(const opca_hard_bundle *b,
                                               const opca_graph *g,
                                               const int64_t *selection,
                                               opca_solution **out);

typedef enum opca_gap_decision {
  OPCA_GAP_YES = 1,
  OPCA_GAP_NO = -1,
  OPCA_GAP_INDETERMINATE = 0
} opca_gap_decision;

/* solver_exact: nonzero when achieved_cost is a proven optimum, which is what
 * entitles a "no" answer above the gap bound. */
OPCA_API opca_status opca_hardness_check_gap(const opca_hard_bundle *b,
                                             double achieved_cost, int solver_exact,
                                             opca_gap_decision *decision);

#ifdef __cplusplus
}
#endif

#endif /* OPCA_H */

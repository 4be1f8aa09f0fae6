#ifndef FCV_FCV_H
#define FCV_FCV_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(FCV_BUILDING_LIBRARY)
#define FCV_API __declspec(dllexport)
#else
#define FCV_API __declspec(dllimport)
#endif
#else
#define FCV_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fcv_status {
  FCV_OK = 0,
  FCV_INVALID_ARGUMENT = 1, /* null pointer, unknown name, bad option */
  FCV_DOMAIN = 2,           /* grid or argument outside an operator's domain */
  FCV_ORDER = 3,            /* fractional order out of range */
  FCV_PARSE = 4,            /* Lagrangian syntax error */
  FCV_EXPRESSION = 5,       /* Lagrangian evaluated outside its domain */
  FCV_CONSTRAINT = 6,       /* boundary conditions violated */
  FCV_HYPOTHESIS = 7,       /* input violates a lemma's hypothesis */
  FCV_DIVERGENCE = 8,       /* solver objective became non-finite */
  FCV_FORMAT = 9,           /* malformed CSV or JSON */
  FCV_INTERNAL = 10
} fcv_status;

typedef struct fcv_grid fcv_grid;
typedef struct fcv_problem fcv_problem;
typedef struct fcv_expr fcv_expr;

/* Message of the last failed call on the calling thread; never null. */
FCV_API const char* fcv_last_error_message(void);
FCV_API const char* fcv_status_name(fcv_status status);

/* Releases strings returned through char** out-parameters. */
FCV_API void fcv_string_free(char* s);

/* ---- grid functions ---------------------------------------------------- */

/* count = N + 1 >= 3 samples at uniform nodes over [a, b]. */
FCV_API fcv_status fcv_grid_create(double a, double b, const double* values,
                                   size_t count, fcv_grid** out);
/* Text with header "x,value", one row per node. */
FCV_API fcv_status fcv_grid_from_csv(const char* text, fcv_grid** out);
/* Singular nodes are written as inf / -inf. */
FCV_API fcv_status fcv_grid_to_csv(const fcv_grid* grid, char** out);
FCV_API void fcv_grid_destroy(fcv_grid* grid);

FCV_API size_t fcv_grid_size(const fcv_grid* grid);
FCV_API double fcv_grid_a(const fcv_grid* grid);
FCV_API double fcv_grid_b(const fcv_grid* grid);
/* fcv_grid_size(grid) values; valid until the grid is destroyed. */
FCV_API const double* fcv_grid_values(const fcv_grid* grid);
/* Returns 1 and fills node/sign when the grid has a singular node (an RL
   derivative blowing up at its endpoint); 0 otherwise. */
FCV_API int fcv_grid_singular_node(const fcv_grid* grid, size_t* node,
                                   int* sign);

/* op: integral-left, integral-right, caputo-left, caputo-right, rl-left,
   rl-right, or nfold (order must then be a positive integer). The result
   lives on the input's interval. */
FCV_API fcv_status fcv_apply_operator(const fcv_grid* f, const char* op,
                                      double order, fcv_grid** out);

/* ---- Lagrangian expressions ------------------------------------------- */

FCV_API fcv_status fcv_expr_parse(const char* text, fcv_expr** out,
                                  size_t* error_position);
FCV_API void fcv_expr_destroy(fcv_expr* e);
FCV_API fcv_status fcv_expr_print(const fcv_expr* e, char** out);
FCV_API fcv_status fcv_expr_eval(const fcv_expr* e, double x, double y,
                                 double dy, double* out);
/* var: "x", "y" or "dy". */
FCV_API fcv_status fcv_expr_diff(const fcv_expr* e, const char* var,
                                 fcv_expr** out);
FCV_API fcv_status fcv_expr_simplify(const fcv_expr* e, fcv_expr** out);
FCV_API int fcv_expr_is_c2(const fcv_expr* e);

/* ---- variational problems --------------------------------------------- */

/* JSON with fields lagrangian, alpha, a, b, ya, yb, n_grid. */
FCV_API fcv_status fcv_problem_from_json(const char* text, fcv_problem** out);
FCV_API void fcv_problem_destroy(fcv_problem* p);
FCV_API size_t fcv_problem_n_grid(const fcv_problem* p);

/* DuBois-Reymond witness of f for order alpha on f's interval. */
FCV_API fcv_status fcv_witness(const fcv_grid* f, double alpha, char** json);

/* form: integral, rl or caputo. residual may be null. */
FCV_API fcv_status fcv_residual(const fcv_problem* p, const fcv_grid* y,
                                const char* form, char** json,
                                fcv_grid** residual);

FCV_API fcv_status fcv_functional(const fcv_problem* p, const fcv_grid* y,
                                  double* out);

typedef struct fcv_solver_options {
  size_t max_iterations;
  double gradient_tolerance;
  /* 1: backtracking line search (shrink, sufficient_decrease);
     0: fixed step. */
  int line_search;
  double fixed_step;
  double shrink;
  double sufficient_decrease;
} fcv_solver_options;

FCV_API void fcv_solver_options_default(fcv_solver_options* options);

/* initial may be null (linear interpolant of the boundary values). On
   FCV_DIVERGENCE *y still receives the last finite iterate. */
FCV_API fcv_status fcv_solve(const fcv_problem* p,
                             const fcv_solver_options* options,
                             const fcv_grid* initial, fcv_grid** y,
                             char** json);

/* ---- refinement studies ----------------------------------------------- */

typedef struct fcv_thresholds {
  double min_order;
  double error_ceiling; /* laws: factor of max|f|; converge: absolute */
} fcv_thresholds;

/* The identity suite over the shipped fixtures. thresholds may be null for
   the defaults (order 1, ceiling factor 1e-2). */
FCV_API fcv_status fcv_run_laws(const size_t* ladder, size_t levels,
                                const fcv_thresholds* thresholds, char** json,
                                int* all_passed);

/* candidate: "solve", "solve:<initial guess f(x)>", "expr:<f(x)>" or
   "el-profile:<K>"; forms: a comma list of integral, rl, caputo, or null for
   all three. thresholds may be null (order 0.5, ceiling 1e-2); options may
   be null. */
FCV_API fcv_status fcv_run_convergence(const fcv_problem* p,
                                       const size_t* ladder, size_t levels,
                                       const char* candidate, const char* forms,
                                       const fcv_thresholds* thresholds,
                                       const fcv_solver_options* options,
                                       char** json, int* all_passed);

#ifdef __cplusplus
}
#endif

#endif

/*
 * C interface to the pqbask library: (p,q)-Baskakov operators, their
 * King-type modification preserving x^2, and grid-based error analysis.
 *
 * Conventions
 *   - Every fallible call returns a pqb_status; PQB_OK is zero.
 *   - On failure a thread-local message is available from pqb_last_error().
 *   - Handles (pqb_expr, pqb_audit, pqb_convergence, pqb_theorem2) are opaque
 *     and owned by the caller; release them with the matching *_free call.
 *   - Outputs are written only on success.
 */
#ifndef PQBASK_H_
#define PQBASK_H_

#include <stddef.h>

#if defined(_WIN32)
#  if defined(PQBASK_BUILDING)
#    define PQB_API __declspec(dllexport)
#  else
#    define PQB_API __declspec(dllimport)
#  endif
#else
#  define PQB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pqb_status {
  PQB_OK = 0,
  PQB_ERR_DOMAIN = 1,      /* argument outside the mathematical domain */
  PQB_ERR_EVALUATION = 2,  /* user function failed or was non-finite */
  PQB_ERR_CONFIG = 3,      /* invalid schedule or configuration */
  PQB_ERR_PARSE = 4,       /* expression syntax or unknown identifier */
  PQB_ERR_NULL = 5,        /* required pointer argument was NULL */
  PQB_ERR_RANGE = 6,       /* index out of range or buffer too small */
  PQB_ERR_INTERNAL = 7
} pqb_status;

typedef struct pqb_expr pqb_expr;
typedef struct pqb_audit pqb_audit;
typedef struct pqb_convergence pqb_convergence;
typedef struct pqb_theorem2 pqb_theorem2;

/* Callback form of a real function. Non-finite return values are reported as
 * PQB_ERR_EVALUATION by the consuming routine. */
typedef double (*pqb_real_fn)(double x, void* user);

/* A function argument: either a parsed expression (expr != NULL) or a callback. */
typedef struct pqb_function {
  const pqb_expr* expr;
  pqb_real_fn fn;
  void* user;
} pqb_function;

typedef struct pqb_policy {
  double tail_tolerance;
  size_t max_terms;
  unsigned growth_exponent;
} pqb_policy;

typedef struct pqb_series_eval {
  double value;
  size_t terms_used;
  double accumulated_weight;
  double tail_error_estimate;
  int converged;
} pqb_series_eval;

typedef struct pqb_grid_spec {
  double start;
  double stop;
  double step;
} pqb_grid_spec;

typedef struct pqb_central_moments {
  double first;
  double second;
  double first_bound_claimed;
  double second_bound_claimed;
} pqb_central_moments;

typedef struct pqb_audit_row {
  unsigned n;
  double p, q, x;
  double first_actual_abs;
  double first_bound_claimed;
  int first_violated;
  double second_actual;
  double second_bound_claimed;
  int second_violated;
} pqb_audit_row;

typedef struct pqb_convergence_row {
  unsigned n;
  double p_n, q_n;
  double bracket_n;
  double norm_e0, norm_e1, norm_e2;
  double norm_e1_tail_bound;
} pqb_convergence_row;

typedef struct pqb_theorem2_row {
  double x;
  double lhs;
  double delta_n;
  double omega2_part;
  double omega_part;
  double m_required;
} pqb_theorem2_row;

/* ---- errors and defaults ---- */
PQB_API const char* pqb_last_error(void);
PQB_API const char* pqb_status_name(pqb_status status);
PQB_API pqb_policy pqb_default_policy(void);
PQB_API pqb_function pqb_function_from_expr(const pqb_expr* expr);
PQB_API pqb_status pqb_check_params(double p, double q);

/* ---- (p,q)-calculus ---- */
PQB_API pqb_status pqb_pq_integer(unsigned n, double p, double q, double* out);
PQB_API pqb_status pqb_pq_factorial(unsigned n, double p, double q, double* out);
PQB_API pqb_status pqb_pq_binomial(unsigned n, unsigned k, double p, double q, double* out);
PQB_API pqb_status pqb_pq_rising_power(double x, unsigned n, double p, double q, double* out);
PQB_API pqb_status pqb_pq_derivative(pqb_function f, double x, double p, double q, double* out);

/* ---- expressions ---- */
PQB_API pqb_status pqb_expr_parse(const char* text, pqb_expr** out);
/* As pqb_expr_parse with a custom variable name (e.g. "n" for schedules). */
PQB_API pqb_status pqb_expr_parse_var(const char* text, const char* variable, pqb_expr** out);
PQB_API void pqb_expr_free(pqb_expr* expr);
PQB_API pqb_status pqb_expr_eval(const pqb_expr* expr, double x, double* out);
/* f*(z) = f(z^2) */
PQB_API pqb_status pqb_expr_compose_square(const pqb_expr* expr, pqb_expr** out);
/* Writes at most len bytes including the terminator; *needed gets the full size. */
PQB_API pqb_status pqb_expr_print(const pqb_expr* expr, char* buf, size_t len, size_t* needed);

/* ---- operators ---- */
PQB_API pqb_status pqb_node(unsigned n, unsigned k, double p, double q, double* out);
PQB_API pqb_status pqb_basis_weight(unsigned n, unsigned k, double r, double p, double q,
                                    double* out);
/* B_{n,p,q}(f; x). policy may be NULL for defaults. */
PQB_API pqb_status pqb_eval_plain(pqb_function f, unsigned n, double x, double p, double q,
                                  const pqb_policy* policy, pqb_series_eval* out);
/* B*_{n,p,q}(f; x) */
PQB_API pqb_status pqb_eval_king(pqb_function f, unsigned n, double x, double p, double q,
                                 const pqb_policy* policy, pqb_series_eval* out);
PQB_API pqb_status pqb_moment_closed(unsigned i, unsigned n, double x, double p, double q,
                                     double* out);
PQB_API pqb_status pqb_king_moment_closed(unsigned i, unsigned n, double x, double p, double q,
                                          double* out);
PQB_API pqb_status pqb_r_n(double x, unsigned n, double p, double q, double* out);
PQB_API pqb_status pqb_central_moments_at(unsigned n, double x, double p, double q,
                                          pqb_central_moments* out);
PQB_API pqb_status pqb_auxiliary_operator(pqb_function f, unsigned n, double x, double p,
                                          double q, const pqb_policy* policy, double* out);

/* ---- bound audit: rows for every (n, (p[i], q[i]), x) combination ---- */
PQB_API pqb_status pqb_bound_audit(const unsigned* n_list, size_t n_count, const double* p_list,
                                   const double* q_list, size_t pq_count, const double* x_list,
                                   size_t x_count, pqb_audit** out);
PQB_API size_t pqb_audit_size(const pqb_audit* audit);
PQB_API pqb_status pqb_audit_row_at(const pqb_audit* audit, size_t i, pqb_audit_row* out);
PQB_API void pqb_audit_free(pqb_audit* audit);

/* ---- grids, moduli, norms ---- */
/* Number of points of the grid, validating it. */
PQB_API pqb_status pqb_grid_size(pqb_grid_spec grid, size_t* out);
PQB_API pqb_status pqb_grid_point(pqb_grid_spec grid, size_t i, double* out);
PQB_API pqb_status pqb_modulus(pqb_function f, double delta, pqb_grid_spec grid, double* out);
PQB_API pqb_status pqb_modulus2(pqb_function f, double delta, pqb_grid_spec grid, double* out);
PQB_API pqb_status pqb_weighted_norm(pqb_function f, unsigned m, pqb_grid_spec grid,
                                     double* out);

/* ---- convergence study: p_of_n, q_of_n are functions of n ---- */
PQB_API pqb_status pqb_convergence_study(pqb_function p_of_n, pqb_function q_of_n,
                                         const unsigned* n_list, size_t n_count,
                                         pqb_grid_spec grid, pqb_convergence** out);
PQB_API size_t pqb_convergence_size(const pqb_convergence* study);
PQB_API pqb_status pqb_convergence_row_at(const pqb_convergence* study, size_t i,
                                          pqb_convergence_row* out);
PQB_API void pqb_convergence_free(pqb_convergence* study);

/* ---- error bounds ---- */
PQB_API pqb_status pqb_theorem2_delta(unsigned n, double x, double p, double q, int as_printed,
                                      double* out);
PQB_API pqb_status pqb_theorem2_report(pqb_function f, unsigned n, double p, double q,
                                       pqb_grid_spec eval_grid, pqb_grid_spec modulus_grid,
                                       const pqb_policy* policy, int as_printed,
                                       pqb_theorem2** out);
PQB_API size_t pqb_theorem2_size(const pqb_theorem2* report);
PQB_API double pqb_theorem2_m_required_max(const pqb_theorem2* report);
PQB_API pqb_status pqb_theorem2_row_at(const pqb_theorem2* report, size_t i,
                                       pqb_theorem2_row* out);
PQB_API void pqb_theorem2_free(pqb_theorem2* report);
PQB_API pqb_status pqb_theorem3_radicand(unsigned n, double x, double p, double q, double* out);
PQB_API pqb_status pqb_theorem3_bound(pqb_function f, unsigned n, double x, double p, double q,
                                      pqb_grid_spec grid, double* out);

#ifdef __cplusplus
}
#endif

#endif /* PQBASK_H_ */

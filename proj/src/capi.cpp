#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "pqbask/error_analysis.hpp"
#include "pqbask/errors.hpp"
#include "pqbask/expr.hpp"
#include "pqbask/pqbask.h"

struct pqb_expr {
  pqbask::Expr expr;
};

struct pqb_audit {
  std::vector<pqbask::BoundAuditRow> rows;
};

struct pqb_convergence {
  std::vector<pqbask::ConvergenceRow> rows;
};

struct pqb_theorem2 {
  pqbask::Theorem2Report report;
};

namespace {

thread_local std::string g_last_error;

struct NullArgument {
  const char* name;
};

struct OutOfRange {
  std::string what;
};

template <class T>
T* require(T* ptr, const char* name) {
  if (ptr == nullptr) throw NullArgument{name};
  return ptr;
}

template <class Body>
pqb_status guarded(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return PQB_OK;
  } catch (const NullArgument& e) {
    g_last_error = std::string("null argument: ") + e.name;
    return PQB_ERR_NULL;
  } catch (const OutOfRange& e) {
    g_last_error = e.what;
    return PQB_ERR_RANGE;
  } catch (const pqbask::Error& e) {
    g_last_error = e.what();
    switch (e.code()) {
      case pqbask::ErrorCode::Domain:
        return PQB_ERR_DOMAIN;
      case pqbask::ErrorCode::Evaluation:
        return PQB_ERR_EVALUATION;
      case pqbask::ErrorCode::Config:
        return PQB_ERR_CONFIG;
      case pqbask::ErrorCode::Parse:
        return PQB_ERR_PARSE;
    }
    return PQB_ERR_INTERNAL;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PQB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PQB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PQB_ERR_INTERNAL;
  }
}

pqbask::RealFn to_real_fn(const pqb_function& f) {
  if (f.expr != nullptr) {
    const pqbask::Expr e = f.expr->expr;
    return [e](double x) { return e(x); };
  }
  if (f.fn != nullptr) {
    const pqb_real_fn fn = f.fn;
    void* user = f.user;
    return [fn, user](double x) { return fn(x, user); };
  }
  throw NullArgument{"function (neither expr nor callback set)"};
}

pqbask::TruncationPolicy to_policy(const pqb_policy* policy) {
  if (policy == nullptr) return {};
  return {policy->tail_tolerance, policy->max_terms, policy->growth_exponent};
}

pqbask::Grid to_grid(const pqb_grid_spec& g) { return pqbask::Grid(g.start, g.stop, g.step); }

pqb_series_eval to_c(const pqbask::SeriesEval& s) {
  return {s.value, s.terms_used, s.accumulated_weight, s.tail_error_estimate,
          s.converged ? 1 : 0};
}

void check_index(std::size_t i, std::size_t size) {
  if (i >= size) {
    throw OutOfRange{"row index " + std::to_string(i) + " out of range (size " +
                     std::to_string(size) + ")"};
  }
}

}  // namespace

extern "C" {

const char* pqb_last_error(void) { return g_last_error.c_str(); }

const char* pqb_status_name(pqb_status status) {
  switch (status) {
    case PQB_OK:
      return "ok";
    case PQB_ERR_DOMAIN:
      return "domain error";
    case PQB_ERR_EVALUATION:
      return "evaluation error";
    case PQB_ERR_CONFIG:
      return "configuration error";
    case PQB_ERR_PARSE:
      return "parse error";
    case PQB_ERR_NULL:
      return "null argument";
    case PQB_ERR_RANGE:
      return "out of range";
    case PQB_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

pqb_policy pqb_default_policy(void) {
  const pqbask::TruncationPolicy d;
  return {d.tail_tolerance, d.max_terms, d.growth_exponent};
}

pqb_function pqb_function_from_expr(const pqb_expr* expr) { return {expr, nullptr, nullptr}; }

pqb_status pqb_check_params(double p, double q) {
  return guarded([&] { pqbask::PQParams(p, q); });
}

pqb_status pqb_pq_integer(unsigned n, double p, double q, double* out) {
  return guarded([&] { *require(out, "out") = pqbask::pq_integer(n, {p, q}); });
}

pqb_status pqb_pq_factorial(unsigned n, double p, double q, double* out) {
  return guarded([&] { *require(out, "out") = pqbask::pq_factorial(n, {p, q}); });
}

pqb_status pqb_pq_binomial(unsigned n, unsigned k, double p, double q, double* out) {
  return guarded([&] { *require(out, "out") = pqbask::pq_binomial(n, k, {p, q}); });
}

pqb_status pqb_pq_rising_power(double x, unsigned n, double p, double q, double* out) {
  return guarded([&] { *require(out, "out") = pqbask::pq_rising_power(x, n, {p, q}); });
}

pqb_status pqb_pq_derivative(pqb_function f, double x, double p, double q, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pqbask::pq_derivative(to_real_fn(f), x, {p, q});
  });
}

pqb_status pqb_expr_parse(const char* text, pqb_expr** out) {
  return pqb_expr_parse_var(text, "x", out);
}

pqb_status pqb_expr_parse_var(const char* text, const char* variable, pqb_expr** out) {
  return guarded([&] {
    require(text, "text");
    require(variable, "variable");
    require(out, "out");
    *out = new pqb_expr{pqbask::parse(text, variable)};
  });
}

void pqb_expr_free(pqb_expr* expr) { delete expr; }

pqb_status pqb_expr_eval(const pqb_expr* expr, double x, double* out) {
  return guarded([&] {
    require(expr, "expr");
    require(out, "out");
    *out = expr->expr(x);
  });
}

pqb_status pqb_expr_compose_square(const pqb_expr* expr, pqb_expr** out) {
  return guarded([&] {
    require(expr, "expr");
    require(out, "out");
    *out = new pqb_expr{expr->expr.compose_square()};
  });
}

pqb_status pqb_expr_print(const pqb_expr* expr, char* buf, size_t len, size_t* needed) {
  return guarded([&] {
    require(expr, "expr");
    const std::string text = expr->expr.to_string();
    if (needed != nullptr) *needed = text.size() + 1;
    if (buf == nullptr || len == 0) return;
    if (len < text.size() + 1) throw OutOfRange{"buffer too small for expression text"};
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

pqb_status pqb_node(unsigned n, unsigned k, double p, double q, double* out) {
  return guarded([&] { *require(out, "out") = pqbask::node(n, k, {p, q}); });
}

pqb_status pqb_basis_weight(unsigned n, unsigned k, double r, double p, double q, double* out) {
  return guarded([&] { *require(out, "out") = pqbask::basis_weight(n, k, r, {p, q}); });
}

pqb_status pqb_eval_plain(pqb_function f, unsigned n, double x, double p, double q,
                          const pqb_policy* policy, pqb_series_eval* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(pqbask::eval_series(to_real_fn(f), n, x, {p, q}, to_policy(policy)));
  });
}

pqb_status pqb_eval_king(pqb_function f, unsigned n, double x, double p, double q,
                         const pqb_policy* policy, pqb_series_eval* out) {
  return guarded([&] {
    require(out, "out");
    *out = to_c(pqbask::eval_king(to_real_fn(f), n, x, {p, q}, to_policy(policy)));
  });
}

pqb_status pqb_moment_closed(unsigned i, unsigned n, double x, double p, double q,
                             double* out) {
  return guarded([&] { *require(out, "out") = pqbask::moment_closed(i, n, x, {p, q}); });
}

pqb_status pqb_king_moment_closed(unsigned i, unsigned n, double x, double p, double q,
                                  double* out) {
  return guarded([&] { *require(out, "out") = pqbask::king_moment_closed(i, n, x, {p, q}); });
}

pqb_status pqb_r_n(double x, unsigned n, double p, double q, double* out) {
  return guarded([&] { *require(out, "out") = pqbask::r_n(x, n, {p, q}); });
}

pqb_status pqb_central_moments_at(unsigned n, double x, double p, double q,
                                  pqb_central_moments* out) {
  return guarded([&] {
    require(out, "out");
    const auto cm = pqbask::central_moments(n, x, {p, q});
    *out = {cm.first, cm.second, cm.first_bound_claimed, cm.second_bound_claimed};
  });
}

pqb_status pqb_auxiliary_operator(pqb_function f, unsigned n, double x, double p, double q,
                                  const pqb_policy* policy, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pqbask::auxiliary_operator(to_real_fn(f), n, x, {p, q}, to_policy(policy));
  });
}

pqb_status pqb_bound_audit(const unsigned* n_list, size_t n_count, const double* p_list,
                           const double* q_list, size_t pq_count, const double* x_list,
                           size_t x_count, pqb_audit** out) {
  return guarded([&] {
    require(out, "out");
    if (n_count > 0) require(n_list, "n_list");
    if (pq_count > 0) {
      require(p_list, "p_list");
      require(q_list, "q_list");
    }
    if (x_count > 0) require(x_list, "x_list");
    std::vector<pqbask::PQParams> pqs;
    pqs.reserve(pq_count);
    for (size_t i = 0; i < pq_count; ++i) pqs.emplace_back(p_list[i], q_list[i]);
    auto audit = std::make_unique<pqb_audit>();
    audit->rows = pqbask::bound_audit({n_list, n_count}, pqs, {x_list, x_count});
    *out = audit.release();
  });
}

size_t pqb_audit_size(const pqb_audit* audit) { return audit ? audit->rows.size() : 0; }

pqb_status pqb_audit_row_at(const pqb_audit* audit, size_t i, pqb_audit_row* out) {
  return guarded([&] {
    require(audit, "audit");
    require(out, "out");
    check_index(i, audit->rows.size());
    const auto& r = audit->rows[i];
    *out = {r.n,
            r.p,
            r.q,
            r.x,
            r.first_actual_abs,
            r.first_bound_claimed,
            r.first_violated ? 1 : 0,
            r.second_actual,
            r.second_bound_claimed,
            r.second_violated ? 1 : 0};
  });
}

void pqb_audit_free(pqb_audit* audit) { delete audit; }

pqb_status pqb_grid_size(pqb_grid_spec grid, size_t* out) {
  return guarded([&] { *require(out, "out") = to_grid(grid).size(); });
}

pqb_status pqb_grid_point(pqb_grid_spec grid, size_t i, double* out) {
  return guarded([&] {
    require(out, "out");
    const auto g = to_grid(grid);
    check_index(i, g.size());
    *out = g.points()[i];
  });
}

pqb_status pqb_modulus(pqb_function f, double delta, pqb_grid_spec grid, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pqbask::modulus(to_real_fn(f), delta, to_grid(grid)).value;
  });
}

pqb_status pqb_modulus2(pqb_function f, double delta, pqb_grid_spec grid, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pqbask::modulus2(to_real_fn(f), delta, to_grid(grid)).value;
  });
}

pqb_status pqb_weighted_norm(pqb_function f, unsigned m, pqb_grid_spec grid, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pqbask::weighted_norm(to_real_fn(f), m, to_grid(grid)).value;
  });
}

pqb_status pqb_convergence_study(pqb_function p_of_n, pqb_function q_of_n,
                                 const unsigned* n_list, size_t n_count, pqb_grid_spec grid,
                                 pqb_convergence** out) {
  return guarded([&] {
    require(out, "out");
    if (n_count > 0) require(n_list, "n_list");
    const auto pf = to_real_fn(p_of_n);
    const auto qf = to_real_fn(q_of_n);
    const pqbask::Schedule schedule = [&](unsigned n) {
      return std::pair{pf(static_cast<double>(n)), qf(static_cast<double>(n))};
    };
    auto study = std::make_unique<pqb_convergence>();
    study->rows = pqbask::convergence_study(schedule, {n_list, n_count}, to_grid(grid));
    *out = study.release();
  });
}

size_t pqb_convergence_size(const pqb_convergence* study) {
  return study ? study->rows.size() : 0;
}

pqb_status pqb_convergence_row_at(const pqb_convergence* study, size_t i,
                                  pqb_convergence_row* out) {
  return guarded([&] {
    require(study, "study");
    require(out, "out");
    check_index(i, study->rows.size());
    const auto& r = study->rows[i];
    *out = {r.n,       r.p_n,     r.q_n,     r.bracket_n,
            r.norm_e0, r.norm_e1, r.norm_e2, r.norm_e1_tail_bound};
  });
}

void pqb_convergence_free(pqb_convergence* study) { delete study; }

pqb_status pqb_theorem2_delta(unsigned n, double x, double p, double q, int as_printed,
                              double* out) {
  return guarded(
      [&] { *require(out, "out") = pqbask::theorem2_delta(n, x, {p, q}, as_printed != 0); });
}

pqb_status pqb_theorem2_report(pqb_function f, unsigned n, double p, double q,
                               pqb_grid_spec eval_grid, pqb_grid_spec modulus_grid,
                               const pqb_policy* policy, int as_printed, pqb_theorem2** out) {
  return guarded([&] {
    require(out, "out");
    auto report = std::make_unique<pqb_theorem2>();
    report->report =
        pqbask::theorem2_report(to_real_fn(f), n, {p, q}, to_grid(eval_grid),
                                to_grid(modulus_grid), to_policy(policy), as_printed != 0);
    *out = report.release();
  });
}

size_t pqb_theorem2_size(const pqb_theorem2* report) {
  return report ? report->report.rows.size() : 0;
}

double pqb_theorem2_m_required_max(const pqb_theorem2* report) {
  return report ? report->report.m_required_max : 0.0;
}

pqb_status pqb_theorem2_row_at(const pqb_theorem2* report, size_t i, pqb_theorem2_row* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    check_index(i, report->report.rows.size());
    const auto& r = report->report.rows[i];
    *out = {r.x, r.lhs, r.delta_n, r.omega2_part, r.omega_part, r.m_required};
  });
}

void pqb_theorem2_free(pqb_theorem2* report) { delete report; }

pqb_status pqb_theorem3_radicand(unsigned n, double x, double p, double q, double* out) {
  return guarded([&] { *require(out, "out") = pqbask::theorem3_radicand(n, x, {p, q}); });
}

pqb_status pqb_theorem3_bound(pqb_function f, unsigned n, double x, double p, double q,
                              pqb_grid_spec grid, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = pqbask::theorem3_bound(to_real_fn(f), n, x, {p, q}, to_grid(grid));
  });
}

}  // extern "C"

#include "pqbask/king.hpp"

#include <algorithm>
#include <cmath>

#include "pqbask/errors.hpp"

namespace pqbask {

namespace {

struct Quadratic {
  double lead;   // [n] + p^n/q
  double lin;    // p^(n-1)
  double disc;   // lin^2 + 4 lead [n] x^2
  double c4;     // 4 lead [n] x^2
  double cterm;  // [n] x^2
};

Quadratic quadratic(double x, unsigned n, const PQParams& pq) {
  if (n == 0) throw DomainError("operator order n must be >= 1");
  if (!(x >= 0.0) || !std::isfinite(x)) throw DomainError("r_n requires finite x >= 0");
  const double bracket = pq_integer(n, pq);
  Quadratic out{};
  out.lead = bracket + std::pow(pq.p(), static_cast<double>(n)) / pq.q();
  out.lin = std::pow(pq.p(), n - 1.0);
  out.cterm = bracket * x * x;
  out.c4 = 4.0 * out.lead * out.cterm;
  out.disc = out.lin * out.lin + out.c4;
  return out;
}

bool flag_exceeds(double actual, double claimed) {
  return actual > claimed + 1e-12 * std::max(1.0, std::fabs(claimed));
}

}  // namespace

double r_n_direct(double x, unsigned n, const PQParams& pq) {
  const Quadratic qd = quadratic(x, n, pq);
  return (-qd.lin + std::sqrt(qd.disc)) / (2.0 * qd.lead);
}

double r_n_rationalized(double x, unsigned n, const PQParams& pq) {
  const Quadratic qd = quadratic(x, n, pq);
  return 2.0 * qd.cterm / (qd.lin + std::sqrt(qd.disc));
}

double r_n(double x, unsigned n, const PQParams& pq) {
  const Quadratic qd = quadratic(x, n, pq);
  if (qd.c4 < qd.lin * qd.lin) return 2.0 * qd.cterm / (qd.lin + std::sqrt(qd.disc));
  return (-qd.lin + std::sqrt(qd.disc)) / (2.0 * qd.lead);
}

SeriesEval eval_king(const RealFn& f, unsigned n, double x, const PQParams& pq,
                     const TruncationPolicy& policy) {
  return eval_series(f, n, r_n(x, n, pq), pq, policy);
}

double king_moment_closed(unsigned i, unsigned n, double x, const PQParams& pq) {
  switch (i) {
    case 0:
      return 1.0;
    case 1:
      return r_n(x, n, pq);
    case 2:
      return x * x;
    default:
      throw DomainError("closed-form moments exist for i in {0,1,2} only");
  }
}

double first_moment_coefficient(unsigned n, const PQParams& pq) {
  if (n == 0) throw DomainError("operator order n must be >= 1");
  const double a = std::pow(pq.p(), static_cast<double>(n)) / pq.q();
  const double root_b = std::sqrt(pq_integer(n, pq));
  return (std::sqrt(a) - a / root_b) / (root_b + a / root_b);
}

CentralMoments central_moments(unsigned n, double x, const PQParams& pq) {
  const double r = r_n(x, n, pq);
  const double c = first_moment_coefficient(n, pq);
  const double a = std::pow(pq.p(), static_cast<double>(n)) / pq.q();
  CentralMoments out;
  out.first = r - x;
  out.second = 2.0 * x * x - 2.0 * x * r;
  out.first_bound_claimed = c * x;
  out.second_bound_claimed =
      2.0 * c * x * x + std::pow(pq.p(), n - 1.0) * x / (a + pq_integer(n, pq));
  return out;
}

std::vector<BoundAuditRow> bound_audit(std::span<const unsigned> n_list,
                                       std::span<const PQParams> pq_list,
                                       std::span<const double> x_grid) {
  std::vector<BoundAuditRow> rows;
  rows.reserve(n_list.size() * pq_list.size() * x_grid.size());
  for (unsigned n : n_list) {
    for (const PQParams& pq : pq_list) {
      for (double x : x_grid) {
        const CentralMoments cm = central_moments(n, x, pq);
        BoundAuditRow row;
        row.n = n;
        row.p = pq.p();
        row.q = pq.q();
        row.x = x;
        row.first_actual_abs = std::fabs(cm.first);
        row.first_bound_claimed = cm.first_bound_claimed;
        row.first_violated = flag_exceeds(row.first_actual_abs, cm.first_bound_claimed);
        row.second_actual = cm.second;
        row.second_bound_claimed = cm.second_bound_claimed;
        row.second_violated = flag_exceeds(cm.second, cm.second_bound_claimed);
        rows.push_back(row);
      }
    }
  }
  return rows;
}

double auxiliary_operator(const RealFn& f, unsigned n, double x, const PQParams& pq,
                          const TruncationPolicy& policy) {
  const double r = r_n(x, n, pq);
  const SeriesEval king = eval_series(f, n, r, pq, policy);
  const double fx = f(x);
  const double fr = f(r);
  if (!std::isfinite(fx) || !std::isfinite(fr)) {
    throw EvaluationError("function value is not finite in auxiliary operator");
  }
  return king.value + fx - fr;
}

}  // namespace pqbask

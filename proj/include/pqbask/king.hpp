#pragma once

// King-type modification of the (p,q)-Baskakov operator that reproduces x^2:
//
//   B*_{n,p,q}(f; x) = B_{n,p,q}(f; r_n(x))
//
// where r_n(x) is the non-negative root of
//
//   ([n] + p^n/q) r^2 + p^(n-1) r - [n] x^2 = 0.

#include <span>
#include <vector>

#include "pqbask/baskakov.hpp"

namespace pqbask {

/// r_n(x); rationalized form when 4[n]([n]+p^n/q)x^2 < p^(2n-2), direct root otherwise.
double r_n(double x, unsigned n, const PQParams& pq);

/// (-p^(n-1) + sqrt(disc)) / (2([n]+p^n/q)). Loses accuracy as x -> 0.
double r_n_direct(double x, unsigned n, const PQParams& pq);

/// 2[n]x^2 / (p^(n-1) + sqrt(disc)). Free of cancellation.
double r_n_rationalized(double x, unsigned n, const PQParams& pq);

SeriesEval eval_king(const RealFn& f, unsigned n, double x, const PQParams& pq,
                     const TruncationPolicy& policy = {});

/// 1, r_n(x), x^2 for i = 0, 1, 2.
double king_moment_closed(unsigned i, unsigned n, double x, const PQParams& pq);

/// (sqrt(p^n/q) - p^n/(q sqrt[n])) / (sqrt[n] + p^n/(q sqrt[n])), the factor
/// multiplying x in the claimed first-moment bound. Negative for n = 1.
double first_moment_coefficient(unsigned n, const PQParams& pq);

struct CentralMoments {
  double first = 0.0;   // B*(t - x; x)
  double second = 0.0;  // B*((t - x)^2; x)
  double first_bound_claimed = 0.0;
  double second_bound_claimed = 0.0;
};

CentralMoments central_moments(unsigned n, double x, const PQParams& pq);

struct BoundAuditRow {
  unsigned n = 0;
  double p = 0.0;
  double q = 0.0;
  double x = 0.0;
  double first_actual_abs = 0.0;
  double first_bound_claimed = 0.0;
  bool first_violated = false;
  double second_actual = 0.0;
  double second_bound_claimed = 0.0;
  bool second_violated = false;
};

/// Checks the claimed central-moment bounds at every (n, pq, x) combination,
/// in that nesting order.
std::vector<BoundAuditRow> bound_audit(std::span<const unsigned> n_list,
                                       std::span<const PQParams> pq_list,
                                       std::span<const double> x_grid);

/// B*(f; x) + f(x) - f(r_n(x)); reproduces 1 and t.
double auxiliary_operator(const RealFn& f, unsigned n, double x, const PQParams& pq,
                          const TruncationPolicy& policy = {});

}  // namespace pqbask

#pragma once

// The (p,q)-Baskakov operator
//
//   B_{n,p,q}(f; r) = sum_{k>=0} b_{n,k}(r) f(node_{n,k})
//
// with weights
//
//   b_{n,k}(r) = [n+k-1 choose k] p^(k + n(n-1)/2) q^(k(k-1)/2) r^k / (1 (+) r)^(n+k)
//
// and nodes p^(n-1) [k] / (q^(k-1) [n]). The series is infinite; it is summed
// in increasing k with compensated summation until the unaccumulated basis
// mass drops below the policy tolerance.

#include <cstddef>
#include <vector>

#include "pqbask/pq_core.hpp"

namespace pqbask {

struct TruncationPolicy {
  double tail_tolerance = 1e-12;
  std::size_t max_terms = 10000;
  unsigned growth_exponent = 2;

  /// Throws ConfigError on tail_tolerance <= 0 or max_terms == 0.
  void validate() const;
};

struct SeriesEval {
  double value = 0.0;
  std::size_t terms_used = 0;
  double accumulated_weight = 0.0;
  double tail_error_estimate = 0.0;
  bool converged = false;
};

struct BasisTerm {
  unsigned k = 0;
  double weight = 0.0;
  double node = 0.0;
};

/// Basis weights and nodes until the policy is met, plus the first unvisited node.
struct BasisExpansion {
  std::vector<BasisTerm> terms;
  double accumulated_weight = 0.0;
  double next_node = 0.0;
  bool converged = false;
};

double node(unsigned n, unsigned k, const PQParams& pq);

/// b_{n,k}(r), evaluated directly in log space from the definition.
double basis_weight(unsigned n, unsigned k, double r, const PQParams& pq);

/// log b_{n,k}(r); -inf when r = 0 and k > 0.
double log_basis_weight(unsigned n, unsigned k, double r, const PQParams& pq);

/// Weights generated by the term-ratio recurrence b_{k+1}/b_k.
BasisExpansion expand_basis(unsigned n, double r, const PQParams& pq,
                            const TruncationPolicy& policy = {});

/// B_{n,p,q}(f; r). r = 0 short-circuits to f(0).
SeriesEval eval_series(const RealFn& f, unsigned n, double r, const PQParams& pq,
                       const TruncationPolicy& policy = {});

/// Closed-form B_{n,p,q}(t^i; x) for i in {0,1,2}.
double moment_closed(unsigned i, unsigned n, double x, const PQParams& pq);

}  // namespace pqbask

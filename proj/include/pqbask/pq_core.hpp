#pragma once

// (p,q)-calculus primitives: deformed integers, factorials, binomials,
// the product-form power (1 (+) x)^n_{p,q} and the (p,q)-difference operator.
//
// Every routine works on the parameter domain 0 < q < p <= 1 carried by
// PQParams. Integers are evaluated as the subtraction-free sum
// sum_{j<n} p^(n-1-j) q^j, which stays accurate as q approaches p.

#include <functional>
#include <vector>

namespace pqbask {

using RealFn = std::function<double(double)>;

class PQParams {
 public:
  /// Throws DomainError unless 0 < q < p <= 1.
  PQParams(double p, double q);

  double p() const noexcept { return p_; }
  double q() const noexcept { return q_; }
  /// q / p, always in (0, 1).
  double ratio() const noexcept { return q_ / p_; }

  friend bool operator==(const PQParams&, const PQParams&) = default;

 private:
  double p_;
  double q_;
};

/// [n]_{p,q}
double pq_integer(unsigned n, const PQParams& pq);

/// [n]_{p,q}! with [0]! = 1.
double pq_factorial(unsigned n, const PQParams& pq);

/// (p,q)-binomial coefficient [n choose k]. Uses the ratio recurrence, or the
/// log-space path for n > 150. Throws DomainError when k > n.
double pq_binomial(unsigned n, unsigned k, const PQParams& pq);

/// log [n choose k]_{p,q}; finite for every k <= n.
double pq_log_binomial(unsigned n, unsigned k, const PQParams& pq);

/// (1 (+) x)^n_{p,q} = prod_{j<n} (p^j + q^j x). Throws DomainError for x < 0.
double pq_rising_power(double x, unsigned n, const PQParams& pq);

/// sum_{j<n} log(p^j + q^j x); overflow-safe companion of pq_rising_power.
double pq_log_rising_power(double x, unsigned n, const PQParams& pq);

/// Coefficients [n choose k]_{p,q}, k = 0..n, of the expansion form of the
/// (p,q)-power. Note this expansion does not equal the product form for p != q.
std::vector<double> pq_power_expand(unsigned n, const PQParams& pq);

/// (D_{p,q} f)(x). At x = 0 falls back to a central difference for f'(0)
/// with step 1e-6 * max(1, |f(1)|). Non-finite values raise EvaluationError.
double pq_derivative(const RealFn& f, double x, const PQParams& pq);

}  // namespace pqbask

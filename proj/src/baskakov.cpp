#include "pqbask/baskakov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pqbask/errors.hpp"
#include "pqbask/summation.hpp"

namespace pqbask {

namespace {

void check_order(unsigned n) {
  if (n == 0) throw DomainError("operator order n must be >= 1");
}

void check_base_point(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("operator base point must be finite and >= 0");
  }
}

}  // namespace

void TruncationPolicy::validate() const {
  if (!(tail_tolerance > 0.0)) throw ConfigError("tail_tolerance must be > 0");
  if (max_terms == 0) throw ConfigError("max_terms must be >= 1");
}

double node(unsigned n, unsigned k, const PQParams& pq) {
  check_order(n);
  // [k]_{p,q} / q^(k-1) = sum_{i<k} (p/q)^i
  const double growth = pq.p() / pq.q();
  double s = 0.0;
  double g = 1.0;
  for (unsigned i = 0; i < k; ++i) {
    s += g;
    g *= growth;
  }
  return std::pow(pq.p(), n - 1.0) * s / pq_integer(n, pq);
}

double log_basis_weight(unsigned n, unsigned k, double r, const PQParams& pq) {
  check_order(n);
  check_base_point(r);
  if (k == 0 && r == 0.0) return 0.0;
  if (r == 0.0) return -std::numeric_limits<double>::infinity();
  const double kk = k;
  const double nn = n;
  const double log_p = std::log(pq.p());
  const double log_q = std::log(pq.q());
  return pq_log_binomial(n + k - 1, k, pq) +
         (kk + nn * (nn - 1.0) / 2.0) * log_p + kk * (kk - 1.0) / 2.0 * log_q +
         kk * std::log(r) - pq_log_rising_power(r, n + k, pq);
}

double basis_weight(unsigned n, unsigned k, double r, const PQParams& pq) {
  return std::exp(log_basis_weight(n, k, r, pq));
}

BasisExpansion expand_basis(unsigned n, double r, const PQParams& pq,
                            const TruncationPolicy& policy) {
  check_order(n);
  check_base_point(r);
  policy.validate();

  BasisExpansion out;
  if (r == 0.0) {
    out.terms.push_back({0, 1.0, 0.0});
    out.accumulated_weight = 1.0;
    out.next_node = node(n, 1, pq);
    out.converged = true;
    return out;
  }

  // With rho = q/p the recurrence is free of vanishing powers of p and q:
  //   b_0 = 1 / prod_{j<n} (1 + rho^j r)
  //   b_{k+1} / b_k = ([n+k]_rho / [k+1]_rho) rho^k r / (1 + rho^(n+k) r)
  // [m]_rho is the rho-integer sum_{j<m} rho^j.
  const double rho = pq.ratio();
  const double log_rho = std::log(rho);
  const double log_r = std::log(r);

  double log_w = 0.0;
  double rho_n_plus_k = 1.0;  // rho^(n+k)
  double int_n_plus_k = 0.0;  // [n+k]_rho
  for (unsigned j = 0; j < n; ++j) {
    log_w -= std::log1p(rho_n_plus_k * r);
    int_n_plus_k += rho_n_plus_k;
    rho_n_plus_k *= rho;
  }
  double int_k_plus_1 = 1.0;  // [k+1]_rho
  double rho_k = 1.0;         // rho^k

  // Nodes: p^(n-1)/[n] * sum_{i<k} (p/q)^i
  const double node_scale = std::pow(pq.p(), n - 1.0) / pq_integer(n, pq);
  const double node_growth = pq.p() / pq.q();
  double node_sum = 0.0;
  double growth_pow = 1.0;

  const double growth_m = policy.growth_exponent;
  CompensatedSum mass;
  bool past_peak = false;
  for (std::size_t k = 0; k < policy.max_terms; ++k) {
    const double w = std::exp(log_w);
    out.terms.push_back({static_cast<unsigned>(k), w, node_scale * node_sum});
    mass.add(w);
    node_sum += growth_pow;
    growth_pow *= node_growth;

    const double log_ratio = std::log(int_n_plus_k) - std::log(int_k_plus_1) +
                             static_cast<double>(k) * log_rho + log_r -
                             std::log1p(rho_n_plus_k * r);
    if (log_ratio < 0.0) past_peak = true;

    // Converged once the missing mass is below tolerance and the next term,
    // weighted by the declared growth (1 + node^m), is too.
    if (1.0 - mass.value() <= policy.tail_tolerance && past_peak) {
      const double next_w = std::exp(log_w + log_ratio);
      const double next_t = node_scale * node_sum;
      if (next_w * (1.0 + std::pow(next_t, growth_m)) <= policy.tail_tolerance) {
        out.converged = true;
        break;
      }
    }
    // Past the mode every remaining weight is below this one; once it has
    // underflowed nothing more can be accumulated.
    if (past_peak && w == 0.0) break;

    log_w += log_ratio;
    int_n_plus_k += rho_n_plus_k;
    rho_n_plus_k *= rho;
    rho_k *= rho;
    int_k_plus_1 += rho_k;
  }
  out.accumulated_weight = mass.value();
  out.next_node = node_scale * node_sum;
  return out;
}

SeriesEval eval_series(const RealFn& f, unsigned n, double r, const PQParams& pq,
                       const TruncationPolicy& policy) {
  const BasisExpansion basis = expand_basis(n, r, pq, policy);
  const double m = policy.growth_exponent;

  CompensatedSum acc;
  double growth_const = 0.0;  // M_f estimate for |f(t)| <= M_f (1 + t^m)
  for (const BasisTerm& t : basis.terms) {
    const double fv = f(t.node);
    if (!std::isfinite(fv)) {
      std::ostringstream os;
      os << "function value is not finite at node " << t.node << " (k = " << t.k
         << ")";
      throw EvaluationError(os.str());
    }
    acc.add(t.weight * fv);
    growth_const =
        std::max(growth_const, std::fabs(fv) / (1.0 + std::pow(t.node, m)));
  }

  SeriesEval out;
  out.value = acc.value();
  out.terms_used = basis.terms.size();
  out.accumulated_weight = basis.accumulated_weight;
  out.converged = basis.converged;
  const double missing = std::max(0.0, 1.0 - basis.accumulated_weight);
  out.tail_error_estimate =
      missing * growth_const * (1.0 + std::pow(basis.next_node, m));
  return out;
}

double moment_closed(unsigned i, unsigned n, double x, const PQParams& pq) {
  check_order(n);
  switch (i) {
    case 0:
      return 1.0;
    case 1:
      return x;
    case 2:
      return x * x + std::pow(pq.p(), n - 1.0) * x / pq_integer(n, pq) *
                         (1.0 + pq.p() / pq.q() * x);
    default:
      throw DomainError("closed-form moments exist for i in {0,1,2} only");
  }
}

}  // namespace pqbask

#include "pqbask/pq_core.hpp"

#include <cmath>
#include <sstream>

#include "pqbask/errors.hpp"

namespace pqbask {

namespace {

// log [m]_{p,q} for m = 1..n, using [m]_{p,q} = p^(m-1) [m]_rho with rho = q/p.
std::vector<double> log_pq_integers(unsigned n, const PQParams& pq) {
  std::vector<double> out(n + 1, 0.0);
  const double rho = pq.ratio();
  const double log_p = std::log(pq.p());
  double rho_int = 0.0;  // [m]_rho
  double rho_pow = 1.0;  // rho^(m-1)
  for (unsigned m = 1; m <= n; ++m) {
    rho_int += rho_pow;
    rho_pow *= rho;
    out[m] = (m - 1) * log_p + std::log(rho_int);
  }
  return out;
}

void require_finite(double v, double at) {
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "function value is not finite at x = " << at;
    throw EvaluationError(os.str());
  }
}

}  // namespace

PQParams::PQParams(double p, double q) : p_(p), q_(q) {
  if (!(q > 0.0 && q < p && p <= 1.0)) {
    std::ostringstream os;
    os << "(p,q) = (" << p << ", " << q << ") requires 0 < q < p <= 1";
    throw DomainError(os.str());
  }
}

double pq_integer(unsigned n, const PQParams& pq) {
  // sum_{j<n} p^(n-1-j) q^j, Horner-style: s_{m+1} = p s_m + q^m
  double s = 0.0;
  double q_pow = 1.0;
  for (unsigned m = 0; m < n; ++m) {
    s = pq.p() * s + q_pow;
    q_pow *= pq.q();
  }
  return s;
}

double pq_factorial(unsigned n, const PQParams& pq) {
  double out = 1.0;
  for (unsigned m = 1; m <= n; ++m) out *= pq_integer(m, pq);
  return out;
}

double pq_log_binomial(unsigned n, unsigned k, const PQParams& pq) {
  if (k > n) throw DomainError("binomial requires k <= n");
  const auto lg = log_pq_integers(n, pq);
  double acc = 0.0;
  for (unsigned i = 1; i <= k; ++i) acc += lg[n - k + i] - lg[i];
  return acc;
}

double pq_binomial(unsigned n, unsigned k, const PQParams& pq) {
  if (k > n) throw DomainError("binomial requires k <= n");
  if (n > 150) return std::exp(pq_log_binomial(n, k, pq));
  // [n choose j+1] = [n choose j] * [n-j] / [j+1]
  double c = 1.0;
  for (unsigned j = 0; j < k; ++j) {
    c *= pq_integer(n - j, pq) / pq_integer(j + 1, pq);
  }
  return c;
}

double pq_rising_power(double x, unsigned n, const PQParams& pq) {
  if (x < 0.0) throw DomainError("(1 (+) x)^n requires x >= 0");
  double out = 1.0;
  double p_pow = 1.0;
  double q_pow = 1.0;
  for (unsigned j = 0; j < n; ++j) {
    out *= p_pow + q_pow * x;
    p_pow *= pq.p();
    q_pow *= pq.q();
  }
  return out;
}

double pq_log_rising_power(double x, unsigned n, const PQParams& pq) {
  if (x < 0.0) throw DomainError("(1 (+) x)^n requires x >= 0");
  // log(p^j + q^j x) = j log p + log1p(rho^j x)
  const double log_p = std::log(pq.p());
  const double log_rho = std::log(pq.ratio());
  double acc = 0.0;
  for (unsigned j = 0; j < n; ++j) {
    acc += j * log_p + std::log1p(std::exp(j * log_rho) * x);
  }
  return acc;
}

std::vector<double> pq_power_expand(unsigned n, const PQParams& pq) {
  std::vector<double> coeffs(n + 1);
  for (unsigned k = 0; k <= n; ++k) coeffs[k] = pq_binomial(n, k, pq);
  return coeffs;
}

double pq_derivative(const RealFn& f, double x, const PQParams& pq) {
  if (x == 0.0) {
    const double f1 = f(1.0);
    require_finite(f1, 1.0);
    const double h = 1e-6 * std::max(1.0, std::fabs(f1));
    const double hi = f(h);
    const double lo = f(-h);
    require_finite(hi, h);
    require_finite(lo, -h);
    return (hi - lo) / (2.0 * h);
  }
  const double fp = f(pq.p() * x);
  const double fq = f(pq.q() * x);
  require_finite(fp, pq.p() * x);
  require_finite(fq, pq.q() * x);
  return (fp - fq) / ((pq.p() - pq.q()) * x);
}

}  // namespace pqbask

#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "pqbask/pq_core.hpp"

namespace testing_support {

/// Draws (p, q) with 0 < q <= p - 0.01, p in [0.5, 1]; one draw in eight has p = 1.
class ParamSampler {
 public:
  explicit ParamSampler(unsigned seed) : rng_(seed) {}

  pqbask::PQParams pq() {
    std::uniform_real_distribution<double> pd(0.5, 1.0);
    const double p = (rng_() % 8 == 0) ? 1.0 : pd(rng_);
    std::uniform_real_distribution<double> qd(0.05, p - 0.01);
    return {p, qd(rng_)};
  }

  unsigned n(unsigned lo, unsigned hi) {
    return std::uniform_int_distribution<unsigned>(lo, hi)(rng_);
  }

  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }

 private:
  std::mt19937_64 rng_;
};

inline double rel_err(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  return scale == 0.0 ? 0.0 : std::fabs(a - b) / scale;
}

}  // namespace testing_support

#pragma once

// Grid-based moduli of continuity, weighted sup-norms and the quantitative
// error statements for the King-type operator.
//
// Suprema over [0, inf) are approximated on finite uniform grids, so every
// modulus here is an under-approximation of the true one. Results carry the
// grid step they were computed at.

#include <cstddef>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pqbask/king.hpp"

namespace pqbask {

class Grid {
 public:
  /// Closed on the left; stop is included when (stop - start)/step is
  /// integral within 1e-9. Throws DomainError unless 0 <= start < stop, step > 0.
  Grid(double start, double stop, double step);

  double start() const noexcept { return start_; }
  double stop() const noexcept { return stop_; }
  double step() const noexcept { return step_; }
  std::span<const double> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }

 private:
  double start_;
  double stop_;
  double step_;
  std::vector<double> points_;
};

struct SupEstimate {
  double value = 0.0;
  double x_at = 0.0;      // grid abscissa attaining the supremum
  double shift_at = 0.0;  // shift h attaining it (moduli only)
  double resolution = 0.0;
};

/// omega(f, delta): sup over grid x and h in {0, step, 2 step, ...} U {delta}
/// with h <= delta of |f(x+h) - f(x)|.
SupEstimate modulus(const RealFn& f, double delta, const Grid& grid);

/// omega_2(f, delta): sup over h in [0, sqrt(delta)] of |f(x+2h) - 2f(x+h) + f(x)|.
SupEstimate modulus2(const RealFn& f, double delta, const Grid& grid);

/// ||f||_m = sup |f(x)| / (1 + x^m).
SupEstimate weighted_norm(const RealFn& f, unsigned m, const Grid& grid);

/// Maps n to (p_n, q_n).
using Schedule = std::function<std::pair<double, double>(unsigned)>;

struct ConvergenceRow {
  unsigned n = 0;
  double p_n = 0.0;
  double q_n = 0.0;
  double bracket_n = 0.0;
  double norm_e0 = 0.0;
  double norm_e1 = 0.0;
  double norm_e2 = 0.0;
  /// Upper bound of (x - r_n(x))/(1 + x^2) for x beyond the grid.
  double norm_e1_tail_bound = 0.0;
};

/// ||B* e_i - e_i||_2 for i = 0, 1, 2 from the closed-form moments. Throws
/// ConfigError naming n when the schedule leaves 0 < q_n < p_n <= 1.
std::vector<ConvergenceRow> convergence_study(const Schedule& schedule,
                                              std::span<const unsigned> n_list,
                                              const Grid& grid);

/// delta_n(x). By default the first term carries x^2, as the bound is derived;
/// as_printed drops it.
double theorem2_delta(unsigned n, double x, const PQParams& pq, bool as_printed = false);

struct Theorem2Row {
  double x = 0.0;
  double lhs = 0.0;  // |B*(f;x) - f(x)|
  double delta_n = 0.0;
  double omega2_part = 0.0;  // omega_2(f, sqrt(delta_n(x)))
  double omega_part = 0.0;   // omega(f, c x)
  double m_required = 0.0;   // max(0, (lhs - omega_part) / omega2_part)
};

struct Theorem2Report {
  std::vector<Theorem2Row> rows;
  double m_required_max = 0.0;
  double modulus_step = 0.0;
};

/// Empirical constant M needed for |B*(f;x) - f(x)| <= M omega_2 + omega at
/// each x of eval_grid. Moduli are taken on modulus_grid. M_required is +inf
/// where omega_2 vanishes but the remaining gap is positive.
Theorem2Report theorem2_report(const RealFn& f, unsigned n, const PQParams& pq,
                               const Grid& eval_grid, const Grid& modulus_grid,
                               const TruncationPolicy& policy = {},
                               bool as_printed = false);

/// 2c x + p^(n-1)/(p^n/q + [n]) with c = first_moment_coefficient.
double theorem3_radicand(unsigned n, double x, const PQParams& pq);

/// 2 omega(f*, sqrt(radicand)) with f*(z) = f(z^2). A negative radicand is a
/// parameter-regime error and raises DomainError.
double theorem3_bound(const RealFn& f, unsigned n, double x, const PQParams& pq,
                      const Grid& grid);

}  // namespace pqbask

#include "pqbask/error_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pqbask/errors.hpp"

namespace pqbask {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double checked(const RealFn& f, double x) {
  const double v = f(x);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "function value is not finite at x = " << x;
    throw EvaluationError(os.str());
  }
  return v;
}

// f at start + i*step for i = 0..count-1
std::vector<double> sample(const RealFn& f, const Grid& grid, std::size_t count) {
  std::vector<double> v(count);
  for (std::size_t i = 0; i < count; ++i) {
    v[i] = checked(f, grid.start() + static_cast<double>(i) * grid.step());
  }
  return v;
}

std::size_t whole_steps(double h, double step) {
  return static_cast<std::size_t>(std::floor(h / step + 1e-9));
}

void check_delta(double delta) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw DomainError("modulus requires a finite delta >= 0");
  }
}

}  // namespace

Grid::Grid(double start, double stop, double step)
    : start_(start), stop_(stop), step_(step) {
  if (!(start >= 0.0) || !(stop > start) || !(step > 0.0) || !std::isfinite(stop)) {
    throw DomainError("grid requires 0 <= start < stop and step > 0");
  }
  const double span = (stop - start) / step;
  const double nearest = std::round(span);
  const bool closed = std::fabs(span - nearest) <= 1e-9;
  const auto last = static_cast<std::size_t>(closed ? nearest : std::floor(span));
  points_.reserve(last + 1);
  for (std::size_t i = 0; i <= last; ++i) {
    points_.push_back(start + static_cast<double>(i) * step);
  }
  if (closed) points_.back() = stop;
}

SupEstimate modulus(const RealFn& f, double delta, const Grid& grid) {
  check_delta(delta);
  const std::size_t n = grid.size();
  const std::size_t shifts = whole_steps(delta, grid.step());
  const auto v = sample(f, grid, n + shifts);
  const auto pts = grid.points();

  SupEstimate out;
  out.resolution = grid.step();
  for (std::size_t h = 1; h <= shifts; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::fabs(v[i + h] - v[i]);
      if (d > out.value) {
        out.value = d;
        out.x_at = pts[i];
        out.shift_at = static_cast<double>(h) * grid.step();
      }
    }
  }
  if (delta > static_cast<double>(shifts) * grid.step()) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::fabs(checked(f, pts[i] + delta) - v[i]);
      if (d > out.value) {
        out.value = d;
        out.x_at = pts[i];
        out.shift_at = delta;
      }
    }
  }
  return out;
}

SupEstimate modulus2(const RealFn& f, double delta, const Grid& grid) {
  check_delta(delta);
  const double h_max = std::sqrt(delta);
  const std::size_t n = grid.size();
  const std::size_t shifts = whole_steps(h_max, grid.step());
  const auto v = sample(f, grid, n + 2 * shifts);
  const auto pts = grid.points();

  SupEstimate out;
  out.resolution = grid.step();
  for (std::size_t h = 1; h <= shifts; ++h) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::fabs(v[i + 2 * h] - 2.0 * v[i + h] + v[i]);
      if (d > out.value) {
        out.value = d;
        out.x_at = pts[i];
        out.shift_at = static_cast<double>(h) * grid.step();
      }
    }
  }
  if (h_max > static_cast<double>(shifts) * grid.step()) {
    for (std::size_t i = 0; i < n; ++i) {
      const double d = std::fabs(checked(f, pts[i] + 2.0 * h_max) -
                                 2.0 * checked(f, pts[i] + h_max) + v[i]);
      if (d > out.value) {
        out.value = d;
        out.x_at = pts[i];
        out.shift_at = h_max;
      }
    }
  }
  return out;
}

SupEstimate weighted_norm(const RealFn& f, unsigned m, const Grid& grid) {
  SupEstimate out;
  out.resolution = grid.step();
  for (double x : grid.points()) {
    const double w = std::fabs(checked(f, x)) / (1.0 + std::pow(x, static_cast<double>(m)));
    if (w > out.value) {
      out.value = w;
      out.x_at = x;
    }
  }
  return out;
}

std::vector<ConvergenceRow> convergence_study(const Schedule& schedule,
                                              std::span<const unsigned> n_list,
                                              const Grid& grid) {
  std::vector<ConvergenceRow> rows;
  for (unsigned n : n_list) {
    if (n == 0) throw ConfigError("schedule requested at n = 0; n must be >= 1");
    const auto [p, q] = schedule(n);
    if (!(q > 0.0 && q < p && p <= 1.0)) {
      std::ostringstream os;
      os << "schedule violates 0 < q_n < p_n <= 1 at n = " << n << " (p_n = " << p
         << ", q_n = " << q << ")";
      throw ConfigError(os.str());
    }
    const PQParams pq(p, q);
    ConvergenceRow row;
    row.n = n;
    row.p_n = p;
    row.q_n = q;
    row.bracket_n = pq_integer(n, pq);
    auto gap = [&](unsigned i) {
      return [&, i](double x) { return king_moment_closed(i, n, x, pq) - std::pow(x, i); };
    };
    row.norm_e0 = weighted_norm(gap(0), 2, grid).value;
    row.norm_e1 = weighted_norm(gap(1), 2, grid).value;
    row.norm_e2 = weighted_norm(gap(2), 2, grid).value;

    // r_n(x) >= x sqrt([n]/A) - p^(n-1)/(2A), A = [n] + p^n/q, hence beyond
    // the grid (x - r_n)/(1+x^2) <= (1 - sqrt([n]/A))/stop + p^(n-1)/(2A(1+stop^2)).
    const double lead = row.bracket_n + std::pow(p, static_cast<double>(n)) / q;
    const double stop = grid.points().back();
    row.norm_e1_tail_bound =
        (1.0 - std::sqrt(row.bracket_n / lead)) / stop +
        std::pow(p, n - 1.0) / (2.0 * lead * (1.0 + stop * stop));
    rows.push_back(row);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.n < b.n; });
  return rows;
}

double theorem2_delta(unsigned n, double x, const PQParams& pq, bool as_printed) {
  if (!(x >= 0.0)) throw DomainError("delta_n requires x >= 0");
  const double c = first_moment_coefficient(n, pq);
  const double a = std::pow(pq.p(), static_cast<double>(n)) / pq.q();
  const double second = std::pow(pq.p(), n - 1.0) * x / (a + pq_integer(n, pq));
  return 3.0 * c * (as_printed ? 1.0 : x * x) + second;
}

Theorem2Report theorem2_report(const RealFn& f, unsigned n, const PQParams& pq,
                               const Grid& eval_grid, const Grid& modulus_grid,
                               const TruncationPolicy& policy, bool as_printed) {
  const double c = first_moment_coefficient(n, pq);
  Theorem2Report report;
  report.modulus_step = modulus_grid.step();
  for (double x : eval_grid.points()) {
    Theorem2Row row;
    row.x = x;
    const SeriesEval king = eval_king(f, n, x, pq, policy);
    const double fx = checked(f, x);
    row.lhs = std::fabs(king.value - fx);
    // gaps below truncation and rounding noise count as zero
    const double noise = king.tail_error_estimate + 64.0 * kEps * std::max(1.0, std::fabs(fx));
    row.delta_n = theorem2_delta(n, x, pq, as_printed);
    if (row.delta_n < 0.0) throw DomainError("delta_n(x) is negative for this (n, p, q)");
    if (c * x < 0.0) throw DomainError("first-moment coefficient is negative for this (n, p, q)");
    row.omega2_part = modulus2(f, std::sqrt(row.delta_n), modulus_grid).value;
    row.omega_part = modulus(f, c * x, modulus_grid).value;
    const double gap = row.lhs - row.omega_part;
    if (gap <= noise) {
      row.m_required = 0.0;
    } else if (row.omega2_part > 0.0) {
      row.m_required = gap / row.omega2_part;
    } else {
      row.m_required = std::numeric_limits<double>::infinity();
    }
    report.m_required_max = std::max(report.m_required_max, row.m_required);
    report.rows.push_back(row);
  }
  return report;
}

double theorem3_radicand(unsigned n, double x, const PQParams& pq) {
  if (!(x >= 0.0)) throw DomainError("theorem 3 bound requires x >= 0");
  const double c = first_moment_coefficient(n, pq);
  const double a = std::pow(pq.p(), static_cast<double>(n)) / pq.q();
  return 2.0 * c * x + std::pow(pq.p(), n - 1.0) / (a + pq_integer(n, pq));
}

double theorem3_bound(const RealFn& f, unsigned n, double x, const PQParams& pq,
                      const Grid& grid) {
  const double radicand = theorem3_radicand(n, x, pq);
  if (radicand < 0.0) {
    std::ostringstream os;
    os << "negative radicand " << radicand << " at n = " << n << ", x = " << x
       << ": (p,q) outside the bound's regime";
    throw DomainError(os.str());
  }
  const RealFn f_star = [&f](double z) { return f(z * z); };
  return 2.0 * modulus(f_star, std::sqrt(radicand), grid).value;
}

}  // namespace pqbask

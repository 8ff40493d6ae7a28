#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracle.hpp"
#include "pqbask/errors.hpp"
#include "pqbask/king.hpp"
#include "random_params.hpp"

using namespace pqbask;
using testing_support::rel_err;

namespace {
const PQParams kDesk{0.9, 0.8};
const PQParams kNear{0.99, 0.98};
const std::vector<PQParams> kParams{{1.0, 0.9}, {0.9, 0.8}, {0.99, 0.98}};
const std::vector<unsigned> kOrders{1, 2, 5, 10};

// 50-digit reference values
constexpr double kR2 = 0.64295888655907400865;   // r_2(1), p = 0.9, q = 0.8
constexpr double kR10 = 0.90486501776415474345;  // r_10(1), p = 0.99, q = 0.98
constexpr double kC2 = 0.11040153966458713583;   // first-bound coefficient, n = 2
constexpr double kSecondBound2 = 0.55260031435221574632;
constexpr double kC10 = 0.19843952439714680619;
constexpr double kSecondBound10 = 0.49150712236289478506;

std::vector<double> audit_grid() {
  std::vector<double> xs;
  for (int i = 0; i <= 20; ++i) xs.push_back(0.25 * i);
  return xs;
}
}  // namespace

TEST_CASE("r_n examples") {
  CHECK(r_n(0.0, 3, kDesk) == 0.0);
  CHECK(r_n(1.0, 2, kDesk) == doctest::Approx(kR2).epsilon(1e-14));
  CHECK(r_n(1.0, 10, kNear) == doctest::Approx(kR10).epsilon(1e-14));
  CHECK_THROWS_AS(r_n(-0.1, 2, kDesk), DomainError);
  CHECK_THROWS_AS(r_n(1.0, 0, kDesk), DomainError);
}

TEST_CASE("r_n against the extended-precision root") {
  for (const auto& pq : kParams) {
    for (unsigned n : {1u, 2u, 10u, 100u}) {
      for (double x : {1e-8, 1e-5, 1e-3, 0.1, 1.0, 7.5, 1e4}) {
        const double expected = static_cast<double>(oracle::r_n(x, n, pq.p(), pq.q()));
        CHECK(rel_err(r_n(x, n, pq), expected) < 1e-14);
        CHECK(rel_err(r_n_rationalized(x, n, pq), expected) < 1e-14);
      }
    }
  }
}

TEST_CASE("direct root agrees with the rationalized form where it is well conditioned") {
  for (const auto& pq : kParams) {
    for (unsigned n : kOrders) {
      const double bracket = pq_integer(n, pq);
      const double lead = bracket + std::pow(pq.p(), static_cast<double>(n)) / pq.q();
      const double lin = std::pow(pq.p(), n - 1.0);
      // smallest x on the direct branch: 4 lead [n] x^2 = lin^2
      const double crossover = lin / std::sqrt(4.0 * lead * bracket);
      for (double x = crossover; x < 50.0; x *= 1.7) {
        CHECK(rel_err(r_n_direct(x, n, pq), r_n_rationalized(x, n, pq)) < 1e-12);
      }
    }
  }
}

TEST_CASE("property: quadratic residual and 0 <= r_n <= x") {
  testing_support::ParamSampler s(8080);
  for (int draw = 0; draw < 300; ++draw) {
    const PQParams pq = s.pq();
    const unsigned n = s.n(1, 60);
    const double x = s.real(0.0, 20.0);
    const double r = r_n(x, n, pq);
    const double bracket = pq_integer(n, pq);
    const double lead = bracket + std::pow(pq.p(), static_cast<double>(n)) / pq.q();
    const double residual = lead * r * r + std::pow(pq.p(), n - 1.0) * r - bracket * x * x;
    CHECK(std::fabs(residual) <= 1e-10 * bracket * x * x + 1e-300);
    CHECK(r >= 0.0);
    CHECK(r <= x);
  }
}

TEST_CASE("eval_king examples") {
  const auto sq = eval_king([](double t) { return t * t; }, 2, 1.0, kDesk);
  CHECK(std::fabs(sq.value - 1.0) < 1e-8);
  const auto lin = eval_king([](double t) { return t; }, 2, 1.0, kDesk);
  CHECK(std::fabs(lin.value - kR2) < 1e-8);
  for (const auto& pq : kParams) {
    for (double x : {0.0, 0.3, 4.0}) {
      CHECK(std::fabs(eval_king([](double) { return 1.0; }, 7, x, pq).value - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("king_moment_closed") {
  CHECK(king_moment_closed(2, 4, 3.7, kDesk) == doctest::Approx(13.69).epsilon(1e-15));
  CHECK(king_moment_closed(1, 2, 1.0, kDesk) == doctest::Approx(kR2).epsilon(1e-14));
  CHECK(king_moment_closed(0, 2, 1.0, kDesk) == 1.0);
  CHECK_THROWS_AS(king_moment_closed(3, 2, 1.0, kDesk), DomainError);
}

TEST_CASE("central_moments") {
  const auto zero = central_moments(2, 0.0, kDesk);
  CHECK(zero.first == 0.0);
  CHECK(zero.second == 0.0);

  const auto desk = central_moments(2, 1.0, kDesk);
  CHECK(desk.first == doctest::Approx(kR2 - 1.0).epsilon(1e-13));
  CHECK(desk.second == doctest::Approx(2.0 - 2.0 * kR2).epsilon(1e-13));
  CHECK(desk.first_bound_claimed == doctest::Approx(kC2).epsilon(1e-13));
  CHECK(desk.second_bound_claimed == doctest::Approx(kSecondBound2).epsilon(1e-13));
  // the claimed bounds fail here
  CHECK(std::fabs(desk.first) > desk.first_bound_claimed);
  CHECK(desk.second > desk.second_bound_claimed);

  const auto near = central_moments(10, 1.0, kNear);
  CHECK(near.first == doctest::Approx(kR10 - 1.0).epsilon(1e-13));
  CHECK(near.second == doctest::Approx(2.0 - 2.0 * kR10).epsilon(1e-13));
  CHECK(near.first_bound_claimed == doctest::Approx(kC10).epsilon(1e-13));
  CHECK(near.second_bound_claimed == doctest::Approx(kSecondBound10).epsilon(1e-13));
  CHECK(std::fabs(near.first) <= near.first_bound_claimed);
  CHECK(near.second <= near.second_bound_claimed);

  CHECK(first_moment_coefficient(1, kDesk) < 0.0);
}

TEST_CASE("bound_audit") {
  const std::vector<unsigned> ns{2, 10};
  const std::vector<PQParams> pqs{kDesk, kNear};
  const std::vector<double> xs{0.0, 1.0};
  const auto rows = bound_audit(ns, pqs, xs);
  REQUIRE(rows.size() == 8);

  auto find = [&](unsigned n, double p, double x) {
    for (const auto& r : rows) {
      if (r.n == n && r.p == p && r.x == x) return r;
    }
    FAIL("row missing");
    return BoundAuditRow{};
  };
  const auto desk = find(2, 0.9, 1.0);
  CHECK(desk.first_violated);
  CHECK(desk.second_violated);
  CHECK(desk.first_actual_abs == doctest::Approx(1.0 - kR2).epsilon(1e-13));
  const auto near = find(10, 0.99, 1.0);
  CHECK_FALSE(near.first_violated);
  CHECK_FALSE(near.second_violated);
  for (const auto& r : rows) {
    if (r.x == 0.0) {
      CHECK_FALSE(r.first_violated);
      CHECK_FALSE(r.second_violated);
      CHECK(r.first_actual_abs == 0.0);
      CHECK(r.second_actual == 0.0);
    }
  }
  // nesting order n, then (p,q), then x
  CHECK(rows[0].n == 2);
  CHECK(rows[0].p == 0.9);
  CHECK(rows[1].x == 1.0);
  CHECK(rows[2].p == 0.99);
  CHECK(rows[4].n == 10);
}

TEST_CASE("auxiliary_operator") {
  CHECK(auxiliary_operator([](double) { return 1.0; }, 2, 1.0, kDesk) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::fabs(auxiliary_operator([](double t) { return t; }, 2, 1.0, kDesk) - 1.0) < 1e-8);
  CHECK(std::fabs(auxiliary_operator([](double t) { return t * t; }, 2, 1.0, kDesk) -
                  1.5866038701947158) < 1e-8);
}

TEST_CASE("King operator identities on the audit grid") {
  const auto one = [](double) { return 1.0; };
  const auto ident = [](double t) { return t; };
  const auto square = [](double t) { return t * t; };
  for (const auto& pq : kParams) {
    for (unsigned n : kOrders) {
      for (double x : audit_grid()) {
        const double r = r_n(x, n, pq);
        CHECK(std::fabs(eval_king(square, n, x, pq).value - x * x) <= 1e-8);
        CHECK(std::fabs(eval_king(ident, n, x, pq).value - r) <= 1e-8);
        CHECK(r >= 0.0);
        CHECK(r <= x);
        CHECK(central_moments(n, x, pq).second >= -1e-12);
        CHECK(std::fabs(auxiliary_operator(one, n, x, pq) - 1.0) <= 1e-9);
        CHECK(std::fabs(auxiliary_operator(ident, n, x, pq) - x) <= 1e-8);
      }
    }
  }
}

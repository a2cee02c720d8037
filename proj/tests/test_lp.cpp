#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rum/lp.hpp"

using namespace rum;
using fx::q;

namespace {

LinearSystem one_var(const char* rhs) {
  LinearSystem sys(1);
  sys.add_equality({{0, Rational(1)}}, q(rhs), "x");
  return sys;
}

LinearSystem random_system(std::mt19937_64& rng, int max_vars, int max_rows) {
  const int nv = 1 + static_cast<int>(rng() % max_vars);
  const int nr = 1 + static_cast<int>(rng() % max_rows);
  LinearSystem sys(nv);
  for (int j = 0; j < nv; ++j) sys.set_nonneg(j, rng() % 4 != 0);
  for (int i = 0; i < nr; ++i) {
    std::vector<Term> terms;
    for (int j = 0; j < nv; ++j) {
      if (rng() % 2 == 0) continue;
      const long c = static_cast<long>(rng() % 7) - 3;
      if (c != 0) terms.push_back({j, Rational(c)});
    }
    const Rational rhs(static_cast<long>(rng() % 7) - 3);
    if (rng() % 2 == 0) {
      sys.add_equality(std::move(terms), rhs, "");
    } else {
      sys.add_inequality(std::move(terms), rhs, "");
    }
  }
  return sys;
}

}  // namespace

TEST_CASE("single-variable examples") {
  auto feasible = solve_feasibility(one_var("1"));
  REQUIRE(feasible.feasible());
  CHECK(feasible.solution() == std::vector<Rational>{Rational(1)});

  const auto sys = one_var("-1");
  auto infeasible = solve_feasibility(sys);
  REQUIRE_FALSE(infeasible.feasible());
  // r·1 ≤ 0 on the nonnegative column and r·(−1) > 0.
  CHECK(infeasible.certificate().multipliers == std::vector<Rational>{Rational(-1)});
  CHECK(verify_certificate(sys, infeasible.certificate()));
  CHECK(verify_certificate(sys, FarkasCertificate{{Rational(-1)}}));
  CHECK_FALSE(verify_certificate(sys, FarkasCertificate{{Rational(1)}}));
  CHECK_FALSE(verify_certificate(sys, FarkasCertificate{{Rational(0)}}));
  CHECK_THROWS_AS(verify_certificate(sys, FarkasCertificate{{Rational(0), Rational(0)}}), Error);
}

TEST_CASE("inequality multipliers must be nonnegative") {
  LinearSystem sys(1, false);
  sys.add_inequality({{0, Rational(1)}}, Rational(2), "lo");   // x ≥ 2
  sys.add_inequality({{0, Rational(-1)}}, Rational(-1), "hi");  // x ≤ 1
  auto r = solve_feasibility(sys);
  REQUIRE_FALSE(r.feasible());
  CHECK(verify_certificate(sys, r.certificate()));
  CHECK(r.certificate().multipliers[0] > 0);
  CHECK(r.certificate().multipliers[1] > 0);
  CHECK_FALSE(verify_certificate(sys, FarkasCertificate{{Rational(-1), Rational(-1)}}));
}

TEST_CASE("free variables and negative right-hand sides") {
  LinearSystem sys(2, false);
  sys.add_equality({{0, Rational(1)}, {1, Rational(1)}}, Rational(-3), "sum");
  sys.add_inequality({{0, Rational(1)}}, Rational(-5), "x0");
  auto r = solve_feasibility(sys);
  REQUIRE(r.feasible());
  CHECK(satisfies(sys, r.solution()));
}

TEST_CASE("identically zero rows") {
  LinearSystem ok(1);
  ok.add_equality({}, Rational(0), "zero");
  ok.add_inequality({}, Rational(-1), "slack");
  CHECK(solve_feasibility(ok).feasible());

  LinearSystem bad(1);
  bad.add_equality({{0, Rational(1)}}, Rational(1), "x");
  bad.add_equality({}, Rational(2), "zero");
  auto r = solve_feasibility(bad);
  REQUIRE_FALSE(r.feasible());
  CHECK(verify_certificate(bad, r.certificate()));
}

TEST_CASE("labels and well-formedness") {
  LinearSystem sys(2);
  sys.add_equality({{0, Rational(1)}}, Rational(1), "row");
  CHECK_THROWS_AS(sys.add_inequality({{1, Rational(1)}}, Rational(1), "row"), Error);
  sys.add_inequality({{1, Rational(1)}}, Rational(0), "other");
  CHECK(sys.find_row("row") == 0);
  CHECK(sys.find_row("other") == 1);
  CHECK_FALSE(sys.find_row("missing").has_value());
  sys.add_equality({{5, Rational(1)}}, Rational(0), "stray");
  CHECK_THROWS_AS(sys.check_well_formed(), Error);
  CHECK_THROWS_AS(solve_feasibility(sys), Error);
}

TEST_CASE("Beale's cycling example terminates at the optimum") {
  // min −3/4 x0 + 150 x1 − 1/50 x2 + 6 x3
  //   1/4 x0 − 60 x1 − 1/25 x2 + 9 x3 ≤ 0
  //   1/2 x0 − 90 x1 − 1/50 x2 + 3 x3 ≤ 0
  //   x2 ≤ 1
  LinearSystem sys(4);
  sys.add_inequality({{0, q("-1/4")}, {1, q("60")}, {2, q("1/25")}, {3, q("-9")}}, Rational(0), "r1");
  sys.add_inequality({{0, q("-1/2")}, {1, q("90")}, {2, q("1/50")}, {3, q("-3")}}, Rational(0), "r2");
  sys.add_inequality({{2, q("-1")}}, Rational(-1), "r3");
  auto r = minimize(sys, {{0, q("-3/4")}, {1, q("150")}, {2, q("-1/50")}, {3, q("6")}});
  REQUIRE(r.status == OptimizationStatus::Optimal);
  CHECK(r.value == q("-1/20"));
  CHECK(satisfies(sys, r.solution));
}

TEST_CASE("minimize reports unbounded and infeasible") {
  LinearSystem open(1);
  open.add_inequality({{0, Rational(1)}}, Rational(1), "x");
  CHECK(minimize(open, {{0, Rational(-1)}}).status == OptimizationStatus::Unbounded);
  CHECK(minimize(open, {{0, Rational(1)}}).value == 1);

  auto r = minimize(one_var("-2"), {{0, Rational(1)}});
  CHECK(r.status == OptimizationStatus::Infeasible);
  REQUIRE(r.certificate.has_value());
  CHECK(verify_certificate(one_var("-2"), *r.certificate));
}

TEST_CASE("degenerate redundant system") {
  // Many copies of the same simplex constraint plus a tight bound.
  LinearSystem sys(3);
  for (int k = 0; k < 6; ++k) {
    sys.add_equality({{0, Rational(1)}, {1, Rational(1)}, {2, Rational(1)}}, Rational(1), "s" + std::to_string(k));
    sys.add_inequality({{0, Rational(1)}, {1, Rational(-1)}}, Rational(0), "d" + std::to_string(k));
  }
  sys.add_inequality({{2, Rational(-1)}}, Rational(0), "z");
  auto r = solve_feasibility(sys);
  REQUIRE(r.feasible());
  CHECK(satisfies(sys, r.solution()));
}

TEST_CASE("agreement with Fourier-Motzkin on random small systems") {
  std::mt19937_64 rng(31);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto sys = random_system(rng, 6, 6);
    const auto r = solve_feasibility(sys);
    CHECK(r.feasible() == oracle::fm_feasible(sys));
    if (r.feasible()) {
      CHECK(satisfies(sys, r.solution()));
      ++feasible;
    } else {
      CHECK(verify_certificate(sys, r.certificate()));
    }
    // Deterministic pivoting.
    const auto again = solve_feasibility(sys);
    CHECK(again.feasible() == r.feasible());
    if (r.feasible()) {
      CHECK(again.solution() == r.solution());
    } else {
      CHECK(again.certificate().multipliers == r.certificate().multipliers);
    }
  }
  CHECK(feasible > 40);
  CHECK(feasible < 360);
}

#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rum/hrep.hpp"
#include "rum/vrep.hpp"

using namespace rum;
using fx::q;

namespace {

// p(a,{a,b}) = p(a,{a,c}) = 1, p(a,X) = 1/2 and the rest spread evenly.
RandomChoiceRule negative_mobius_rule() {
  return fx::rule(3, {{{0, 1, 2}, {{0, "1/2"}, {1, "1/4"}, {2, "1/4"}}},
                      {{0, 1}, {{0, "1"}}},
                      {{0, 2}, {{0, "1"}}},
                      {{1, 2}, {{1, "1/2"}, {2, "1/2"}}},
                      {{0}, {{0, "1"}}},
                      {{1}, {{1, "1"}}},
                      {{2}, {{2, "1"}}}});
}

// Binary rule on three alternatives; p(x,{x,y}) given for x<y.
RandomChoiceRule binary3(const Rational& ab, const Rational& bc, const Rational& ac) {
  std::vector<RawObservation> raw{{Menu::of({0, 1}), {{0, ab}, {1, 1 - ab}}},
                                  {Menu::of({1, 2}), {{1, bc}, {2, 1 - bc}}},
                                  {Menu::of({0, 2}), {{0, ac}, {2, 1 - ac}}}};
  return validate_rcr(AlternativeSet::with_count(3), raw);
}

bool triangle_ok(const RandomChoiceRule& p) {
  auto P = [&](int x, int y) { return p.prob(x, Menu::of({x, y})); };
  for (int x = 0; x < 3; ++x) {
    for (int y = 0; y < 3; ++y) {
      for (int z = 0; z < 3; ++z) {
        if (x == y || y == z || x == z) continue;
        if (P(x, y) + P(y, z) + P(z, x) > 2) return false;
      }
    }
  }
  return true;
}

void check_witness(const RandomChoiceRule& p, const LatticeFunction& w) {
  CHECK(satisfies_qtop(w).holds);
  const auto f = accumulate(w);
  for (int i = 0; i < p.domain().size(); ++i) {
    for (int x : p.domain()[i].members()) CHECK(f.at(x, p.domain()[i].mask()) == p.prob_at(i, x));
  }
}

}  // namespace

TEST_CASE("q system shapes") {
  auto full = build_q_system(fx::uniform_full(3));
  CHECK(full.system.num_rows() == 12);
  CHECK(full.system.num_vars() == 12);

  auto top = build_q_system(fx::rule(3, {{{0, 1, 2}, {{0, "1"}}}}));
  CHECK(top.system.num_rows() == 9);
  CHECK(top.groups[0] == RowGroup::ObservedConsistency);
  CHECK(top.groups[3] == RowGroup::InflowOutflow);
  CHECK(top.groups.back() == RowGroup::InflowOutflow);

  auto single = build_q_system(fx::rule(1, {{{0}, {{0, "1"}}}}));
  REQUIRE(single.system.num_rows() == 1);
  CHECK(single.system.row(0).terms.size() == 1);
  CHECK(single.system.row(0).rhs == 1);

  auto binaries = build_q_system(fx::condorcet());
  CHECK(binaries.groups.back() == RowGroup::Normalization);
}

TEST_CASE("p system shapes") {
  auto full = build_p_system(fx::uniform_full(3));
  CHECK(full.system.num_vars() == 0);
  CHECK(full.system.equalities().empty());
  CHECK(full.system.inequalities().size() == 12);

  auto pair = build_p_system(fx::rule(2, {{{0, 1}, {{0, "1/2"}, {1, "1/2"}}}}));
  REQUIRE(pair.system.num_vars() == 2);
  CHECK(pair.system.var_label(0) == "p~(a|{a})");
  CHECK(pair.system.var_label(1) == "p~(b|{b})");
  CHECK(pair.system.equalities().size() == 2);
  CHECK(pair.system.inequalities().size() == 4);

  LinearSystem empty = build_p_system(validate_rcr(AlternativeSet::with_count(1), {})).system;
  CHECK(empty.num_vars() == 1);
  REQUIRE(empty.equalities().size() == 1);
  CHECK(empty.equalities()[0].rhs == 1);
}

TEST_CASE("hrep and pslack examples") {
  auto neg = negative_mobius_rule();
  CHECK(oracle::alternating_sum(to_lattice(neg), 0, 0b001) == q("-1/2"));
  for (const auto& p : {neg, fx::condorcet()}) {
    auto h = hrep_feasible(p);
    REQUIRE_FALSE(h.lp.feasible());
    CHECK(verify_certificate(h.built.system, h.lp.certificate()));
    auto s = pslack_feasible(p);
    REQUIRE_FALSE(s.lp.feasible());
    CHECK(verify_certificate(s.built.system, s.lp.certificate()));
    CHECK_FALSE(vrep_feasible(p).lp.feasible());
  }

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    auto domain = oracle::random_domain(rng, n);
    auto p = induce_rcr(oracle::random_nu(rng, n, 4), AlternativeSet::with_count(n), domain);
    auto h = hrep_feasible(p);
    REQUIRE(h.lp.feasible());
    check_witness(p, *h.witness);
    auto s = pslack_feasible(p);
    REQUIRE(s.lp.feasible());
    CHECK(oracle::mobius_nonnegative(*s.extension));
  }

  CHECK(pslack_feasible(fx::rule(2, {{{0, 1}, {{0, "1/5"}, {1, "4/5"}}}})).lp.feasible());
  CHECK_THROWS_AS(hrep_feasible(fx::rule(11, {{{0}, {{0, "1"}}}})), Error);
}

TEST_CASE("binary menus on three alternatives follow the triangle inequalities") {
  auto strong = binary3(q("9/10"), q("9/10"), q("1/10"));
  const bool v = vrep_feasible(strong).lp.feasible();
  CHECK_FALSE(v);
  CHECK(pslack_feasible(strong).lp.feasible() == v);
  CHECK(hrep_feasible(strong).lp.feasible() == v);

  for (int ab = 0; ab <= 4; ++ab) {
    for (int bc = 0; bc <= 4; ++bc) {
      for (int ac = 0; ac <= 4; ++ac) {
        auto p = binary3(ratio(ab, 4), ratio(bc, 4), ratio(ac, 4));
        const bool expect = triangle_ok(p);
        CHECK(hrep_feasible(p).lp.feasible() == expect);
        CHECK(pslack_feasible(p).lp.feasible() == expect);
      }
    }
  }
}

TEST_CASE("Falmagne on full domains") {
  std::mt19937_64 rng(19);
  int feasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    auto p = trial % 3 == 0 ? induce_rcr(oracle::random_nu(rng, n, 3), AlternativeSet::with_count(n),
                                         MenuCollection::full(n))
                            : oracle::random_rule(rng, MenuCollection::full(n));
    const bool expect = oracle::mobius_nonnegative(to_lattice(p));
    CHECK(hrep_feasible(p).lp.feasible() == expect);
    feasible += expect;
  }
  CHECK(feasible >= 20);
}

TEST_CASE("row-count law") {
  CHECK(predicted_row_count(5, MenuCollection::full(5)) == 80);
  CHECK(predicted_row_count(10, MenuCollection::full(10)) == 5120);
  CHECK(predicted_row_count(15, MenuCollection::full(15)) == 245760);
  CHECK(predicted_row_count(3, MenuCollection(3, {Menu::of({0, 1, 2})})) == 9);

  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    auto domain = oracle::random_domain(rng, n, static_cast<int>(rng() % 100));
    auto p = oracle::random_rule(rng, domain);
    auto built = build_q_system(p);
    std::uint64_t expect = static_cast<std::uint64_t>(n) << (n - 1);
    for (Mask a = 1; a <= full_mask(n); ++a) {
      if (!domain.contains(a)) expect -= static_cast<std::uint64_t>(popcount(a) - 1);
    }
    CHECK(static_cast<std::uint64_t>(built.system.num_rows()) == expect);
    CHECK(predicted_row_count(n, domain) == expect);
    CHECK(matrix_stats(n, domain).n_rows == expect);
  }
}

TEST_CASE("matrix stats") {
  auto s = matrix_stats(10, MenuCollection::full(10));
  CHECK(s.m_rows == 3628800);
  CHECK(s.n_rows == 5120);
  auto s4 = matrix_stats(4, MenuCollection::full(4));
  CHECK(s4.m_rows == 24);
  CHECK(s4.n_rows == 32);
  CHECK(matrix_stats(3, MenuCollection(3, {Menu::of({0, 1, 2})})).n_rows == 9);
  CHECK(matrix_stats(15, MenuCollection::full(15)).m_rows == 1307674368000ULL);
  CHECK_THROWS_AS(matrix_stats(4, MenuCollection::full(3)), Error);
}

#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rum/monotone.hpp"

using namespace rum;
using fx::q;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an rum::Error");
  return Errc::ParseError;
}

Budget budget(long p1, long p2, long w) { return Budget{{Rational(p1), Rational(p2)}, Rational(w)}; }

// Two budgets crossing at (2/3, 2/3).
std::vector<Budget> crossing() { return {budget(2, 1, 2), budget(1, 2, 2)}; }

int index_of(const PatchArrangement& arr, const std::string& label) {
  for (std::size_t i = 0; i < arr.patches.size(); ++i) {
    if (arr.patches[i].label == label) return static_cast<int>(i);
  }
  FAIL("missing patch " << label);
  return -1;
}

RandomChoiceRule monotone_random_rule(std::mt19937_64& rng, int n, const std::vector<std::vector<int>>& ext,
                                      const MenuCollection& domain) {
  PreferenceDistribution nu;
  const int support = 1 + static_cast<int>(rng() % 3);
  long total = 0;
  std::vector<long> w(support);
  for (auto& v : w) total += (v = 1 + static_cast<long>(rng() % 4));
  for (int k = 0; k < support; ++k) {
    Rational r(w[k], total);
    r.canonicalize();
    nu.weights.emplace_back(LinearOrder(ext[rng() % ext.size()]), r);
  }
  // Merge duplicate orders.
  std::map<LinearOrder, Rational> merged;
  for (auto& [o, r] : nu.weights) merged[o] += r;
  nu.weights.assign(merged.begin(), merged.end());
  return induce_rcr(nu, AlternativeSet::with_count(n), domain);
}

}  // namespace

TEST_CASE("partial orders") {
  PartialOrder chain(3, {{0, 1}, {1, 2}});
  CHECK(chain.dominates(0, 2));
  CHECK_FALSE(chain.dominates(2, 0));
  CHECK(upper_set(chain, 2) == 0b011);
  CHECK(upper_set(chain, 0) == 0);
  CHECK(chain.pairs().size() == 3);
  CHECK(PartialOrder(3, {}).empty());

  CHECK(code_of([] { PartialOrder(3, {{0, 1}, {1, 2}, {2, 0}}); }) == Errc::CyclicOrder);
  CHECK(code_of([] { PartialOrder(2, {{1, 1}}); }) == Errc::CyclicOrder);
  CHECK(code_of([] { PartialOrder(2, {{0, 2}}); }) == Errc::UnknownAlternative);
}

TEST_CASE("is_monotone_rcr examples") {
  PartialOrder ab(3, {{0, 1}});
  CHECK(is_monotone_rcr(fx::rule(3, {{{0, 1}, {{0, "1"}}}, {{1, 2}, {{1, "1/2"}, {2, "1/2"}}}}), ab));
  CHECK_FALSE(is_monotone_rcr(fx::rule(3, {{{0, 1}, {{0, "9/10"}, {1, "1/10"}}}}), ab));
  CHECK(is_monotone_rcr(fx::condorcet(), PartialOrder(3, {})));
}

TEST_CASE("monotone constraint rows") {
  const PairIndex pairs3(3);
  CHECK(monotone_constraint_rows(PartialOrder(3, {}), AlternativeSet::with_count(3), pairs3).empty());

  auto two = monotone_constraint_rows(PartialOrder(2, {{0, 1}}), AlternativeSet::with_count(2), PairIndex(2));
  REQUIRE(two.size() == 1);
  REQUIRE(two[0].terms.size() == 1);
  CHECK(two[0].terms[0].var == PairIndex(2).column(1, 0b11));
  CHECK(two[0].rhs == 0);

  auto three = monotone_constraint_rows(PartialOrder(3, {{0, 1}}), AlternativeSet::with_count(3), pairs3);
  REQUIRE(three.size() == 1);
  CHECK(three[0].terms.size() == 2);

  auto chain = monotone_constraint_rows(PartialOrder(4, {{0, 1}, {1, 2}, {2, 3}}), AlternativeSet::with_count(4),
                                        PairIndex(4));
  CHECK(chain.size() == 3);
}

TEST_CASE("linear extensions") {
  CHECK(monotone_orders(PartialOrder(3, {}), 3).size() == 6);
  CHECK(monotone_orders(PartialOrder(3, {{0, 1}, {1, 2}}), 3).size() == 1);
  CHECK(monotone_orders(PartialOrder(3, {{0, 1}}), 3).size() == 3);

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    const auto pairs = oracle::random_order_pairs(rng, n, 40);
    const auto orders = monotone_orders(PartialOrder(n, pairs), n);
    const auto ext = oracle::extensions(n, pairs);
    REQUIRE(orders.size() == ext.size());
    for (std::size_t k = 0; k < ext.size(); ++k) CHECK(orders[k].ranking() == ext[k]);
  }
}

TEST_CASE("monotone systems agree with restricted V-representation") {
  std::mt19937_64 rng(59);
  int feasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 2);
    const auto pairs = oracle::random_order_pairs(rng, n, 35);
    const PartialOrder order(n, pairs);
    const auto domain = oracle::random_domain(rng, n, 60);
    const auto ext = oracle::extensions(n, pairs);
    auto p = trial % 2 == 0 ? monotone_random_rule(rng, n, ext, domain) : oracle::random_rule(rng, domain);
    const bool expect = vrep_feasible_restricted(p, monotone_orders(order, n)).lp.feasible();
    if (n == 3) CHECK(oracle::brute_rationalizable(p, ext) == expect);
    auto h = monotone_feasible(p, order);
    CHECK(h.lp.feasible() == expect);
    CHECK(monotone_pslack_feasible(p, order).lp.feasible() == expect);
    if (h.lp.feasible()) {
      ++feasible;
      // The witness puts no mass on a dominated top.
      for (int y = 0; y < n; ++y) {
        for (Mask a = 1; a <= full_mask(n); ++a) {
          if ((a & bit(y)) && (a & upper_set(order, y))) CHECK(h.witness->at(y, a) == 0);
        }
      }
    } else {
      CHECK(verify_certificate(h.built.system, h.lp.certificate()));
    }
  }
  CHECK(feasible >= 25);
}

TEST_CASE("full domain: monotone RUM iff Mobius nonnegative and monotone") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const auto pairs = oracle::random_order_pairs(rng, n, 30);
    const PartialOrder order(n, pairs);
    const auto full = MenuCollection::full(n);
    RandomChoiceRule p;
    switch (trial % 3) {
      case 0: p = monotone_random_rule(rng, n, oracle::extensions(n, pairs), full); break;
      case 1: p = induce_rcr(oracle::random_nu(rng, n, 3), AlternativeSet::with_count(n), full); break;
      default: p = oracle::random_rule(rng, full);
    }
    const bool expect = oracle::mobius_nonnegative(to_lattice(p)) && is_monotone_rcr(p, order);
    CHECK(monotone_feasible(p, order).lp.feasible() == expect);
  }
}

TEST_CASE("two crossing budgets") {
  auto arr = build_patches_2goods(crossing());
  REQUIRE(arr.patches.size() == 4);
  const int w = index_of(arr, "B1:0"), z = index_of(arr, "B1:1");
  const int y = index_of(arr, "B2:0"), x = index_of(arr, "B2:1");
  CHECK(arr.patches[w].from == Point2{Rational(0), Rational(2)});
  CHECK(arr.patches[w].to == Point2{q("2/3"), q("2/3")});
  CHECK(arr.patches[x].to == Point2{Rational(2), Rational(0)});
  CHECK(arr.patches[w].signs == std::vector<Side>{Side::On, Side::Above});
  CHECK(arr.patches[y].signs == std::vector<Side>{Side::Below, Side::On});

  auto dom = arr.dominance.pairs();
  std::sort(dom.begin(), dom.end());
  std::vector<std::pair<int, int>> expect{{w, y}, {x, z}};
  std::sort(expect.begin(), expect.end());
  CHECK(dom == expect);
  REQUIRE(arr.budget_menus.size() == 2);
  CHECK(arr.budget_menus[0].size() == 2);

  // Monotone RUM on the patches reduces to p(y,B2) + p(z,B1) ≤ 1.
  for (int a = 0; a <= 4; ++a) {
    for (int b = 0; b <= 4; ++b) {
      std::vector<RawObservation> raw{{Menu::of({w, z}), {{w, 1 - ratio(a, 4)}, {z, ratio(a, 4)}}},
                                      {Menu::of({x, y}), {{x, 1 - ratio(b, 4)}, {y, ratio(b, 4)}}}};
      auto p = validate_rcr(AlternativeSet::with_count(4), raw);
      CHECK(monotone_feasible(p, arr.dominance).lp.feasible() == (a + b <= 4));
      CHECK(vrep_feasible(p).lp.feasible());
    }
  }
}

TEST_CASE("patch arrangements") {
  auto one = build_patches_2goods({budget(1, 1, 1)});
  REQUIRE(one.patches.size() == 1);
  CHECK(one.dominance.empty());

  auto parallel = build_patches_2goods({budget(1, 1, 1), budget(1, 1, 2)});
  REQUIRE(parallel.patches.size() == 2);
  CHECK(parallel.dominance.dominates(index_of(parallel, "B2:0"), index_of(parallel, "B1:0")));
  CHECK(parallel.dominance.pairs().size() == 1);

  auto three = build_patches_2goods({budget(2, 1, 2), budget(1, 2, 2), budget(1, 1, 3)});
  CHECK(three.patches.size() == 5);

  CHECK(code_of([] { build_patches_2goods({budget(1, 1, 1), budget(2, 2, 2)}); }) == Errc::DegenerateArrangement);
  // Lines meeting on the first axis.
  CHECK(code_of([] { build_patches_2goods({budget(1, 1, 2), budget(1, 2, 2)}); }) == Errc::DegenerateArrangement);
  // Three lines through (2/3, 2/3).
  CHECK(code_of([] { build_patches_2goods({budget(2, 1, 2), budget(1, 2, 2), budget(3, 3, 4)}); }) ==
        Errc::DegenerateArrangement);
  CHECK(code_of([] { build_patches_2goods({}); }) == Errc::WrongDimension);
}

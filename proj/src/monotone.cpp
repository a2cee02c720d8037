#include "rum/monotone.hpp"

#include <algorithm>

namespace rum {

PartialOrder::PartialOrder(int n, const std::vector<std::pair<int, int>>& pairs) : n_(n), upper_(n, 0) {
  if (n < 1 || n > kMaxAlternatives) throw Error(Errc::TooLarge, "partial order needs 1..20 elements");
  for (const auto& [x, y] : pairs) {
    if (x < 0 || x >= n || y < 0 || y >= n) throw Error(Errc::UnknownAlternative, "dominance pair out of range");
    if (x == y) throw Error(Errc::CyclicOrder, "dominance must be irreflexive");
    upper_[y] |= bit(x);
  }
  // Warshall closure on bitsets: if k ⊳ y then everything above k is above y.
  for (int k = 0; k < n; ++k) {
    for (int y = 0; y < n; ++y) {
      if (upper_[y] & bit(k)) upper_[y] |= upper_[k];
    }
  }
  for (int x = 0; x < n; ++x) {
    if (upper_[x] & bit(x)) throw Error(Errc::CyclicOrder, "dominance relation has a cycle");
  }
}

std::vector<std::pair<int, int>> PartialOrder::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < n_; ++x) {
    for (int y = 0; y < n_; ++y) {
      if (dominates(x, y)) out.emplace_back(x, y);
    }
  }
  return out;
}

bool PartialOrder::empty() const {
  return std::all_of(upper_.begin(), upper_.end(), [](Mask m) { return m == 0; });
}

Mask upper_set(const PartialOrder& order, int x) { return order.upper(x); }

bool is_monotone_rcr(const RandomChoiceRule& p, const PartialOrder& order) {
  const auto& domain = p.domain();
  for (int i = 0; i < domain.size(); ++i) {
    const Mask set = domain[i].mask();
    for (int y : domain[i].members()) {
      if ((order.upper(y) & set) != 0 && p.prob_at(i, y) != 0) return false;
    }
  }
  return true;
}

std::vector<Constraint> monotone_constraint_rows(const PartialOrder& order, const AlternativeSet& alts,
                                                 const PairIndex& pairs) {
  const int n = pairs.universe();
  std::vector<Constraint> rows;
  for (int x = 0; x < n; ++x) {
    const Mask above = order.upper(x);
    if (above == 0) continue;
    Constraint row{{}, Rational(0), "mono(" + alts.name(x) + ")"};
    for (int c = 0; c < pairs.size(); ++c) {
      if (pairs.alternative(c) == x && (pairs.set(c) & above) != 0) row.terms.push_back({c, Rational(1)});
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

HRepSystem build_monotone_q_system(const RandomChoiceRule& p, const PartialOrder& order) {
  if (order.universe() != p.universe()) throw Error(Errc::DimensionMismatch, "order and rule sizes differ");
  HRepSystem built = build_q_system(p);
  for (auto& row : monotone_constraint_rows(order, p.alternatives(), built.pairs)) {
    built.system.add_equality(std::move(row.terms), row.rhs, row.label);
    built.groups.push_back(RowGroup::Monotonicity);
  }
  return built;
}

HRepResult monotone_feasible(const RandomChoiceRule& p, const PartialOrder& order) {
  require_size(p.universe(), 10, "monotone_feasible");
  return solve_q_system(build_monotone_q_system(p, order));
}

PSlackSystem build_monotone_p_system(const RandomChoiceRule& p, const PartialOrder& order) {
  if (order.universe() != p.universe()) throw Error(Errc::DimensionMismatch, "order and rule sizes differ");
  const auto& alts = p.alternatives();
  const auto& domain = p.domain();
  PSlackSystem built = build_p_system(p);

  std::vector<int> var_lookup;  // index into built.variables by (set * n + x)
  const int n = p.universe();
  var_lookup.assign((static_cast<std::size_t>(1) << n) * n, -1);
  for (std::size_t v = 0; v < built.variables.size(); ++v) {
    var_lookup[static_cast<std::size_t>(built.variables[v].second) * n + built.variables[v].first] = static_cast<int>(v);
  }
  for (Mask set : lattice_sets(n)) {
    for (Mask m = set; m != 0; m &= m - 1) {
      const int y = std::countr_zero(m);
      if ((order.upper(y) & set) == 0) continue;
      const std::string label = "mono(" + alts.name(y) + "|" + menu_label(alts, set) + ")";
      if (auto idx = domain.index_of(set)) {
        built.system.add_equality({}, p.prob_at(*idx, y), label);
      } else {
        built.system.add_equality({{var_lookup[static_cast<std::size_t>(set) * n + y], Rational(1)}}, Rational(0), label);
      }
    }
  }
  return built;
}

PSlackResult monotone_pslack_feasible(const RandomChoiceRule& p, const PartialOrder& order) {
  require_size(p.universe(), 10, "monotone_pslack_feasible");
  return solve_p_system(p, build_monotone_p_system(p, order));
}

std::vector<LinearOrder> monotone_orders(const PartialOrder& order, int n) {
  require_size(n, kMaxOrderAlternatives, "monotone_orders");
  const auto dominance = order.pairs();
  std::vector<LinearOrder> out;
  for (auto& candidate : enumerate_orders(n)) {
    const bool extends = std::all_of(dominance.begin(), dominance.end(),
                                     [&](const auto& xy) { return candidate.prefers(xy.first, xy.second); });
    if (extends) out.push_back(std::move(candidate));
  }
  return out;
}

namespace {

Rational height_at(const Budget& b, const Rational& z1) { return (b.wealth - b.price[0] * z1) / b.price[1]; }

Side side_of(const Budget& b, const Point2& z) {
  const Rational spend = b.price[0] * z[0] + b.price[1] * z[1];
  if (spend > b.wealth) return Side::Above;
  if (spend < b.wealth) return Side::Below;
  return Side::On;
}

// Is v componentwise below some point of the closed segment on `p`? The
// best candidate is the leftmost admissible point, since height falls with z1.
bool covered_by(const Point2& v, const Patch& p, const Budget& line) {
  const Rational z1 = std::max(v[0], p.from[0]);
  if (z1 > p.to[0]) return false;
  return height_at(line, z1) >= v[1];
}

}  // namespace

PatchArrangement build_patches_2goods(const std::vector<Budget>& budgets) {
  const int k = static_cast<int>(budgets.size());
  if (k == 0) throw Error(Errc::WrongDimension, "no budgets given");
  for (const auto& b : budgets) {
    if (b.price[0] <= 0 || b.price[1] <= 0 || b.wealth <= 0) {
      throw Error(Errc::DegenerateArrangement, "prices and wealth must be positive");
    }
  }

  // Cut points (first coordinate) on each budget.
  std::vector<std::vector<Rational>> cuts(k);
  for (int a = 0; a < k; ++a) {
    for (int b = a + 1; b < k; ++b) {
      const auto& u = budgets[a];
      const auto& v = budgets[b];
      const Rational det = u.price[0] * v.price[1] - u.price[1] * v.price[0];
      if (det == 0) {
        if (u.price[0] * v.wealth == v.price[0] * u.wealth) {
          throw Error(Errc::DegenerateArrangement, "budgets " + std::to_string(a + 1) + " and " +
                                                       std::to_string(b + 1) + " coincide");
        }
        continue;  // parallel
      }
      const Rational z1 = (u.wealth * v.price[1] - v.wealth * u.price[1]) / det;
      const Rational z2 = (u.price[0] * v.wealth - v.price[0] * u.wealth) / det;
      if (z1 < 0 || z2 < 0) continue;  // lines cross outside the consumption set
      if (z1 == 0 || z2 == 0) {
        throw Error(Errc::DegenerateArrangement, "budgets " + std::to_string(a + 1) + " and " +
                                                     std::to_string(b + 1) + " meet on an axis");
      }
      cuts[a].push_back(z1);
      cuts[b].push_back(z1);
    }
  }

  PatchArrangement out;
  for (int a = 0; a < k; ++a) {
    auto& c = cuts[a];
    std::sort(c.begin(), c.end());
    if (std::adjacent_find(c.begin(), c.end()) != c.end()) {
      throw Error(Errc::DegenerateArrangement, "three budgets meet in one point on budget " + std::to_string(a + 1));
    }
    std::vector<Rational> stops{Rational(0)};
    stops.insert(stops.end(), c.begin(), c.end());
    stops.push_back(budgets[a].wealth / budgets[a].price[0]);

    std::vector<int> menu;
    for (std::size_t s = 0; s + 1 < stops.size(); ++s) {
      Patch patch;
      patch.label = "B" + std::to_string(a + 1) + ":" + std::to_string(s);
      patch.budget = a;
      patch.from = {stops[s], height_at(budgets[a], stops[s])};
      patch.to = {stops[s + 1], height_at(budgets[a], stops[s + 1])};
      const Point2 mid{(patch.from[0] + patch.to[0]) / 2, (patch.from[1] + patch.to[1]) / 2};
      for (int b = 0; b < k; ++b) patch.signs.push_back(b == a ? Side::On : side_of(budgets[b], mid));
      menu.push_back(static_cast<int>(out.patches.size()));
      out.patches.push_back(std::move(patch));
    }
    out.budget_menus.push_back(std::move(menu));
  }

  const int count = static_cast<int>(out.patches.size());
  if (count > kMaxAlternatives) {
    throw Error(Errc::TooLarge, std::to_string(count) + " patches exceed the 20-alternative limit");
  }
  std::vector<std::pair<int, int>> dominance;
  for (int i = 0; i < count; ++i) {
    const auto& p = out.patches[i];
    for (int j = 0; j < count; ++j) {
      if (i == j) continue;
      const auto& q = out.patches[j];
      if (covered_by(q.from, p, budgets[p.budget]) && covered_by(q.to, p, budgets[p.budget])) {
        dominance.emplace_back(i, j);
      }
    }
  }
  out.dominance = PartialOrder(count, dominance);
  return out;
}

}  // namespace rum

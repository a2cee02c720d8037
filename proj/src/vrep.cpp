#include "rum/vrep.hpp"

#include <algorithm>
#include <set>

namespace rum {

std::vector<ChoicePair> observed_pairs(const MenuCollection& domain) {
  std::vector<ChoicePair> pairs;
  pairs.reserve(domain.pair_count());
  for (const auto& menu : domain) {
    for (int x : menu.members()) pairs.push_back({x, menu});
  }
  return pairs;
}

VRepMatrix::VRepMatrix(std::vector<LinearOrder> orders, const MenuCollection& domain)
    : orders_(std::move(orders)), menus_(domain.menus()), columns_(observed_pairs(domain)) {
  int offset = 0;
  for (const auto& menu : menus_) {
    menu_offset_.push_back(offset);
    offset += menu.size();
  }
  choice_.reserve(orders_.size());
  for (const auto& order : orders_) {
    std::vector<int> picks;
    picks.reserve(menus_.size());
    for (const auto& menu : menus_) picks.push_back(maximal(order, menu));
    choice_.push_back(std::move(picks));
  }
}

int VRepMatrix::column_of(int x, int menu_index) const {
  const Mask below = menus_[menu_index].mask() & (bit(x) - 1);
  return menu_offset_[menu_index] + popcount(below);
}

int VRepMatrix::entry(int row, int col) const {
  const auto& pair = columns_.at(col);
  auto it = std::upper_bound(menu_offset_.begin(), menu_offset_.end(), col);
  const int menu_index = static_cast<int>(it - menu_offset_.begin()) - 1;
  return choice_.at(row)[menu_index] == pair.alternative ? 1 : 0;
}

VRepMatrix build_m_matrix(int n, const MenuCollection& domain) {
  require_size(n, kMaxOrderAlternatives, "build_m_matrix");
  return VRepMatrix(enumerate_orders(n), domain);
}

LinearSystem build_vrep_system(const RandomChoiceRule& p, const std::vector<LinearOrder>& orders) {
  const auto& alts = p.alternatives();
  const auto& domain = p.domain();
  LinearSystem system;
  for (const auto& order : orders) system.add_variable("nu[" + order.to_string(alts) + "]");

  // Row (x, A) collects every order whose best element of A is x.
  std::vector<std::vector<Term>> rows(domain.pair_count());
  int offset = 0;
  for (int i = 0; i < domain.size(); ++i) {
    const Menu menu = domain[i];
    for (int v = 0; v < static_cast<int>(orders.size()); ++v) {
      const int x = maximal(orders[v], menu);
      rows[offset + popcount(menu.mask() & (bit(x) - 1))].push_back({v, Rational(1)});
    }
    offset += menu.size();
  }
  offset = 0;
  for (int i = 0; i < domain.size(); ++i) {
    const Menu menu = domain[i];
    int k = 0;
    for (int x : menu.members()) {
      system.add_equality(std::move(rows[offset + k]), p.prob_at(i, x),
                          "p(" + alts.name(x) + "|" + menu_label(alts, menu.mask()) + ")");
      ++k;
    }
    offset += menu.size();
  }
  return system;
}

namespace {

std::optional<PreferenceDistribution> distribution_from(const std::vector<LinearOrder>& orders,
                                                        const std::vector<Rational>& nu) {
  PreferenceDistribution dist;
  Rational total = 0;
  for (const auto& w : nu) total += w;
  if (total == 0) {
    // Nothing observed: any order will do.
    if (orders.empty()) return std::nullopt;
    dist.weights.emplace_back(orders.front(), Rational(1));
    return dist;
  }
  for (std::size_t v = 0; v < orders.size(); ++v) {
    if (nu[v] != 0) dist.weights.emplace_back(orders[v], nu[v] / total);
  }
  return dist;
}

}  // namespace

VRepResult vrep_feasible_restricted(const RandomChoiceRule& p, const std::vector<LinearOrder>& orders) {
  require_size(p.universe(), kMaxOrderAlternatives, "vrep_feasible");
  LinearSystem system = build_vrep_system(p, orders);
  FeasibilityResult lp = solve_feasibility(system);
  std::optional<PreferenceDistribution> dist;
  if (lp.feasible()) dist = distribution_from(orders, lp.solution());
  return {std::move(lp), orders, std::move(system), std::move(dist)};
}

VRepResult vrep_feasible(const RandomChoiceRule& p) {
  require_size(p.universe(), kMaxOrderAlternatives, "vrep_feasible");
  return vrep_feasible_restricted(p, enumerate_orders(p.universe()));
}

Rational linf_statistic(const RandomChoiceRule& p) {
  require_size(p.universe(), kMaxOrderAlternatives, "linf_statistic");
  const auto orders = enumerate_orders(p.universe());
  const LinearSystem base = build_vrep_system(p, orders);

  // Variables: ν (one per order) then t. For every observed pair,
  //   t - Σ mν >= -p   and   t + Σ mν >= p.
  LinearSystem system;
  for (int v = 0; v < base.num_vars(); ++v) system.add_variable(base.var_label(v));
  const int t = system.add_variable("t");
  for (const auto& row : base.equalities()) {
    std::vector<Term> upper{{t, Rational(1)}};
    std::vector<Term> lower{{t, Rational(1)}};
    for (const auto& term : row.terms) {
      upper.push_back({term.var, Rational(-term.coef)});
      lower.push_back(term);
    }
    system.add_inequality(std::move(upper), Rational(-row.rhs), row.label + "<=t");
    system.add_inequality(std::move(lower), row.rhs, row.label + ">=-t");
  }
  OptimizationResult result = minimize(system, {{t, Rational(1)}});
  if (result.status != OptimizationStatus::Optimal) {
    throw Error(Errc::DimensionMismatch, "L-infinity program did not reach an optimum");
  }
  return result.value;
}

ColumnGenerationResult column_generation(const RandomChoiceRule& p, const std::vector<LinearOrder>& seed_orders,
                                         const std::vector<LinearOrder>& pool) {
  const int n = p.universe();
  require_size(n, kMaxOrderAlternatives, "column_generation");
  if (seed_orders.empty()) throw Error(Errc::DimensionMismatch, "column generation needs at least one seed order");

  std::vector<LinearOrder> candidates = pool.empty() ? enumerate_orders(n) : pool;
  std::sort(candidates.begin(), candidates.end());
  std::set<LinearOrder> active(seed_orders.begin(), seed_orders.end());
  const auto& domain = p.domain();

  ColumnGenerationResult out{vrep_feasible_restricted(p, {active.begin(), active.end()}), 1, {}};
  while (!out.final_master.lp.feasible()) {
    const auto& r = out.final_master.lp.certificate().multipliers;
    const LinearOrder* entering = nullptr;
    for (const auto& order : candidates) {
      if (active.contains(order)) continue;
      Rational price = 0;
      int offset = 0;
      for (int i = 0; i < domain.size(); ++i) {
        const Menu menu = domain[i];
        const int x = maximal(order, menu);
        price += r[offset + popcount(menu.mask() & (bit(x) - 1))];
        offset += menu.size();
      }
      if (price > 0) {
        entering = &order;
        break;
      }
    }
    if (entering == nullptr) break;
    active.insert(*entering);
    out.added.push_back(*entering);
    out.final_master = vrep_feasible_restricted(p, {active.begin(), active.end()});
    ++out.iterations;
  }
  return out;
}

int arsp_rhs(int n, const std::vector<ChoicePair>& sequence) {
  int best = 0;
  for (const auto& order : enumerate_orders(n)) {
    int count = 0;
    for (const auto& pair : sequence) count += maximal(order, pair.menu) == pair.alternative ? 1 : 0;
    best = std::max(best, count);
  }
  return best;
}

std::optional<ArspViolation> arsp_search(const RandomChoiceRule& p, int max_len) {
  const int n = p.universe();
  require_size(n, 6, "arsp_search");
  if (max_len > 4) throw Error(Errc::TooLarge, "arsp_search: max_len " + std::to_string(max_len) + " exceeds 4");

  const auto pairs = observed_pairs(p.domain());
  const auto orders = enumerate_orders(n);
  std::vector<Rational> prob;
  prob.reserve(pairs.size());
  for (const auto& pair : pairs) prob.push_back(p.prob(pair.alternative, pair.menu));
  // hit[o][k]: does order o pick the alternative of pair k?
  std::vector<std::vector<char>> hit(orders.size(), std::vector<char>(pairs.size()));
  for (std::size_t o = 0; o < orders.size(); ++o) {
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      hit[o][k] = maximal(orders[o], pairs[k].menu) == pairs[k].alternative;
    }
  }

  const int m = static_cast<int>(pairs.size());
  for (int len = 1; len <= max_len && m > 0; ++len) {
    // Nondecreasing index tuples: sequences up to reordering, repeats allowed.
    std::vector<int> idx(len, 0);
    for (;;) {
      Rational lhs = 0;
      for (int k : idx) lhs += prob[k];
      if (lhs > 1) {  // every sequence has rhs >= 1
        int rhs = 0;
        for (std::size_t o = 0; o < orders.size() && rhs < len; ++o) {
          int count = 0;
          for (int k : idx) count += hit[o][k];
          rhs = std::max(rhs, count);
        }
        if (lhs > rhs) {
          ArspViolation v;
          for (int k : idx) v.sequence.push_back(pairs[k]);
          v.lhs = lhs;
          v.rhs = rhs;
          return v;
        }
      }
      int pos = len - 1;
      while (pos >= 0 && idx[pos] == m - 1) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int q = pos + 1; q < len; ++q) idx[q] = idx[pos];
    }
  }
  return std::nullopt;
}

}  // namespace rum

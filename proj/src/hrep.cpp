#include "rum/hrep.hpp"

#include <algorithm>

namespace rum {

namespace {

std::string pair_label(const AlternativeSet& alts, int x, Mask set) {
  return alts.name(x) + "|" + menu_label(alts, set);
}

// Walks B ⊇ A inside X, calling fn(B).
template <typename Fn>
void for_each_superset(Mask set, Mask all, Fn&& fn) {
  const Mask free = all & ~set;
  for (Mask extra = free;; extra = (extra - 1) & free) {
    fn(set | extra);
    if (extra == 0) break;
  }
}

}  // namespace

std::vector<Mask> lattice_sets(int n) {
  std::vector<Mask> sets;
  sets.reserve(full_mask(n));
  for (Mask set = 1; set <= full_mask(n); ++set) sets.push_back(set);
  std::sort(sets.begin(), sets.end(), lattice_before);
  return sets;
}

PairIndex::PairIndex(int n) : n_(n) {
  if (n < 1 || n > kMaxAlternatives) throw Error(Errc::TooLarge, "PairIndex needs 1 <= n <= 20");
  column_.assign((static_cast<std::size_t>(1) << n) * n, -1);
  for (Mask set : lattice_sets(n)) {
    for (Mask m = set; m != 0; m &= m - 1) {
      const int x = std::countr_zero(m);
      column_[static_cast<std::size_t>(set) * n + x] = static_cast<int>(pairs_.size());
      pairs_.emplace_back(x, set);
    }
  }
}

HRepSystem build_q_system(const RandomChoiceRule& p) {
  const int n = p.universe();
  require_size(n, kMaxAlternatives, "build_q_system");
  const auto& alts = p.alternatives();
  const auto& domain = p.domain();
  const Mask all = full_mask(n);

  HRepSystem out{LinearSystem(), PairIndex(n), {}};
  auto& sys = out.system;
  const auto& pairs = out.pairs;
  for (int c = 0; c < pairs.size(); ++c) sys.add_variable("q(" + pair_label(alts, pairs.alternative(c), pairs.set(c)) + ")");

  for (int i = 0; i < domain.size(); ++i) {
    const Mask set = domain[i].mask();
    for (int x : domain[i].members()) {
      std::vector<Term> terms;
      for_each_superset(set, all, [&](Mask b) { terms.push_back({pairs.column(x, b), Rational(1)}); });
      sys.add_equality(std::move(terms), p.prob_at(i, x), "obs(" + pair_label(alts, x, set) + ")");
      out.groups.push_back(RowGroup::ObservedConsistency);
    }
  }

  for (Mask set : lattice_sets(n)) {
    if (set == all || domain.contains(set)) continue;
    std::vector<Term> terms;
    for (int x = 0; x < n; ++x) {
      if (set & bit(x)) {
        terms.push_back({pairs.column(x, set), Rational(1)});
      } else {
        terms.push_back({pairs.column(x, set | bit(x)), Rational(-1)});
      }
    }
    sys.add_equality(std::move(terms), Rational(0), "flow" + menu_label(alts, set));
    out.groups.push_back(RowGroup::InflowOutflow);
  }

  if (!domain.contains(all)) {
    std::vector<Term> terms;
    for (int x = 0; x < n; ++x) terms.push_back({pairs.column(x, all), Rational(1)});
    sys.add_equality(std::move(terms), Rational(1), "norm");
    out.groups.push_back(RowGroup::Normalization);
  }
  return out;
}

PSlackSystem build_p_system(const RandomChoiceRule& p) {
  const int n = p.universe();
  require_size(n, kMaxAlternatives, "build_p_system");
  const auto& alts = p.alternatives();
  const auto& domain = p.domain();
  const Mask all = full_mask(n);
  const PairIndex pairs(n);

  PSlackSystem out;
  auto& sys = out.system;
  std::vector<int> var_of(pairs.size(), -1);
  for (int c = 0; c < pairs.size(); ++c) {
    const int x = pairs.alternative(c);
    const Mask set = pairs.set(c);
    if (domain.contains(set)) continue;
    var_of[c] = sys.add_variable("p~(" + pair_label(alts, x, set) + ")");
    out.variables.emplace_back(x, set);
  }

  for (Mask set : lattice_sets(n)) {
    if (domain.contains(set)) continue;
    std::vector<Term> terms;
    for (Mask m = set; m != 0; m &= m - 1) terms.push_back({var_of[pairs.column(std::countr_zero(m), set)], Rational(1)});
    sys.add_equality(std::move(terms), Rational(1), "sum" + menu_label(alts, set));
  }

  // Σ_{B⊇A} (−1)^{|B∖A|} p(x,B) ≥ 0 with observed terms moved to the rhs.
  for (int c = 0; c < pairs.size(); ++c) {
    const int x = pairs.alternative(c);
    const Mask set = pairs.set(c);
    std::vector<Term> terms;
    Rational constant = 0;
    for_each_superset(set, all, [&](Mask b) {
      const int s = (popcount(b) - popcount(set)) % 2 == 0 ? 1 : -1;
      if (auto idx = domain.index_of(b)) {
        if (s > 0) {
          constant += p.prob_at(*idx, x);
        } else {
          constant -= p.prob_at(*idx, x);
        }
      } else {
        terms.push_back({var_of[pairs.column(x, b)], Rational(s)});
      }
    });
    sys.add_inequality(std::move(terms), Rational(-constant), "bm(" + pair_label(alts, x, set) + ")");
  }
  return out;
}

HRepResult solve_q_system(HRepSystem built) {
  FeasibilityResult lp = solve_feasibility(built.system);
  std::optional<LatticeFunction> witness;
  if (lp.feasible()) {
    LatticeFunction q(built.pairs.universe());
    const auto& values = lp.solution();
    for (int c = 0; c < built.pairs.size(); ++c) q.at(built.pairs.alternative(c), built.pairs.set(c)) = values[c];
    witness = std::move(q);
  }
  return {std::move(lp), std::move(built), std::move(witness)};
}

PSlackResult solve_p_system(const RandomChoiceRule& p, PSlackSystem built) {
  FeasibilityResult lp = solve_feasibility(built.system);
  std::optional<LatticeFunction> extension;
  if (lp.feasible()) {
    LatticeFunction f(p.universe());
    const auto& domain = p.domain();
    for (int i = 0; i < domain.size(); ++i) {
      for (int x : domain[i].members()) f.at(x, domain[i].mask()) = p.prob_at(i, x);
    }
    const auto& values = lp.solution();
    for (std::size_t v = 0; v < built.variables.size(); ++v) {
      f.at(built.variables[v].first, built.variables[v].second) = values[v];
    }
    extension = std::move(f);
  }
  return {std::move(lp), std::move(built), std::move(extension)};
}

HRepResult hrep_feasible(const RandomChoiceRule& p) {
  require_size(p.universe(), 10, "hrep_feasible");
  return solve_q_system(build_q_system(p));
}

PSlackResult pslack_feasible(const RandomChoiceRule& p) {
  require_size(p.universe(), 10, "pslack_feasible");
  return solve_p_system(p, build_p_system(p));
}

std::uint64_t predicted_row_count(int n, const MenuCollection& domain) {
  require_size(n, kMaxAlternatives, "predicted_row_count");
  if (domain.universe() != n) throw Error(Errc::DimensionMismatch, "menus live on a different universe");
  std::uint64_t rows = static_cast<std::uint64_t>(n) << (n - 1);
  for (Mask set = 1; set <= full_mask(n); ++set) {
    if (!domain.contains(set)) rows -= static_cast<std::uint64_t>(popcount(set) - 1);
  }
  return rows;
}

std::uint64_t factorial(int n) {
  if (n < 0 || n > 20) throw Error(Errc::TooLarge, "factorial beyond 20! does not fit in 64 bits");
  std::uint64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

MatrixStats matrix_stats(int n, const MenuCollection& domain) {
  require_size(n, kMaxAlternatives, "matrix_stats");
  if (domain.universe() != n) throw Error(Errc::DimensionMismatch, "menus live on a different universe");
  MatrixStats stats;
  stats.n = n;
  stats.m_rows = factorial(n);
  stats.m_cols = domain.pair_count();
  stats.n_cols = static_cast<std::uint64_t>(n) << (n - 1);
  // One row per observed pair plus one balance/normalization row per
  // unobserved nonempty set.
  std::uint64_t unobserved = full_mask(n) - static_cast<std::uint64_t>(domain.size());
  stats.n_rows = domain.pair_count() + unobserved;
  stats.predicted_n_rows = predicted_row_count(n, domain);
  return stats;
}

}  // namespace rum

#include "rum/axiom.hpp"

#include <algorithm>
#include <utility>

namespace rum {

namespace {

bool same_domain(const MenuCollection& a, const MenuCollection& b) {
  return a.universe() == b.universe() && a.menus() == b.menus();
}

// g[x][A] = Σ_{B∈𝒳, x∈B⊆A} a(x,B), by a subset-sum transform per alternative.
std::vector<std::vector<Rational>> assigned_below(const Assignment& a) {
  const auto& domain = a.domain();
  const int n = domain.universe();
  const std::size_t sets = std::size_t{1} << n;
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(sets));
  for (int i = 0; i < domain.size(); ++i) {
    for (int x : domain[i].members()) g[x][domain[i].mask()] = a.at(i, x);
  }
  for (int x = 0; x < n; ++x) {
    for (int b = 0; b < n; ++b) {
      for (std::size_t s = 0; s < sets; ++s) {
        if (s & (std::size_t{1} << b)) g[x][s] += g[x][s ^ (std::size_t{1} << b)];
      }
    }
  }
  return g;
}

}  // namespace

Capacity::Capacity(int n) : n_(n) {
  if (n < 1 || n > kMaxAlternatives) throw Error(Errc::TooLarge, "capacity needs 1 <= n <= 20");
  values_.assign(std::size_t{1} << n, Rational(0));
}

Rational& Capacity::operator[](Mask set) {
  if (set == 0) throw Error(Errc::InvalidCertificate, "c(empty set) is fixed at zero");
  return values_.at(set);
}

Capacity Capacity::scaled(const Rational& lambda) const {
  Capacity out = *this;
  for (auto& v : out.values_) v *= lambda;
  return out;
}

Assignment::Assignment(MenuCollection domain) : domain_(std::move(domain)) {
  values_.assign(domain_.size(), std::vector<Rational>(domain_.universe()));
}

const Rational& Assignment::value(int x, Menu menu) const {
  const auto idx = domain_.index_of(menu.mask());
  if (!idx || !menu.contains(x)) throw Error(Errc::DomainMismatch, "assignment has no such pair");
  return values_[*idx][x];
}

Assignment Assignment::scaled(const Rational& lambda) const {
  Assignment out = *this;
  for (auto& row : out.values_) {
    for (auto& v : row) v *= lambda;
  }
  return out;
}

Rational assigned_mass(const Assignment& a, const RandomChoiceRule& p) {
  if (!same_domain(a.domain(), p.domain())) throw Error(Errc::DomainMismatch, "assignment and rule differ on menus");
  Rational total = 0;
  const auto& domain = p.domain();
  for (int i = 0; i < domain.size(); ++i) {
    for (int x : domain[i].members()) total += p.prob_at(i, x) * a.at(i, x);
  }
  return total;
}

bool is_feasible_pair(const Assignment& a, const Capacity& c, const RandomChoiceRule& p) {
  if (c.universe() != p.universe()) throw Error(Errc::DomainMismatch, "capacity and rule differ on X");
  return assigned_mass(a, p) <= c[full_mask(p.universe())];
}

bool is_locally_feasible_pair(const Assignment& a, const Capacity& c) {
  const int n = a.domain().universe();
  if (c.universe() != n) throw Error(Errc::DomainMismatch, "capacity and assignment differ on X");
  const auto g = assigned_below(a);
  for (Mask set = 1; set <= full_mask(n); ++set) {
    for (Mask m = set; m != 0; m &= m - 1) {
      const int x = std::countr_zero(m);
      if (g[x][set] > c[set] - c[set & ~bit(x)]) return false;
    }
  }
  return true;
}

FullInflowSystem build_full_inflow_system(const RandomChoiceRule& p) {
  const int n = p.universe();
  require_size(n, 10, "build_full_inflow_system");
  const auto& alts = p.alternatives();
  const auto& domain = p.domain();
  const Mask all = full_mask(n);

  FullInflowSystem out{HRepSystem{LinearSystem(), PairIndex(n), {}}, domain, {}};
  auto& sys = out.built.system;
  const auto& pairs = out.built.pairs;
  for (int c = 0; c < pairs.size(); ++c) {
    sys.add_variable("q(" + alts.name(pairs.alternative(c)) + "|" + menu_label(alts, pairs.set(c)) + ")");
  }

  for (int i = 0; i < domain.size(); ++i) {
    const Mask set = domain[i].mask();
    const Mask free = all & ~set;
    for (int x : domain[i].members()) {
      std::vector<Term> terms;
      for (Mask extra = free;; extra = (extra - 1) & free) {
        terms.push_back({pairs.column(x, set | extra), Rational(1)});
        if (extra == 0) break;
      }
      sys.add_equality(std::move(terms), p.prob_at(i, x),
                       "obs(" + alts.name(x) + "|" + menu_label(alts, set) + ")");
      out.built.groups.push_back(RowGroup::ObservedConsistency);
      out.row_keys.emplace_back(x, set);
    }
  }

  for (Mask set : lattice_sets(n)) {
    if (set == all) continue;
    std::vector<Term> terms;
    for (int x = 0; x < n; ++x) {
      if (set & bit(x)) {
        terms.push_back({pairs.column(x, set), Rational(-1)});
      } else {
        terms.push_back({pairs.column(x, set | bit(x)), Rational(1)});
      }
    }
    sys.add_equality(std::move(terms), Rational(0), "flow" + menu_label(alts, set));
    out.built.groups.push_back(RowGroup::InflowOutflow);
    out.row_keys.emplace_back(-1, set);
  }

  std::vector<Term> top;
  for (int x = 0; x < n; ++x) top.push_back({pairs.column(x, all), Rational(1)});
  sys.add_equality(std::move(top), Rational(1), "norm");
  out.built.groups.push_back(RowGroup::Normalization);
  out.row_keys.emplace_back(-1, all);
  return out;
}

AssignmentCapacity certificate_to_pair(const FarkasCertificate& r, const FullInflowSystem& system) {
  const auto& sys = system.built.system;
  if (static_cast<int>(r.multipliers.size()) != sys.num_rows() || !verify_certificate(sys, r)) {
    throw Error(Errc::InvalidCertificate, "multipliers do not certify infeasibility of the inflow system");
  }
  const int n = system.built.pairs.universe();
  AssignmentCapacity out{Assignment(system.domain), Capacity(n)};
  for (int row = 0; row < sys.num_rows(); ++row) {
    const auto [x, set] = system.row_keys[row];
    const Rational& value = r.multipliers[row];
    switch (system.built.groups[row]) {
      case RowGroup::ObservedConsistency:
        out.assignment.at(*system.domain.index_of(set), x) = value;
        break;
      case RowGroup::InflowOutflow:
        out.capacity[set] = value;
        break;
      case RowGroup::Normalization:
        out.capacity[set] = -value;
        break;
      case RowGroup::Monotonicity:
        break;
    }
  }
  return out;
}

AssignmentCapacity sample_locally_feasible_pair(const MenuCollection& domain, std::mt19937_64& rng) {
  const int n = domain.universe();
  AssignmentCapacity out{Assignment(domain), Capacity(n)};
  for (int i = 0; i < domain.size(); ++i) {
    for (int x : domain[i].members()) {
      // Nine grid points −2, −3/2, ..., 2.
      out.assignment.at(i, x) = ratio(static_cast<long>(rng() % 9) - 4, 2);
    }
  }
  const auto g = assigned_below(out.assignment);
  std::vector<Mask> order;
  for (Mask set = 1; set <= full_mask(n); ++set) order.push_back(set);
  std::stable_sort(order.begin(), order.end(), [](Mask a, Mask b) { return popcount(a) < popcount(b); });
  for (Mask set : order) {
    std::optional<Rational> best;
    for (Mask m = set; m != 0; m &= m - 1) {
      const int x = std::countr_zero(m);
      Rational need = std::as_const(out.capacity)[set & ~bit(x)] + g[x][set];
      if (!best || need > *best) best = std::move(need);
    }
    out.capacity[set] = *best;
  }
  return out;
}

RummeReport verify_rumme(const RandomChoiceRule& p, int trials, std::uint64_t seed) {
  require_size(p.universe(), 5, "verify_rumme");
  if (trials < 0) throw Error(Errc::ParseError, "trials must be nonnegative");
  RummeReport report;
  report.trials = trials;
  if (p.domain().size() == 0) {
    report.vacuous = true;
    report.notes.push_back("no observed menus: assigned mass is 0, so feasibility reduces to c(X) >= 0");
  }

  const FullInflowSystem system = build_full_inflow_system(p);
  const FeasibilityResult lp = solve_feasibility(system.built.system);
  report.rationalizable = lp.feasible();

  if (report.rationalizable) {
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
      AssignmentCapacity pair = sample_locally_feasible_pair(p.domain(), rng);
      if (is_feasible_pair(pair.assignment, pair.capacity, p)) {
        ++report.feasible_trials;
      } else if (!report.witness) {
        report.witness_locally_feasible = is_locally_feasible_pair(pair.assignment, pair.capacity);
        report.witness_mass = assigned_mass(pair.assignment, p);
        report.witness = std::move(pair);
      }
    }
    report.consistent = report.feasible_trials == trials;
    if (!report.consistent) report.notes.push_back("sampled locally feasible pair is not feasible");
    return report;
  }

  AssignmentCapacity pair = certificate_to_pair(lp.certificate(), system);
  report.witness_locally_feasible = is_locally_feasible_pair(pair.assignment, pair.capacity);
  report.witness_feasible = is_feasible_pair(pair.assignment, pair.capacity, p);
  report.witness_mass = assigned_mass(pair.assignment, p);
  report.witness = std::move(pair);
  report.consistent = report.witness_locally_feasible && !report.witness_feasible;
  if (!report.consistent) report.notes.push_back("certificate did not yield a locally feasible, infeasible pair");
  return report;
}

}  // namespace rum

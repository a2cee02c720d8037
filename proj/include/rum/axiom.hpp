#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rum/core.hpp"
#include "rum/hrep.hpp"
#include "rum/lp.hpp"

namespace rum {

/// c : 2^X → Q indexed by bitmask, with c(∅) = 0. No monotonicity.
class Capacity {
 public:
  Capacity() = default;
  explicit Capacity(int n);
  int universe() const { return n_; }
  Rational& operator[](Mask set);
  const Rational& operator[](Mask set) const { return values_.at(set); }
  const std::vector<Rational>& values() const { return values_; }
  Capacity scaled(const Rational& lambda) const;

 private:
  int n_ = 0;
  std::vector<Rational> values_;
};

/// a(x, B) for every x ∈ B ∈ 𝒳, laid out like the rule's probabilities.
class Assignment {
 public:
  Assignment() = default;
  explicit Assignment(MenuCollection domain);
  const MenuCollection& domain() const { return domain_; }
  Rational& at(int menu_index, int x) { return values_[menu_index][x]; }
  const Rational& at(int menu_index, int x) const { return values_[menu_index][x]; }
  /// Throws DomainMismatch for an unobserved pair.
  const Rational& value(int x, Menu menu) const;
  Assignment scaled(const Rational& lambda) const;

 private:
  MenuCollection domain_;
  std::vector<std::vector<Rational>> values_;
};

/// Σ_{A∈𝒳} Σ_{x∈A} p(x,A) a(x,A).
Rational assigned_mass(const Assignment& a, const RandomChoiceRule& p);

/// assigned_mass(a, p) ≤ c(X). Throws DomainMismatch when a and p disagree
/// on 𝒳 or c lives on another universe.
bool is_feasible_pair(const Assignment& a, const Capacity& c, const RandomChoiceRule& p);

/// For every x ∈ A ⊆ X: Σ_{B∈𝒳, x∈B⊆A} a(x,B) ≤ c(A) − c(A∖{x}).
bool is_locally_feasible_pair(const Assignment& a, const Capacity& c);

/// The q system with the balance row at every proper nonempty set:
///   D  Σ_{B⊇A} q(x,B) = p(x,A)                                 x ∈ A ∈ 𝒳
///   E  Σ_{z∉A} q(z,A∪{z}) − Σ_{x∈A} q(x,A) = 0                  ∅ ⊊ A ⊊ X
///   F  Σ_x q(x,X) = 1
/// E is oriented inflow minus outflow so that its multipliers read directly
/// as capacities.
struct FullInflowSystem {
  HRepSystem built;
  MenuCollection domain;
  /// Per row: (alternative, set) for D rows, (−1, set) for E rows, (−1, X)
  /// for F.
  std::vector<std::pair<int, Mask>> row_keys;
};

FullInflowSystem build_full_inflow_system(const RandomChoiceRule& p);

struct AssignmentCapacity {
  Assignment assignment;
  Capacity capacity;
};

/// a(x,B) = r on D row (x,B); c(A) = r on E row A; c(X) = −r on F;
/// c(∅) = 0. Throws InvalidCertificate unless r verifies against `system`.
AssignmentCapacity certificate_to_pair(const FarkasCertificate& r, const FullInflowSystem& system);

/// Locally feasible pair with a drawn uniformly from the half-integers in
/// [−2, 2] and c the smallest capacity satisfying local feasibility, built up
/// by cardinality.
AssignmentCapacity sample_locally_feasible_pair(const MenuCollection& domain, std::mt19937_64& rng);

struct RummeReport {
  bool rationalizable = false;
  int trials = 0;
  /// Sampled pairs that were feasible (rationalizable case).
  int feasible_trials = 0;
  /// Rationalizable case: the first sampled locally feasible pair that was
  /// not feasible, if any. Otherwise the pair built from the certificate.
  std::optional<AssignmentCapacity> witness;
  bool witness_locally_feasible = false;
  bool witness_feasible = false;
  Rational witness_mass;
  /// Both directions of the characterization held on this run.
  bool consistent = false;
  bool vacuous = false;
  std::vector<std::string> notes;
};

/// Checks the local-to-global feasibility characterization on p: samples
/// `trials` pairs when p is rationalizable, converts the certificate when
/// it is not. |X| ≤ 5.
RummeReport verify_rumme(const RandomChoiceRule& p, int trials, std::uint64_t seed);

}  // namespace rum

#pragma once

#include <cstddef>
#include <vector>

#include "rum/core.hpp"

namespace rum {

/// A function on all pairs (x, A) with x ∈ A ⊆ X over the full subset
/// lattice. Used for choice probabilities extended to every menu and for
/// their Möbius inverses alike. Entries with x ∉ A are held at zero.
class LatticeFunction {
 public:
  LatticeFunction() = default;
  explicit LatticeFunction(int n);

  int universe() const { return n_; }
  Rational& at(int x, Mask set) { return values_[index(x, set)]; }
  const Rational& at(int x, Mask set) const { return values_[index(x, set)]; }
  /// Σ_{x∈A} f(x, A).
  Rational set_total(Mask set) const;

  bool operator==(const LatticeFunction&) const = default;

 private:
  std::size_t index(int x, Mask set) const { return static_cast<std::size_t>(set) * n_ + x; }

  int n_ = 0;
  std::vector<Rational> values_;
};

/// Lifts a full-domain rule to a lattice function. Throws IncompleteDomain.
LatticeFunction to_lattice(const RandomChoiceRule& full);

/// Reads a lattice function back as a rule on 2^X∖{∅}; runs validate_rcr,
/// so it throws whenever `f` is not a random choice rule.
RandomChoiceRule to_full_rule(const LatticeFunction& f, const AlternativeSet& alts);

/// q(x,A) = Σ_{A⊆B} (−1)^{|B∖A|} p(x,B) on a full-domain rule.
LatticeFunction mobius_inverse(const RandomChoiceRule& full);
/// The same transform applied to an arbitrary lattice function.
LatticeFunction mobius_inverse(const LatticeFunction& f);

/// f(x,A) = Σ_{A⊆B} q(x,B); inverse of mobius_inverse.
LatticeFunction accumulate(const LatticeFunction& q);

/// True iff Σ_{x∈A} f(x,A) takes one value over all nonempty A.
bool is_set_constant(const LatticeFunction& f);

/// Σ_{x∈A} q(x,A) = Σ_{y∉A} q(y, A∪{y}) at every ∅ ⊊ A ⊊ X.
bool inflow_equals_outflow(const LatticeFunction& q);

struct QtopVerdict {
  bool holds = true;
  /// 0 when holds; otherwise the failed condition (1: inflow/outflow,
  /// 2: normalization, 3: accumulated nonnegativity).
  int failed_condition = 0;
  /// Offending set (and alternative for condition 3).
  Mask set = 0;
  int alternative = -1;
};

/// Characterization of Möbius inverses of full-domain rules. Conditions are
/// checked in the order 2, 1, 3 and the first failure is reported.
QtopVerdict satisfies_qtop(const LatticeFunction& q);

}  // namespace rum

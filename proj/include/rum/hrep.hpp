#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rum/core.hpp"
#include "rum/lp.hpp"
#include "rum/mobius.hpp"

namespace rum {

/// Every pair (x, A) with x ∈ A ⊆ X, ordered by |A| descending, then bitmask,
/// then alternative index. This is the column order of every full-lattice
/// system.
class PairIndex {
 public:
  explicit PairIndex(int n);

  int universe() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  int column(int x, Mask set) const { return column_[static_cast<std::size_t>(set) * n_ + x]; }
  int alternative(int col) const { return pairs_[col].first; }
  Mask set(int col) const { return pairs_[col].second; }

 private:
  int n_;
  std::vector<std::pair<int, Mask>> pairs_;
  std::vector<int> column_;
};

/// Sets of the lattice (nonempty) in the same order the pairs use.
std::vector<Mask> lattice_sets(int n);

enum class RowGroup { ObservedConsistency, InflowOutflow, Normalization, Monotonicity };

struct HRepSystem {
  LinearSystem system;
  PairIndex pairs;
  /// Group of every row, indexed like the system rows.
  std::vector<RowGroup> groups;
};

/// Variables q̃(x,A) ≥ 0 over the whole lattice with rows
///   ObservedConsistency  Σ_{B⊇A} q̃(x,B) = p(x,A)                for x ∈ A ∈ 𝒳
///   InflowOutflow        Σ_{x∈A} q̃(x,A) − Σ_{y∉A} q̃(y,A∪{y}) = 0  for ∅ ⊊ A ⊊ X, A ∉ 𝒳
///   Normalization        Σ_x q̃(x,X) = 1                          if X ∉ 𝒳
HRepSystem build_q_system(const RandomChoiceRule& p);

struct PSlackSystem {
  LinearSystem system;
  /// Unobserved pairs backing the variables, in lattice pair order.
  std::vector<std::pair<int, Mask>> variables;
};

/// Variables p̃(x,A) ≥ 0 for unobserved A; one sum-to-one equality per
/// unobserved menu, then one alternating-sum inequality per lattice pair.
PSlackSystem build_p_system(const RandomChoiceRule& p);

struct HRepResult {
  FeasibilityResult lp;
  HRepSystem built;
  /// The q̃ solution as a lattice function when feasible.
  std::optional<LatticeFunction> witness;
};

HRepResult hrep_feasible(const RandomChoiceRule& p);

struct PSlackResult {
  FeasibilityResult lp;
  PSlackSystem built;
  /// The full-domain extension (observed p plus p̃) when feasible.
  std::optional<LatticeFunction> extension;
};

PSlackResult pslack_feasible(const RandomChoiceRule& p);

/// Solves an already assembled q̃-type system and unpacks the witness.
HRepResult solve_q_system(HRepSystem built);
/// Solves an already assembled p̃ system and unpacks the extension.
PSlackResult solve_p_system(const RandomChoiceRule& p, PSlackSystem built);

/// n·2^(n−1) − Σ_{A∉𝒳}(|A|−1).
std::uint64_t predicted_row_count(int n, const MenuCollection& domain);

struct MatrixStats {
  int n = 0;
  std::uint64_t m_rows = 0;  // n!
  std::uint64_t m_cols = 0;  // observed pairs
  std::uint64_t n_rows = 0;  // counted per row group, without materializing
  std::uint64_t n_cols = 0;  // n·2^(n−1)
  std::uint64_t predicted_n_rows = 0;
};

std::uint64_t factorial(int n);

/// Row and column counts of both representations; never builds coefficients.
MatrixStats matrix_stats(int n, const MenuCollection& domain);

}  // namespace rum

#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "rum/core.hpp"
#include "rum/hrep.hpp"
#include "rum/lp.hpp"
#include "rum/vrep.hpp"

namespace rum {

/// Strict dominance x ⊳ y over alternative indices, transitively closed.
class PartialOrder {
 public:
  PartialOrder() = default;
  /// Closes `pairs` (dominator, dominated) transitively; throws CyclicOrder on
  /// reflexive or cyclic input.
  PartialOrder(int n, const std::vector<std::pair<int, int>>& pairs);

  int universe() const { return n_; }
  bool dominates(int x, int y) const { return (upper_[y] >> x) & 1u; }
  /// Alternatives dominating x.
  Mask upper(int x) const { return upper_[x]; }
  std::vector<std::pair<int, int>> pairs() const;
  bool empty() const;

 private:
  int n_ = 0;
  std::vector<Mask> upper_;
};

/// U(x) = {y : y ⊳ x}.
Mask upper_set(const PartialOrder& order, int x);

/// p(y, A) = 0 whenever x, y ∈ A and x ⊳ y, on every observed menu.
bool is_monotone_rcr(const RandomChoiceRule& p, const PartialOrder& order);

/// For each x with U(x) ≠ ∅: Σ_{A∋x, A∩U(x)≠∅} q̃(x,A) = 0, in q̃ column
/// indexing. At most |X|−1 rows.
std::vector<Constraint> monotone_constraint_rows(const PartialOrder& order, const AlternativeSet& alts,
                                                 const PairIndex& pairs);

/// q̃ system plus the monotonicity rows.
HRepSystem build_monotone_q_system(const RandomChoiceRule& p, const PartialOrder& order);
HRepResult monotone_feasible(const RandomChoiceRule& p, const PartialOrder& order);

/// p̃ system plus p̃(y,A) = 0 on unobserved menus where y is dominated; an
/// observed p(y,A) > 0 under dominance enters as a violated constant row.
PSlackSystem build_monotone_p_system(const RandomChoiceRule& p, const PartialOrder& order);
PSlackResult monotone_pslack_feasible(const RandomChoiceRule& p, const PartialOrder& order);

/// Linear extensions of the partial order, lexicographic.
std::vector<LinearOrder> monotone_orders(const PartialOrder& order, int n);

/// Two-good linear budget {z ≥ 0 : price·z = wealth}.
struct Budget {
  std::array<Rational, 2> price;
  Rational wealth;
};

using Point2 = std::array<Rational, 2>;

enum class Side { Below, On, Above };

struct Patch {
  /// "B<k>:<j>": the j-th segment (by increasing first coordinate) of the
  /// k-th budget, both 1-based and 0-based respectively.
  std::string label;
  int budget = 0;
  Point2 from;  // closure endpoints, from.x < to.x
  Point2 to;
  /// Position relative to every budget (On for its own).
  std::vector<Side> signs;
};

struct PatchArrangement {
  std::vector<Patch> patches;
  /// Over patch indices.
  PartialOrder dominance;
  /// Patch indices lying on each budget, i.e. the menu each budget offers.
  std::vector<std::vector<int>> budget_menus;
};

/// Splits each budget line at its interior intersections with the others.
/// Intersection points carry no choice and are not patches. P ⊳ Q iff every
/// point of Q's closure is componentwise below some point of P's closure.
/// Throws DegenerateArrangement on coincident budgets, intersections on an
/// axis, or three budgets through one point; WrongDimension for non-2-good
/// input.
PatchArrangement build_patches_2goods(const std::vector<Budget>& budgets);

}  // namespace rum

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "rum/core.hpp"
#include "rum/lp.hpp"

namespace rum {

/// Observed (x, A) pair; the column key of M and the row key of the
/// vertex-representation system.
struct ChoicePair {
  int alternative;
  Menu menu;

  bool operator==(const ChoicePair&) const = default;
};

/// Columns in domain order, members ascending within each menu.
std::vector<ChoicePair> observed_pairs(const MenuCollection& domain);

/// Rows indexed by linear orders, columns by observed pairs; entry 1 iff the
/// order picks the pair's alternative from the pair's menu. Stored as the
/// chosen alternative per (order, menu) rather than as a dense 0/1 grid.
class VRepMatrix {
 public:
  VRepMatrix(std::vector<LinearOrder> orders, const MenuCollection& domain);

  int rows() const { return static_cast<int>(orders_.size()); }
  int cols() const { return static_cast<int>(columns_.size()); }
  const std::vector<LinearOrder>& orders() const { return orders_; }
  const std::vector<ChoicePair>& columns() const { return columns_; }
  int entry(int row, int col) const;
  /// Alternative chosen by order `row` from the `menu_index`-th menu.
  int choice(int row, int menu_index) const { return choice_[row][menu_index]; }
  /// Column offset of the first pair of the `menu_index`-th menu.
  int menu_offset(int menu_index) const { return menu_offset_[menu_index]; }
  /// Column index of pair (x, menu_index).
  int column_of(int x, int menu_index) const;

 private:
  std::vector<LinearOrder> orders_;
  std::vector<Menu> menus_;
  std::vector<ChoicePair> columns_;
  std::vector<int> menu_offset_;
  std::vector<std::vector<int>> choice_;
};

VRepMatrix build_m_matrix(int n, const MenuCollection& domain);

struct VRepResult {
  FeasibilityResult lp;
  /// Orders backing the variables of `system`, in variable order.
  std::vector<LinearOrder> orders;
  LinearSystem system;
  /// Normalized witness when feasible.
  std::optional<PreferenceDistribution> distribution;
};

/// Builds ν ≥ 0, νᵀM = p over the given orders: one nonnegative variable per
/// order, one equality row per observed pair labelled "p(x|A)".
LinearSystem build_vrep_system(const RandomChoiceRule& p, const std::vector<LinearOrder>& orders);

/// Feasibility of νᵀM = p over all orders.
VRepResult vrep_feasible(const RandomChoiceRule& p);

/// Same system restricted to a subset of the orders (monotone oracle,
/// restricted master problems).
VRepResult vrep_feasible_restricted(const RandomChoiceRule& p, const std::vector<LinearOrder>& orders);

/// min_{ν≥0} ‖νᵀM − p‖∞, exactly.
Rational linf_statistic(const RandomChoiceRule& p);

struct ColumnGenerationResult {
  /// Last restricted master solved. Only columns are ever dropped, so its
  /// rows (and any certificate) line up with the full system's rows.
  VRepResult final_master;
  int iterations = 0;
  std::vector<LinearOrder> added;
};

/// Restricted-master loop: solve over the active orders; on infeasibility,
/// scan the excluded orders of `pool` in lexicographic order and add the first
/// one with rᵀm_≻ > 0. Stops infeasible when nothing prices out. An empty
/// `pool` means all orders.
ColumnGenerationResult column_generation(const RandomChoiceRule& p, const std::vector<LinearOrder>& seed_orders,
                                         const std::vector<LinearOrder>& pool = {});

struct ArspViolation {
  std::vector<ChoicePair> sequence;
  Rational lhs;
  int rhs = 0;
};

/// Searches multisets of observed pairs of size 1..max_len for a sequence
/// with Σ p(x_i, A_i) > max_≻ #{i : x_i is ≻-best in A_i}.
std::optional<ArspViolation> arsp_search(const RandomChoiceRule& p, int max_len);

/// max over all orders of the number of pairs each order rationalizes.
int arsp_rhs(int n, const std::vector<ChoicePair>& sequence);

}  // namespace rum

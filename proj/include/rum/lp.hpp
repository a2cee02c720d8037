#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "rum/rational.hpp"

namespace rum {

struct Term {
  int var;
  Rational coef;
};

struct Constraint {
  std::vector<Term> terms;
  Rational rhs;
  std::string label;
};

/// Exact linear system
///
///   eq rows:    terms · v  = rhs
///   ineq rows:  terms · v >= rhs
///   bounds:     v_j >= 0 for every variable flagged nonnegative, free otherwise
///
/// Rows are addressed globally with equalities first, then inequalities, each
/// group in insertion order. Certificates use that indexing. The add_* calls
/// return the position within their own group.
class LinearSystem {
 public:
  explicit LinearSystem(int num_vars = 0, bool nonneg = true);

  int num_vars() const { return static_cast<int>(nonneg_.size()); }
  int add_variable(std::string label, bool nonneg = true);
  void set_nonneg(int var, bool nonneg) { nonneg_.at(var) = nonneg; }
  bool is_nonneg(int var) const { return nonneg_[var]; }
  const std::string& var_label(int var) const { return var_labels_.at(var); }
  void set_var_label(int var, std::string label) { var_labels_.at(var) = std::move(label); }

  int add_equality(std::vector<Term> terms, Rational rhs, std::string label);
  int add_inequality(std::vector<Term> terms, Rational rhs, std::string label);

  const std::vector<Constraint>& equalities() const { return eq_rows_; }
  const std::vector<Constraint>& inequalities() const { return ineq_rows_; }
  int num_rows() const { return static_cast<int>(eq_rows_.size() + ineq_rows_.size()); }
  bool is_equality_row(int row) const { return row < static_cast<int>(eq_rows_.size()); }
  const Constraint& row(int index) const;
  std::optional<int> find_row(std::string_view label) const;

  /// Throws DimensionMismatch if a term references a missing variable.
  void check_well_formed() const;

 private:
  void claim_label(const std::string& label);

  std::vector<bool> nonneg_;
  std::vector<std::string> var_labels_;
  std::vector<Constraint> eq_rows_;
  std::vector<Constraint> ineq_rows_;
  std::unordered_map<std::string, int> label_index_;  // label -> insertion ordinal
};

/// Multipliers r, one per row (global row indexing), proving infeasibility:
///
///   r_i free on equality rows, r_i >= 0 on inequality rows,
///   Σ_i r_i a_ij <= 0 for every nonnegative variable j,
///   Σ_i r_i a_ij  = 0 for every free variable j,
///   Σ_i r_i b_i   > 0.
///
/// Any feasible v would give 0 >= (rᵀA) v >= rᵀb > 0.
struct FarkasCertificate {
  std::vector<Rational> multipliers;
};

class FeasibilityResult {
 public:
  static FeasibilityResult feasible_with(std::vector<Rational> values) {
    return FeasibilityResult(std::move(values));
  }
  static FeasibilityResult infeasible_with(FarkasCertificate cert) { return FeasibilityResult(std::move(cert)); }

  bool feasible() const { return std::holds_alternative<std::vector<Rational>>(arm_); }
  const std::vector<Rational>& solution() const { return std::get<std::vector<Rational>>(arm_); }
  const FarkasCertificate& certificate() const { return std::get<FarkasCertificate>(arm_); }

 private:
  explicit FeasibilityResult(std::vector<Rational> values) : arm_(std::move(values)) {}
  explicit FeasibilityResult(FarkasCertificate cert) : arm_(std::move(cert)) {}

  std::variant<std::vector<Rational>, FarkasCertificate> arm_;
};

/// Two-phase primal simplex with Bland's rule; phase-1 duals become the
/// certificate when the system is infeasible.
FeasibilityResult solve_feasibility(const LinearSystem& system);

/// Exact check of the alternative system documented on FarkasCertificate.
/// Throws DimensionMismatch when the vector length differs from num_rows().
bool verify_certificate(const LinearSystem& system, const FarkasCertificate& cert);

/// Exact check that `values` meets every row and bound.
bool satisfies(const LinearSystem& system, const std::vector<Rational>& values);

enum class OptimizationStatus { Optimal, Infeasible, Unbounded };

struct OptimizationResult {
  OptimizationStatus status = OptimizationStatus::Infeasible;
  Rational value;
  std::vector<Rational> solution;
  std::optional<FarkasCertificate> certificate;
};

/// min objective·v subject to the system.
OptimizationResult minimize(const LinearSystem& system, const std::vector<Term>& objective);

}  // namespace rum

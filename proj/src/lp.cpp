#include "rum/lp.hpp"

#include <algorithm>
#include <map>

#include "rum/error.hpp"

namespace rum {

LinearSystem::LinearSystem(int num_vars, bool nonneg) {
  for (int j = 0; j < num_vars; ++j) add_variable("v" + std::to_string(j), nonneg);
}

int LinearSystem::add_variable(std::string label, bool nonneg) {
  nonneg_.push_back(nonneg);
  var_labels_.push_back(std::move(label));
  return num_vars() - 1;
}

void LinearSystem::claim_label(const std::string& label) {
  const int ordinal = static_cast<int>(label_index_.size());
  if (!label_index_.emplace(label, ordinal).second) {
    throw Error(Errc::DimensionMismatch, "duplicate row label '" + label + "'");
  }
}

int LinearSystem::add_equality(std::vector<Term> terms, Rational rhs, std::string label) {
  if (label.empty()) label = "eq" + std::to_string(eq_rows_.size());
  claim_label(label);
  eq_rows_.push_back({std::move(terms), std::move(rhs), std::move(label)});
  return static_cast<int>(eq_rows_.size()) - 1;
}

int LinearSystem::add_inequality(std::vector<Term> terms, Rational rhs, std::string label) {
  if (label.empty()) label = "ge" + std::to_string(ineq_rows_.size());
  claim_label(label);
  ineq_rows_.push_back({std::move(terms), std::move(rhs), std::move(label)});
  return static_cast<int>(ineq_rows_.size()) - 1;
}

const Constraint& LinearSystem::row(int index) const {
  if (index < static_cast<int>(eq_rows_.size())) return eq_rows_.at(index);
  return ineq_rows_.at(index - eq_rows_.size());
}

std::optional<int> LinearSystem::find_row(std::string_view label) const {
  for (int i = 0; i < num_rows(); ++i) {
    if (row(i).label == label) return i;
  }
  return std::nullopt;
}

void LinearSystem::check_well_formed() const {
  for (int i = 0; i < num_rows(); ++i) {
    for (const auto& t : row(i).terms) {
      if (t.var < 0 || t.var >= num_vars()) {
        throw Error(Errc::DimensionMismatch, "row '" + row(i).label + "' references variable " +
                                                 std::to_string(t.var) + " of " + std::to_string(num_vars()));
      }
    }
  }
}

bool verify_certificate(const LinearSystem& system, const FarkasCertificate& cert) {
  system.check_well_formed();
  if (static_cast<int>(cert.multipliers.size()) != system.num_rows()) {
    throw Error(Errc::DimensionMismatch, "certificate has " + std::to_string(cert.multipliers.size()) +
                                             " multipliers for " + std::to_string(system.num_rows()) + " rows");
  }
  std::vector<Rational> combined(system.num_vars());
  Rational rhs = 0;
  for (int i = 0; i < system.num_rows(); ++i) {
    const Rational& r = cert.multipliers[i];
    if (!system.is_equality_row(i) && r < 0) return false;
    if (r == 0) continue;
    const auto& row = system.row(i);
    for (const auto& t : row.terms) combined[t.var] += r * t.coef;
    rhs += r * row.rhs;
  }
  if (rhs <= 0) return false;
  for (int j = 0; j < system.num_vars(); ++j) {
    if (system.is_nonneg(j) ? combined[j] > 0 : combined[j] != 0) return false;
  }
  return true;
}

bool satisfies(const LinearSystem& system, const std::vector<Rational>& values) {
  system.check_well_formed();
  if (static_cast<int>(values.size()) != system.num_vars()) {
    throw Error(Errc::DimensionMismatch, "assignment length differs from variable count");
  }
  for (int j = 0; j < system.num_vars(); ++j) {
    if (system.is_nonneg(j) && values[j] < 0) return false;
  }
  for (int i = 0; i < system.num_rows(); ++i) {
    const auto& row = system.row(i);
    Rational lhs = 0;
    for (const auto& t : row.terms) lhs += t.coef * values[t.var];
    if (system.is_equality_row(i) ? lhs != row.rhs : lhs < row.rhs) return false;
  }
  return true;
}

namespace {

struct SparseRow {
  std::vector<int> idx;  // ascending
  std::vector<Rational> val;

  const Rational* find(int col) const {
    auto it = std::lower_bound(idx.begin(), idx.end(), col);
    if (it == idx.end() || *it != col) return nullptr;
    return &val[it - idx.begin()];
  }
};

// row := row - factor * pivot, dropping exact zeros.
void subtract_scaled(SparseRow& row, const Rational& factor, const SparseRow& pivot) {
  SparseRow out;
  out.idx.reserve(row.idx.size() + pivot.idx.size());
  out.val.reserve(row.idx.size() + pivot.idx.size());
  std::size_t a = 0;
  std::size_t b = 0;
  while (a < row.idx.size() || b < pivot.idx.size()) {
    if (b == pivot.idx.size() || (a < row.idx.size() && row.idx[a] < pivot.idx[b])) {
      out.idx.push_back(row.idx[a]);
      out.val.push_back(std::move(row.val[a]));
      ++a;
    } else if (a == row.idx.size() || pivot.idx[b] < row.idx[a]) {
      out.idx.push_back(pivot.idx[b]);
      out.val.emplace_back(-factor * pivot.val[b]);
      ++b;
    } else {
      Rational v = row.val[a] - factor * pivot.val[b];
      if (v != 0) {
        out.idx.push_back(row.idx[a]);
        out.val.push_back(std::move(v));
      }
      ++a;
      ++b;
    }
  }
  row = std::move(out);
}

enum class ColumnKind { Plus, Minus, Surplus, Artificial };

struct Column {
  ColumnKind kind;
  int source;  // variable index for Plus/Minus, tableau row for Surplus/Artificial
};

enum class RunStatus { Optimal, Unbounded };

// Standard-form tableau: A' z = b' with b' >= 0, z >= 0. Each tableau row
// remembers the column that started as its unit vector so that the simplex
// multipliers y = c_B B^{-1} can be read back from the reduced costs.
class Tableau {
 public:
  explicit Tableau(const LinearSystem& system) : system_(system) {}

  // Returns a certificate straight away if some all-zero row is violated.
  std::optional<FarkasCertificate> build();
  bool phase_one();
  FarkasCertificate certificate() const;
  std::vector<Rational> solution() const;
  RunStatus phase_two(const std::vector<Term>& objective, Rational& value);

 private:
  void pivot(int r, int c);
  RunStatus run();
  int add_column(ColumnKind kind, int source) {
    columns_.push_back({kind, source});
    return static_cast<int>(columns_.size()) - 1;
  }

  const LinearSystem& system_;
  std::vector<Column> columns_;
  std::vector<int> plus_col_;
  std::vector<int> minus_col_;

  std::vector<SparseRow> rows_;
  std::vector<Rational> rhs_;
  std::vector<int> basis_;
  std::vector<int> source_row_;
  std::vector<int> flip_;
  std::vector<int> unit_col_;
  std::vector<Rational> unit_cost_;
  std::vector<bool> dead_;

  std::vector<Rational> reduced_;  // reduced costs d_j
  Rational value_row_;             // minus the current objective value
  std::vector<bool> allowed_;
};

std::optional<FarkasCertificate> Tableau::build() {
  const int n = system_.num_vars();
  plus_col_.assign(n, -1);
  minus_col_.assign(n, -1);
  for (int j = 0; j < n; ++j) {
    plus_col_[j] = add_column(ColumnKind::Plus, j);
    if (!system_.is_nonneg(j)) minus_col_[j] = add_column(ColumnKind::Minus, j);
  }

  for (int g = 0; g < system_.num_rows(); ++g) {
    const auto& row = system_.row(g);
    std::map<int, Rational> merged;
    for (const auto& t : row.terms) merged[t.var] += t.coef;
    std::erase_if(merged, [](const auto& kv) { return kv.second == 0; });
    const bool equality = system_.is_equality_row(g);

    if (merged.empty()) {
      const bool violated = equality ? row.rhs != 0 : row.rhs > 0;
      if (!violated) continue;
      FarkasCertificate cert;
      cert.multipliers.assign(system_.num_rows(), Rational(0));
      cert.multipliers[g] = equality ? Rational(sgn(row.rhs)) : Rational(1);
      return cert;
    }

    SparseRow sparse;
    for (const auto& [var, coef] : merged) {
      sparse.idx.push_back(plus_col_[var]);
      sparse.val.push_back(coef);
      if (minus_col_[var] >= 0) {
        sparse.idx.push_back(minus_col_[var]);
        sparse.val.emplace_back(-coef);
      }
    }
    const int t = static_cast<int>(rows_.size());
    int surplus = -1;
    if (!equality) {
      surplus = add_column(ColumnKind::Surplus, t);
      sparse.idx.push_back(surplus);
      sparse.val.emplace_back(-1);
    }
    // Column indices were appended in increasing order except for minus
    // columns, which directly follow their plus column; keep sorted anyway.
    std::vector<int> order(sparse.idx.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sparse.idx[a] < sparse.idx[b]; });
    SparseRow sorted;
    for (int k : order) {
      sorted.idx.push_back(sparse.idx[k]);
      sorted.val.push_back(sparse.val[k]);
    }

    Rational b = row.rhs;
    int flip = 1;
    if (b < 0) {
      flip = -1;
      b = -b;
      for (auto& v : sorted.val) v = -v;
    }
    rows_.push_back(std::move(sorted));
    rhs_.push_back(std::move(b));
    source_row_.push_back(g);
    flip_.push_back(flip);
    // A flipped inequality has surplus coefficient +1 and can start basic.
    unit_col_.push_back(surplus >= 0 && flip < 0 ? surplus : -1);
  }

  const int m = static_cast<int>(rows_.size());
  basis_.assign(m, -1);
  unit_cost_.assign(m, Rational(0));
  dead_.assign(m, false);
  for (int i = 0; i < m; ++i) {
    if (unit_col_[i] < 0) {
      unit_col_[i] = add_column(ColumnKind::Artificial, i);
      rows_[i].idx.push_back(unit_col_[i]);
      rows_[i].val.emplace_back(1);
      unit_cost_[i] = 1;
    }
    basis_[i] = unit_col_[i];
  }
  return std::nullopt;
}

void Tableau::pivot(int r, int c) {
  const Rational inv = 1 / *rows_[r].find(c);
  for (auto& v : rows_[r].val) v *= inv;
  rhs_[r] *= inv;
  const SparseRow& p = rows_[r];
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    if (i == r) continue;
    const Rational* f = rows_[i].find(c);
    if (f == nullptr) continue;
    const Rational factor = *f;
    subtract_scaled(rows_[i], factor, p);
    rhs_[i] -= factor * rhs_[r];
  }
  if (reduced_[c] != 0) {
    const Rational factor = reduced_[c];
    for (std::size_t k = 0; k < p.idx.size(); ++k) reduced_[p.idx[k]] -= factor * p.val[k];
    value_row_ -= factor * rhs_[r];
  }
  basis_[r] = c;
}

// Bland's rule: lowest-index improving column enters; among tied ratios the
// row whose basic column has the lowest index leaves.
RunStatus Tableau::run() {
  const int ncols = static_cast<int>(columns_.size());
  for (;;) {
    int entering = -1;
    for (int j = 0; j < ncols; ++j) {
      if (allowed_[j] && reduced_[j] < 0) {
        entering = j;
        break;
      }
    }
    if (entering < 0) return RunStatus::Optimal;

    int leaving = -1;
    Rational best_ratio;
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
      if (dead_[i]) continue;
      const Rational* a = rows_[i].find(entering);
      if (a == nullptr || *a <= 0) continue;
      Rational ratio = rhs_[i] / *a;
      if (leaving < 0 || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leaving])) {
        leaving = i;
        best_ratio = std::move(ratio);
      }
    }
    if (leaving < 0) return RunStatus::Unbounded;
    pivot(leaving, entering);
  }
}

bool Tableau::phase_one() {
  const int ncols = static_cast<int>(columns_.size());
  reduced_.assign(ncols, Rational(0));
  value_row_ = 0;
  for (int j = 0; j < ncols; ++j) {
    if (columns_[j].kind == ColumnKind::Artificial) reduced_[j] = 1;
  }
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    if (unit_cost_[i] == 0) continue;
    for (std::size_t k = 0; k < rows_[i].idx.size(); ++k) reduced_[rows_[i].idx[k]] -= rows_[i].val[k];
    value_row_ -= rhs_[i];
  }
  allowed_.assign(ncols, true);
  run();  // bounded below by zero
  return value_row_ == 0;
}

FarkasCertificate Tableau::certificate() const {
  FarkasCertificate cert;
  cert.multipliers.assign(system_.num_rows(), Rational(0));
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    Rational y = unit_cost_[i] - reduced_[unit_col_[i]];
    cert.multipliers[source_row_[i]] = flip_[i] > 0 ? y : Rational(-y);
  }
  return cert;
}

std::vector<Rational> Tableau::solution() const {
  std::vector<Rational> column_value(columns_.size());
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) column_value[basis_[i]] = rhs_[i];
  std::vector<Rational> values(system_.num_vars());
  for (int j = 0; j < system_.num_vars(); ++j) {
    values[j] = column_value[plus_col_[j]];
    if (minus_col_[j] >= 0) values[j] -= column_value[minus_col_[j]];
  }
  return values;
}

RunStatus Tableau::phase_two(const std::vector<Term>& objective, Rational& value) {
  const int ncols = static_cast<int>(columns_.size());
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    if (columns_[basis_[i]].kind != ColumnKind::Artificial) continue;
    int replacement = -1;
    for (int c : rows_[i].idx) {
      if (columns_[c].kind != ColumnKind::Artificial) {
        replacement = c;
        break;
      }
    }
    if (replacement >= 0) {
      pivot(i, replacement);
    } else {
      dead_[i] = true;  // redundant row
    }
  }

  std::vector<Rational> cost(ncols);
  for (const auto& t : objective) {
    cost[plus_col_[t.var]] += t.coef;
    if (minus_col_[t.var] >= 0) cost[minus_col_[t.var]] -= t.coef;
  }
  reduced_ = cost;
  value_row_ = 0;
  for (int i = 0; i < static_cast<int>(rows_.size()); ++i) {
    const Rational& cb = cost[basis_[i]];
    if (cb == 0) continue;
    for (std::size_t k = 0; k < rows_[i].idx.size(); ++k) reduced_[rows_[i].idx[k]] -= cb * rows_[i].val[k];
    value_row_ -= cb * rhs_[i];
  }
  allowed_.assign(ncols, true);
  for (int j = 0; j < ncols; ++j) {
    if (columns_[j].kind == ColumnKind::Artificial) allowed_[j] = false;
  }
  RunStatus status = run();
  value = -value_row_;
  return status;
}

}  // namespace

FeasibilityResult solve_feasibility(const LinearSystem& system) {
  system.check_well_formed();
  Tableau tableau(system);
  if (auto cert = tableau.build()) return FeasibilityResult::infeasible_with(std::move(*cert));
  if (!tableau.phase_one()) return FeasibilityResult::infeasible_with(tableau.certificate());
  return FeasibilityResult::feasible_with(tableau.solution());
}

OptimizationResult minimize(const LinearSystem& system, const std::vector<Term>& objective) {
  system.check_well_formed();
  for (const auto& t : objective) {
    if (t.var < 0 || t.var >= system.num_vars()) {
      throw Error(Errc::DimensionMismatch, "objective references a missing variable");
    }
  }
  OptimizationResult result;
  Tableau tableau(system);
  if (auto cert = tableau.build()) {
    result.certificate = std::move(*cert);
    return result;
  }
  if (!tableau.phase_one()) {
    result.certificate = tableau.certificate();
    return result;
  }
  Rational value;
  if (tableau.phase_two(objective, value) == RunStatus::Unbounded) {
    result.status = OptimizationStatus::Unbounded;
    result.solution = tableau.solution();
    return result;
  }
  result.status = OptimizationStatus::Optimal;
  result.value = value;
  result.solution = tableau.solution();
  return result;
}

}  // namespace rum

#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rum/error.hpp"
#include "rum/rational.hpp"

namespace rum {

using Mask = std::uint32_t;

/// Hard ceiling for anything indexed by subsets of the alternatives.
inline constexpr int kMaxAlternatives = 20;
/// Default ceiling for anything that enumerates all n! linear orders.
inline constexpr int kMaxOrderAlternatives = 8;

/// Throws TooLarge when n exceeds `limit`. The RUM_MAX_N environment variable
/// replaces `limit` (never beyond kMaxAlternatives).
void require_size(int n, int limit, const char* what);

/// Effective limit after applying the RUM_MAX_N override.
int effective_limit(int limit);

inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1; }
inline Mask bit(int x) { return Mask{1} << x; }
inline int popcount(Mask m) { return std::popcount(m); }

class AlternativeSet {
 public:
  AlternativeSet() = default;
  explicit AlternativeSet(std::vector<std::string> names);
  /// Labels "a", "b", ... (then "x20"-style once the alphabet runs out).
  static AlternativeSet with_count(int n);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int x) const { return names_.at(x); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view label) const;

  bool operator==(const AlternativeSet&) const = default;

 private:
  std::vector<std::string> names_;
};

class Menu {
 public:
  constexpr Menu() = default;
  constexpr explicit Menu(Mask bits) : bits_(bits) {}
  static Menu of(std::initializer_list<int> members);

  constexpr Mask mask() const { return bits_; }
  constexpr bool contains(int x) const { return (bits_ >> x) & 1u; }
  int size() const { return popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  std::vector<int> members() const;

  constexpr auto operator<=>(const Menu&) const = default;

 private:
  Mask bits_ = 0;
};

/// Menus are kept sorted by descending cardinality, then ascending bitmask.
/// All row and column layouts downstream inherit this order.
bool lattice_before(Mask a, Mask b);

/// "{a,b}" using the alternative labels.
std::string menu_label(const AlternativeSet& alts, Mask set);

class MenuCollection {
 public:
  MenuCollection() = default;
  MenuCollection(int n, std::vector<Menu> menus);
  static MenuCollection full(int n);
  static MenuCollection binaries(int n);
  static MenuCollection of_sizes(int n, const std::vector<int>& sizes);

  int universe() const { return n_; }
  int size() const { return static_cast<int>(menus_.size()); }
  const std::vector<Menu>& menus() const { return menus_; }
  const Menu& operator[](int i) const { return menus_[i]; }
  bool contains(Mask m) const;
  std::optional<int> index_of(Mask m) const;
  bool is_full() const;
  /// Σ_{A∈𝒳} |A|: the number of observed (x, A) pairs.
  std::size_t pair_count() const;

  auto begin() const { return menus_.begin(); }
  auto end() const { return menus_.end(); }

 private:
  int n_ = 0;
  std::vector<Menu> menus_;
};

/// Raw observation prior to validation: one menu with the probabilities keyed
/// by alternative index. Members without a key receive probability zero.
struct RawObservation {
  Menu menu;
  std::vector<std::pair<int, Rational>> probs;
};

class RandomChoiceRule {
 public:
  const AlternativeSet& alternatives() const { return alts_; }
  int universe() const { return alts_.size(); }
  const MenuCollection& domain() const { return domain_; }

  /// Throws DomainMismatch when (x, menu) is not an observed pair.
  const Rational& prob(int x, Menu menu) const;
  const Rational& prob_at(int menu_index, int x) const { return probs_[menu_index][x]; }
  bool is_full_domain() const { return domain_.is_full(); }

  friend RandomChoiceRule validate_rcr(const AlternativeSet& alts, const std::vector<RawObservation>& raw);

 private:
  AlternativeSet alts_;
  MenuCollection domain_;
  // probs_[i][x] for the i-th menu of domain_; zero for non-members.
  std::vector<std::vector<Rational>> probs_;
};

/// Checks nonnegativity and exact per-menu sums; returns the validated rule.
RandomChoiceRule validate_rcr(const AlternativeSet& alts, const std::vector<RawObservation>& raw);

class LinearOrder {
 public:
  LinearOrder() = default;
  /// `ranking` lists alternative indices best-first; must be a permutation.
  explicit LinearOrder(std::vector<int> ranking);

  int size() const { return static_cast<int>(ranking_.size()); }
  const std::vector<int>& ranking() const { return ranking_; }
  int rank_of(int x) const { return position_[x]; }
  bool prefers(int x, int y) const { return position_[x] < position_[y]; }
  std::string to_string(const AlternativeSet& alts) const;

  auto operator<=>(const LinearOrder& other) const { return ranking_ <=> other.ranking_; }
  bool operator==(const LinearOrder& other) const { return ranking_ == other.ranking_; }

 private:
  std::vector<int> ranking_;
  std::vector<int> position_;
};

/// All n! orders in lexicographic order of their rankings.
std::vector<LinearOrder> enumerate_orders(int n);

/// The member of `menu` ranked best by `order`.
int maximal(const LinearOrder& order, Menu menu);

struct PreferenceDistribution {
  std::vector<std::pair<LinearOrder, Rational>> weights;
  /// Set when the weights come from the ν ≥ 0 relaxation and have not been
  /// checked to sum to one.
  bool relaxed = false;

  Rational total() const;
};

RandomChoiceRule induce_rcr(const PreferenceDistribution& nu, const AlternativeSet& alts,
                            const MenuCollection& domain);

}  // namespace rum

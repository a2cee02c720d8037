#include "rum/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <unordered_set>

namespace rum {

int effective_limit(int limit) {
  if (const char* env = std::getenv("RUM_MAX_N"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != nullptr && *end == '\0' && value > 0) {
      return static_cast<int>(std::min<long>(value, kMaxAlternatives));
    }
  }
  return limit;
}

void require_size(int n, int limit, const char* what) {
  int effective = effective_limit(limit);
  if (n < 0 || n > effective || n > kMaxAlternatives) {
    throw Error(Errc::TooLarge, std::string(what) + ": n=" + std::to_string(n) + " exceeds limit " +
                                    std::to_string(std::min(effective, kMaxAlternatives)));
  }
}

AlternativeSet::AlternativeSet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty() || static_cast<int>(names_.size()) > kMaxAlternatives) {
    throw Error(Errc::TooLarge, "alternative count must be in [1, 20], got " + std::to_string(names_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& name : names_) {
    if (name.empty()) throw Error(Errc::ParseError, "empty alternative label");
    if (!seen.insert(name).second) throw Error(Errc::ParseError, "duplicate alternative label '" + name + "'");
  }
}

AlternativeSet AlternativeSet::with_count(int n) {
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) {
    names.push_back(x < 26 ? std::string(1, static_cast<char>('a' + x)) : "x" + std::to_string(x));
  }
  return AlternativeSet(std::move(names));
}

std::optional<int> AlternativeSet::index_of(std::string_view label) const {
  for (int x = 0; x < size(); ++x) {
    if (names_[x] == label) return x;
  }
  return std::nullopt;
}

Menu Menu::of(std::initializer_list<int> members) {
  Mask m = 0;
  for (int x : members) m |= bit(x);
  return Menu(m);
}

std::vector<int> Menu::members() const {
  std::vector<int> out;
  for (Mask m = bits_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

std::string menu_label(const AlternativeSet& alts, Mask set) {
  std::string out = "{";
  bool first = true;
  for (Mask m = set; m != 0; m &= m - 1) {
    if (!first) out += ",";
    out += alts.name(std::countr_zero(m));
    first = false;
  }
  return out + "}";
}

bool lattice_before(Mask a, Mask b) {
  int ca = popcount(a);
  int cb = popcount(b);
  if (ca != cb) return ca > cb;
  return a < b;
}

namespace {

bool menu_before(const Menu& a, const Menu& b) { return lattice_before(a.mask(), b.mask()); }

}  // namespace

MenuCollection::MenuCollection(int n, std::vector<Menu> menus) : n_(n), menus_(std::move(menus)) {
  if (n < 1 || n > kMaxAlternatives) {
    throw Error(Errc::TooLarge, "menu universe must have 1..20 alternatives");
  }
  for (const auto& menu : menus_) {
    if (menu.empty()) throw Error(Errc::EmptyMenu, "menus must be nonempty");
    if ((menu.mask() & ~full_mask(n)) != 0) {
      throw Error(Errc::UnknownAlternative, "menu mentions an alternative outside the universe");
    }
  }
  std::sort(menus_.begin(), menus_.end(), menu_before);
  auto dup = std::adjacent_find(menus_.begin(), menus_.end());
  if (dup != menus_.end()) {
    throw Error(Errc::DuplicateMenu, "menu with mask " + std::to_string(dup->mask()) + " listed twice");
  }
}

MenuCollection MenuCollection::full(int n) {
  std::vector<Menu> menus;
  for (Mask m = 1; m <= full_mask(n); ++m) menus.emplace_back(m);
  return MenuCollection(n, std::move(menus));
}

MenuCollection MenuCollection::binaries(int n) { return of_sizes(n, {2}); }

MenuCollection MenuCollection::of_sizes(int n, const std::vector<int>& sizes) {
  std::vector<Menu> menus;
  for (Mask m = 1; m <= full_mask(n); ++m) {
    if (std::find(sizes.begin(), sizes.end(), popcount(m)) != sizes.end()) menus.emplace_back(m);
  }
  return MenuCollection(n, std::move(menus));
}

bool MenuCollection::contains(Mask m) const { return index_of(m).has_value(); }

std::optional<int> MenuCollection::index_of(Mask m) const {
  auto it = std::lower_bound(menus_.begin(), menus_.end(), Menu(m), menu_before);
  if (it == menus_.end() || it->mask() != m) return std::nullopt;
  return static_cast<int>(it - menus_.begin());
}

bool MenuCollection::is_full() const {
  return n_ > 0 && menus_.size() == static_cast<std::size_t>(full_mask(n_));
}

std::size_t MenuCollection::pair_count() const {
  std::size_t total = 0;
  for (const auto& menu : menus_) total += static_cast<std::size_t>(menu.size());
  return total;
}

const Rational& RandomChoiceRule::prob(int x, Menu menu) const {
  auto idx = domain_.index_of(menu.mask());
  if (!idx || !menu.contains(x)) {
    throw Error(Errc::DomainMismatch, "pair (" + std::to_string(x) + ", mask " + std::to_string(menu.mask()) +
                                          ") is not observed");
  }
  return probs_[*idx][x];
}

RandomChoiceRule validate_rcr(const AlternativeSet& alts, const std::vector<RawObservation>& raw) {
  const int n = alts.size();
  std::vector<Menu> menus;
  menus.reserve(raw.size());
  for (const auto& obs : raw) menus.push_back(obs.menu);

  RandomChoiceRule rule;
  rule.alts_ = alts;
  rule.domain_ = MenuCollection(n, menus);
  rule.probs_.assign(rule.domain_.size(), std::vector<Rational>(n));

  for (const auto& obs : raw) {
    const int idx = *rule.domain_.index_of(obs.menu.mask());
    auto& row = rule.probs_[idx];
    for (const auto& [x, value] : obs.probs) {
      if (x < 0 || x >= n || !obs.menu.contains(x)) {
        throw Error(Errc::UnknownAlternative,
                    "alternative index " + std::to_string(x) + " is not a member of its menu");
      }
      if (value < 0) {
        throw Error(Errc::NegativeProbability, "p(" + alts.name(x) + ", ·) = " + to_string(value));
      }
      row[x] = value;
    }
    Rational total = 0;
    for (int x : obs.menu.members()) total += row[x];
    if (total != 1) {
      std::string label;
      for (int x : obs.menu.members()) label += (label.empty() ? "" : ",") + alts.name(x);
      throw Error(Errc::SumNotOne, "menu {" + label + "} sums to " + to_string(total));
    }
  }
  return rule;
}

LinearOrder::LinearOrder(std::vector<int> ranking) : ranking_(std::move(ranking)) {
  const int n = static_cast<int>(ranking_.size());
  position_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int x = ranking_[i];
    if (x < 0 || x >= n || position_[x] != -1) {
      throw Error(Errc::DimensionMismatch, "ranking is not a permutation");
    }
    position_[x] = i;
  }
}

std::string LinearOrder::to_string(const AlternativeSet& alts) const {
  std::string out;
  for (int x : ranking_) {
    if (!out.empty()) out += ">";
    out += alts.name(x);
  }
  return out;
}

std::vector<LinearOrder> enumerate_orders(int n) {
  if (n < 1) throw Error(Errc::TooLarge, "enumerate_orders needs n >= 1");
  require_size(n, kMaxOrderAlternatives, "enumerate_orders");
  std::vector<int> ranking(n);
  std::iota(ranking.begin(), ranking.end(), 0);
  std::vector<LinearOrder> orders;
  do {
    orders.emplace_back(ranking);
  } while (std::next_permutation(ranking.begin(), ranking.end()));
  return orders;
}

int maximal(const LinearOrder& order, Menu menu) {
  if (menu.empty()) throw Error(Errc::EmptyMenu, "maximal of an empty menu");
  for (int x : order.ranking()) {
    if (menu.contains(x)) return x;
  }
  throw Error(Errc::UnknownAlternative, "menu has no member ranked by the order");
}

Rational PreferenceDistribution::total() const {
  Rational sum = 0;
  for (const auto& [order, w] : weights) sum += w;
  return sum;
}

RandomChoiceRule induce_rcr(const PreferenceDistribution& nu, const AlternativeSet& alts,
                            const MenuCollection& domain) {
  for (const auto& [order, w] : nu.weights) {
    if (w < 0) throw Error(Errc::NotADistribution, "negative weight on " + order.to_string(alts));
    if (order.size() != alts.size()) throw Error(Errc::DimensionMismatch, "order size differs from |X|");
  }
  if (nu.total() != 1) throw Error(Errc::NotADistribution, "weights sum to " + to_string(nu.total()));

  std::vector<RawObservation> raw;
  raw.reserve(domain.size());
  for (const auto& menu : domain) {
    std::vector<Rational> acc(alts.size());
    for (const auto& [order, w] : nu.weights) acc[maximal(order, menu)] += w;
    RawObservation obs{menu, {}};
    for (int x : menu.members()) obs.probs.emplace_back(x, acc[x]);
    raw.push_back(std::move(obs));
  }
  return validate_rcr(alts, raw);
}

}  // namespace rum

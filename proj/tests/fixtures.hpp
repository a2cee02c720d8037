#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "rum/core.hpp"

namespace fx {

using rum::Rational;

struct Obs {
  std::vector<int> menu;
  std::vector<std::pair<int, const char*>> probs;
};

inline rum::RandomChoiceRule rule(int n, const std::vector<Obs>& observations) {
  std::vector<rum::RawObservation> raw;
  for (const auto& o : observations) {
    rum::Mask m = 0;
    for (int x : o.menu) m |= rum::bit(x);
    rum::RawObservation r{rum::Menu(m), {}};
    for (const auto& [x, q] : o.probs) r.probs.emplace_back(x, rum::parse_rational(q));
    raw.push_back(std::move(r));
  }
  return rum::validate_rcr(rum::AlternativeSet::with_count(n), raw);
}

// a > b, b > c, c > a on the three binary menus.
inline rum::RandomChoiceRule condorcet() {
  return rule(3, {{{0, 1}, {{0, "1"}}}, {{1, 2}, {{1, "1"}}}, {{0, 2}, {{2, "1"}}}});
}

inline rum::RandomChoiceRule uniform_full(int n) {
  std::vector<rum::RawObservation> raw;
  for (rum::Mask m = 1; m <= rum::full_mask(n); ++m) {
    rum::RawObservation r{rum::Menu(m), {}};
    for (int x : rum::Menu(m).members()) r.probs.emplace_back(x, Rational(1, rum::popcount(m)));
    raw.push_back(std::move(r));
  }
  return rum::validate_rcr(rum::AlternativeSet::with_count(n), raw);
}

inline Rational q(const char* text) { return rum::parse_rational(text); }

}  // namespace fx

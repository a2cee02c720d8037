#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rum/core.hpp"
#include "rum/monotone.hpp"

namespace rum {

using Json = nlohmann::ordered_json;

struct Dataset {
  AlternativeSet alternatives;
  /// Absent when the file carries no alternatives (budget-only input).
  std::optional<RandomChoiceRule> rule;
  std::optional<PartialOrder> order;
  std::vector<Budget> budgets;
};

/// Parses the dataset format
///
///   { "alternatives": ["a", ...],
///     "observations": [{"menu": ["a","b"], "choice_probabilities": {"a": "1/2", ...}}],
///     "partial_order": [["a","b"], ...],              optional, a ⊳ b
///     "budgets": [{"price": ["2","1"], "wealth": "2"}] optional }
///
/// Every failure, including an invalid rule, is reported as ParseError with
/// the underlying condition named in the message; budgets of the wrong
/// length raise WrongDimension.
Dataset parse_dataset(const Json& doc);
Dataset load_dataset(const std::string& path);

Json dataset_to_json(const RandomChoiceRule& p, const PartialOrder* order = nullptr);

/// Menu specifications: "full", "binaries", "size=K[,K...]", or explicit
/// menus as alternative indices, e.g. "0,1;1,2;0,1,2".
MenuCollection parse_menu_spec(std::string_view spec, int n);

Json rational_json(const Rational& q);
Rational json_rational(const Json& v);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& doc);

}  // namespace rum

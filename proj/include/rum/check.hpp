#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rum/io.hpp"
#include "rum/lp.hpp"
#include "rum/monotone.hpp"
#include "rum/vrep.hpp"

namespace rum {

enum class Method { HRep, PSlack, VRep, ColGen };

std::string method_name(Method m);
std::optional<Method> parse_method(std::string_view name);

struct MethodOutcome {
  Method method;
  /// The system the final solve ran on; for column generation the last
  /// restricted master.
  LinearSystem system;
  FeasibilityResult lp;
  double millis = 0;
  int iterations = 0;
};

/// Runs one method, honouring the monotonicity restriction when `order` is
/// given.
MethodOutcome run_method(const RandomChoiceRule& p, Method m, const PartialOrder* order = nullptr);

/// The full system a method's witness or certificate must satisfy. For
/// column generation this is the V-representation over its whole pool.
LinearSystem reference_system(const RandomChoiceRule& p, Method m, const PartialOrder* order = nullptr);

/// Methods `all` runs on this input: the order-enumerating ones only while
/// n! stays inside the size guard.
std::vector<Method> methods_for_all(int n);

struct CheckOptions {
  std::vector<Method> methods;
  const PartialOrder* order = nullptr;
  int arsp_len = 0;
};

struct CheckOutcome {
  std::vector<MethodOutcome> runs;
  std::optional<ArspViolation> arsp;
  bool feasible = false;
  /// Set when two methods returned different verdicts.
  bool disagreement = false;
  Json report;
};

/// Runs the requested methods and assembles the report document. Solutions
/// and certificates are stored sparsely by variable and row label.
CheckOutcome run_check(const RandomChoiceRule& p, const CheckOptions& options);

/// Rebuilds each method's reference system and re-checks every stored
/// witness and certificate. Throws ParseError on a malformed report.
bool reverify_report(const Json& report, const RandomChoiceRule& p, const PartialOrder* order = nullptr);

/// Coarse row family of a system row, from its label.
std::string row_group_name(std::string_view label);

}  // namespace rum

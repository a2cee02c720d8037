#include "rum/check.hpp"

#include <algorithm>
#include <chrono>
#include <unordered_map>

#include "rum/hrep.hpp"

namespace rum {

namespace {

std::vector<LinearOrder> order_pool(const RandomChoiceRule& p, const PartialOrder* order) {
  return order != nullptr ? monotone_orders(*order, p.universe()) : enumerate_orders(p.universe());
}

Json sparse_solution(const LinearSystem& sys, const std::vector<Rational>& values) {
  Json out = Json::object();
  for (int v = 0; v < sys.num_vars(); ++v) {
    if (values[v] != 0) out[sys.var_label(v)] = rational_json(values[v]);
  }
  return out;
}

Json sparse_certificate(const LinearSystem& sys, const FarkasCertificate& cert) {
  Json out = Json::array();
  for (int row = 0; row < sys.num_rows(); ++row) {
    if (cert.multipliers[row] == 0) continue;
    const auto& label = sys.row(row).label;
    out.push_back({{"row", label}, {"group", row_group_name(label)}, {"multiplier", rational_json(cert.multipliers[row])}});
  }
  return out;
}

std::string verdict_name(bool feasible, bool monotone) {
  if (monotone) return feasible ? "monotone-rationalizable" : "not-monotone";
  return feasible ? "rationalizable" : "not";
}

}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::HRep:
      return "hrep";
    case Method::PSlack:
      return "pslack";
    case Method::VRep:
      return "vrep";
    case Method::ColGen:
      return "colgen";
  }
  return "?";
}

std::optional<Method> parse_method(std::string_view name) {
  for (Method m : {Method::HRep, Method::PSlack, Method::VRep, Method::ColGen}) {
    if (method_name(m) == name) return m;
  }
  return std::nullopt;
}

std::string row_group_name(std::string_view label) {
  if (label.starts_with("obs(")) return "ObservedConsistency";
  if (label.starts_with("flow")) return "InflowOutflow";
  if (label == "norm") return "Normalization";
  if (label.starts_with("mono(")) return "Monotonicity";
  if (label.starts_with("sum")) return "MenuSum";
  if (label.starts_with("bm(")) return "BlockMarschak";
  if (label.starts_with("p(")) return "ChoiceProbability";
  return "Other";
}

std::vector<Method> methods_for_all(int n) {
  std::vector<Method> out{Method::HRep, Method::PSlack};
  if (n <= effective_limit(kMaxOrderAlternatives)) {
    out.push_back(Method::VRep);
    out.push_back(Method::ColGen);
  }
  return out;
}

MethodOutcome run_method(const RandomChoiceRule& p, Method m, const PartialOrder* order) {
  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](LinearSystem sys, FeasibilityResult lp, int iterations) {
    const std::chrono::duration<double, std::milli> spent = std::chrono::steady_clock::now() - start;
    return MethodOutcome{m, std::move(sys), std::move(lp), spent.count(), iterations};
  };
  switch (m) {
    case Method::HRep: {
      auto r = order != nullptr ? monotone_feasible(p, *order) : hrep_feasible(p);
      return finish(std::move(r.built.system), std::move(r.lp), 1);
    }
    case Method::PSlack: {
      auto r = order != nullptr ? monotone_pslack_feasible(p, *order) : pslack_feasible(p);
      return finish(std::move(r.built.system), std::move(r.lp), 1);
    }
    case Method::VRep: {
      auto r = order != nullptr ? vrep_feasible_restricted(p, order_pool(p, order)) : vrep_feasible(p);
      return finish(std::move(r.system), std::move(r.lp), 1);
    }
    case Method::ColGen: {
      require_size(p.universe(), kMaxOrderAlternatives, "column_generation");
      auto pool = order_pool(p, order);
      auto r = column_generation(p, {pool.front()}, pool);
      return finish(std::move(r.final_master.system), std::move(r.final_master.lp), r.iterations);
    }
  }
  throw Error(Errc::ParseError, "unknown method");
}

LinearSystem reference_system(const RandomChoiceRule& p, Method m, const PartialOrder* order) {
  switch (m) {
    case Method::HRep:
      return order != nullptr ? build_monotone_q_system(p, *order).system : build_q_system(p).system;
    case Method::PSlack:
      return order != nullptr ? build_monotone_p_system(p, *order).system : build_p_system(p).system;
    case Method::VRep:
    case Method::ColGen:
      return build_vrep_system(p, order_pool(p, order));
  }
  throw Error(Errc::ParseError, "unknown method");
}

CheckOutcome run_check(const RandomChoiceRule& p, const CheckOptions& options) {
  if (options.methods.empty()) throw Error(Errc::ParseError, "no methods requested");
  const bool monotone = options.order != nullptr;
  const auto& alts = p.alternatives();
  CheckOutcome out;

  Json results = Json::array();
  Json timings = Json::object();
  for (Method m : options.methods) {
    MethodOutcome run = run_method(p, m, options.order);
    Json entry{{"method", method_name(m)}, {"verdict", verdict_name(run.lp.feasible(), monotone)}};
    if (run.lp.feasible()) {
      entry["solution"] = sparse_solution(run.system, run.lp.solution());
    } else {
      entry["certificate"] = sparse_certificate(run.system, run.lp.certificate());
    }
    if (m == Method::ColGen) entry["iterations"] = run.iterations;
    timings[method_name(m)] = run.millis;
    results.push_back(std::move(entry));
    out.runs.push_back(std::move(run));
  }
  out.feasible = out.runs.front().lp.feasible();
  for (const auto& run : out.runs) out.disagreement = out.disagreement || run.lp.feasible() != out.feasible;

  Json& report = out.report;
  report["alternatives"] = alts.names();
  report["verdict"] = out.disagreement ? "disagreement" : verdict_name(out.feasible, monotone);
  report["method"] = options.methods.size() == 1 ? method_name(options.methods.front()) : "all";
  report["monotone"] = monotone;
  if (monotone) {
    Json pairs = Json::array();
    for (const auto& [x, y] : options.order->pairs()) pairs.push_back({alts.name(x), alts.name(y)});
    report["partial_order"] = std::move(pairs);
  }
  report["results"] = std::move(results);

  if (!monotone && std::find(options.methods.begin(), options.methods.end(), Method::VRep) != options.methods.end()) {
    report["statistic"] = rational_json(linf_statistic(p));
  }

  if (options.arsp_len > 0) {
    out.arsp = arsp_search(p, options.arsp_len);
    Json arsp{{"max_len", options.arsp_len}, {"violation", nullptr}};
    if (out.arsp) {
      Json seq = Json::array();
      for (const auto& pair : out.arsp->sequence) {
        Json menu = Json::array();
        for (int x : pair.menu.members()) menu.push_back(alts.name(x));
        seq.push_back({{"alternative", alts.name(pair.alternative)}, {"menu", menu}});
      }
      arsp["violation"] = {{"sequence", seq}, {"lhs", rational_json(out.arsp->lhs)}, {"rhs", out.arsp->rhs}};
    }
    report["arsp"] = std::move(arsp);
  }

  const MatrixStats stats = matrix_stats(p.universe(), p.domain());
  report["matrix_stats"] = {{"m_rows", stats.m_rows},
                            {"m_cols", stats.m_cols},
                            {"n_rows", stats.n_rows},
                            {"n_cols", stats.n_cols},
                            {"predicted_n_rows", stats.predicted_n_rows}};
  report["timings_ms"] = std::move(timings);
  return out;
}

bool reverify_report(const Json& report, const RandomChoiceRule& p, const PartialOrder* order) {
  try {
    for (const auto& entry : report.at("results")) {
      const auto m = parse_method(entry.at("method").get<std::string>());
      if (!m) throw Error(Errc::ParseError, "unknown method in report");
      const LinearSystem sys = reference_system(p, *m, order);
      if (entry.contains("solution")) {
        std::unordered_map<std::string, int> index;
        for (int v = 0; v < sys.num_vars(); ++v) index.emplace(sys.var_label(v), v);
        std::vector<Rational> values(sys.num_vars(), Rational(0));
        for (const auto& [label, value] : entry.at("solution").items()) {
          auto it = index.find(label);
          if (it == index.end()) return false;
          values[it->second] = json_rational(value);
        }
        if (!satisfies(sys, values)) return false;
      } else {
        FarkasCertificate cert{std::vector<Rational>(sys.num_rows(), Rational(0))};
        for (const auto& row : entry.at("certificate")) {
          auto idx = sys.find_row(row.at("row").get<std::string>());
          if (!idx) return false;
          cert.multipliers[*idx] = json_rational(row.at("multiplier"));
        }
        if (!verify_certificate(sys, cert)) return false;
      }
    }
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, std::string("malformed report: ") + e.what());
  }
  return true;
}

}  // namespace rum

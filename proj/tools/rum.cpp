// rum: command-line front end for the random utility checks.

#include <cstdio>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "rum/axiom.hpp"
#include "rum/check.hpp"
#include "rum/hrep.hpp"
#include "rum/io.hpp"
#include "rum/monotone.hpp"

namespace {

using namespace rum;

enum Exit { kRationalizable = 0, kNot = 1, kInputError = 2, kDisagreement = 3 };

void emit(const Json& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump(2) << '\n';
  } else {
    write_json_file(path, doc);
  }
}

Json pair_json(const AlternativeSet& alts, const AssignmentCapacity& pair) {
  const int n = alts.size();
  Json a = Json::array();
  const auto& domain = pair.assignment.domain();
  for (int i = 0; i < domain.size(); ++i) {
    for (int x : domain[i].members()) {
      a.push_back({{"alternative", alts.name(x)},
                   {"menu", menu_label(alts, domain[i].mask())},
                   {"value", rational_json(pair.assignment.at(i, x))}});
    }
  }
  Json c = Json::object();
  for (Mask set = 1; set <= full_mask(n); ++set) c[menu_label(alts, set)] = rational_json(pair.capacity[set]);
  return {{"assignment", a}, {"capacity", c}};
}

int cmd_check(const std::string& in, const std::string& out, const std::string& method, bool monotone,
              int arsp_len) {
  const Dataset data = load_dataset(in);
  if (!data.rule) throw Error(Errc::ParseError, "check needs alternatives and observations");
  const RandomChoiceRule& p = *data.rule;
  const PartialOrder empty_order(p.universe(), {});
  CheckOptions options;
  if (monotone) options.order = data.order ? &*data.order : &empty_order;
  if (method == "all") {
    options.methods = methods_for_all(p.universe());
  } else {
    options.methods = {*parse_method(method)};
  }
  options.arsp_len = arsp_len;

  CheckOutcome result = run_check(p, options);
  if (method == "all" && options.methods.size() < 4) {
    result.report["notes"] = Json::array({"vrep and colgen skipped: n exceeds the order enumeration limit"});
  }
  emit(result.report, out);
  if (result.disagreement) {
    std::cerr << "error: MethodDisagreement: methods returned different verdicts\n";
    return kDisagreement;
  }
  return result.feasible ? kRationalizable : kNot;
}

int cmd_matrix_stats(int n, const std::string& menus_file, bool full) {
  MenuCollection domain;
  std::string described = "full";
  if (!menus_file.empty() && !full) {
    const Json doc = read_json_file(menus_file);
    if (doc.contains("menus") && doc.at("menus").is_string()) {
      described = doc.at("menus").get<std::string>();
      domain = parse_menu_spec(described, n);
    } else {
      const Dataset data = parse_dataset(doc);
      if (!data.rule) throw Error(Errc::ParseError, "menus file has no observations");
      if (data.rule->universe() != n) throw Error(Errc::ParseError, "menus file has a different number of alternatives");
      domain = data.rule->domain();
      described = menus_file;
    }
  } else {
    require_size(n, kMaxAlternatives, "matrix-stats");
    domain = MenuCollection::full(n);
  }
  const MatrixStats s = matrix_stats(n, domain);
  emit(Json{{"n", s.n},
            {"menus", described},
            {"m_rows", s.m_rows},
            {"m_cols", s.m_cols},
            {"n_rows", s.n_rows},
            {"n_cols", s.n_cols},
            {"predicted_n_rows", s.predicted_n_rows}},
       "");
  return 0;
}

int cmd_generate(int n, int support, std::uint64_t seed, const std::string& menus, const std::string& out,
                 std::string truth) {
  require_size(n, kMaxOrderAlternatives, "generate");
  const auto alts = AlternativeSet::with_count(n);
  const MenuCollection domain = parse_menu_spec(menus, n);
  const std::uint64_t orders = factorial(n);
  if (support < 1 || static_cast<std::uint64_t>(support) > orders) {
    throw Error(Errc::ParseError, "support must lie in 1.." + std::to_string(orders));
  }

  // Draw distinct rankings by Fisher-Yates with modulo draws so the output
  // depends only on the seed.
  std::mt19937_64 rng(seed);
  std::vector<LinearOrder> chosen;
  while (static_cast<int>(chosen.size()) < support) {
    std::vector<int> ranking(n);
    for (int i = 0; i < n; ++i) ranking[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(ranking[i], ranking[rng() % static_cast<std::uint64_t>(i + 1)]);
    LinearOrder candidate(ranking);
    if (std::find(chosen.begin(), chosen.end(), candidate) == chosen.end()) chosen.push_back(std::move(candidate));
  }
  std::vector<long> raw(support);
  long total = 0;
  for (auto& w : raw) total += (w = static_cast<long>(rng() % 9) + 1);
  PreferenceDistribution nu;
  for (int k = 0; k < support; ++k) nu.weights.emplace_back(chosen[k], Rational(raw[k], total));
  for (auto& [order, w] : nu.weights) w.canonicalize();

  const RandomChoiceRule p = induce_rcr(nu, alts, domain);
  emit(dataset_to_json(p), out);

  if (truth.empty() && !out.empty() && out != "-") truth = out + ".truth.json";
  if (!truth.empty()) {
    Json weights = Json::array();
    for (const auto& [order, w] : nu.weights) weights.push_back({{"order", order.to_string(alts)}, {"weight", rational_json(w)}});
    write_json_file(truth, Json{{"seed", seed}, {"menus", menus}, {"distribution", weights}});
  }
  return 0;
}

int cmd_patches(const std::string& in) {
  const Dataset data = load_dataset(in);
  if (data.budgets.empty()) throw Error(Errc::ParseError, "patches needs a 'budgets' list");
  const PatchArrangement arr = build_patches_2goods(data.budgets);
  auto side = [](Side s) { return s == Side::Above ? "above" : s == Side::Below ? "below" : "on"; };
  auto point = [](const Point2& z) { return Json::array({rational_json(z[0]), rational_json(z[1])}); };
  Json patches = Json::array();
  for (const auto& patch : arr.patches) {
    Json signs = Json::array();
    for (Side s : patch.signs) signs.push_back(side(s));
    patches.push_back({{"label", patch.label},
                       {"budget", patch.budget + 1},
                       {"from", point(patch.from)},
                       {"to", point(patch.to)},
                       {"signs", signs}});
  }
  Json dominance = Json::array();
  for (const auto& [x, y] : arr.dominance.pairs()) dominance.push_back({arr.patches[x].label, arr.patches[y].label});
  Json menus = Json::array();
  for (const auto& menu : arr.budget_menus) {
    Json labels = Json::array();
    for (int i : menu) labels.push_back(arr.patches[i].label);
    menus.push_back(labels);
  }
  emit(Json{{"patches", patches}, {"dominance", dominance}, {"budget_menus", menus}}, "");
  return 0;
}

int cmd_axiom_verify(const std::string& in, int trials, std::uint64_t seed) {
  const Dataset data = load_dataset(in);
  if (!data.rule) throw Error(Errc::ParseError, "axiom-verify needs alternatives and observations");
  const RummeReport r = verify_rumme(*data.rule, trials, seed);
  Json doc{{"rationalizable", r.rationalizable},
           {"trials", r.trials},
           {"feasible_trials", r.feasible_trials},
           {"consistent", r.consistent},
           {"vacuous", r.vacuous},
           {"notes", r.notes}};
  if (r.witness) {
    doc["witness"] = pair_json(data.rule->alternatives(), *r.witness);
    doc["witness"]["locally_feasible"] = r.witness_locally_feasible;
    doc["witness"]["feasible"] = r.witness_feasible;
    doc["witness"]["assigned_mass"] = rational_json(r.witness_mass);
  }
  emit(doc, "");
  if (!r.consistent) return kDisagreement;
  return r.rationalizable ? kRationalizable : kNot;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tests of the random utility model on limited choice data"};
  app.require_subcommand(1);

  std::string in, out, method = "all", menus_file, menus_spec = "full", truth;
  bool monotone = false, full = false;
  int arsp_len = 0, n = 0, support = 1, trials = 100;
  std::uint64_t seed = 0;

  auto* check = app.add_subcommand("check", "Decide stochastic rationalizability of a dataset");
  check->add_option("--method", method)->check(CLI::IsMember({"hrep", "pslack", "vrep", "colgen", "all"}));
  check->add_flag("--monotone", monotone, "Restrict to utilities monotone in the dataset's partial order");
  check->add_option("--arsp-len", arsp_len, "Also search axiom-of-revealed-stochastic-preference violations");
  check->add_option("--in", in)->required();
  check->add_option("--out", out)->required();

  auto* stats = app.add_subcommand("matrix-stats", "Row and column counts of both representations");
  stats->add_option("--n", n)->required();
  auto* menus_opt = stats->add_option("--menus", menus_file, "JSON dataset, or {\"menus\": SPEC}");
  stats->add_flag("--full", full)->excludes(menus_opt);

  auto* gen = app.add_subcommand("generate", "Sample a rationalizable dataset");
  gen->add_option("--n", n)->required();
  gen->add_option("--support", support)->required();
  gen->add_option("--seed", seed)->required();
  gen->add_option("--menus", menus_spec, "full | binaries | size=K,.. | 0,1;1,2");
  gen->add_option("--out", out, "Dataset path (default stdout)");
  gen->add_option("--truth", truth, "Ground-truth distribution path");

  auto* patches = app.add_subcommand("patches", "Patch arrangement of two-good linear budgets");
  patches->add_option("--in", in)->required();

  auto* axiom = app.add_subcommand("axiom-verify", "Check that local feasibility implies feasibility");
  axiom->add_option("--in", in)->required();
  axiom->add_option("--trials", trials)->required();
  axiom->add_option("--seed", seed)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*check) return cmd_check(in, out, method, monotone, arsp_len);
    if (*stats) return cmd_matrix_stats(n, menus_file, full);
    if (*gen) return cmd_generate(n, support, seed, menus_spec, out, truth);
    if (*patches) return cmd_patches(in);
    if (*axiom) return cmd_axiom_verify(in, trials, seed);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == Errc::MethodDisagreement ? kDisagreement : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

#include "rum/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace rum {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::ParseError, what); }

const Json& field(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) fail(std::string("missing field '") + key + "'");
  return obj.at(key);
}

int label_index(const AlternativeSet& alts, const Json& v) {
  if (!v.is_string()) fail("alternative labels must be strings");
  auto idx = alts.index_of(v.get<std::string>());
  if (!idx) fail("unknown alternative '" + v.get<std::string>() + "'");
  return *idx;
}

int parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) fail("bad integer '" + std::string(text) + "'");
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t at = text.find(sep, start);
    parts.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
    if (at == std::string_view::npos) break;
    start = at + 1;
  }
  return parts;
}

}  // namespace

Json rational_json(const Rational& q) { return to_string(q); }

Rational json_rational(const Json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  fail("rationals must be strings like \"1/3\" or integers");
}

Dataset parse_dataset(const Json& doc) {
  if (!doc.is_object()) fail("dataset must be a JSON object");
  Dataset out;
  try {
    if (doc.contains("alternatives")) {
      std::vector<std::string> names;
      for (const auto& v : doc.at("alternatives")) {
        if (!v.is_string()) fail("alternative labels must be strings");
        names.push_back(v.get<std::string>());
      }
      out.alternatives = AlternativeSet(std::move(names));

      std::vector<RawObservation> raw;
      if (doc.contains("observations")) {
        for (const auto& obs : doc.at("observations")) {
          Mask mask = 0;
          for (const auto& v : field(obs, "menu")) mask |= bit(label_index(out.alternatives, v));
          RawObservation r{Menu(mask), {}};
          const auto& probs = field(obs, "choice_probabilities");
          if (!probs.is_object()) fail("choice_probabilities must be an object");
          for (const auto& [label, value] : probs.items()) {
            auto idx = out.alternatives.index_of(label);
            if (!idx) fail("unknown alternative '" + label + "'");
            r.probs.emplace_back(*idx, json_rational(value));
          }
          raw.push_back(std::move(r));
        }
      }
      out.rule = validate_rcr(out.alternatives, raw);

      if (doc.contains("partial_order")) {
        std::vector<std::pair<int, int>> pairs;
        for (const auto& pair : doc.at("partial_order")) {
          if (!pair.is_array() || pair.size() != 2) fail("partial_order entries are [dominator, dominated]");
          pairs.emplace_back(label_index(out.alternatives, pair[0]), label_index(out.alternatives, pair[1]));
        }
        out.order = PartialOrder(out.alternatives.size(), pairs);
      }
    }
    if (doc.contains("budgets")) {
      for (const auto& b : doc.at("budgets")) {
        const auto& price = field(b, "price");
        if (!price.is_array() || price.size() != 2) {
          throw Error(Errc::WrongDimension, "budgets must price exactly two goods");
        }
        out.budgets.push_back({{json_rational(price[0]), json_rational(price[1])}, json_rational(field(b, "wealth"))});
      }
    }
  } catch (const Json::exception& e) {
    fail(std::string("malformed dataset: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == Errc::ParseError || e.code() == Errc::WrongDimension) throw;
    fail(e.what());
  }
  if (!out.rule && out.budgets.empty()) fail("dataset has neither alternatives nor budgets");
  return out;
}

Dataset load_dataset(const std::string& path) { return parse_dataset(read_json_file(path)); }

Json dataset_to_json(const RandomChoiceRule& p, const PartialOrder* order) {
  const auto& alts = p.alternatives();
  Json doc;
  doc["alternatives"] = alts.names();
  Json observations = Json::array();
  const auto& domain = p.domain();
  for (int i = 0; i < domain.size(); ++i) {
    Json menu = Json::array();
    Json probs = Json::object();
    for (int x : domain[i].members()) {
      menu.push_back(alts.name(x));
      probs[alts.name(x)] = rational_json(p.prob_at(i, x));
    }
    observations.push_back({{"menu", menu}, {"choice_probabilities", probs}});
  }
  doc["observations"] = std::move(observations);
  if (order != nullptr) {
    Json pairs = Json::array();
    for (const auto& [x, y] : order->pairs()) pairs.push_back({alts.name(x), alts.name(y)});
    doc["partial_order"] = std::move(pairs);
  }
  return doc;
}

MenuCollection parse_menu_spec(std::string_view spec, int n) {
  if (spec == "full") return MenuCollection::full(n);
  if (spec == "binaries") return MenuCollection::binaries(n);
  if (spec.starts_with("size=")) {
    std::vector<int> sizes;
    for (auto part : split(spec.substr(5), ',')) {
      const int k = parse_int(part);
      if (k < 1 || k > n) fail("menu size out of range in '" + std::string(spec) + "'");
      sizes.push_back(k);
    }
    return MenuCollection::of_sizes(n, sizes);
  }
  std::vector<Menu> menus;
  if (!spec.empty()) {
    for (auto group : split(spec, ';')) {
      Mask mask = 0;
      for (auto part : split(group, ',')) {
        const int x = parse_int(part);
        if (x < 0 || x >= n) fail("alternative index out of range in '" + std::string(spec) + "'");
        mask |= bit(x);
      }
      menus.emplace_back(mask);
    }
  }
  return MenuCollection(n, std::move(menus));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    fail("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& doc) {
  std::ofstream out(path);
  if (!out) fail("cannot write '" + path + "'");
  out << doc.dump(2) << '\n';
}

}  // namespace rum

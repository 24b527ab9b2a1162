#include "doxa/model_io.hpp"

#include "doxa/syntax.hpp"

namespace doxa {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json model_to_json(const ModelSystem& m) {
  ordered_json out;
  out["worlds"] = m.worlds();
  out["designated"] = m.designated();
  ordered_json val = ordered_json::object();
  for (WorldId w = 0; w < m.worlds(); ++w) {
    ordered_json atoms = ordered_json::array();
    for (const auto& a : m.valuation(w)) atoms.push_back(a);
    val[std::to_string(w)] = std::move(atoms);
  }
  out["valuation"] = std::move(val);
  ordered_json alts = ordered_json::object();
  for (const auto& [agent, rel] : m.alternatives()) {
    ordered_json pairs = ordered_json::array();
    for (WorldId w = 0; w < rel.size(); ++w) {
      for (WorldId v : rel[w]) pairs.push_back({w, v});
    }
    alts[agent.name()] = std::move(pairs);
  }
  out["alternatives"] = std::move(alts);
  return out;
}

ordered_json model_to_json(const LabeledModelSystem& lm) {
  ordered_json out = model_to_json(lm.model());
  ordered_json labels = ordered_json::object();
  for (WorldId w = 0; w < lm.model().worlds(); ++w) {
    ordered_json fs = ordered_json::array();
    for (const auto& f : lm.label(w)) fs.push_back(render(f));
    labels[std::to_string(w)] = std::move(fs);
  }
  out["labels"] = std::move(labels);
  return out;
}

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ModelFormatError(where + ": " + what);
}

WorldId world_key(const std::string& key, std::size_t n, const std::string& where) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(key, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (key.empty() || pos != key.size() || std::to_string(v) != key) bad(where, "key '" + key + "' is not a world index");
  if (v >= n) bad(where, "world " + key + " out of range");
  return v;
}

WorldId world_value(const json& j, std::size_t n, const std::string& where) {
  if (!j.is_number_unsigned()) bad(where, "expected a nonnegative world index");
  auto v = j.get<std::size_t>();
  if (v >= n) bad(where, "world " + std::to_string(v) + " out of range");
  return v;
}

} // namespace

LoadedModel model_from_json(const json& doc) {
  if (!doc.is_object()) bad("/", "expected an object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "worlds" && key != "designated" && key != "valuation" && key != "alternatives" && key != "labels") {
      bad("/" + key, "unknown key");
    }
  }
  if (!doc.contains("worlds") || !doc["worlds"].is_number_unsigned()) bad("/worlds", "expected a positive integer");
  const auto n = doc["worlds"].get<std::size_t>();
  if (n == 0) bad("/worlds", "expected a positive integer");
  WorldId designated = 0;
  if (doc.contains("designated")) designated = world_value(doc["designated"], n, "/designated");

  std::vector<std::set<std::string>> valuation(n);
  if (doc.contains("valuation")) {
    const auto& val = doc["valuation"];
    if (!val.is_object()) bad("/valuation", "expected an object");
    for (const auto& [key, atoms] : val.items()) {
      const std::string where = "/valuation/" + key;
      WorldId w = world_key(key, n, where);
      if (!atoms.is_array()) bad(where, "expected an array of atom names");
      for (const auto& a : atoms) {
        if (!a.is_string() || !is_identifier(a.get<std::string>())) bad(where, "invalid atom name");
        valuation[w].insert(a.get<std::string>());
      }
    }
  }

  std::map<Agent, Relation> alts;
  if (doc.contains("alternatives")) {
    const auto& rel = doc["alternatives"];
    if (!rel.is_object()) bad("/alternatives", "expected an object");
    for (const auto& [name, pairs] : rel.items()) {
      const std::string where = "/alternatives/" + name;
      if (!is_identifier(name)) bad(where, "invalid agent name");
      if (!pairs.is_array()) bad(where, "expected an array of [from, to] pairs");
      Relation r(n);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string at = where + "/" + std::to_string(i);
        const auto& p = pairs[i];
        if (!p.is_array() || p.size() != 2) bad(at, "expected a [from, to] pair");
        r[world_value(p[0], n, at)].insert(world_value(p[1], n, at));
      }
      alts.emplace(Agent(name), std::move(r));
    }
  }

  ModelSystem model(n, designated, std::move(valuation), std::move(alts));
  if (!doc.contains("labels")) return LoadedModel{std::move(model), std::nullopt};

  const auto& lab = doc["labels"];
  if (!lab.is_object()) bad("/labels", "expected an object");
  std::vector<std::set<Formula>> labels(n);
  for (const auto& [key, fs] : lab.items()) {
    const std::string where = "/labels/" + key;
    WorldId w = world_key(key, n, where);
    if (!fs.is_array()) bad(where, "expected an array of formulas");
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const std::string at = where + "/" + std::to_string(i);
      if (!fs[i].is_string()) bad(at, "expected a formula string");
      try {
        labels[w].insert(desugar(parse(fs[i].get<std::string>())));
      } catch (const ParseError& e) {
        bad(at, std::string(e.what()) + " at offset " + std::to_string(e.span().start));
      }
    }
  }
  LabeledModelSystem lm(model, std::move(labels));
  return LoadedModel{std::move(model), std::move(lm)};
}

LoadedModel load_model(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return model_from_json(doc);
}

ordered_json violation_to_json(const Violation& v) {
  ordered_json out;
  out["kind"] = v.kind;
  out["worlds"] = v.worlds;
  out["formula"] = v.formula ? ordered_json(render(*v.formula)) : ordered_json(nullptr);
  out["message"] = v.message;
  return out;
}

} // namespace doxa

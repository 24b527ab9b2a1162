// JSON form of model systems:
//   {"worlds": n, "designated": i, "valuation": {"0": ["p"], ...},
//    "alternatives": {"a": [[0,1], ...]}, "labels": {"0": ["B[a] p"], ...}}
// "labels" is optional. Arrays are sorted ascending.

#ifndef DOXA_MODEL_IO_HPP
#define DOXA_MODEL_IO_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "doxa/kripke.hpp"

namespace doxa {

class ModelFormatError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

nlohmann::ordered_json model_to_json(const ModelSystem& m);
nlohmann::ordered_json model_to_json(const LabeledModelSystem& lm);

struct LoadedModel {
  ModelSystem model;
  std::optional<LabeledModelSystem> labeled;  // present iff the document had "labels"
};

// Label formulas are parsed and desugared. Throws ModelFormatError with a location on bad input.
LoadedModel model_from_json(const nlohmann::json& doc);
LoadedModel load_model(std::string_view text);

nlohmann::ordered_json violation_to_json(const Violation& v);

} // namespace doxa

#endif

// Model systems, truth evaluation, and checkers for model-set and frame conditions.

#ifndef DOXA_KRIPKE_HPP
#define DOXA_KRIPKE_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "doxa/formula.hpp"

namespace doxa {

using WorldId = std::size_t;

enum class LogicProfile { HStar, Hintikka, KD, KD45 };

inline constexpr LogicProfile kAllProfiles[] = {
    LogicProfile::HStar, LogicProfile::Hintikka, LogicProfile::KD, LogicProfile::KD45};

// Command-line names: hstar, hintikka, kd, kd45.
std::string_view profile_name(LogicProfile p) noexcept;
std::optional<LogicProfile> profile_from_name(std::string_view name) noexcept;

// Successor sets, indexed by source world.
using Relation = std::vector<std::set<WorldId>>;

// A finite model system: worlds 0..n-1, one alternativeness relation per agent, and a total
// valuation (atoms not listed at a world are false there).
class ModelSystem {
public:
  ModelSystem(std::size_t worlds, WorldId designated, std::vector<std::set<std::string>> valuation,
              std::map<Agent, Relation> alternatives);

  std::size_t worlds() const noexcept { return worlds_; }
  WorldId designated() const noexcept { return designated_; }
  const std::set<std::string>& valuation(WorldId w) const { return valuation_.at(w); }
  bool holds(WorldId w, const std::string& atom) const { return valuation_.at(w).contains(atom); }

  const std::map<Agent, Relation>& alternatives() const noexcept { return alternatives_; }
  // Empty for agents with no relation in this system.
  const std::set<WorldId>& successors(const Agent& a, WorldId w) const;

  // Copy with an empty relation added for each listed agent that has none.
  ModelSystem with_agents(const std::set<Agent>& extra) const;

  friend bool operator==(const ModelSystem&, const ModelSystem&) = default;

private:
  std::size_t worlds_;
  WorldId designated_;
  std::vector<std::set<std::string>> valuation_;
  std::map<Agent, Relation> alternatives_;
};

// A model system whose worlds also carry syntactic model sets. Labels may not use -> or <->.
class LabeledModelSystem {
public:
  LabeledModelSystem(ModelSystem model, std::vector<std::set<Formula>> labels);

  const ModelSystem& model() const noexcept { return model_; }
  const std::set<Formula>& label(WorldId w) const { return labels_.at(w); }

private:
  ModelSystem model_;
  std::vector<std::set<Formula>> labels_;
};

struct Violation {
  std::string kind;             // one of the condition names below
  std::vector<WorldId> worlds;
  std::optional<Formula> formula;
  std::string message;
};

// Violation kinds.
namespace cond {
inline constexpr std::string_view kNot = "C.~", kAnd = "C.&", kOr = "C.v", kNotNot = "C.~~",
                                  kNotAnd = "C.~&", kNotOr = "C.~v", kB = "C.B", kBStar = "C.B*",
                                  kC = "C.C", kCB = "C.CB", kBBStar = "C.BB*", kBDef = "C.BDef",
                                  kCDef = "C.CDef", kSerial = "serial", kTransitive = "transitive",
                                  kEuclidean = "euclidean", kA3Witness = "a3-witness";
}

// Throws std::out_of_range for an invalid world.
bool evaluate(const ModelSystem& m, WorldId w, const Formula& f);

// Frame conditions per agent relation:
//   KD       seriality
//   HStar    seriality, and every world w has a successor v with R[v] a subset of R[w]
//   Hintikka seriality, transitivity
//   KD45     seriality, transitivity, euclideanness
std::vector<Violation> check_frame(const ModelSystem& m, LogicProfile profile);

std::vector<Violation> check_model_set(const LabeledModelSystem& lm, LogicProfile profile);

} // namespace doxa

#endif

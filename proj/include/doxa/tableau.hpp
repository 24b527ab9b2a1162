// Model-set (tableau) decision procedure for the belief profiles.
//
// A query is desugared and placed in w0. Each world is saturated under the propositional
// model-set conditions, branching depth-first with the left alternative first; then each
// negated belief ~B[a] q spawns an a-alternative containing ~q, and every B[a] q of the world
// is pushed into each of its a-alternatives. Profile-specific rules:
//
//   hstar     one a-alternative receives every B[a] q of the world (C.CB). An existing
//             alternative is tried first; a fresh witness world is the fallback.
//   hintikka  B[a] q itself is pushed into every a-alternative (C.BB*).
//   kd45      B[a] q and ~B[a] q are both pushed; every world also decides each belief
//             subformula of the query up front (cut).
//   kd        nothing beyond the common rules.
//
// A world whose saturated label equals that of a strict ancestor is not expanded; its incoming
// edge is redirected to the ancestor when the countermodel is read off. Every SAT model is
// re-checked against the frame class and the query before it is returned.

#ifndef DOXA_TABLEAU_HPP
#define DOXA_TABLEAU_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "doxa/formula.hpp"
#include "doxa/kripke.hpp"

namespace doxa {

namespace rule {
inline constexpr std::string_view kSeed = "seed", kAnd = "C.&", kOrLeft = "C.v-left", kOrRight = "C.v-right",
                                  kNotNot = "C.~~", kNotAndLeft = "C.~&-left", kNotAndRight = "C.~&-right",
                                  kNotOr = "C.~v", kBStar = "C.B*", kBBStar = "C.BB*", kC = "C.C", kCB = "C.CB",
                                  kB = "C.B", kBDefRewrite = "C.BDef-rewrite", kClash = "C.~-clash",
                                  kCut = "cut";
}

// One line of a reductio: `formula` belongs to the model set `world`.
struct ProofStep {
  std::size_t index = 0;  // 1-based
  std::string world;      // "w0", "w1", ...
  Formula formula;
  std::string rule;
  std::vector<std::size_t> premises;
};

using ProofTrace = std::vector<ProofStep>;

struct TableauStats {
  std::size_t worlds_created = 0;
  std::size_t rules_fired = 0;
  std::size_t blocks_applied = 0;
};

struct Verdict {
  bool satisfiable = false;
  std::optional<ModelSystem> model;  // set iff satisfiable
  ProofTrace trace;                  // closed exploration, set iff unsatisfiable
  TableauStats stats;
};

struct ValidityVerdict {
  bool valid = false;
  std::optional<ModelSystem> countermodel;  // model of the negation, set iff invalid
  ProofTrace trace;                         // refutation of the negation, set iff valid
  TableauStats stats;
};

// Raised when a countermodel fails its own frame or truth check. Indicates an engine bug.
class VerificationError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

Verdict decide_sat(const Formula& f, LogicProfile profile);
ValidityVerdict decide_valid(const Formula& f, LogicProfile profile);

enum class TraceFormat { Text, Json };

std::string render_trace(const ProofTrace& trace, TraceFormat format);
nlohmann::ordered_json trace_steps_json(const ProofTrace& trace);

// {"verdict": "sat", "model": {...}, "stats": {...}} or {"verdict": "unsat", "steps": [...], ...}
nlohmann::ordered_json verdict_to_json(const Verdict& v);
nlohmann::ordered_json verdict_to_json(const ValidityVerdict& v);

// Replays a trace rule by rule against the query it refutes. Returns the problems found;
// an empty result means every step follows from its premises and the last step is a clash.
std::vector<std::string> check_trace(const ProofTrace& trace, const Formula& query, LogicProfile profile);

} // namespace doxa

#endif

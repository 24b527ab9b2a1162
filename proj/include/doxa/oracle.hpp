// Brute-force satisfiability by enumerating every small model in a profile's frame class.
//
// Enumeration order: world count ascending, then per-agent relation bitmasks ascending (first
// agent most significant; bit from*n+to), then valuation bitmasks ascending (bit
// world*|atoms|+atom). The designated world is always 0. Frame membership is decided by
// check_frame; formulas are evaluated by a separate bitmask evaluator.

#ifndef DOXA_ORACLE_HPP
#define DOXA_ORACLE_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "doxa/formula.hpp"
#include "doxa/kripke.hpp"

namespace doxa {

inline constexpr std::size_t kMaxOracleWorlds = 5;

struct EnumerationBudget {
  std::size_t max_worlds = 1;
  std::vector<std::string> atoms;
  std::vector<Agent> agents;
};

class BudgetError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Calls `visit` for each model until it returns false. Returns the number of models visited.
std::size_t enumerate_models(const EnumerationBudget& budget, LogicProfile profile,
                             const std::function<bool(const ModelSystem&)>& visit);

// Number of models with exactly `worlds` worlds in the enumeration.
std::size_t count_models(const EnumerationBudget& budget, LogicProfile profile, std::size_t worlds);

// First enumerated model whose designated world satisfies f. nullopt is not a proof of
// unsatisfiability: the search is bounded.
std::optional<ModelSystem> sat_upto(const Formula& f, const EnumerationBudget& budget, LogicProfile profile);

// Budget covering the atoms and agents of f.
EnumerationBudget budget_for(const Formula& f, std::size_t max_worlds);

// Truth at w computed over world bitmasks, falling back to per-world vectors beyond 64 worlds.
bool oracle_evaluate(const ModelSystem& m, WorldId w, const Formula& f);

} // namespace doxa

#endif

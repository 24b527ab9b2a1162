// Test-only generators and brute-force helpers. Nothing here calls the tableau.

#ifndef DOXA_TESTS_SUPPORT_HPP
#define DOXA_TESTS_SUPPORT_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "doxa/formula.hpp"
#include "doxa/kripke.hpp"
#include "doxa/syntax.hpp"

namespace doxa::test {

inline Formula f(std::string_view text) { return parse(text); }

// Random formula over all eight constructors with depth at most `depth`.
inline Formula random_formula(std::mt19937& rng, int depth, const std::vector<std::string>& atom_names,
                              const std::vector<Agent>& agent_list) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 8);
  const int k = pick(rng);
  auto atom = [&] {
    std::uniform_int_distribution<std::size_t> a(0, atom_names.size() - 1);
    return Formula::atom(atom_names[a(rng)]);
  };
  auto agent = [&] {
    std::uniform_int_distribution<std::size_t> a(0, agent_list.size() - 1);
    return agent_list[a(rng)];
  };
  auto sub = [&] { return random_formula(rng, depth - 1, atom_names, agent_list); };
  switch (k) {
    case 0: case 1: return atom();
    case 2: return Formula::neg(sub());
    case 3: return Formula::conj(sub(), sub());
    case 4: return Formula::disj(sub(), sub());
    case 5: return Formula::implies(sub(), sub());
    case 6: return Formula::iff(sub(), sub());
    case 7: return Formula::bel(agent(), sub());
    default: return Formula::comp(agent(), sub());
  }
}

// Every model on exactly n worlds over the given atoms and agents, with no frame restriction.
inline void for_each_model(std::size_t n, const std::vector<std::string>& atom_names,
                           const std::vector<Agent>& agent_list, const std::function<void(const ModelSystem&)>& fn) {
  const std::uint64_t rels = std::uint64_t{1} << (n * n * agent_list.size());
  const std::uint64_t vals = std::uint64_t{1} << (n * atom_names.size());
  for (std::uint64_t r = 0; r < rels; ++r) {
    std::map<Agent, Relation> alts;
    for (std::size_t k = 0; k < agent_list.size(); ++k) {
      Relation rel(n);
      for (std::size_t i = 0; i < n * n; ++i) {
        if (r >> (k * n * n + i) & 1u) rel[i / n].insert(i % n);
      }
      alts.emplace(agent_list[k], std::move(rel));
    }
    for (std::uint64_t v = 0; v < vals; ++v) {
      std::vector<std::set<std::string>> val(n);
      for (std::size_t i = 0; i < n * atom_names.size(); ++i) {
        if (v >> i & 1u) val[i / atom_names.size()].insert(atom_names[i % atom_names.size()]);
      }
      fn(ModelSystem(n, 0, std::move(val), alts));
    }
  }
}

inline ModelSystem single_agent_model(std::size_t n, const std::vector<std::pair<WorldId, WorldId>>& edges,
                                      std::vector<std::set<std::string>> val = {}) {
  Relation r(n);
  for (auto [a, b] : edges) r[a].insert(b);
  return ModelSystem(n, 0, std::move(val), {{Agent("a"), std::move(r)}});
}

} // namespace doxa::test

#endif

#include "doxa/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>

namespace doxa {

namespace {

using Mask = std::uint64_t;

// Postfix program over world bitmasks.
struct Instr {
  Op op;
  int lhs = -1;
  int rhs = -1;
  int index = -1;  // atom or agent index
};

class Program {
public:
  Program(const Formula& f, const std::vector<std::string>& atoms, const std::vector<Agent>& agents) {
    compile(f, atoms, agents);
  }

  // `truth[i]`: worlds where atom i holds. `succ[k][w]`: successors of w for agent k.
  Mask run(std::size_t n, const std::vector<Mask>& truth, const std::vector<std::vector<Mask>>& succ) const {
    const Mask all = n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1);
    std::vector<Mask> val(code_.size());
    for (std::size_t i = 0; i < code_.size(); ++i) {
      const Instr& c = code_[i];
      switch (c.op) {
        case Op::Atom: val[i] = c.index < 0 ? 0 : truth[c.index]; break;
        case Op::Not: val[i] = all & ~val[c.lhs]; break;
        case Op::And: val[i] = val[c.lhs] & val[c.rhs]; break;
        case Op::Or: val[i] = val[c.lhs] | val[c.rhs]; break;
        case Op::Implies: val[i] = all & (~val[c.lhs] | val[c.rhs]); break;
        case Op::Iff: val[i] = all & ~(val[c.lhs] ^ val[c.rhs]); break;
        case Op::Bel:
        case Op::Comp: {
          Mask out = 0;
          const Mask m = val[c.lhs];
          for (std::size_t w = 0; w < n; ++w) {
            const Mask s = c.index < 0 ? 0 : succ[c.index][w];
            const bool holds = c.op == Op::Bel ? (s & ~m) == 0 : (s & m) != 0;
            if (holds) out |= Mask{1} << w;
          }
          val[i] = out;
          break;
        }
      }
    }
    return val.back();
  }

  // Same program over models too large for one mask word.
  std::vector<bool> run_wide(std::size_t n, const std::vector<std::vector<bool>>& truth,
                             const std::vector<std::vector<std::vector<WorldId>>>& succ) const {
    std::vector<std::vector<bool>> val(code_.size(), std::vector<bool>(n));
    for (std::size_t i = 0; i < code_.size(); ++i) {
      const Instr& c = code_[i];
      for (std::size_t w = 0; w < n; ++w) {
        bool x = false;
        switch (c.op) {
          case Op::Atom: x = c.index >= 0 && truth[c.index][w]; break;
          case Op::Not: x = !val[c.lhs][w]; break;
          case Op::And: x = val[c.lhs][w] && val[c.rhs][w]; break;
          case Op::Or: x = val[c.lhs][w] || val[c.rhs][w]; break;
          case Op::Implies: x = !val[c.lhs][w] || val[c.rhs][w]; break;
          case Op::Iff: x = val[c.lhs][w] == val[c.rhs][w]; break;
          case Op::Bel:
          case Op::Comp: {
            static const std::vector<WorldId> none;
            const auto& s = c.index < 0 ? none : succ[c.index][w];
            const auto& m = val[c.lhs];
            x = c.op == Op::Bel ? std::all_of(s.begin(), s.end(), [&](WorldId u) { return m[u]; })
                                : std::any_of(s.begin(), s.end(), [&](WorldId u) { return m[u]; });
            break;
          }
        }
        val[i][w] = x;
      }
    }
    return val.back();
  }

private:
  int compile(const Formula& f, const std::vector<std::string>& atoms, const std::vector<Agent>& agents) {
    Instr c{f.op()};
    if (f.op() == Op::Atom) {
      auto it = std::find(atoms.begin(), atoms.end(), f.atom_name());
      c.index = it == atoms.end() ? -1 : static_cast<int>(it - atoms.begin());
    } else {
      c.lhs = compile(f.sub(), atoms, agents);
      if (f.is_binary()) c.rhs = compile(f.right(), atoms, agents);
      if (f.is_modal()) {
        auto it = std::find(agents.begin(), agents.end(), f.agent());
        c.index = it == agents.end() ? -1 : static_cast<int>(it - agents.begin());
      }
    }
    code_.push_back(c);
    return static_cast<int>(code_.size()) - 1;
  }

  std::vector<Instr> code_;
};

Relation relation_from_mask(std::size_t n, std::uint32_t mask) {
  Relation r(n);
  for (std::size_t from = 0; from < n; ++from) {
    for (std::size_t to = 0; to < n; ++to) {
      if (mask >> (from * n + to) & 1u) r[from].insert(to);
    }
  }
  return r;
}

bool in_frame_class(std::size_t n, std::uint32_t mask, LogicProfile profile) {
  // Seriality is part of every frame class; rows without successors are skipped before the full check.
  const std::uint32_t row = (1u << n) - 1;
  for (std::size_t from = 0; from < n; ++from) {
    if ((mask >> (from * n) & row) == 0) return false;
  }
  ModelSystem m(n, 0, {}, {{Agent("a"), relation_from_mask(n, mask)}});
  return check_frame(m, profile).empty();
}

constexpr std::size_t kCachedWorlds = 4;

// Ascending list of frame masks on n worlds, for n up to kCachedWorlds.
const std::vector<std::uint32_t>& cached_frames(std::size_t n, LogicProfile profile) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, LogicProfile>, std::vector<std::uint32_t>> cache;
  std::lock_guard lock(mu);
  auto [it, inserted] = cache.try_emplace({n, profile});
  if (inserted) {
    const std::uint32_t limit = 1u << (n * n);
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
      if (in_frame_class(n, mask, profile)) it->second.push_back(mask);
    }
  }
  return it->second;
}

// Smallest frame mask greater than `after` (or the smallest at all).
std::optional<std::uint32_t> next_frame(std::size_t n, LogicProfile profile, std::optional<std::uint32_t> after) {
  if (n <= kCachedWorlds) {
    const auto& frames = cached_frames(n, profile);
    auto it = after ? std::upper_bound(frames.begin(), frames.end(), *after) : frames.begin();
    if (it == frames.end()) return std::nullopt;
    return *it;
  }
  const std::uint64_t limit = std::uint64_t{1} << (n * n);
  for (std::uint64_t mask = after ? std::uint64_t{*after} + 1 : 0; mask < limit; ++mask) {
    if (in_frame_class(n, static_cast<std::uint32_t>(mask), profile)) return static_cast<std::uint32_t>(mask);
  }
  return std::nullopt;
}

void validate(const EnumerationBudget& b) {
  if (b.max_worlds < 1 || b.max_worlds > kMaxOracleWorlds) {
    throw BudgetError("oracle budget must be between 1 and " + std::to_string(kMaxOracleWorlds) + " worlds");
  }
  if (b.max_worlds * b.atoms.size() > 30) throw BudgetError("too many atoms for the oracle budget");
  for (const auto& a : b.atoms) {
    if (!is_identifier(a)) throw BudgetError("invalid atom name '" + a + "'");
  }
}

// Visits (n, relation masks, valuation mask) in enumeration order until `visit` returns false.
template <class Visit>
std::size_t walk(const EnumerationBudget& b, LogicProfile profile, std::size_t min_n, std::size_t max_n,
                 Visit&& visit) {
  validate(b);
  std::size_t count = 0;
  const std::size_t k = b.agents.size();
  for (std::size_t n = min_n; n <= max_n; ++n) {
    const std::uint64_t valuations = std::uint64_t{1} << (n * b.atoms.size());
    std::vector<std::uint32_t> rel(k);
    // Odometer over agent relations, last agent fastest.
    std::size_t level = 0;
    std::vector<std::optional<std::uint32_t>> cur(k);
    bool done = false;
    auto advance = [&](std::size_t i) -> bool {
      cur[i] = next_frame(n, profile, cur[i]);
      return cur[i].has_value();
    };
    for (std::size_t i = 0; i < k && !done; ++i) done = !advance(i);
    while (!done) {
      for (std::size_t i = 0; i < k; ++i) rel[i] = *cur[i];
      for (std::uint64_t v = 0; v < valuations; ++v) {
        ++count;
        if (!visit(n, rel, v)) return count;
      }
      // Increment the odometer.
      level = k;
      while (level > 0) {
        if (advance(level - 1)) break;
        cur[level - 1].reset();
        advance(level - 1);
        --level;
      }
      if (level == 0) done = true;
    }
  }
  return count;
}

ModelSystem build(const EnumerationBudget& b, std::size_t n, const std::vector<std::uint32_t>& rel,
                  std::uint64_t valuation) {
  std::vector<std::set<std::string>> val(n);
  for (std::size_t w = 0; w < n; ++w) {
    for (std::size_t j = 0; j < b.atoms.size(); ++j) {
      if (valuation >> (w * b.atoms.size() + j) & 1u) val[w].insert(b.atoms[j]);
    }
  }
  std::map<Agent, Relation> alts;
  for (std::size_t i = 0; i < b.agents.size(); ++i) alts.emplace(b.agents[i], relation_from_mask(n, rel[i]));
  return ModelSystem(n, 0, std::move(val), std::move(alts));
}

} // namespace

std::size_t enumerate_models(const EnumerationBudget& budget, LogicProfile profile,
                             const std::function<bool(const ModelSystem&)>& visit) {
  return walk(budget, profile, 1, budget.max_worlds,
              [&](std::size_t n, const std::vector<std::uint32_t>& rel, std::uint64_t v) {
                return visit(build(budget, n, rel, v));
              });
}

std::size_t count_models(const EnumerationBudget& budget, LogicProfile profile, std::size_t worlds) {
  validate(budget);
  if (worlds < 1 || worlds > budget.max_worlds) return 0;
  return walk(budget, profile, worlds, worlds, [](std::size_t, const auto&, std::uint64_t) { return true; });
}

std::optional<ModelSystem> sat_upto(const Formula& f, const EnumerationBudget& budget, LogicProfile profile) {
  for (const auto& a : agents(f)) {
    if (std::find(budget.agents.begin(), budget.agents.end(), a) == budget.agents.end()) {
      throw BudgetError("agent " + a.name() + " is not in the oracle budget");
    }
  }
  for (const auto& a : atoms(f)) {
    if (std::find(budget.atoms.begin(), budget.atoms.end(), a) == budget.atoms.end()) {
      throw BudgetError("atom " + a + " is not in the oracle budget");
    }
  }
  const Program prog(f, budget.atoms, budget.agents);
  const std::size_t na = budget.atoms.size();
  std::optional<ModelSystem> found;
  std::vector<Mask> truth(na);
  std::vector<std::vector<Mask>> succ(budget.agents.size());
  walk(budget, profile, 1, budget.max_worlds,
       [&](std::size_t n, const std::vector<std::uint32_t>& rel, std::uint64_t v) {
         for (std::size_t i = 0; i < rel.size(); ++i) {
           succ[i].assign(n, 0);
           for (std::size_t w = 0; w < n; ++w) succ[i][w] = rel[i] >> (w * n) & ((1u << n) - 1);
         }
         for (std::size_t j = 0; j < na; ++j) {
           truth[j] = 0;
           for (std::size_t w = 0; w < n; ++w) {
             if (v >> (w * na + j) & 1u) truth[j] |= Mask{1} << w;
           }
         }
         if (prog.run(n, truth, succ) & 1u) {
           found = build(budget, n, rel, v);
           return false;
         }
         return true;
       });
  return found;
}

EnumerationBudget budget_for(const Formula& f, std::size_t max_worlds) {
  EnumerationBudget b;
  b.max_worlds = max_worlds;
  for (const auto& a : atoms(f)) b.atoms.push_back(a);
  for (const auto& a : agents(f)) b.agents.push_back(a);
  return b;
}

bool oracle_evaluate(const ModelSystem& m, WorldId w, const Formula& f) {
  const std::size_t n = m.worlds();
  if (w >= n) throw std::out_of_range("world w" + std::to_string(w) + " out of range");
  std::vector<std::string> atom_list;
  for (WorldId v = 0; v < n; ++v) {
    for (const auto& a : m.valuation(v)) {
      if (std::find(atom_list.begin(), atom_list.end(), a) == atom_list.end()) atom_list.push_back(a);
    }
  }
  if (n > 64) {
    std::vector<Agent> agent_list;
    std::vector<std::vector<std::vector<WorldId>>> succ;
    for (const auto& [agent, rel] : m.alternatives()) {
      agent_list.push_back(agent);
      auto& row = succ.emplace_back(n);
      for (WorldId v = 0; v < n; ++v) row[v].assign(rel[v].begin(), rel[v].end());
    }
    std::vector<std::vector<bool>> truth(atom_list.size(), std::vector<bool>(n));
    for (std::size_t j = 0; j < atom_list.size(); ++j) {
      for (WorldId v = 0; v < n; ++v) truth[j][v] = m.holds(v, atom_list[j]);
    }
    return Program(f, atom_list, agent_list).run_wide(n, truth, succ)[w];
  }
  std::vector<Agent> agent_list;
  std::vector<std::vector<Mask>> succ;
  for (const auto& [agent, rel] : m.alternatives()) {
    agent_list.push_back(agent);
    auto& row = succ.emplace_back(n, 0);
    for (WorldId v = 0; v < n; ++v) {
      for (WorldId u : rel[v]) row[v] |= Mask{1} << u;
    }
  }
  std::vector<Mask> truth(atom_list.size(), 0);
  for (std::size_t j = 0; j < atom_list.size(); ++j) {
    for (WorldId v = 0; v < n; ++v) {
      if (m.holds(v, atom_list[j])) truth[j] |= Mask{1} << v;
    }
  }
  return Program(f, atom_list, agent_list).run(n, truth, succ) >> w & 1u;
}

} // namespace doxa

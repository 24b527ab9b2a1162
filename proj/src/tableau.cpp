#include "doxa/tableau.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "doxa/syntax.hpp"

namespace doxa {

namespace {

struct Step {
  std::size_t world;
  Formula formula;
  std::string_view rule;
  std::vector<std::size_t> premises;
};

// A model set under construction. `order` fixes rule application order.
struct Label {
  std::vector<Formula> order;
  std::map<Formula, std::size_t> step;      // formula -> log index that introduced it
  std::map<Formula, std::size_t> rewrites;  // ~B[a] q -> log index of its C[a] ~q rewrite

  bool has(const Formula& f) const { return step.contains(f); }
};

// Open part of the tableau below one world, kept for countermodel extraction.
struct Fragment {
  struct Edge {
    Agent agent;
    std::unique_ptr<Fragment> child;
  };
  std::set<std::string> atoms;
  std::set<Agent> believing;              // agents with some B[a] q in the label
  std::optional<std::size_t> blocked_by;  // depth of the ancestor with the same label
  std::vector<Edge> edges;
  std::map<Agent, std::size_t> witness;   // hstar: index into edges of the C.CB world
};

struct Seed {
  Formula formula;
  std::string_view rule;
  std::size_t premise;
};

class Engine {
public:
  Engine(const Formula& query, LogicProfile profile)
      : query_(desugar(query)), profile_(profile) {
    auto as = agents(query_);
    agents_.assign(as.begin(), as.end());
    if (profile_ == LogicProfile::KD45) {
      for (const auto& g : subformula_closure(query_)) {
        if (g.op() == Op::Bel) cuts_.push_back(g);
      }
    }
  }

  Verdict run() {
    Verdict v;
    Label root_label;
    creation_.push_back(0);
    next_world_ = 1;
    stats_.worlds_created = 1;
    Fragment root;
    const bool open = add(root_label, 0, query_, rule::kSeed, {}) && saturate(std::move(root_label), 0, 0, root);
    v.satisfiable = open;
    if (open) {
      v.model = extract(root);
      verify(*v.model);
    } else {
      v.trace = std::move(last_trace_);
    }
    v.stats = stats_;
    return v;
  }

private:
  // Adds f to the label unless present. Returns false if it clashes with its complement.
  bool add(Label& label, std::size_t world, const Formula& f, std::string_view rule,
           std::vector<std::size_t> premises) {
    if (label.has(f)) return true;
    const std::size_t at = log_.size();
    log_.push_back({world, f, rule, std::move(premises)});
    ++stats_.rules_fired;
    label.order.push_back(f);
    label.step.emplace(f, at);
    auto other = label.step.find(complement(f));
    if (other == label.step.end()) return true;
    const Formula positive = f.op() == Op::Not ? f.sub() : f;
    log_.push_back({world, Formula::conj(positive, Formula::neg(positive)), rule::kClash,
                    {std::min(at, other->second), std::max(at, other->second)}});
    ++stats_.rules_fired;
    record_clash(log_.size() - 1);
    return false;
  }

  void truncate(std::size_t mark) { log_.erase(log_.begin() + static_cast<std::ptrdiff_t>(mark), log_.end()); }

  // Non-branching rules to saturation, then the first pending branch, then modal expansion.
  bool saturate(Label label, std::size_t cursor, std::size_t world, Fragment& out) {
    while (cursor < label.order.size()) {
      const Formula f = label.order[cursor++];
      const std::size_t at = label.step.at(f);
      if (f.op() == Op::And) {
        if (!add(label, world, f.sub(), rule::kAnd, {at})) return false;
        if (!add(label, world, f.right(), rule::kAnd, {at})) return false;
      } else if (f.op() == Op::Not) {
        const Formula& g = f.sub();
        if (g.op() == Op::Not) {
          if (!add(label, world, g.sub(), rule::kNotNot, {at})) return false;
        } else if (g.op() == Op::Or) {
          if (!add(label, world, Formula::neg(g.sub()), rule::kNotOr, {at})) return false;
          if (!add(label, world, Formula::neg(g.right()), rule::kNotOr, {at})) return false;
        } else if (g.op() == Op::Bel) {
          label.rewrites.emplace(f, log_.size());
          log_.push_back({world, Formula::comp(g.agent(), Formula::neg(g.sub())), rule::kBDefRewrite, {at}});
          ++stats_.rules_fired;
        }
      }
    }

    for (const auto& f : label.order) {
      if (f.op() == Op::Or && !label.has(f.sub()) && !label.has(f.right())) {
        return branch(label, cursor, world, out, {f.sub(), rule::kOrLeft, label.step.at(f)},
                      {f.right(), rule::kOrRight, label.step.at(f)});
      }
      if (f.op() == Op::Not && f.sub().op() == Op::And) {
        const Formula l = Formula::neg(f.sub().sub());
        const Formula r = Formula::neg(f.sub().right());
        if (!label.has(l) && !label.has(r)) {
          return branch(label, cursor, world, out, {l, rule::kNotAndLeft, label.step.at(f)},
                        {r, rule::kNotAndRight, label.step.at(f)});
        }
      }
    }
    for (const auto& c : cuts_) {
      if (!label.has(c) && !label.has(Formula::neg(c))) {
        return branch(label, cursor, world, out, {c, rule::kCut, kNoPremise},
                      {Formula::neg(c), rule::kCut, kNoPremise});
      }
    }
    return expand_modal(label, out);
  }

  static constexpr std::size_t kNoPremise = static_cast<std::size_t>(-1);

  static std::vector<std::size_t> premises_of(const Seed& s) {
    return s.premise == kNoPremise ? std::vector<std::size_t>{} : std::vector<std::size_t>{s.premise};
  }

  bool branch(const Label& label, std::size_t cursor, std::size_t world, Fragment& out, const Seed& left,
              const Seed& right) {
    const std::size_t mark = log_.size();
    for (const Seed* s : {&left, &right}) {
      Label copy = label;
      if (add(copy, world, s->formula, s->rule, premises_of(*s)) && saturate(std::move(copy), cursor, world, out)) {
        return true;
      }
      truncate(mark);
    }
    return false;
  }

  bool expand_modal(const Label& label, Fragment& out) {
    out = Fragment{};
    std::set<Formula> key(label.order.begin(), label.order.end());
    for (std::size_t d = 0; d < path_.size(); ++d) {
      if (path_[d] == key) {
        out.blocked_by = d;
        ++stats_.blocks_applied;
        return true;
      }
    }
    for (const auto& f : label.order) {
      if (f.op() == Op::Atom) out.atoms.insert(f.atom_name());
    }

    path_.push_back(std::move(key));
    const bool open = std::all_of(agents_.begin(), agents_.end(),
                                  [&](const Agent& a) { return expand_agent(label, a, out); });
    path_.pop_back();
    return open;
  }

  bool expand_agent(const Label& label, const Agent& a, Fragment& out) {
    std::vector<Seed> contents, beliefs, negated;
    std::vector<std::vector<Seed>> children;
    for (const auto& f : label.order) {
      const std::size_t at = label.step.at(f);
      if (f.op() == Op::Bel && f.agent() == a) {
        contents.push_back({f.sub(), rule::kBStar, at});
        beliefs.push_back({f, rule::kBBStar, at});
      } else if (f.op() == Op::Not && f.sub().op() == Op::Bel && f.sub().agent() == a) {
        children.push_back({{Formula::neg(f.sub().sub()), rule::kC, label.rewrites.at(f)}});
        negated.push_back({f, rule::kBBStar, at});
      }
    }
    if (!contents.empty()) out.believing.insert(a);

    const bool positive_introspection = profile_ == LogicProfile::Hintikka || profile_ == LogicProfile::KD45;
    if (children.empty() && !contents.empty() && profile_ != LogicProfile::HStar) {
      // Seriality witness (C.B).
      std::vector<Seed> serial = contents;
      serial.front().rule = rule::kB;
      children.push_back(std::move(serial));
    } else {
      for (auto& c : children) c.insert(c.end(), contents.begin(), contents.end());
    }
    for (auto& c : children) {
      if (positive_introspection) c.insert(c.end(), beliefs.begin(), beliefs.end());
      if (profile_ == LogicProfile::KD45) c.insert(c.end(), negated.begin(), negated.end());
    }

    if (profile_ != LogicProfile::HStar || contents.empty()) {
      return explore_all(a, children, out);
    }

    std::vector<Seed> witness = beliefs;
    for (auto& s : witness) s.rule = rule::kCB;
    // Reuse each existing alternative in turn, then fall back to a fresh witness world.
    for (std::size_t reuse = 0; reuse <= children.size(); ++reuse) {
      auto option = children;
      if (reuse < children.size()) {
        option[reuse].insert(option[reuse].end(), witness.begin(), witness.end());
      } else {
        std::vector<Seed> fresh = witness;
        fresh.insert(fresh.end(), contents.begin(), contents.end());
        option.push_back(std::move(fresh));
      }
      const std::size_t first_edge = out.edges.size();
      if (explore_all(a, option, out)) {
        out.witness[a] = first_edge + reuse;
        return true;
      }
      out.edges.erase(out.edges.begin() + static_cast<std::ptrdiff_t>(first_edge), out.edges.end());
    }
    return false;
  }

  bool explore_all(const Agent& a, const std::vector<std::vector<Seed>>& children,
                   Fragment& out) {
    for (const auto& seeds : children) {
      const std::size_t mark = log_.size();
      auto frag = std::make_unique<Fragment>();
      const bool open = explore_child(seeds, *frag);
      truncate(mark);
      if (!open) return false;
      out.edges.push_back({a, std::move(frag)});
    }
    return true;
  }

  bool explore_child(const std::vector<Seed>& seeds, Fragment& out) {
    const std::size_t id = next_world_++;
    ++stats_.worlds_created;
    creation_.resize(id + 1);
    creation_[id] = log_.size();
    Label label;
    for (const auto& s : seeds) {
      if (!add(label, id, s.formula, s.rule, premises_of(s))) return false;
    }
    return saturate(std::move(label), 0, id, out);
  }

  // Keeps the steps the clash depends on, plus the step that created each world involved.
  void record_clash(std::size_t clash) {
    std::set<std::size_t> keep;
    std::vector<std::size_t> todo{clash};
    while (!todo.empty()) {
      const std::size_t i = todo.back();
      todo.pop_back();
      if (!keep.insert(i).second) continue;
      for (auto p : log_[i].premises) todo.push_back(p);
      if (log_[i].world != 0) todo.push_back(creation_[log_[i].world]);
    }
    std::map<std::size_t, std::size_t> renumber;
    std::map<std::size_t, std::size_t> world_names;
    last_trace_.clear();
    for (auto i : keep) {
      renumber[i] = last_trace_.size() + 1;
      const Step& s = log_[i];
      auto [it, _] = world_names.try_emplace(s.world, world_names.size());
      std::vector<std::size_t> premises;
      for (auto p : s.premises) premises.push_back(renumber.at(p));
      last_trace_.push_back(
          ProofStep{renumber[i], "w" + std::to_string(it->second), s.formula, std::string(s.rule), premises});
    }
  }

  ModelSystem extract(const Fragment& root) const {
    std::vector<std::set<std::string>> valuation;
    std::vector<std::set<Agent>> believing;
    std::map<Agent, std::vector<std::pair<WorldId, WorldId>>> edges;
    std::map<Agent, std::map<WorldId, WorldId>> witness;
    std::vector<WorldId> ancestors;

    auto visit = [&](auto& self, const Fragment& f) -> WorldId {
      if (f.blocked_by) return ancestors.at(*f.blocked_by);
      const WorldId id = valuation.size();
      valuation.push_back(f.atoms);
      believing.push_back(f.believing);
      ancestors.push_back(id);
      for (std::size_t i = 0; i < f.edges.size(); ++i) {
        const auto& e = f.edges[i];
        const WorldId child = self(self, *e.child);
        edges[e.agent].emplace_back(id, child);
        auto w = f.witness.find(e.agent);
        if (w != f.witness.end() && w->second == i) witness[e.agent][id] = child;
      }
      ancestors.pop_back();
      return id;
    };
    visit(visit, root);

    const std::size_t n = valuation.size();
    std::map<Agent, Relation> alts;
    for (const auto& a : agents_) {
      Relation r(n);
      for (auto [from, to] : edges[a]) r[from].insert(to);
      for (WorldId w = 0; w < n; ++w) {
        if (!believing[w].contains(a) && (profile_ == LogicProfile::HStar || r[w].empty())) r[w].insert(w);
      }
      close_frame(r, witness[a]);
      alts.emplace(a, std::move(r));
    }
    return ModelSystem(n, 0, std::move(valuation), std::move(alts));
  }

  void close_frame(Relation& r, const std::map<WorldId, WorldId>& witness) const {
    bool changed = true;
    auto insert_all = [&](WorldId w, const std::set<WorldId>& from) {
      for (WorldId u : from) changed |= r[w].insert(u).second;
    };
    while (changed) {
      changed = false;
      switch (profile_) {
        case LogicProfile::KD:
          break;
        case LogicProfile::HStar:
          for (auto [w, v] : witness) insert_all(w, std::set<WorldId>(r[v]));
          break;
        case LogicProfile::Hintikka:
        case LogicProfile::KD45:
          for (WorldId w = 0; w < r.size(); ++w) {
            for (WorldId v : std::set<WorldId>(r[w])) insert_all(w, std::set<WorldId>(r[v]));
          }
          if (profile_ == LogicProfile::KD45) {
            for (WorldId w = 0; w < r.size(); ++w) {
              for (WorldId v : r[w]) insert_all(v, std::set<WorldId>(r[w]));
            }
          }
          break;
      }
    }
  }

  void verify(const ModelSystem& m) const {
    auto violations = check_frame(m, profile_);
    if (!violations.empty()) {
      throw VerificationError("internal verification failure: countermodel for '" + render(query_) +
                              "' violates " + violations.front().kind + ": " + violations.front().message);
    }
    if (!evaluate(m, m.designated(), query_)) {
      throw VerificationError("internal verification failure: countermodel does not satisfy '" +
                              render(query_) + "'");
    }
  }

  Formula query_;
  LogicProfile profile_;
  std::vector<Agent> agents_;
  std::vector<Formula> cuts_;

  std::vector<Step> log_;
  std::vector<std::size_t> creation_;  // world -> log index of its first step
  std::vector<std::set<Formula>> path_;
  std::size_t next_world_ = 0;
  ProofTrace last_trace_;
  TableauStats stats_;
};

} // namespace

Verdict decide_sat(const Formula& f, LogicProfile profile) { return Engine(f, profile).run(); }

ValidityVerdict decide_valid(const Formula& f, LogicProfile profile) {
  Verdict v = decide_sat(Formula::neg(f), profile);
  ValidityVerdict out;
  out.valid = !v.satisfiable;
  out.countermodel = std::move(v.model);
  out.trace = std::move(v.trace);
  out.stats = v.stats;
  return out;
}

} // namespace doxa

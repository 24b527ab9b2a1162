#include "doxa/kripke.hpp"

#include <algorithm>
#include <stdexcept>

#include "doxa/syntax.hpp"

namespace doxa {

std::string_view profile_name(LogicProfile p) noexcept {
  switch (p) {
    case LogicProfile::HStar: return "hstar";
    case LogicProfile::Hintikka: return "hintikka";
    case LogicProfile::KD: return "kd";
    case LogicProfile::KD45: return "kd45";
  }
  return "?";
}

std::optional<LogicProfile> profile_from_name(std::string_view name) noexcept {
  for (auto p : kAllProfiles) {
    if (profile_name(p) == name) return p;
  }
  return std::nullopt;
}

ModelSystem::ModelSystem(std::size_t worlds, WorldId designated,
                         std::vector<std::set<std::string>> valuation,
                         std::map<Agent, Relation> alternatives)
    : worlds_(worlds), designated_(designated), valuation_(std::move(valuation)),
      alternatives_(std::move(alternatives)) {
  if (worlds_ == 0) throw std::invalid_argument("a model system needs at least one world");
  if (designated_ >= worlds_) throw std::invalid_argument("designated world out of range");
  if (valuation_.size() > worlds_) throw std::invalid_argument("valuation mentions a world out of range");
  valuation_.resize(worlds_);
  for (const auto& v : valuation_) {
    for (const auto& a : v) {
      if (!is_identifier(a)) throw std::invalid_argument("invalid atom name '" + a + "'");
    }
  }
  for (auto& [agent, rel] : alternatives_) {
    if (rel.size() > worlds_) throw std::invalid_argument("relation of agent " + agent.name() + " has too many worlds");
    rel.resize(worlds_);
    for (const auto& succ : rel) {
      if (!succ.empty() && *succ.rbegin() >= worlds_) {
        throw std::invalid_argument("relation of agent " + agent.name() + " references a world out of range");
      }
    }
  }
}

const std::set<WorldId>& ModelSystem::successors(const Agent& a, WorldId w) const {
  static const std::set<WorldId> kNone;
  if (w >= worlds_) throw std::out_of_range("world w" + std::to_string(w) + " out of range");
  auto it = alternatives_.find(a);
  return it == alternatives_.end() ? kNone : it->second[w];
}

ModelSystem ModelSystem::with_agents(const std::set<Agent>& extra) const {
  auto alts = alternatives_;
  for (const auto& a : extra) alts.try_emplace(a, Relation(worlds_));
  return ModelSystem(worlds_, designated_, valuation_, std::move(alts));
}

namespace {

bool uses_sugar(const Formula& f) {
  switch (f.op()) {
    case Op::Atom: return false;
    case Op::Implies: case Op::Iff: return true;
    case Op::And: case Op::Or: return uses_sugar(f.sub()) || uses_sugar(f.right());
    default: return uses_sugar(f.sub());
  }
}

} // namespace

LabeledModelSystem::LabeledModelSystem(ModelSystem model, std::vector<std::set<Formula>> labels)
    : model_(std::move(model)), labels_(std::move(labels)) {
  if (labels_.size() > model_.worlds()) throw std::invalid_argument("labels mention a world out of range");
  labels_.resize(model_.worlds());
  for (const auto& l : labels_) {
    for (const auto& f : l) {
      if (uses_sugar(f)) throw std::invalid_argument("label formula '" + render(f) + "' uses -> or <->");
    }
  }
}

bool evaluate(const ModelSystem& m, WorldId w, const Formula& f) {
  if (w >= m.worlds()) throw std::out_of_range("world w" + std::to_string(w) + " out of range");
  switch (f.op()) {
    case Op::Atom: return m.holds(w, f.atom_name());
    case Op::Not: return !evaluate(m, w, f.sub());
    case Op::And: return evaluate(m, w, f.sub()) && evaluate(m, w, f.right());
    case Op::Or: return evaluate(m, w, f.sub()) || evaluate(m, w, f.right());
    case Op::Implies: return !evaluate(m, w, f.sub()) || evaluate(m, w, f.right());
    case Op::Iff: return evaluate(m, w, f.sub()) == evaluate(m, w, f.right());
    case Op::Bel: {
      const auto& succ = m.successors(f.agent(), w);
      return std::all_of(succ.begin(), succ.end(), [&](WorldId v) { return evaluate(m, v, f.sub()); });
    }
    case Op::Comp: {
      const auto& succ = m.successors(f.agent(), w);
      return std::any_of(succ.begin(), succ.end(), [&](WorldId v) { return evaluate(m, v, f.sub()); });
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

std::string wname(WorldId w) { return "w" + std::to_string(w); }

Violation violation(std::string_view kind, std::vector<WorldId> worlds, std::optional<Formula> f,
                    std::string message) {
  return Violation{std::string(kind), std::move(worlds), std::move(f), std::move(message)};
}

} // namespace

std::vector<Violation> check_frame(const ModelSystem& m, LogicProfile profile) {
  std::vector<Violation> out;
  const bool transitive = profile == LogicProfile::Hintikka || profile == LogicProfile::KD45;
  for (const auto& [agent, rel] : m.alternatives()) {
    const std::string tag = " (agent " + agent.name() + ")";
    for (WorldId w = 0; w < m.worlds(); ++w) {
      if (rel[w].empty()) {
        out.push_back(violation(cond::kSerial, {w}, std::nullopt, wname(w) + " has no alternative" + tag));
        continue;
      }
      if (profile == LogicProfile::HStar) {
        bool witnessed = std::any_of(rel[w].begin(), rel[w].end(), [&](WorldId v) {
          return std::includes(rel[w].begin(), rel[w].end(), rel[v].begin(), rel[v].end());
        });
        if (!witnessed) {
          out.push_back(violation(cond::kA3Witness, {w}, std::nullopt,
                                  "no alternative of " + wname(w) + " has its alternatives among those of " +
                                      wname(w) + tag));
        }
      }
    }
    if (transitive) {
      std::set<std::pair<WorldId, WorldId>> missing;
      for (WorldId w = 0; w < m.worlds(); ++w) {
        for (WorldId v : rel[w]) {
          for (WorldId u : rel[v]) {
            if (!rel[w].contains(u)) missing.emplace(w, u);
          }
        }
      }
      for (auto [w, u] : missing) {
        out.push_back(violation(cond::kTransitive, {w, u}, std::nullopt,
                                "missing composed edge " + wname(w) + " -> " + wname(u) + tag));
      }
    }
    if (profile == LogicProfile::KD45) {
      std::set<std::pair<WorldId, WorldId>> missing;
      for (WorldId w = 0; w < m.worlds(); ++w) {
        for (WorldId v : rel[w]) {
          for (WorldId u : rel[w]) {
            if (!rel[v].contains(u)) missing.emplace(v, u);
          }
        }
      }
      for (auto [v, u] : missing) {
        out.push_back(violation(cond::kEuclidean, {v, u}, std::nullopt,
                                "missing euclidean edge " + wname(v) + " -> " + wname(u) + tag));
      }
    }
  }
  return out;
}

namespace {

class ModelSetChecker {
public:
  ModelSetChecker(const LabeledModelSystem& lm, LogicProfile profile) : lm_(lm), profile_(profile) {}

  std::vector<Violation> run() {
    for (WorldId w = 0; w < lm_.model().worlds(); ++w) {
      for (const auto& f : lm_.label(w)) check(w, f);
    }
    return std::move(out_);
  }

private:
  bool has(WorldId w, const Formula& f) const { return lm_.label(w).contains(f); }

  void report(std::string_view kind, WorldId w, const Formula& f, const std::string& what) {
    out_.push_back(violation(kind, {w}, f, render(f) + " in " + wname(w) + ": " + what));
  }

  // Existential / universal demands over the a-alternatives of w.
  bool some_alt(WorldId w, const Agent& a, const Formula& g) const {
    const auto& succ = lm_.model().successors(a, w);
    return std::any_of(succ.begin(), succ.end(), [&](WorldId v) { return has(v, g); });
  }
  std::optional<WorldId> alt_missing(WorldId w, const Agent& a, const Formula& g) const {
    for (WorldId v : lm_.model().successors(a, w)) {
      if (!has(v, g)) return v;
    }
    return std::nullopt;
  }

  void check(WorldId w, const Formula& f) {
    switch (f.op()) {
      case Op::Atom:
        break;
      case Op::And:
        if (!has(w, f.sub()) || !has(w, f.right())) report(cond::kAnd, w, f, "a conjunct is missing");
        break;
      case Op::Or:
        if (!has(w, f.sub()) && !has(w, f.right())) report(cond::kOr, w, f, "neither disjunct is present");
        break;
      case Op::Bel:
        check_bel(w, f);
        break;
      case Op::Comp:
        if (!some_alt(w, f.agent(), f.sub())) {
          report(cond::kC, w, f, "no alternative contains " + render(f.sub()));
        }
        if (!has(w, Formula::neg(Formula::bel(f.agent(), Formula::neg(f.sub()))))) {
          report(cond::kCDef, w, f, "the defining ~B form is missing");
        }
        break;
      case Op::Not:
        check_negation(w, f);
        break;
      case Op::Implies:
      case Op::Iff:
        break;
    }
  }

  void check_bel(WorldId w, const Formula& f) {
    const Agent& a = f.agent();
    const Formula& p = f.sub();
    if (!some_alt(w, a, p)) report(cond::kB, w, f, "no alternative contains " + render(p));
    if (auto v = alt_missing(w, a, p)) report(cond::kBStar, w, f, "alternative " + wname(*v) + " lacks " + render(p));
    if (profile_ == LogicProfile::HStar && !some_alt(w, a, f)) {
      report(cond::kCB, w, f, "no alternative contains " + render(f));
    }
    if (profile_ == LogicProfile::Hintikka || profile_ == LogicProfile::KD45) {
      if (auto v = alt_missing(w, a, f)) report(cond::kBBStar, w, f, "alternative " + wname(*v) + " lacks it");
    }
  }

  void check_negation(WorldId w, const Formula& f) {
    const Formula& g = f.sub();
    if (has(w, g)) report(cond::kNot, w, g, "both it and its negation are present");
    switch (g.op()) {
      case Op::Not:
        if (!has(w, g.sub())) report(cond::kNotNot, w, f, render(g.sub()) + " is missing");
        break;
      case Op::And:
        if (!has(w, Formula::neg(g.sub())) && !has(w, Formula::neg(g.right()))) {
          report(cond::kNotAnd, w, f, "neither negated conjunct is present");
        }
        break;
      case Op::Or:
        if (!has(w, Formula::neg(g.sub())) || !has(w, Formula::neg(g.right()))) {
          report(cond::kNotOr, w, f, "a negated disjunct is missing");
        }
        break;
      case Op::Bel: {
        const Formula demand = Formula::neg(g.sub());
        if (!some_alt(w, g.agent(), demand)) report(cond::kC, w, f, "no alternative contains " + render(demand));
        if (profile_ == LogicProfile::KD45) {
          if (auto v = alt_missing(w, g.agent(), f)) {
            report(cond::kBBStar, w, f, "alternative " + wname(*v) + " lacks it (negative introspection)");
          }
        }
        break;
      }
      case Op::Comp: {
        const Formula& q = g.sub();
        const Formula required = Formula::bel(g.agent(), q.op() == Op::Not ? q.sub() : Formula::neg(q));
        if (!has(w, required)) report(cond::kBDef, w, f, render(required) + " is missing");
        break;
      }
      default:
        break;
    }
  }

  const LabeledModelSystem& lm_;
  LogicProfile profile_;
  std::vector<Violation> out_;
};

} // namespace

std::vector<Violation> check_model_set(const LabeledModelSystem& lm, LogicProfile profile) {
  return ModelSetChecker(lm, profile).run();
}

} // namespace doxa

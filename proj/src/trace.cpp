#include <map>
#include <sstream>

#include "doxa/model_io.hpp"
#include "doxa/syntax.hpp"
#include "doxa/tableau.hpp"

namespace doxa {

using nlohmann::ordered_json;

namespace {

std::string cite(const std::vector<std::size_t>& premises) {
  std::string out;
  for (std::size_t i = 0; i < premises.size(); ++i) {
    if (i > 0) out += (i + 1 == premises.size()) ? " and " : ", ";
    out += "(" + std::to_string(premises[i]) + ")";
  }
  return out;
}

ordered_json stats_json(const TableauStats& s) {
  ordered_json out;
  out["worlds_created"] = s.worlds_created;
  out["rules_fired"] = s.rules_fired;
  out["blocks_applied"] = s.blocks_applied;
  return out;
}

} // namespace

ordered_json trace_steps_json(const ProofTrace& trace) {
  ordered_json steps = ordered_json::array();
  for (const auto& s : trace) {
    ordered_json j;
    j["i"] = s.index;
    j["world"] = s.world;
    j["formula"] = render(s.formula);
    j["rule"] = s.rule;
    j["from"] = s.premises;
    steps.push_back(std::move(j));
  }
  return steps;
}

std::string render_trace(const ProofTrace& trace, TraceFormat format) {
  if (format == TraceFormat::Json) {
    ordered_json out;
    out["verdict"] = "unsat";
    out["steps"] = trace_steps_json(trace);
    return out.dump();
  }
  std::ostringstream os;
  for (const auto& s : trace) {
    os << "(" << s.index << ") " << render(s.formula) << " ∈ " << s.world << "   ";
    if (!s.premises.empty()) os << "From " << cite(s.premises) << " ";
    os << "by (" << s.rule << ")\n";
  }
  return os.str();
}

ordered_json verdict_to_json(const Verdict& v) {
  ordered_json out;
  out["verdict"] = v.satisfiable ? "sat" : "unsat";
  if (v.satisfiable) {
    out["model"] = model_to_json(*v.model);
  } else {
    out["steps"] = trace_steps_json(v.trace);
  }
  out["stats"] = stats_json(v.stats);
  return out;
}

ordered_json verdict_to_json(const ValidityVerdict& v) {
  ordered_json out;
  out["verdict"] = v.valid ? "valid" : "invalid";
  if (v.valid) {
    out["steps"] = trace_steps_json(v.trace);
  } else {
    out["model"] = model_to_json(*v.countermodel);
  }
  out["stats"] = stats_json(v.stats);
  return out;
}

namespace {

class TraceChecker {
public:
  TraceChecker(const Formula& query, LogicProfile profile) : query_(desugar(query)), profile_(profile) {}

  std::vector<std::string> run(const ProofTrace& trace) {
    if (trace.empty()) {
      problems_.push_back("empty trace");
      return problems_;
    }
    for (std::size_t i = 0; i < trace.size(); ++i) step(trace, i);
    if (trace.back().rule != rule::kClash) problems_.push_back("last step is not a (C.~) clash");
    return problems_;
  }

private:
  struct Parent {
    std::string world;
    Agent agent;
  };

  void fail(const ProofStep& s, const std::string& why) {
    problems_.push_back("step (" + std::to_string(s.index) + "): " + why);
  }

  void step(const ProofTrace& trace, std::size_t pos) {
    const ProofStep& s = trace[pos];
    if (s.index != pos + 1) return fail(s, "steps must be numbered consecutively from 1");
    std::vector<const ProofStep*> prem;
    for (auto p : s.premises) {
      if (p == 0 || p >= s.index) return fail(s, "premise (" + std::to_string(p) + ") does not precede the step");
      prem.push_back(&trace[p - 1]);
    }
    const bool known = s.world == "w0" || parents_.contains(s.world);
    const std::string& r = s.rule;

    if (r == rule::kSeed) {
      if (s.world != "w0" || !prem.empty() || s.formula != query_) fail(s, "seed must place the query in w0");
      return;
    }
    if (r == rule::kC || r == rule::kB || r == rule::kBStar || r == rule::kCB || r == rule::kBBStar) {
      return modal_step(s, prem, known);
    }
    if (!known) return fail(s, "world " + s.world + " was never introduced");
    if (r == rule::kCut) {
      if (profile_ != LogicProfile::KD45) return fail(s, "cut is only used under kd45");
      const Formula& f = s.formula;
      if (!prem.empty() || !(f.op() == Op::Bel || (f.op() == Op::Not && f.sub().op() == Op::Bel))) {
        fail(s, "cut must decide a belief formula without premises");
      }
      return;
    }
    if (prem.size() == 2 && r == rule::kClash) {
      const Formula& a = prem[0]->formula;
      const Formula& b = prem[1]->formula;
      if (prem[0]->world != s.world || prem[1]->world != s.world) return fail(s, "clash premises must share the world");
      std::optional<Formula> pos;
      if (b == Formula::neg(a)) pos = a;
      else if (a == Formula::neg(b)) pos = b;
      if (!pos) return fail(s, "clash premises are not complementary");
      if (s.formula != Formula::conj(*pos, Formula::neg(*pos))) fail(s, "clash must state the contradiction");
      return;
    }
    if (prem.size() != 1) return fail(s, "rule " + r + " takes exactly one premise");
    const Formula& p = prem[0]->formula;
    const Formula& f = s.formula;
    if (prem[0]->world != s.world) return fail(s, "rule " + r + " stays within one world");
    bool ok = false;
    if (r == rule::kAnd) {
      ok = p.op() == Op::And && (f == p.sub() || f == p.right());
    } else if (r == rule::kOrLeft || r == rule::kOrRight) {
      ok = p.op() == Op::Or && f == (r == rule::kOrLeft ? p.sub() : p.right());
    } else if (r == rule::kNotNot) {
      ok = p.op() == Op::Not && p.sub().op() == Op::Not && f == p.sub().sub();
    } else if (r == rule::kNotAndLeft || r == rule::kNotAndRight) {
      ok = p.op() == Op::Not && p.sub().op() == Op::And &&
           f == Formula::neg(r == rule::kNotAndLeft ? p.sub().sub() : p.sub().right());
    } else if (r == rule::kNotOr) {
      ok = p.op() == Op::Not && p.sub().op() == Op::Or &&
           (f == Formula::neg(p.sub().sub()) || f == Formula::neg(p.sub().right()));
    } else if (r == rule::kBDefRewrite) {
      ok = p.op() == Op::Not && p.sub().op() == Op::Bel &&
           f == Formula::comp(p.sub().agent(), Formula::neg(p.sub().sub()));
    } else {
      return fail(s, "unknown rule '" + r + "'");
    }
    if (!ok) fail(s, "does not follow from its premise by (" + r + ")");
  }

  void modal_step(const ProofStep& s, const std::vector<const ProofStep*>& prem, bool known) {
    const std::string& r = s.rule;
    if (prem.size() != 1) return fail(s, "rule " + r + " takes exactly one premise");
    const ProofStep& from = *prem[0];
    const Formula& p = from.formula;
    const Formula& f = s.formula;
    if (r == rule::kCB && profile_ != LogicProfile::HStar) return fail(s, "C.CB belongs to hstar only");
    if (r == rule::kBBStar && profile_ != LogicProfile::Hintikka && profile_ != LogicProfile::KD45) {
      return fail(s, "C.BB* belongs to hintikka and kd45 only");
    }

    std::optional<Agent> agent;
    bool ok = false;
    if (r == rule::kC) {
      ok = p.op() == Op::Comp && f == p.sub();
    } else if (r == rule::kB || r == rule::kBStar) {
      ok = p.op() == Op::Bel && f == p.sub();
    } else if (r == rule::kCB) {
      ok = p.op() == Op::Bel && f == p;
    } else {
      const bool negative = p.op() == Op::Not && p.sub().op() == Op::Bel;
      ok = (p.op() == Op::Bel || (negative && profile_ == LogicProfile::KD45)) && f == p;
    }
    if (!ok) return fail(s, "does not follow from its premise by (" + r + ")");
    agent = p.op() == Op::Not ? p.sub().agent() : p.agent();

    if (!known) {
      if (r != rule::kC && r != rule::kB && r != rule::kCB) {
        return fail(s, "world " + s.world + " must be introduced by C.C, C.B or C.CB");
      }
      parents_.emplace(s.world, Parent{from.world, *agent});
      return;
    }
    auto it = parents_.find(s.world);
    if (it == parents_.end() || it->second.world != from.world || it->second.agent != *agent) {
      fail(s, s.world + " is not an alternative to " + from.world + " for agent " + agent->name());
    }
  }

  Formula query_;
  LogicProfile profile_;
  std::map<std::string, Parent> parents_;
  std::vector<std::string> problems_;
};

} // namespace

std::vector<std::string> check_trace(const ProofTrace& trace, const Formula& query, LogicProfile profile) {
  return TraceChecker(query, profile).run(trace);
}

} // namespace doxa

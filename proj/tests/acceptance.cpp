// Acceptance suite: one PASS/FAIL line per criterion; exits 1 if any criterion fails.
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <future>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "doxa/cli.hpp"
#include "doxa/oracle.hpp"
#include "doxa/tableau.hpp"
#include "support.hpp"

using namespace doxa;
using doxa::test::f;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;
  void fail(std::string note) {
    pass = false;
    if (notes.size() < 5) notes.push_back(std::move(note));
  }
};

std::vector<cli::CorpusEntry> bundled_corpus() {
  std::ifstream in(cli::default_corpus_path());
  if (!in) throw std::runtime_error("cannot open " + cli::default_corpus_path());
  return cli::load_corpus(in);
}

std::vector<Formula> random_suite(std::size_t count, int depth, unsigned seed) {
  std::mt19937 rng(seed);
  const std::vector<std::string> atoms{"p"};
  const std::vector<Agent> ags{Agent("a")};
  std::vector<Formula> out;
  while (out.size() < count) out.push_back(doxa::test::random_formula(rng, depth, atoms, ags));
  return out;
}

std::string where(const Formula& g, LogicProfile p) {
  return render(g) + " [" + std::string(profile_name(p)) + "]";
}

// Every corpus row yields its recorded verdict; invalid rows carry a countermodel.
Outcome corpus_verdicts() {
  Outcome o;
  const auto rows = bundled_corpus();
  for (const auto& row : rows) {
    const Formula g = f(row.formula);
    std::string actual;
    if (row.mode == cli::Mode::Sat) {
      actual = decide_sat(g, row.profile).satisfiable ? "sat" : "unsat";
    } else {
      const auto v = decide_valid(g, row.profile);
      actual = v.valid ? "valid" : "invalid";
      if (!v.valid && !v.countermodel) o.fail(row.id + ": no countermodel");
    }
    if (actual != row.expected) o.fail(row.id + ": expected " + row.expected + ", got " + actual);
  }
  o.detail = std::to_string(rows.size()) + " rows";
  return o;
}

// Refutations of the two believed-gap formulas use only the belief rules and reach three worlds.
Outcome trace_fidelity() {
  Outcome o;
  const std::set<std::string> allowed{"seed", "C.&", "C.B*", "C.CB", "C.BDef-rewrite", "C.C", "C.~-clash"};
  for (const char* text : {"B[a](p & ~B[a] p)", "B[a](B[a] p & ~B[a] B[a] p)"}) {
    const Formula g = f(text);
    const auto v = decide_sat(g, LogicProfile::HStar);
    if (v.satisfiable) {
      o.fail(std::string(text) + ": satisfiable");
      continue;
    }
    std::set<std::string> worlds;
    for (const auto& s : v.trace) {
      worlds.insert(s.world);
      if (!allowed.contains(s.rule)) o.fail(std::string(text) + ": rule " + s.rule);
    }
    if (worlds.size() < 3) o.fail(std::string(text) + ": only " + std::to_string(worlds.size()) + " worlds");
    if (v.trace.back().rule != "C.~-clash") o.fail(std::string(text) + ": does not end in a clash");
    for (const auto& problem : check_trace(v.trace, g, LogicProfile::HStar)) o.fail(std::string(text) + ": " + problem);
    o.detail += (o.detail.empty() ? "" : ", ") + std::to_string(v.trace.size()) + " steps over " +
                std::to_string(worlds.size()) + " worlds";
  }
  return o;
}

// Every SAT model is in the frame class and satisfies its query; every UNSAT trace replays.
Outcome self_verification(const std::vector<Formula>& suite) {
  Outcome o;
  std::size_t decisions = 0;
  for (const auto& g : suite) {
    for (auto p : kAllProfiles) {
      ++decisions;
      try {
        const auto v = decide_sat(g, p);
        if (v.satisfiable) {
          if (!v.model || !check_frame(*v.model, p).empty() || !evaluate(*v.model, v.model->designated(), g)) {
            o.fail(where(g, p) + ": model fails its check");
          }
        } else if (!check_trace(v.trace, g, p).empty()) {
          o.fail(where(g, p) + ": trace does not replay");
        }
      } catch (const VerificationError& e) {
        o.fail(where(g, p) + ": " + e.what());
      }
    }
  }
  o.detail = std::to_string(decisions) + " decisions";
  return o;
}

// Engine and 4-world oracle never contradict each other.
Outcome oracle_agreement(const std::vector<Formula>& suite) {
  Outcome o;
  const EnumerationBudget budget{4, {"p"}, {Agent("a")}};
  struct Tally {
    std::size_t sat = 0, unsat = 0;
    std::vector<std::string> bad;
  };
  std::vector<std::future<Tally>> jobs;
  for (auto p : kAllProfiles) {
    jobs.push_back(std::async(std::launch::async, [&suite, &budget, p] {
      Tally t;
      for (const auto& g : suite) {
        const auto v = decide_sat(g, p);
        if (v.satisfiable) {
          ++t.sat;
          if (!oracle_evaluate(*v.model, v.model->designated(), g)) t.bad.push_back(where(g, p) + ": oracle rejects model");
        } else {
          ++t.unsat;
          if (sat_upto(g, budget, p)) t.bad.push_back(where(g, p) + ": oracle finds a model");
        }
      }
      return t;
    }));
  }
  std::size_t sat = 0, unsat = 0;
  for (auto& j : jobs) {
    auto t = j.get();
    sat += t.sat;
    unsat += t.unsat;
    for (auto& b : t.bad) o.fail(std::move(b));
  }
  o.detail = std::to_string(sat) + " sat, " + std::to_string(unsat) + " unsat";
  return o;
}

// SAT under a smaller frame class implies SAT under every larger one.
Outcome monotonicity(const std::vector<Formula>& suite) {
  Outcome o;
  const LogicProfile chain[] = {LogicProfile::KD45, LogicProfile::Hintikka, LogicProfile::HStar, LogicProfile::KD};
  for (const auto& g : suite) {
    bool prev = false;
    for (std::size_t i = 0; i < 4; ++i) {
      const bool s = decide_sat(g, chain[i]).satisfiable;
      if (i > 0 && prev && !s) o.fail(where(g, chain[i]) + ": unsat although " + std::string(profile_name(chain[i - 1])) + " is sat");
      prev = s;
    }
  }
  o.detail = std::to_string(suite.size()) + " formulas";
  return o;
}

Outcome round_trips() {
  Outcome o;
  std::mt19937 rng(99);
  const std::vector<std::string> atoms{"p", "q", "r"};
  const std::vector<Agent> ags{Agent("a"), Agent("b")};
  for (int i = 0; i < 1000; ++i) {
    const Formula g = doxa::test::random_formula(rng, 6, atoms, ags);
    try {
      if (parse(render(g)) != g) o.fail(render(g));
    } catch (const ParseError& e) {
      o.fail(render(g) + ": " + e.what());
    }
  }
  o.detail = "1000 formulas";
  return o;
}

// Serial relations on two worlds counted directly from bitmasks.
std::size_t serial_relations_on_two() {
  std::size_t n = 0;
  for (unsigned r = 0; r < 16; ++r) n += (r & 3u) != 0 && (r & 12u) != 0;
  return n;
}

Outcome enumeration_counts() {
  Outcome o;
  const EnumerationBudget one{1, {"p"}, {Agent("a")}};
  const EnumerationBudget two{2, {"p"}, {Agent("a")}};
  const std::size_t kd1 = count_models(one, LogicProfile::KD, 1);
  const std::size_t hs1 = count_models(one, LogicProfile::HStar, 1);
  const std::size_t kd2 = count_models(two, LogicProfile::KD, 2);
  if (kd1 != 2) o.fail("kd, 1 world: " + std::to_string(kd1));
  if (hs1 != 2) o.fail("hstar, 1 world: " + std::to_string(hs1));
  if (kd2 != serial_relations_on_two() * 4 || kd2 != 36) o.fail("kd, 2 worlds: " + std::to_string(kd2));
  o.detail = std::to_string(kd1) + "/" + std::to_string(hs1) + "/" + std::to_string(kd2);
  return o;
}

Outcome corpus_determinism() {
  Outcome o;
  const cli::Style json{cli::Output::Json, false};
  const auto a = cli::corpus(std::nullopt, json);
  const auto b = cli::corpus(std::nullopt, json);
  if (a.exit_code != 0) o.fail("corpus run exited " + std::to_string(a.exit_code));
  if (a.out != b.out) o.fail("outputs differ");
  o.detail = std::to_string(a.out.size()) + " bytes";
  return o;
}

} // namespace

int main() {
  const auto corpus = bundled_corpus();
  std::vector<Formula> corpus_formulas;
  for (const auto& row : corpus) {
    const Formula g = f(row.formula);
    corpus_formulas.push_back(g);
    corpus_formulas.push_back(Formula::neg(g));
  }
  std::vector<Formula> with_random = corpus_formulas;
  const auto suite = random_suite(500, 4, 20240611);
  with_random.insert(with_random.end(), suite.begin(), suite.end());

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"corpus verdicts", corpus_verdicts},
      {"trace fidelity", trace_fidelity},
      {"self-verification", [&] { return self_verification(with_random); }},
      {"oracle agreement at 4 worlds", [&] { return oracle_agreement(suite); }},
      {"profile monotonicity", [&] { return monotonicity(with_random); }},
      {"parse/render round trip", round_trips},
      {"enumeration counts", enumeration_counts},
      {"corpus determinism", corpus_determinism},
  };

  bool all = true;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all &= o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << index << ". " << name;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "  [" << std::fixed << std::setprecision(2) << secs << "s]\n";
    for (const auto& n : o.notes) std::cout << "      " << n << "\n";
  }
  return all ? 0 : 1;
}

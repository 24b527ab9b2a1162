#include "doxa/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "doxa/model_io.hpp"
#include "doxa/oracle.hpp"
#include "doxa/syntax.hpp"
#include "doxa/tableau.hpp"

namespace doxa::cli {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

std::string paint(const Style& s, std::string_view text, const char* code) {
  if (!s.color) return std::string(text);
  return std::string("\033[") + code + "m" + std::string(text) + "\033[0m";
}

std::string verdict_word(const Style& s, bool positive, std::string_view word) {
  return paint(s, word, positive ? "32" : "31");
}

Result usage_error(const std::string& message) { return Result{2, "", "error: " + message + "\n"}; }

// Parses formula text, or fills `error` with a caret report.
std::optional<Formula> parse_or_report(std::string_view text, Result& error) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    error = usage_error(std::string("parse error: ") + e.what() + "\n" + caret_excerpt(text, e.span()));
    return std::nullopt;
  }
}

std::string describe_model(const ModelSystem& m) {
  std::ostringstream os;
  os << "countermodel: " << m.worlds() << " world(s), designated w" << m.designated() << "\n";
  for (WorldId w = 0; w < m.worlds(); ++w) {
    std::string atoms;
    for (const auto& a : m.valuation(w)) atoms += (atoms.empty() ? "" : ", ") + a;
    os << "  w" << w << "  {" << atoms << "}";
    for (const auto& [agent, rel] : m.alternatives()) {
      os << "  " << agent.name() << " ->";
      for (WorldId v : rel[w]) os << " w" << v;
    }
    os << "\n";
  }
  return os.str();
}

std::string describe_stats(const TableauStats& s) {
  std::ostringstream os;
  os << "stats: worlds=" << s.worlds_created << " rules=" << s.rules_fired << " blocks=" << s.blocks_applied
     << "\n";
  return os.str();
}

std::string mode_name(Mode m) { return m == Mode::Sat ? "sat" : "valid"; }

// Verdict word for an entry: sat/unsat or valid/invalid.
std::string run_entry(const Formula& f, LogicProfile profile, Mode mode) {
  if (mode == Mode::Sat) return decide_sat(f, profile).satisfiable ? "sat" : "unsat";
  return decide_valid(f, profile).valid ? "valid" : "invalid";
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  ok = static_cast<bool>(in);
  if (!ok) return {};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace

std::string default_corpus_path() {
  if (const char* env = std::getenv("DOXA_CORPUS")) return env;
#ifdef DOXA_DEFAULT_CORPUS
  return DOXA_DEFAULT_CORPUS;
#else
  return "data/corpus.jsonl";
#endif
}

std::vector<CorpusEntry> load_corpus(std::istream& in) {
  std::vector<CorpusEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string where = "corpus line " + std::to_string(lineno) + ": ";
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw CorpusError(where + "malformed JSON at byte " + std::to_string(e.byte));
    }
    auto field = [&](const char* key) -> std::string {
      if (!j.is_object() || !j.contains(key) || !j[key].is_string()) {
        throw CorpusError(where + "missing string field \"" + key + "\"");
      }
      return j[key].get<std::string>();
    };
    CorpusEntry e{field("id"), field("formula"), LogicProfile::HStar, Mode::Sat, field("expected"), ""};
    if (j.contains("source")) e.source = field("source");
    auto profile = profile_from_name(field("profile"));
    if (!profile) throw CorpusError(where + "unknown profile \"" + field("profile") + "\"");
    e.profile = *profile;
    const std::string mode = j.contains("mode") ? field("mode") : "sat";
    if (mode != "sat" && mode != "valid") throw CorpusError(where + "mode must be \"sat\" or \"valid\"");
    e.mode = mode == "sat" ? Mode::Sat : Mode::Valid;
    const bool sat_word = e.expected == "sat" || e.expected == "unsat";
    const bool valid_word = e.expected == "valid" || e.expected == "invalid";
    if ((e.mode == Mode::Sat && !sat_word) || (e.mode == Mode::Valid && !valid_word)) {
      throw CorpusError(where + "expected \"" + e.expected + "\" does not fit mode \"" + mode + "\"");
    }
    try {
      parse(e.formula);
    } catch (const ParseError& err) {
      throw CorpusError(where + "formula does not parse: " + err.what());
    }
    out.push_back(std::move(e));
  }
  return out;
}

Result decide(std::string_view text, LogicProfile profile, Mode mode, const Style& style) {
  Result r;
  auto f = parse_or_report(text, r);
  if (!f) return r;
  try {
    ordered_json doc;
    std::ostringstream os;
    bool positive = false;
    if (mode == Mode::Sat) {
      Verdict v = decide_sat(*f, profile);
      positive = v.satisfiable;
      doc = verdict_to_json(v);
      os << profile_name(profile) << ": " << verdict_word(style, positive, positive ? "SAT" : "UNSAT") << "  "
         << render(*f) << "\n";
      os << (positive ? describe_model(*v.model) : render_trace(v.trace, TraceFormat::Text));
      os << describe_stats(v.stats);
    } else {
      ValidityVerdict v = decide_valid(*f, profile);
      positive = v.valid;
      doc = verdict_to_json(v);
      os << profile_name(profile) << ": " << verdict_word(style, positive, positive ? "VALID" : "INVALID") << "  "
         << render(*f) << "\n";
      if (positive) {
        os << "refutation of the negation:\n" << render_trace(v.trace, TraceFormat::Text);
      } else {
        os << describe_model(*v.countermodel);
      }
      os << describe_stats(v.stats);
    }
    r.exit_code = positive ? 0 : 1;
    r.out = style.output == Output::Json ? doc.dump() + "\n" : os.str();
  } catch (const VerificationError& e) {
    return Result{2, "", std::string("error: ") + e.what() + "\n"};
  }
  return r;
}

Result check_model(const std::string& path, const std::optional<std::string>& formula, LogicProfile profile,
                   const Style& style) {
  Result r;
  std::optional<Formula> f;
  if (formula) {
    f = parse_or_report(*formula, r);
    if (!f) return r;
  }
  bool readable = false;
  const std::string text = read_file(path, readable);
  if (!readable) return usage_error("cannot read model file '" + path + "'");
  std::optional<LoadedModel> loaded;
  try {
    loaded = load_model(text);
  } catch (const ModelFormatError& e) {
    return usage_error(path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    return usage_error(path + ": " + e.what());
  }

  const ModelSystem model = f ? loaded->model.with_agents(agents(*f)) : loaded->model;
  const auto frame = check_frame(model, profile);
  std::vector<Violation> labels;
  if (loaded->labeled) labels = check_model_set(*loaded->labeled, profile);
  std::optional<bool> value;
  if (f) value = evaluate(model, model.designated(), *f);

  const bool clean = frame.empty() && labels.empty();
  r.exit_code = clean ? 0 : 1;
  if (style.output == Output::Json) {
    ordered_json doc;
    doc["profile"] = profile_name(profile);
    doc["frame_violations"] = ordered_json::array();
    for (const auto& v : frame) doc["frame_violations"].push_back(violation_to_json(v));
    doc["label_violations"] = ordered_json::array();
    for (const auto& v : labels) doc["label_violations"].push_back(violation_to_json(v));
    doc["formula"] = f ? ordered_json(render(*f)) : ordered_json(nullptr);
    doc["value"] = value ? ordered_json(*value) : ordered_json(nullptr);
    r.out = doc.dump() + "\n";
    return r;
  }
  std::ostringstream os;
  auto list = [&](const char* what, const std::vector<Violation>& vs) {
    if (vs.empty()) {
      os << what << ": " << paint(style, "ok", "32") << "\n";
      return;
    }
    os << what << ": " << paint(style, std::to_string(vs.size()) + " violation(s)", "31") << "\n";
    for (const auto& v : vs) os << "  [" << v.kind << "] " << v.message << "\n";
  };
  list(("frame (" + std::string(profile_name(profile)) + ")").c_str(), frame);
  if (loaded->labeled) list("model sets", labels);
  if (f) os << render(*f) << " at w" << model.designated() << ": " << (*value ? "true" : "false") << "\n";
  r.out = os.str();
  return r;
}

Result corpus(const std::optional<std::string>& path, const Style& style) {
  const std::string file = path.value_or(default_corpus_path());
  std::ifstream in(file);
  if (!in) return usage_error("cannot read corpus file '" + file + "'");
  std::vector<CorpusEntry> entries;
  try {
    entries = load_corpus(in);
  } catch (const CorpusError& e) {
    return usage_error(file + ": " + e.what());
  }

  std::vector<std::future<std::string>> jobs;
  for (const auto& e : entries) {
    jobs.push_back(std::async(std::launch::async, [&e] {
      try {
        return run_entry(parse(e.formula), e.profile, e.mode);
      } catch (const std::exception& ex) {
        return std::string("error: ") + ex.what();
      }
    }));
  }
  std::vector<std::string> actual;
  for (auto& j : jobs) actual.push_back(j.get());

  std::size_t passed = 0;
  ordered_json rows = ordered_json::array();
  std::ostringstream os;
  os << std::left << std::setw(16) << "id" << std::setw(10) << "profile" << std::setw(7) << "mode" << std::setw(10)
     << "expected" << std::setw(10) << "actual" << "result\n";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const bool ok = actual[i] == e.expected;
    passed += ok;
    ordered_json row;
    row["id"] = e.id;
    row["formula"] = e.formula;
    row["profile"] = profile_name(e.profile);
    row["mode"] = mode_name(e.mode);
    row["expected"] = e.expected;
    row["actual"] = actual[i];
    row["pass"] = ok;
    row["source"] = e.source;
    rows.push_back(std::move(row));
    os << std::setw(16) << e.id << std::setw(10) << profile_name(e.profile) << std::setw(7) << mode_name(e.mode)
       << std::setw(10) << e.expected << std::setw(10) << actual[i]
       << (ok ? paint(style, "PASS", "32") : paint(style, "FAIL", "31")) << "\n";
  }
  const std::size_t failed = entries.size() - passed;
  os << "passed " << passed << ", failed " << failed << "\n";

  Result r;
  r.exit_code = failed == 0 ? 0 : 1;
  if (style.output == Output::Json) {
    ordered_json doc;
    doc["passed"] = passed;
    doc["failed"] = failed;
    doc["rows"] = std::move(rows);
    r.out = doc.dump() + "\n";
  } else {
    r.out = os.str();
  }
  return r;
}

Result compare(std::string_view text, const std::vector<LogicProfile>& profiles, const Style& style) {
  Result r;
  auto f = parse_or_report(text, r);
  if (!f) return r;
  if (profiles.empty()) return usage_error("no profiles to compare");
  std::vector<bool> sat;
  try {
    for (auto p : profiles) sat.push_back(decide_sat(*f, p).satisfiable);
  } catch (const VerificationError& e) {
    return Result{2, "", std::string("error: ") + e.what() + "\n"};
  }
  ordered_json disagreements = ordered_json::array();
  std::ostringstream os;
  os << render(*f) << "\n";
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    os << "  " << std::left << std::setw(10) << profile_name(profiles[i])
       << verdict_word(style, sat[i], sat[i] ? "SAT" : "UNSAT") << "\n";
    for (std::size_t j = i + 1; j < profiles.size(); ++j) {
      if (sat[i] != sat[j]) disagreements.push_back({profile_name(profiles[i]), profile_name(profiles[j])});
    }
  }
  if (disagreements.empty()) {
    os << "all profiles agree\n";
  } else {
    os << paint(style, "disagreement:", "33");
    for (const auto& d : disagreements) os << " " << d[0].get<std::string>() << "/" << d[1].get<std::string>();
    os << "\n";
  }
  if (style.output == Output::Json) {
    ordered_json doc;
    doc["formula"] = render(*f);
    doc["results"] = ordered_json::array();
    for (std::size_t i = 0; i < profiles.size(); ++i) {
      doc["results"].push_back({{"profile", profile_name(profiles[i])}, {"verdict", sat[i] ? "sat" : "unsat"}});
    }
    doc["disagreements"] = std::move(disagreements);
    r.out = doc.dump() + "\n";
  } else {
    r.out = os.str();
  }
  r.exit_code = 0;
  return r;
}

Result oracle(std::string_view text, LogicProfile profile, std::size_t max_worlds, const Style& style) {
  Result r;
  auto f = parse_or_report(text, r);
  if (!f) return r;
  std::optional<ModelSystem> found;
  try {
    found = sat_upto(*f, budget_for(*f, max_worlds), profile);
  } catch (const BudgetError& e) {
    return usage_error(e.what());
  }
  const std::string caveat = "not-found does not mean unsatisfiable; the search is bounded";
  if (style.output == Output::Json) {
    ordered_json doc;
    doc["result"] = found ? "found" : "not-found";
    doc["max_worlds"] = max_worlds;
    if (found) {
      doc["model"] = model_to_json(*found);
    } else {
      doc["note"] = caveat;
    }
    r.out = doc.dump() + "\n";
  } else if (found) {
    r.out = paint(style, "found", "32") + " (" + std::string(profile_name(profile)) + ")\n" +
            model_to_json(*found).dump() + "\n";
  } else {
    r.out = paint(style, "not-found", "31") + " up to " + std::to_string(max_worlds) + " worlds (" +
            std::string(profile_name(profile)) + "); " + caveat + "\n";
  }
  r.exit_code = found ? 0 : 1;
  return r;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool tty) {
  CLI::App app{"doxa: belief-logic satisfiability, validity and countermodels"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string profile_text = "hstar";
  std::string output_text = "text";
  app.add_option("--profile", profile_text, "hstar | hintikka | kd | kd45")->capture_default_str();
  app.add_option("--output", output_text, "text | json")->capture_default_str();

  std::string formula;
  std::string mode_text = "sat";
  auto* decide_cmd = app.add_subcommand("decide", "decide satisfiability or validity of a formula");
  decide_cmd->add_option("--mode", mode_text, "sat | valid")->capture_default_str();
  decide_cmd->add_option("formula", formula, "formula text")->required();

  std::string model_path;
  std::optional<std::string> check_formula;
  auto* check_cmd = app.add_subcommand("check-model", "check a model file against a profile");
  check_cmd->add_option("model", model_path, "ModelSystem JSON file")->required();
  check_cmd->add_option("formula", check_formula, "formula to evaluate at the designated world");

  std::optional<std::string> corpus_path;
  auto* corpus_cmd = app.add_subcommand("corpus", "run a verdict corpus (default: bundled corpus)");
  corpus_cmd->add_option("file", corpus_path, "JSON-lines corpus file");

  std::string profiles_text = "hstar,hintikka,kd,kd45";
  auto* compare_cmd = app.add_subcommand("compare", "decide one formula under several profiles");
  compare_cmd->add_option("--profiles", profiles_text, "comma-separated profile names")->capture_default_str();
  compare_cmd->add_option("formula", formula, "formula text")->required();

  std::size_t max_worlds = 4;
  auto* oracle_cmd = app.add_subcommand("oracle", "search small models exhaustively");
  oracle_cmd->add_option("--max-worlds", max_worlds, "largest model size to enumerate")->capture_default_str();
  oracle_cmd->add_option("formula", formula, "formula text")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  auto profile = profile_from_name(profile_text);
  if (!profile) {
    err << "error: unknown profile '" << profile_text << "' (expected hstar, hintikka, kd or kd45)\n";
    return 2;
  }
  Style style;
  if (output_text == "json") {
    style.output = Output::Json;
  } else if (output_text != "text") {
    err << "error: unknown output format '" << output_text << "' (expected text or json)\n";
    return 2;
  }
  const char* color_env = std::getenv("DOXA_COLOR");
  style.color = tty && style.output == Output::Text && !(color_env && std::string_view(color_env) == "0");

  Result r;
  if (decide_cmd->parsed()) {
    if (mode_text != "sat" && mode_text != "valid") {
      err << "error: unknown mode '" << mode_text << "' (expected sat or valid)\n";
      return 2;
    }
    r = decide(formula, *profile, mode_text == "sat" ? Mode::Sat : Mode::Valid, style);
  } else if (check_cmd->parsed()) {
    r = check_model(model_path, check_formula, *profile, style);
  } else if (corpus_cmd->parsed()) {
    r = corpus(corpus_path, style);
  } else if (compare_cmd->parsed()) {
    std::vector<LogicProfile> profiles;
    std::stringstream ss(profiles_text);
    for (std::string name; std::getline(ss, name, ',');) {
      auto p = profile_from_name(name);
      if (!p) {
        err << "error: unknown profile '" << name << "'\n";
        return 2;
      }
      profiles.push_back(*p);
    }
    r = compare(formula, profiles, style);
  } else if (oracle_cmd->parsed()) {
    r = oracle(formula, *profile, max_worlds, style);
  }
  out << r.out;
  err << r.err;
  return r.exit_code;
}

} // namespace doxa::cli

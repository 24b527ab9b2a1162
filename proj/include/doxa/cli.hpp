// Command-line front end. Each command returns its exit code and output rather than writing
// to the process streams, so it can be driven in-process.
//
// Exit codes: 0 success (SAT, VALID, no violations, all corpus rows pass, oracle found),
// 1 negative outcome (UNSAT, INVALID, violations, failed rows, oracle not-found),
// 2 usage, parse, or input errors.

#ifndef DOXA_CLI_HPP
#define DOXA_CLI_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "doxa/kripke.hpp"

namespace doxa::cli {

enum class Output { Text, Json };
enum class Mode { Sat, Valid };

struct Result {
  int exit_code = 0;
  std::string out;
  std::string err;
};

struct Style {
  Output output = Output::Text;
  bool color = false;
};

struct CorpusEntry {
  std::string id;
  std::string formula;
  LogicProfile profile;
  Mode mode;
  std::string expected;  // sat | unsat | valid | invalid
  std::string source;
};

class CorpusError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// One JSON object per line; blank lines and lines starting with '#' are skipped.
std::vector<CorpusEntry> load_corpus(std::istream& in);

std::string default_corpus_path();

Result decide(std::string_view formula, LogicProfile profile, Mode mode, const Style& style);
Result check_model(const std::string& model_path, const std::optional<std::string>& formula,
                   LogicProfile profile, const Style& style);
Result corpus(const std::optional<std::string>& path, const Style& style);
Result compare(std::string_view formula, const std::vector<LogicProfile>& profiles, const Style& style);
Result oracle(std::string_view formula, LogicProfile profile, std::size_t max_worlds, const Style& style);

// Parses argv and dispatches. Color is enabled when `tty` is set and DOXA_COLOR is not "0".
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool tty = false);

} // namespace doxa::cli

#endif

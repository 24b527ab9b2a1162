// Concrete syntax: B[a] / C[a] prefix operators, ~, &, |, -> and <->.
//
// Precedence, tightest first: ~ B[.] C[.] (prefix), &, |, -> (right-assoc), <-> (right-assoc).
// & and | associate to the left.

#ifndef DOXA_SYNTAX_HPP
#define DOXA_SYNTAX_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "doxa/formula.hpp"

namespace doxa {

// Half-open range of character (code point) offsets into the parsed text.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

class ParseError : public std::runtime_error {
public:
  ParseError(SourceSpan span, const std::string& message)
      : std::runtime_error(message), span_(span) {}

  SourceSpan span() const noexcept { return span_; }

private:
  SourceSpan span_;
};

Formula parse(std::string_view text);

// Minimally parenthesized text; parse(render(f)) == f.
std::string render(const Formula& f);

// Two-line "text / caret" excerpt pointing at a span, for error reports.
std::string caret_excerpt(std::string_view text, SourceSpan span);

} // namespace doxa

#endif

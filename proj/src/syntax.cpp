#include "doxa/syntax.hpp"

#include <optional>
#include <vector>

namespace doxa {

namespace {

enum class Tok { Tilde, Amp, Bar, Arrow, DArrow, LParen, RParen, LBracket, RBracket, Ident, Bel, Comp, Unknown, End };

struct Token {
  Tok kind;
  std::size_t begin;  // byte offsets
  std::size_t end;
  std::string_view text;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_ident_char(char c) { return is_lower(c) || (c >= '0' && c <= '9') || c == '_'; }

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto push = [&](Tok k, std::size_t len) {
    out.push_back({k, i, i + len, s.substr(i, len)});
    i += len;
  };
  while (i < s.size()) {
    char c = s[i];
    if (is_space(c)) { ++i; continue; }
    switch (c) {
      case '~': push(Tok::Tilde, 1); continue;
      case '&': push(Tok::Amp, 1); continue;
      case '|': push(Tok::Bar, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      case '[': push(Tok::LBracket, 1); continue;
      case ']': push(Tok::RBracket, 1); continue;
      case 'B': push(Tok::Bel, 1); continue;
      case 'C': push(Tok::Comp, 1); continue;
      default: break;
    }
    if (s.substr(i, 2) == "->") { push(Tok::Arrow, 2); continue; }
    if (s.substr(i, 3) == "<->") { push(Tok::DArrow, 3); continue; }
    if (is_lower(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && is_ident_char(s[j])) ++j;
      push(Tok::Ident, j - i);
      continue;
    }
    push(Tok::Unknown, std::min(utf8_length(static_cast<unsigned char>(c)), s.size() - i));
  }
  out.push_back({Tok::End, s.size(), s.size(), {}});
  return out;
}

std::size_t char_index(std::string_view s, std::size_t byte) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < byte && i < s.size(); ++i) {
    if ((static_cast<unsigned char>(s[i]) & 0xC0) != 0x80) ++n;
  }
  return n;
}

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text), toks_(tokenize(text)) {}

  Formula run() {
    Formula f = iff();
    const Token& t = peek();
    if (t.kind == Tok::End) return f;
    if (t.kind == Tok::RParen) fail(t.begin, t.end, "unbalanced parenthesis: unmatched ')'");
    if (t.kind == Tok::Unknown) fail(t.begin, t.end, "unknown token '" + std::string(t.text) + "'");
    fail(t.begin, t.end, "unexpected token '" + std::string(t.text) + "'");
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::size_t begin, std::size_t end, const std::string& msg) const {
    throw ParseError({char_index(text_, begin), char_index(text_, end)}, msg);
  }

  Formula iff() {
    Formula l = imp();
    if (peek().kind != Tok::DArrow) return l;
    next();
    return Formula::iff(std::move(l), iff());
  }

  Formula imp() {
    Formula l = disj();
    if (peek().kind != Tok::Arrow) return l;
    next();
    return Formula::implies(std::move(l), imp());
  }

  Formula disj() {
    Formula l = conj();
    while (peek().kind == Tok::Bar) {
      next();
      l = Formula::disj(std::move(l), conj());
    }
    return l;
  }

  Formula conj() {
    Formula l = unary();
    while (peek().kind == Tok::Amp) {
      next();
      l = Formula::conj(std::move(l), unary());
    }
    return l;
  }

  Formula unary() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Tilde:
        return Formula::neg(unary());
      case Tok::Bel:
      case Tok::Comp: {
        Agent a = agent_bracket(t);
        Formula f = unary();
        return t.kind == Tok::Bel ? Formula::bel(std::move(a), std::move(f))
                                  : Formula::comp(std::move(a), std::move(f));
      }
      case Tok::LParen: {
        Formula f = iff();
        const Token& close = peek();
        if (close.kind != Tok::RParen) {
          if (close.kind == Tok::End) fail(t.begin, close.end, "unbalanced parenthesis: missing ')'");
          if (close.kind == Tok::Unknown) fail(close.begin, close.end, "unknown token '" + std::string(close.text) + "'");
          fail(close.begin, close.end, "expected ')' but found '" + std::string(close.text) + "'");
        }
        next();
        return f;
      }
      case Tok::Ident:
        return Formula::atom(std::string(t.text));
      case Tok::End:
        fail(t.begin, t.end, "missing operand at end of input");
      case Tok::RParen:
        fail(t.begin, t.end, "missing operand before ')'");
      case Tok::Amp: case Tok::Bar: case Tok::Arrow: case Tok::DArrow:
        fail(t.begin, t.end, "missing operand before '" + std::string(t.text) + "'");
      case Tok::LBracket: case Tok::RBracket:
        fail(t.begin, t.end, "malformed agent bracket: '" + std::string(t.text) + "' without B or C");
      case Tok::Unknown:
        fail(t.begin, t.end, "unknown token '" + std::string(t.text) + "'");
    }
    fail(t.begin, t.end, "unexpected token");
  }

  // Consumes "[agent]" after a B or C token.
  Agent agent_bracket(const Token& op) {
    const Token& open = peek();
    if (open.kind != Tok::LBracket) {
      fail(op.begin, op.end, "malformed agent bracket: expected '[' after '" + std::string(op.text) + "'");
    }
    next();
    const Token& name = peek();
    if (name.kind != Tok::Ident) {
      fail(open.begin, name.kind == Tok::End ? open.end : name.end, "malformed agent bracket: expected agent name");
    }
    next();
    const Token& close = peek();
    if (close.kind != Tok::RBracket) {
      fail(open.begin, name.end, "malformed agent bracket: missing ']'");
    }
    next();
    return Agent(std::string(name.text));
  }

  std::string_view text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

constexpr int kIff = 1, kImp = 2, kOr = 3, kAnd = 4, kUnary = 5;

int precedence(const Formula& f) {
  switch (f.op()) {
    case Op::Iff: return kIff;
    case Op::Implies: return kImp;
    case Op::Or: return kOr;
    case Op::And: return kAnd;
    default: return kUnary;
  }
}

void render_into(const Formula& f, int min_prec, std::string& out) {
  const bool paren = precedence(f) < min_prec;
  if (paren) out += '(';
  auto binary = [&](const char* sym, int lp, int rp) {
    render_into(f.sub(), lp, out);
    out += sym;
    render_into(f.right(), rp, out);
  };
  switch (f.op()) {
    case Op::Atom: out += f.atom_name(); break;
    case Op::Not:
      out += '~';
      render_into(f.sub(), kUnary, out);
      break;
    case Op::Bel:
    case Op::Comp:
      out += f.op() == Op::Bel ? "B[" : "C[";
      out += f.agent().name();
      out += ']';
      if (precedence(f.sub()) == kUnary) out += ' ';
      render_into(f.sub(), kUnary, out);
      break;
    case Op::And: binary(" & ", kAnd, kUnary); break;
    case Op::Or: binary(" | ", kOr, kAnd); break;
    case Op::Implies: binary(" -> ", kOr, kImp); break;
    case Op::Iff: binary(" <-> ", kImp, kIff); break;
  }
  if (paren) out += ')';
}

} // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

std::string render(const Formula& f) {
  std::string out;
  render_into(f, kIff, out);
  return out;
}

std::string caret_excerpt(std::string_view text, SourceSpan span) {
  std::string line;
  for (char c : text) line += (c == '\n' || c == '\t') ? ' ' : c;
  std::string marker(span.start, ' ');
  marker.append(std::max<std::size_t>(1, span.end - span.start), '^');
  return "  " + line + "\n  " + marker;
}

} // namespace doxa

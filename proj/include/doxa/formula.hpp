// Abstract syntax for the multimodal belief language.

#ifndef DOXA_FORMULA_HPP
#define DOXA_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace doxa {

// An individual whose beliefs an operator ranges over. Names match [a-z][a-z0-9_]*.
class Agent {
public:
  explicit Agent(std::string name);

  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const Agent&, const Agent&) = default;
  friend std::strong_ordering operator<=>(const Agent&, const Agent&) = default;

private:
  std::string name_;
};

// True iff `s` is a lowercase identifier usable as an atom or agent name.
bool is_identifier(std::string_view s) noexcept;

enum class Op : unsigned char { Atom, Not, And, Or, Implies, Iff, Bel, Comp };

// Immutable formula tree. Copies share structure; equality and ordering are structural.
class Formula {
public:
  static Formula atom(std::string name);
  static Formula neg(Formula f);
  static Formula conj(Formula l, Formula r);
  static Formula disj(Formula l, Formula r);
  static Formula implies(Formula l, Formula r);
  static Formula iff(Formula l, Formula r);
  static Formula bel(Agent a, Formula f);
  static Formula comp(Agent a, Formula f);

  Op op() const noexcept;

  // Atom only.
  const std::string& atom_name() const;
  // Bel / Comp only.
  const Agent& agent() const;
  // Not / Bel / Comp: the operand. Binary connectives: the left side.
  const Formula& sub() const;
  // Binary connectives only.
  const Formula& right() const;

  bool is_binary() const noexcept;
  bool is_modal() const noexcept { return op() == Op::Bel || op() == Op::Comp; }

  std::size_t node_count() const noexcept;
  std::size_t depth() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Not(g) for g, g for Not(g). Used for clash detection.
Formula complement(const Formula& f);

// Rewrites ->, <-> and C[a] into the Atom/Not/And/Or/Bel fragment.
Formula desugar(const Formula& f);
bool is_desugared(const Formula& f) noexcept;

std::set<Agent> agents(const Formula& f);
std::set<std::string> atoms(const Formula& f);

// All subformulas of a desugared formula together with their single negations.
std::set<Formula> subformula_closure(const Formula& f);

} // namespace doxa

#endif

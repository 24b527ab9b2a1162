#include "doxa/formula.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace doxa {

bool is_identifier(std::string_view s) noexcept {
  if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

Agent::Agent(std::string name) : name_(std::move(name)) {
  if (!is_identifier(name_)) throw std::invalid_argument("invalid agent name '" + name_ + "'");
}

struct Formula::Node {
  Op op;
  std::string name;
  std::optional<Agent> agent;
  std::optional<Formula> left;
  std::optional<Formula> right;
  std::size_t nodes = 1;
  std::size_t depth = 0;
};

Formula Formula::atom(std::string name) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid atom name '" + name + "'");
  auto n = std::make_shared<Node>();
  n->op = Op::Atom;
  n->name = std::move(name);
  return Formula(std::move(n));
}

Formula Formula::neg(Formula f) {
  auto n = std::make_shared<Node>();
  n->op = Op::Not;
  n->nodes = 1 + f.node_count();
  n->depth = 1 + f.depth();
  n->left = std::move(f);
  return Formula(std::move(n));
}

namespace {

template <class Node>
std::shared_ptr<Node> binary_node(Op op, Formula l, Formula r) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->nodes = 1 + l.node_count() + r.node_count();
  n->depth = 1 + std::max(l.depth(), r.depth());
  n->left = std::move(l);
  n->right = std::move(r);
  return n;
}

template <class Node>
std::shared_ptr<Node> modal_node(Op op, Agent a, Formula f) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->nodes = 1 + f.node_count();
  n->depth = 1 + f.depth();
  n->agent = std::move(a);
  n->left = std::move(f);
  return n;
}

} // namespace

Formula Formula::conj(Formula l, Formula r) { return Formula(binary_node<Node>(Op::And, std::move(l), std::move(r))); }
Formula Formula::disj(Formula l, Formula r) { return Formula(binary_node<Node>(Op::Or, std::move(l), std::move(r))); }
Formula Formula::implies(Formula l, Formula r) { return Formula(binary_node<Node>(Op::Implies, std::move(l), std::move(r))); }
Formula Formula::iff(Formula l, Formula r) { return Formula(binary_node<Node>(Op::Iff, std::move(l), std::move(r))); }
Formula Formula::bel(Agent a, Formula f) { return Formula(modal_node<Node>(Op::Bel, std::move(a), std::move(f))); }
Formula Formula::comp(Agent a, Formula f) { return Formula(modal_node<Node>(Op::Comp, std::move(a), std::move(f))); }

Op Formula::op() const noexcept { return node_->op; }

const std::string& Formula::atom_name() const {
  if (node_->op != Op::Atom) throw std::logic_error("atom_name() on non-atom");
  return node_->name;
}

const Agent& Formula::agent() const {
  if (!node_->agent) throw std::logic_error("agent() on non-modal formula");
  return *node_->agent;
}

const Formula& Formula::sub() const {
  if (!node_->left) throw std::logic_error("sub() on atom");
  return *node_->left;
}

const Formula& Formula::right() const {
  if (!node_->right) throw std::logic_error("right() on non-binary formula");
  return *node_->right;
}

bool Formula::is_binary() const noexcept {
  switch (node_->op) {
    case Op::And: case Op::Or: case Op::Implies: case Op::Iff: return true;
    default: return false;
  }
}

std::size_t Formula::node_count() const noexcept { return node_->nodes; }
std::size_t Formula::depth() const noexcept { return node_->depth; }

bool operator==(const Formula& a, const Formula& b) noexcept {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.op <=> y.op; c != 0) return c;
  if (auto c = x.nodes <=> y.nodes; c != 0) return c;
  switch (x.op) {
    case Op::Atom:
      return x.name <=> y.name;
    case Op::Bel: case Op::Comp:
      if (auto c = *x.agent <=> *y.agent; c != 0) return c;
      return *x.left <=> *y.left;
    case Op::Not:
      return *x.left <=> *y.left;
    default:
      if (auto c = *x.left <=> *y.left; c != 0) return c;
      return *x.right <=> *y.right;
  }
}

Formula complement(const Formula& f) {
  return f.op() == Op::Not ? f.sub() : Formula::neg(f);
}

Formula desugar(const Formula& f) {
  switch (f.op()) {
    case Op::Atom:
      return f;
    case Op::Not:
      return Formula::neg(desugar(f.sub()));
    case Op::And:
      return Formula::conj(desugar(f.sub()), desugar(f.right()));
    case Op::Or:
      return Formula::disj(desugar(f.sub()), desugar(f.right()));
    case Op::Implies:
      return Formula::disj(Formula::neg(desugar(f.sub())), desugar(f.right()));
    case Op::Iff: {
      auto l = desugar(f.sub());
      auto r = desugar(f.right());
      return Formula::conj(Formula::disj(Formula::neg(l), r), Formula::disj(Formula::neg(r), l));
    }
    case Op::Bel:
      return Formula::bel(f.agent(), desugar(f.sub()));
    case Op::Comp:
      return Formula::neg(Formula::bel(f.agent(), Formula::neg(desugar(f.sub()))));
  }
  throw std::logic_error("unreachable");
}

bool is_desugared(const Formula& f) noexcept {
  switch (f.op()) {
    case Op::Atom: return true;
    case Op::Not: case Op::Bel: return is_desugared(f.sub());
    case Op::And: case Op::Or: return is_desugared(f.sub()) && is_desugared(f.right());
    default: return false;
  }
}

namespace {

void collect_agents(const Formula& f, std::set<Agent>& out) {
  if (f.is_modal()) out.insert(f.agent());
  if (f.op() == Op::Atom) return;
  collect_agents(f.sub(), out);
  if (f.is_binary()) collect_agents(f.right(), out);
}

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  if (f.op() == Op::Atom) {
    out.insert(f.atom_name());
    return;
  }
  collect_atoms(f.sub(), out);
  if (f.is_binary()) collect_atoms(f.right(), out);
}

void collect_subformulas(const Formula& f, std::set<Formula>& out) {
  if (!out.insert(f).second) return;
  if (f.op() == Op::Atom) return;
  collect_subformulas(f.sub(), out);
  if (f.is_binary()) collect_subformulas(f.right(), out);
}

} // namespace

std::set<Agent> agents(const Formula& f) {
  std::set<Agent> out;
  collect_agents(f, out);
  return out;
}

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::set<Formula> subformula_closure(const Formula& f) {
  std::set<Formula> subs;
  collect_subformulas(f, subs);
  std::set<Formula> out = subs;
  for (const auto& g : subs) out.insert(Formula::neg(g));
  return out;
}

} // namespace doxa

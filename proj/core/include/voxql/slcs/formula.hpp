#pragma once

#include <array>
#include <memory>
#include <set>
#include <string>

namespace voxql::slcs {

enum class FormulaKind {
  True,
  Atom,
  Not,
  And,
  // s satisfies ForwardReach(target, corridor) iff some path s, s1, ..., sn
  // (n >= 0, each step inside the closure of the previous singleton) ends in
  // target with s1..s(n-1) inside corridor.
  ForwardReach,
  // Mirror image: a path s0, ..., s(n-1), s starting in source.
  BackwardReach,
  // Closure of the operand's denotation.
  Near,
};

struct FormulaNode;

// Immutable SLCS syntax tree. Copies share structure.
class Formula {
 public:
  // Empty handle; only valid as an unused operand slot.
  Formula() = default;

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string name);
  static Formula negation(Formula f);
  static Formula conjunction(Formula f, Formula g);
  static Formula disjunction(Formula f, Formula g);
  static Formula implication(Formula f, Formula g);
  static Formula forward_reach(Formula target, Formula corridor);
  static Formula backward_reach(Formula source, Formula corridor);
  static Formula near(Formula f);
  static Formula interior(Formula f);

  FormulaKind kind() const;
  const std::string& atom_name() const;
  const Formula& operand(std::size_t i) const;
  std::size_t arity() const;

  std::size_t depth() const;
  std::set<std::string> atoms() const;

  // Canonical fully-parenthesized rendering; equal strings mean equal trees.
  std::string to_string() const;

  const FormulaNode* identity() const noexcept { return node_.get(); }
  explicit operator bool() const noexcept { return node_ != nullptr; }

 private:
  explicit Formula(std::shared_ptr<const FormulaNode> node) : node_(std::move(node)) {}

  static Formula make(FormulaKind kind, std::string atom, Formula a, Formula b);

  std::shared_ptr<const FormulaNode> node_;
};

struct FormulaNode {
  FormulaKind kind;
  std::string atom;
  std::array<Formula, 2> operands;
};

inline FormulaKind Formula::kind() const { return node_->kind; }
inline const std::string& Formula::atom_name() const { return node_->atom; }
inline const Formula& Formula::operand(std::size_t i) const { return node_->operands[i]; }

}  // namespace voxql::slcs

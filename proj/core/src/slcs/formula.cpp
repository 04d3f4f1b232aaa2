#include "voxql/slcs/formula.hpp"

#include <algorithm>

#include "voxql/error.hpp"

namespace voxql::slcs {

namespace {
std::string quote(const std::string& name) {
  std::string out = "'";
  for (char c : name) {
    if (c == '\'' || c == '\\') out += '\\';
    out += c;
  }
  return out + "'";
}
}  // namespace

Formula Formula::make(FormulaKind kind, std::string atom, Formula a, Formula b) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{kind, std::move(atom), {std::move(a), std::move(b)}}));
}

Formula Formula::truth() { return make(FormulaKind::True, {}, {}, {}); }

Formula Formula::falsity() { return negation(truth()); }

Formula Formula::atom(std::string name) {
  if (name.empty()) throw InvalidInput("atom names must be nonempty");
  return make(FormulaKind::Atom, std::move(name), {}, {});
}

Formula Formula::negation(Formula f) { return make(FormulaKind::Not, {}, std::move(f), {}); }

Formula Formula::conjunction(Formula f, Formula g) {
  return make(FormulaKind::And, {}, std::move(f), std::move(g));
}

Formula Formula::disjunction(Formula f, Formula g) {
  return negation(conjunction(negation(std::move(f)), negation(std::move(g))));
}

Formula Formula::implication(Formula f, Formula g) { return disjunction(negation(std::move(f)), std::move(g)); }

Formula Formula::forward_reach(Formula target, Formula corridor) {
  return make(FormulaKind::ForwardReach, {}, std::move(target), std::move(corridor));
}

Formula Formula::backward_reach(Formula source, Formula corridor) {
  return make(FormulaKind::BackwardReach, {}, std::move(source), std::move(corridor));
}

Formula Formula::near(Formula f) { return make(FormulaKind::Near, {}, std::move(f), {}); }

Formula Formula::interior(Formula f) { return negation(near(negation(std::move(f)))); }

std::size_t Formula::arity() const {
  switch (kind()) {
    case FormulaKind::True:
    case FormulaKind::Atom:
      return 0;
    case FormulaKind::Not:
    case FormulaKind::Near:
      return 1;
    case FormulaKind::And:
    case FormulaKind::ForwardReach:
    case FormulaKind::BackwardReach:
      return 2;
  }
  return 0;
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (std::size_t i = 0; i < arity(); ++i) d = std::max(d, operand(i).depth());
  return d + 1;
}

std::set<std::string> Formula::atoms() const {
  std::set<std::string> out;
  if (kind() == FormulaKind::Atom) out.insert(atom_name());
  for (std::size_t i = 0; i < arity(); ++i) out.merge(operand(i).atoms());
  return out;
}

std::string Formula::to_string() const {
  switch (kind()) {
    case FormulaKind::True:
      return "true";
    case FormulaKind::Atom:
      return quote(atom_name());
    case FormulaKind::Not:
      return "!" + operand(0).to_string();
    case FormulaKind::And:
      return "(" + operand(0).to_string() + " & " + operand(1).to_string() + ")";
    case FormulaKind::ForwardReach:
      return "fwd(" + operand(0).to_string() + ")[" + operand(1).to_string() + "]";
    case FormulaKind::BackwardReach:
      return "bwd(" + operand(0).to_string() + ")[" + operand(1).to_string() + "]";
    case FormulaKind::Near:
      return "near(" + operand(0).to_string() + ")";
  }
  return {};
}

}  // namespace voxql::slcs

#include "voxql/lang/ast.hpp"

#include <algorithm>
#include <string_view>

namespace voxql::lang {

std::string Diagnostic::to_string() const {
  const char* label = severity == Severity::Error ? "error" : severity == Severity::Warning ? "warning" : "note";
  return std::to_string(line) + ":" + std::to_string(column) + ": " + label + ": " + message;
}

Diagnostic error_at(SourcePos pos, std::string message) {
  return {Diagnostic::Severity::Error, std::move(message), pos.line, pos.column};
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Diagnostic::Severity::Error; });
}

const char* spelling(CompareOp op) {
  switch (op) {
    case CompareOp::Gt:
      return ">";
    case CompareOp::Ge:
      return ">=";
    case CompareOp::Lt:
      return "<";
    case CompareOp::Le:
      return "<=";
  }
  return "?";
}

namespace {
ExprPtr node(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

Expr blank(Expr::Kind kind, SourcePos pos) {
  Expr e;
  e.kind = kind;
  e.pos = pos;
  return e;
}
}  // namespace

ExprPtr Expr::boolean(bool value, SourcePos pos) {
  Expr e = blank(Kind::Bool, pos);
  e.flag = value;
  return node(std::move(e));
}

ExprPtr Expr::numeral(double value, std::string spelling, SourcePos pos) {
  Expr e = blank(Kind::Number, pos);
  e.number = value;
  e.text = std::move(spelling);
  return node(std::move(e));
}

ExprPtr Expr::ident(std::string name, SourcePos pos) {
  Expr e = blank(Kind::Ident, pos);
  e.text = std::move(name);
  return node(std::move(e));
}

ExprPtr Expr::call(std::string name, std::vector<ExprPtr> args, SourcePos pos) {
  Expr e = blank(Kind::Call, pos);
  e.text = std::move(name);
  e.args = std::move(args);
  return node(std::move(e));
}

ExprPtr Expr::negation(ExprPtr operand, SourcePos pos) {
  Expr e = blank(Kind::Not, pos);
  e.args = {std::move(operand)};
  return node(std::move(e));
}

ExprPtr Expr::conjunction(ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  Expr e = blank(Kind::And, pos);
  e.args = {std::move(lhs), std::move(rhs)};
  return node(std::move(e));
}

ExprPtr Expr::disjunction(ExprPtr lhs, ExprPtr rhs, SourcePos pos) {
  Expr e = blank(Kind::Or, pos);
  e.args = {std::move(lhs), std::move(rhs)};
  return node(std::move(e));
}

ExprPtr Expr::compare(ExprPtr lhs, CompareOp op, double value, std::string spelling, SourcePos pos) {
  Expr e = blank(Kind::Compare, pos);
  e.op = op;
  e.number = value;
  e.text = std::move(spelling);
  e.args = {std::move(lhs)};
  return node(std::move(e));
}

bool same_expr(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.args.size() != b.args.size()) return false;
  switch (a.kind) {
    case Expr::Kind::Bool:
      if (a.flag != b.flag) return false;
      break;
    case Expr::Kind::Number:
      if (a.number != b.number) return false;
      break;
    case Expr::Kind::Ident:
    case Expr::Kind::Call:
      if (a.text != b.text) return false;
      break;
    case Expr::Kind::Compare:
      if (a.op != b.op || a.number != b.number) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!same_expr(*a.args[i], *b.args[i])) return false;
  return true;
}

bool is_builtin(std::string_view name) { return builtin_arity(name) >= 0; }

int builtin_arity(std::string_view name) {
  if (name == "through" || name == "reachedBy" || name == "dice") return 2;
  if (name == "near" || name == "interior" || name == "volume") return 1;
  return -1;
}

bool is_keyword(std::string_view word) {
  return word == "import" || word == "load" || word == "let" || word == "save" || word == "print" || word == "tt" ||
         word == "ff";
}

}  // namespace voxql::lang

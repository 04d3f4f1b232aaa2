#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace voxql::lang {

struct SourcePos {
  int line = 1;
  int column = 1;
  friend bool operator==(const SourcePos&, const SourcePos&) = default;
};

struct Diagnostic {
  enum class Severity { Error, Warning, Note };

  Severity severity = Severity::Error;
  std::string message;
  int line = 1;
  int column = 1;

  // "line:col: error: message"
  std::string to_string() const;
};

Diagnostic error_at(SourcePos pos, std::string message);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

enum class CompareOp { Gt, Ge, Lt, Le };
const char* spelling(CompareOp op);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Expression node. Builtins and macro applications are both Calls; after
// expansion only builtin Calls and Load identifiers remain.
struct Expr {
  enum class Kind { Bool, Number, Ident, Call, Not, And, Or, Compare };

  Kind kind = Kind::Bool;
  SourcePos pos;
  bool flag = false;              // Bool
  double number = 0.0;            // Number, Compare threshold
  std::string text;               // Ident/Call name, Number/Compare literal spelling
  CompareOp op = CompareOp::Gt;   // Compare
  std::vector<ExprPtr> args;      // Call arguments, unary/binary operands

  static ExprPtr boolean(bool value, SourcePos pos = {});
  static ExprPtr numeral(double value, std::string spelling, SourcePos pos = {});
  static ExprPtr ident(std::string name, SourcePos pos = {});
  static ExprPtr call(std::string name, std::vector<ExprPtr> args, SourcePos pos = {});
  static ExprPtr negation(ExprPtr operand, SourcePos pos = {});
  static ExprPtr conjunction(ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
  static ExprPtr disjunction(ExprPtr lhs, ExprPtr rhs, SourcePos pos = {});
  static ExprPtr compare(ExprPtr lhs, CompareOp op, double value, std::string spelling, SourcePos pos = {});
};

// Structural equality, ignoring source positions.
bool same_expr(const Expr& a, const Expr& b);

struct ImportStmt {
  std::string path;
};
struct LoadStmt {
  std::string name;
  std::string path;
};
struct LetStmt {
  std::string name;
  std::vector<std::string> params;
  ExprPtr body;
};
struct SaveStmt {
  std::string label;
  ExprPtr expr;
};
struct PrintStmt {
  std::string label;
  ExprPtr expr;
};

struct Statement {
  SourcePos pos;
  std::variant<ImportStmt, LoadStmt, LetStmt, SaveStmt, PrintStmt> node;
};

struct Script {
  std::vector<Statement> statements;
};

// Either a value or the diagnostics explaining why there is none.
template <typename T>
struct Checked {
  std::optional<T> value;
  std::vector<Diagnostic> diagnostics;

  bool ok() const noexcept { return value.has_value(); }
};

// Names with fixed meaning in expressions.
inline constexpr const char* kBuiltins[] = {"through", "reachedBy", "near", "interior", "dice", "volume"};
bool is_builtin(std::string_view name);
// Arity of a builtin, or -1.
int builtin_arity(std::string_view name);
bool is_keyword(std::string_view word);

}  // namespace voxql::lang

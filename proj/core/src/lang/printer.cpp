#include <sstream>

#include "voxql/lang/parser.hpp"

namespace voxql::lang {

namespace {

// Binding strength; higher binds tighter.
int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Or:
      return 1;
    case Expr::Kind::And:
      return 2;
    case Expr::Kind::Not:
      return 3;
    case Expr::Kind::Compare:
      return 4;
    default:
      return 5;
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void emit(std::ostream& os, const Expr& e, int context);

void emit_operand(std::ostream& os, const Expr& e, int min_prec) {
  if (precedence(e) < min_prec) {
    os << '(';
    emit(os, e, 0);
    os << ')';
  } else {
    emit(os, e, min_prec);
  }
}

void emit(std::ostream& os, const Expr& e, int) {
  switch (e.kind) {
    case Expr::Kind::Bool:
      os << (e.flag ? "tt" : "ff");
      break;
    case Expr::Kind::Number:
      os << e.text;
      break;
    case Expr::Kind::Ident:
      os << e.text;
      break;
    case Expr::Kind::Call:
      os << e.text << '(';
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i) os << ", ";
        emit(os, *e.args[i], 0);
      }
      os << ')';
      break;
    case Expr::Kind::Not:
      os << '!';
      emit_operand(os, *e.args[0], 3);
      break;
    case Expr::Kind::And:
      // Left-associative: the right operand needs parens at equal precedence.
      emit_operand(os, *e.args[0], 2);
      os << " & ";
      emit_operand(os, *e.args[1], 3);
      break;
    case Expr::Kind::Or:
      emit_operand(os, *e.args[0], 1);
      os << " | ";
      emit_operand(os, *e.args[1], 2);
      break;
    case Expr::Kind::Compare:
      emit_operand(os, *e.args[0], 5);
      os << ' ' << spelling(e.op) << ' ' << e.text;
      break;
  }
}

}  // namespace

std::string print_expr(const Expr& e) {
  std::ostringstream os;
  emit(os, e, 0);
  return os.str();
}

std::string print_script(const Script& script) {
  std::ostringstream os;
  for (const auto& st : script.statements) {
    std::visit(
        [&](const auto& node) {
          using T = std::decay_t<decltype(node)>;
          if constexpr (std::is_same_v<T, ImportStmt>) {
            os << "import " << quote(node.path);
          } else if constexpr (std::is_same_v<T, LoadStmt>) {
            os << "load " << node.name << " = " << quote(node.path);
          } else if constexpr (std::is_same_v<T, LetStmt>) {
            os << "let " << node.name;
            if (!node.params.empty()) {
              os << '(';
              for (std::size_t i = 0; i < node.params.size(); ++i) os << (i ? ", " : "") << node.params[i];
              os << ')';
            }
            os << " = " << print_expr(*node.body);
          } else if constexpr (std::is_same_v<T, SaveStmt>) {
            os << "save " << quote(node.label) << ' ' << print_expr(*node.expr);
          } else {
            os << "print " << quote(node.label) << ' ' << print_expr(*node.expr);
          }
        },
        st.node);
    os << '\n';
  }
  return os.str();
}

}  // namespace voxql::lang

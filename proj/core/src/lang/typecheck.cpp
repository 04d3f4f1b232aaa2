#include "voxql/lang/typecheck.hpp"

#include <set>
#include <string>

namespace voxql::lang {

const char* to_string(Sort s) {
  switch (s) {
    case Sort::ScalarImage:
      return "scalar image";
    case Sort::BoolImage:
      return "boolean image";
    case Sort::Number:
      return "number";
  }
  return "?";
}

namespace {

class Typer {
 public:
  explicit Typer(std::vector<Diagnostic>& out) : out_(out) {}

  std::set<std::string> loads;

  // nullopt once an error below has been reported, to avoid cascades.
  std::optional<Sort> sort_of(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::Bool:
        return Sort::BoolImage;
      case Expr::Kind::Number:
        return Sort::Number;
      case Expr::Kind::Ident:
        if (loads.contains(e.text)) return Sort::ScalarImage;
        return report(e.pos, "unknown identifier '" + e.text + "'");
      case Expr::Kind::Compare: {
        auto s = sort_of(*e.args[0]);
        if (!s) return std::nullopt;
        if (*s != Sort::ScalarImage)
          return report(e.pos, std::string("comparison '") + spelling(e.op) + "' requires a scalar image, got a " +
                                   to_string(*s));
        return Sort::BoolImage;
      }
      case Expr::Kind::Not:
      case Expr::Kind::And:
      case Expr::Kind::Or: {
        const char* op = e.kind == Expr::Kind::Not ? "!" : e.kind == Expr::Kind::And ? "&" : "|";
        return booleans(e, op);
      }
      case Expr::Kind::Call: {
        if (builtin_arity(e.text) < 0) return report(e.pos, "unknown function '" + e.text + "'");
        if (static_cast<int>(e.args.size()) != builtin_arity(e.text))
          return report(e.pos, "arity mismatch for '" + e.text + "'");
        auto result = booleans(e, e.text);
        if (!result) return std::nullopt;
        return (e.text == "dice" || e.text == "volume") ? Sort::Number : Sort::BoolImage;
      }
    }
    return std::nullopt;
  }

 private:
  std::optional<Sort> booleans(const Expr& e, const std::string& op) {
    bool ok = true;
    for (const auto& a : e.args) {
      auto s = sort_of(*a);
      if (!s) {
        ok = false;
        continue;
      }
      if (*s != Sort::BoolImage) {
        std::string hint = *s == Sort::ScalarImage ? " (compare it with a threshold, e.g. x > 0)" : "";
        report(a->pos, "'" + op + "' requires a boolean image, got a " + to_string(*s) + hint);
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return Sort::BoolImage;
  }

  std::optional<Sort> report(SourcePos pos, std::string message) {
    out_.push_back(error_at(pos, std::move(message)));
    return std::nullopt;
  }

  std::vector<Diagnostic>& out_;
};

}  // namespace

std::vector<Diagnostic> typecheck(const Script& script) {
  std::vector<Diagnostic> out;
  Typer typer(out);
  for (const auto& st : script.statements) {
    if (auto* load = std::get_if<LoadStmt>(&st.node)) {
      typer.loads.insert(load->name);
    } else if (auto* save = std::get_if<SaveStmt>(&st.node)) {
      auto s = typer.sort_of(*save->expr);
      if (s && *s != Sort::BoolImage)
        out.push_back(error_at(save->expr->pos, std::string("save requires a boolean image, got a ") + to_string(*s)));
    } else if (auto* print = std::get_if<PrintStmt>(&st.node)) {
      auto s = typer.sort_of(*print->expr);
      if (s && *s != Sort::Number)
        out.push_back(error_at(print->expr->pos, std::string("print requires a number, got a ") + to_string(*s)));
    } else if (std::holds_alternative<LetStmt>(st.node) || std::holds_alternative<ImportStmt>(st.node)) {
      out.push_back(error_at(st.pos, "typecheck expects an expanded script"));
    }
  }
  return out;
}

}  // namespace voxql::lang

#include "voxql/lang/expand.hpp"

#include <map>
#include <set>
#include <vector>

#include "voxql/lang/parser.hpp"

namespace voxql::lang {

namespace {

struct ExpandError {
  Diagnostic diagnostic;
};

[[noreturn]] void fail(SourcePos pos, std::string message) { throw ExpandError{error_at(pos, std::move(message))}; }

class Expander {
 public:
  explicit Expander(const ImportResolver& resolver) : resolver_(resolver) {}

  Checked<Script> run(const Script& script) {
    std::vector<Statement> flat;
    std::vector<std::string> stack;
    try {
      flatten(script, flat, stack);
    } catch (const ExpandError& e) {
      return {std::nullopt, {e.diagnostic}};
    }

    // Pass 1: declarations.
    for (const auto& st : flat) {
      if (auto* load = std::get_if<LoadStmt>(&st.node)) {
        declare(load->name, st.pos);
        loads_.insert(load->name);
      } else if (auto* let = std::get_if<LetStmt>(&st.node)) {
        declare(let->name, st.pos);
        std::set<std::string> seen;
        for (const auto& p : let->params)
          if (!seen.insert(p).second)
            diagnostics_.push_back(error_at(st.pos, "duplicate parameter '" + p + "' in let '" + let->name + "'"));
        lets_.emplace(let->name, let);
      }
    }

    // Pass 2: substitute in commands.
    Script out;
    std::set<std::string> labels;
    for (const auto& st : flat) {
      if (std::holds_alternative<LoadStmt>(st.node)) {
        out.statements.push_back(st);
        continue;
      }
      const auto* save = std::get_if<SaveStmt>(&st.node);
      const auto* print = std::get_if<PrintStmt>(&st.node);
      if (!save && !print) continue;
      const std::string& label = save ? save->label : print->label;
      if (!labels.insert(label).second) diagnostics_.push_back(error_at(st.pos, "duplicate label \"" + label + "\""));
      try {
        std::vector<std::string> active;
        ExprPtr body = substitute(save ? *save->expr : *print->expr, {}, active, 0);
        Statement copy = st;
        if (save)
          copy.node = SaveStmt{label, std::move(body)};
        else
          copy.node = PrintStmt{label, std::move(body)};
        out.statements.push_back(std::move(copy));
      } catch (const ExpandError& e) {
        diagnostics_.push_back(e.diagnostic);
      }
    }
    if (has_errors(diagnostics_)) return {std::nullopt, std::move(diagnostics_)};
    return {std::move(out), std::move(diagnostics_)};
  }

 private:
  void flatten(const Script& script, std::vector<Statement>& out, std::vector<std::string>& stack) {
    for (const auto& st : script.statements) {
      const auto* imp = std::get_if<ImportStmt>(&st.node);
      if (!imp) {
        out.push_back(st);
        continue;
      }
      for (const auto& open : stack)
        if (open == imp->path) fail(st.pos, "import cycle through \"" + imp->path + "\"");
      if (imported_.contains(imp->path)) continue;
      std::optional<std::string> text = resolver_ ? resolver_(imp->path) : std::nullopt;
      if (!text) fail(st.pos, "missing import file \"" + imp->path + "\"");
      Checked<Script> parsed = parse(*text);
      if (!parsed.ok()) {
        const Diagnostic& first = parsed.diagnostics.front();
        fail(st.pos, "in import \"" + imp->path + "\" at " + std::to_string(first.line) + ":" +
                         std::to_string(first.column) + ": " + first.message);
      }
      stack.push_back(imp->path);
      flatten(*parsed.value, out, stack);
      stack.pop_back();
      imported_.insert(imp->path);
    }
  }

  void declare(const std::string& name, SourcePos pos) {
    if (is_builtin(name)) {
      diagnostics_.push_back(error_at(pos, "'" + name + "' is a builtin and cannot be redefined"));
      return;
    }
    if (!declared_.insert(name).second) diagnostics_.push_back(error_at(pos, "duplicate definition of '" + name + "'"));
  }

  using Env = std::map<std::string, ExprPtr>;

  ExprPtr substitute(const Expr& e, const Env& env, std::vector<std::string>& active, int depth) {
    if (depth > kMaxExpansionDepth) fail(e.pos, "expansion deeper than " + std::to_string(kMaxExpansionDepth));
    if (++nodes_ > kMaxExpandedNodes) fail(e.pos, "expanded script exceeds " + std::to_string(kMaxExpandedNodes) + " nodes");
    switch (e.kind) {
      case Expr::Kind::Bool:
      case Expr::Kind::Number:
        return std::make_shared<const Expr>(e);
      case Expr::Kind::Ident:
        if (auto it = env.find(e.text); it != env.end()) return it->second;
        if (loads_.contains(e.text)) return std::make_shared<const Expr>(e);
        if (is_builtin(e.text))
          fail(e.pos, "builtin '" + e.text + "' expects " + std::to_string(builtin_arity(e.text)) + " argument(s)");
        return apply(e, {}, active, depth);
      case Expr::Kind::Call: {
        std::vector<ExprPtr> args;
        for (const auto& a : e.args) args.push_back(substitute(*a, env, active, depth));
        if (env.contains(e.text) || loads_.contains(e.text)) fail(e.pos, "'" + e.text + "' is not a function");
        if (is_builtin(e.text)) {
          const int arity = builtin_arity(e.text);
          if (static_cast<int>(args.size()) != arity)
            fail(e.pos, "arity mismatch: '" + e.text + "' expects " + std::to_string(arity) + " argument(s), got " +
                            std::to_string(args.size()));
          return Expr::call(e.text, std::move(args), e.pos);
        }
        return apply(e, std::move(args), active, depth);
      }
      default: {
        Expr copy = e;
        for (auto& a : copy.args) a = substitute(*a, env, active, depth);
        return std::make_shared<const Expr>(std::move(copy));
      }
    }
  }

  // Expands a use of a let. Arguments are already expanded; the body only
  // binds its own parameters, so substitution cannot capture.
  ExprPtr apply(const Expr& use, std::vector<ExprPtr> args, std::vector<std::string>& active, int depth) {
    auto it = lets_.find(use.text);
    if (it == lets_.end()) fail(use.pos, "unknown identifier '" + use.text + "'");
    const LetStmt& let = *it->second;
    for (const auto& name : active)
      if (name == let.name) fail(use.pos, "recursive let '" + let.name + "'");
    if (args.size() != let.params.size())
      fail(use.pos, "arity mismatch: '" + let.name + "' expects " + std::to_string(let.params.size()) +
                        " argument(s), got " + std::to_string(args.size()));
    Env env;
    for (std::size_t i = 0; i < args.size(); ++i) env[let.params[i]] = std::move(args[i]);
    active.push_back(let.name);
    ExprPtr body = substitute(*let.body, env, active, depth + 1);
    active.pop_back();
    return body;
  }

  static constexpr std::size_t kMaxExpandedNodes = 1'000'000;

  const ImportResolver& resolver_;
  std::size_t nodes_ = 0;
  std::set<std::string> imported_;
  std::set<std::string> declared_;
  std::set<std::string> loads_;
  std::map<std::string, const LetStmt*> lets_;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace

Checked<Script> expand(const Script& script, const ImportResolver& resolver) {
  return Expander(resolver).run(script);
}

}  // namespace voxql::lang

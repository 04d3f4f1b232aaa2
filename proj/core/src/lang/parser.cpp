#include <charconv>

#include "voxql/lang/parser.hpp"

namespace voxql::lang {

namespace {

constexpr int kMaxNesting = 200;

struct ParseError {
  Diagnostic diagnostic;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Checked<Script> run() {
    Script script;
    for (const auto& t : tokens_)
      if (t.kind == TokenKind::Invalid) diagnostics_.push_back(error_at(t.pos, t.text));
    if (!diagnostics_.empty()) return {std::nullopt, std::move(diagnostics_)};

    while (cur().kind != TokenKind::End) {
      try {
        script.statements.push_back(statement());
      } catch (const ParseError& e) {
        diagnostics_.push_back(e.diagnostic);
        synchronize();
      }
    }
    if (!diagnostics_.empty()) return {std::nullopt, std::move(diagnostics_)};
    return {std::move(script), {}};
  }

 private:
  const Token& cur() const { return tokens_[index_]; }
  const Token& take() {
    const Token& t = tokens_[index_];
    if (t.kind != TokenKind::End) ++index_;
    return t;
  }

  bool at_symbol(std::string_view s) const { return cur().kind == TokenKind::Symbol && cur().text == s; }
  bool at_word(std::string_view w) const { return cur().kind == TokenKind::Ident && cur().text == w; }

  [[noreturn]] void fail(const Token& at, std::string message) const {
    throw ParseError{error_at(at.pos, std::move(message))};
  }

  static std::string describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::End:
        return "end of input";
      case TokenKind::String:
        return "string \"" + t.text + "\"";
      case TokenKind::Number:
        return "number " + t.text;
      default:
        return "'" + t.text + "'";
    }
  }

  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail(cur(), "expected '" + std::string(s) + "' but found " + describe(cur()));
    take();
  }

  std::string expect_string(std::string_view what) {
    if (cur().kind != TokenKind::String)
      fail(cur(), "expected quoted " + std::string(what) + " but found " + describe(cur()));
    return take().text;
  }

  std::string expect_name(std::string_view what) {
    if (cur().kind != TokenKind::Ident) fail(cur(), "expected " + std::string(what) + " but found " + describe(cur()));
    if (is_keyword(cur().text)) fail(cur(), "'" + cur().text + "' is a reserved word");
    return take().text;
  }

  void synchronize() {
    if (cur().kind != TokenKind::End) take();
    while (cur().kind != TokenKind::End) {
      if (at_word("import") || at_word("load") || at_word("let") || at_word("save") || at_word("print")) return;
      take();
    }
  }

  Statement statement() {
    const Token& head = cur();
    Statement st{head.pos, ImportStmt{}};
    if (at_word("import")) {
      take();
      st.node = ImportStmt{expect_string("import path")};
    } else if (at_word("load")) {
      take();
      LoadStmt load;
      load.name = expect_name("layer name");
      expect_symbol("=");
      load.path = expect_string("file path");
      st.node = std::move(load);
    } else if (at_word("let")) {
      take();
      LetStmt let;
      let.name = expect_name("macro name");
      if (at_symbol("(")) {
        take();
        let.params.push_back(expect_name("parameter name"));
        while (at_symbol(",")) {
          take();
          let.params.push_back(expect_name("parameter name"));
        }
        expect_symbol(")");
      }
      expect_symbol("=");
      let.body = expression();
      st.node = std::move(let);
    } else if (at_word("save")) {
      take();
      SaveStmt save;
      save.label = expect_string("save label");
      save.expr = expression();
      st.node = std::move(save);
    } else if (at_word("print")) {
      take();
      PrintStmt print;
      print.label = expect_string("print label");
      print.expr = expression();
      st.node = std::move(print);
    } else {
      fail(head, "expected a statement (import, load, let, save, print) but found " + describe(head));
    }
    return st;
  }

  struct Nest {
    explicit Nest(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) parser.fail(parser.cur(), "expression nested too deeply");
    }
    ~Nest() { --parser.depth_; }
    Parser& parser;
  };

  ExprPtr expression() {
    Nest nest(*this);
    ExprPtr lhs = conjunction();
    while (at_symbol("|")) {
      const SourcePos pos = take().pos;
      lhs = Expr::disjunction(lhs, conjunction(), pos);
    }
    return lhs;
  }

  ExprPtr conjunction() {
    ExprPtr lhs = negation();
    while (at_symbol("&")) {
      const SourcePos pos = take().pos;
      lhs = Expr::conjunction(lhs, negation(), pos);
    }
    return lhs;
  }

  ExprPtr negation() {
    Nest nest(*this);
    if (at_symbol("!")) {
      const SourcePos pos = take().pos;
      return Expr::negation(negation(), pos);
    }
    return comparison();
  }

  ExprPtr comparison() {
    ExprPtr lhs = primary();
    static constexpr std::pair<std::string_view, CompareOp> kOps[] = {
        {">", CompareOp::Gt}, {">=", CompareOp::Ge}, {"<", CompareOp::Lt}, {"<=", CompareOp::Le}};
    for (auto [sym, op] : kOps) {
      if (!at_symbol(sym)) continue;
      const SourcePos pos = take().pos;
      if (cur().kind != TokenKind::Number) fail(cur(), "expected a number after '" + std::string(sym) + "'");
      const Token& num = take();
      return Expr::compare(lhs, op, to_number(num), num.text, pos);
    }
    return lhs;
  }

  ExprPtr primary() {
    const Token& t = cur();
    if (t.kind == TokenKind::Number) {
      take();
      return Expr::numeral(to_number(t), t.text, t.pos);
    }
    if (at_symbol("(")) {
      take();
      ExprPtr inner = expression();
      expect_symbol(")");
      return inner;
    }
    if (t.kind == TokenKind::Ident) {
      if (t.text == "tt" || t.text == "ff") {
        take();
        return Expr::boolean(t.text == "tt", t.pos);
      }
      if (is_keyword(t.text)) fail(t, "'" + t.text + "' is a reserved word");
      take();
      if (!at_symbol("(")) return Expr::ident(t.text, t.pos);
      take();
      std::vector<ExprPtr> args;
      args.push_back(expression());
      while (at_symbol(",")) {
        take();
        args.push_back(expression());
      }
      expect_symbol(")");
      return Expr::call(t.text, std::move(args), t.pos);
    }
    fail(t, "expected an expression but found " + describe(t));
  }

  double to_number(const Token& t) const {
    double value = 0.0;
    const char* first = t.text.data();
    const char* last = first + t.text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) fail(t, "number '" + t.text + "' out of range");
    return value;
  }

  std::vector<Token> tokens_;
  std::size_t index_ = 0;
  int depth_ = 0;
  std::vector<Diagnostic> diagnostics_;
};

}  // namespace

Checked<Script> parse(std::string_view text) { return Parser(tokenize(text)).run(); }

}  // namespace voxql::lang

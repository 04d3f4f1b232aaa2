#include <gtest/gtest.h>

#include <random>

#include "voxql/lang/parser.hpp"

namespace {

using namespace voxql::lang;

Script parse_ok(std::string_view text) {
  auto r = parse(text);
  EXPECT_TRUE(r.ok()) << (r.diagnostics.empty() ? "" : r.diagnostics.front().to_string());
  return r.ok() ? *r.value : Script{};
}

TEST(Parse, LoadAndSaveNear) {
  const auto s = parse_ok("load t1 = \"t1.nii.gz\"\nsave \"out\" near(t1 > 100)\n");
  ASSERT_EQ(s.statements.size(), 2u);
  const auto& load = std::get<LoadStmt>(s.statements[0].node);
  EXPECT_EQ(load.name, "t1");
  EXPECT_EQ(load.path, "t1.nii.gz");
  const auto& save = std::get<SaveStmt>(s.statements[1].node);
  EXPECT_EQ(save.label, "out");
  const auto expect = Expr::call("near", {Expr::compare(Expr::ident("t1"), CompareOp::Gt, 100, "100")});
  EXPECT_TRUE(same_expr(*save.expr, *expect));
  EXPECT_EQ(s.statements[1].pos.line, 2);
}

TEST(Parse, ParameterizedLet) {
  const auto s = parse_ok("let tumor(x) = x > 0.5\nprint \"d\" dice(tumor(a), tumor(b))\n");
  const auto& let = std::get<LetStmt>(s.statements[0].node);
  EXPECT_EQ(let.name, "tumor");
  EXPECT_EQ(let.params, (std::vector<std::string>{"x"}));
  const auto& print = std::get<PrintStmt>(s.statements[1].node);
  EXPECT_EQ(print.expr->kind, Expr::Kind::Call);
  EXPECT_EQ(print.expr->text, "dice");
  EXPECT_EQ(print.expr->args.size(), 2u);
}

TEST(Parse, UnquotedLabelIsDiagnosedAtToken) {
  const auto r = parse("save out t1");
  ASSERT_FALSE(r.ok());
  ASSERT_FALSE(r.diagnostics.empty());
  EXPECT_EQ(r.diagnostics[0].line, 1);
  EXPECT_EQ(r.diagnostics[0].column, 6);
}

TEST(Parse, PrecedenceAndComments) {
  const auto s = parse_ok("// header\nsave \"x\" !a & b | c // trailing\n");
  const auto& e = *std::get<SaveStmt>(s.statements[0].node).expr;
  const auto expect = Expr::disjunction(Expr::conjunction(Expr::negation(Expr::ident("a")), Expr::ident("b")),
                                        Expr::ident("c"));
  EXPECT_TRUE(same_expr(e, *expect));
}

TEST(Parse, ReportsPositionsForErrors) {
  for (const char* bad : {"save \"x\" (a", "load = \"p\"", "let f( = a", "print \"d\" a >", "save \"unterminated",
                          "import", "save \"x\" a > b", "@", "let f(x,) = x"}) {
    const auto r = parse(bad);
    EXPECT_FALSE(r.ok()) << bad;
    EXPECT_FALSE(r.diagnostics.empty()) << bad;
  }
}

TEST(Parse, NeverBothValueAndErrors) {
  EXPECT_TRUE(parse("").ok());
  EXPECT_TRUE(parse("").diagnostics.empty());
  const auto r = parse("save \"x\" a\nsave y\nsave \"z\" (");
  EXPECT_FALSE(r.value.has_value());
  EXPECT_GE(r.diagnostics.size(), 2u);  // recovers at statement keywords
}

TEST(Parse, TotalOnArbitraryBytes) {
  std::mt19937_64 rng(99);
  const std::string alphabet = "saveloadprint\"()!&|<>=,.0123456789 \n\t/\\tfx_\x01\xff";
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    const std::size_t len = rng() % 60;
    for (std::size_t i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    const auto r = parse(text);
    EXPECT_NE(r.ok(), !r.diagnostics.empty());
  }
}

TEST(Parse, DeepNestingIsDiagnosedNotCrashing) {
  const std::string deep = "save \"x\" " + std::string(100000, '(') + "a" + std::string(100000, ')');
  EXPECT_FALSE(parse(deep).ok());
  const std::string bangs = "save \"x\" " + std::string(100000, '!') + "a";
  EXPECT_FALSE(parse(bangs).ok());
}

TEST(Print, RoundTripStable) {
  const char* scripts[] = {
      "load t1 = \"t1.nii.gz\"\nsave \"out\" near(t1 > 100)\n",
      "let f(x, y) = !(x | y) & (x & !y)\nsave \"s\" f(a > 1, b <= -2.5)\n",
      "import \"lib.imgql\"\nprint \"v\" volume(through(a >= 1, b < 2) | reachedBy(tt, !ff))\n",
      "save \"q\" (a | b) & c\nsave \"w\" !(a & b)\nprint \"n\" 3\n",
  };
  for (const char* text : scripts) {
    const auto once = print_script(parse_ok(text));
    const auto twice = print_script(parse_ok(once));
    EXPECT_EQ(once, twice);
  }
}

TEST(Tokenize, StringsAndNumbers) {
  const auto toks = tokenize("\"a\\\"b\" -1.5 >= x");
  ASSERT_EQ(toks.size(), 5u);
  EXPECT_EQ(toks[0].kind, TokenKind::String);
  EXPECT_EQ(toks[0].text, "a\"b");
  EXPECT_EQ(toks[1].kind, TokenKind::Number);
  EXPECT_EQ(toks[1].text, "-1.5");
  EXPECT_EQ(toks[2].text, ">=");
  EXPECT_EQ(toks[4].kind, TokenKind::End);
  EXPECT_EQ(tokenize("\"x\ny\"")[0].kind, TokenKind::Invalid);
}

}  // namespace

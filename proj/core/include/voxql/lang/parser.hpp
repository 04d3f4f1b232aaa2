#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "voxql/lang/ast.hpp"

namespace voxql::lang {

enum class TokenKind { Ident, String, Number, Symbol, End, Invalid };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;  // identifier, decoded string, number spelling, or symbol
  SourcePos pos;
};

// Splits text into tokens; comments and whitespace are dropped. Lexical
// errors are returned as Invalid tokens carrying the message in text.
std::vector<Token> tokenize(std::string_view text);

// Grammar:
//   script := stmt*
//   stmt   := 'import' STRING | 'load' IDENT '=' STRING
//           | 'let' IDENT ['(' IDENT (',' IDENT)* ')'] '=' expr
//           | 'save' STRING expr | 'print' STRING expr
//   expr   := and ('|' and)*
//   and    := not ('&' not)*
//   not    := '!' not | cmp
//   cmp    := prim [('>'|'>='|'<'|'<=') NUMBER]
//   prim   := 'tt' | 'ff' | NUMBER | IDENT ['(' expr (',' expr)* ')'] | '(' expr ')'
// Never throws; any byte string yields either a script or diagnostics.
Checked<Script> parse(std::string_view text);

// Canonical source form. parse(print(s)) reproduces s up to positions.
std::string print_script(const Script& script);
std::string print_expr(const Expr& e);

}  // namespace voxql::lang

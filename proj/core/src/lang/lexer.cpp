#include <cctype>

#include "voxql/lang/parser.hpp"

namespace voxql::lang {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_blank();
      if (at_end()) {
        out.push_back({TokenKind::End, {}, pos_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek(std::size_t ahead = 0) const { return i_ + ahead < text_.size() ? text_[i_ + ahead] : '\0'; }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  void skip_blank() {
    while (!at_end()) {
      const char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        while (!at_end() && peek() != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token next() {
    const SourcePos start = pos_;
    const char c = peek();
    if (ident_start(c)) {
      std::string word;
      while (!at_end() && ident_char(peek())) {
        word += peek();
        advance();
      }
      return {TokenKind::Ident, std::move(word), start};
    }
    if (digit(c) || (c == '-' && digit(peek(1))) || (c == '.' && digit(peek(1)))) return number(start);
    if (c == '"') return string(start);
    if (c == '>' || c == '<') {
      std::string sym(1, c);
      advance();
      if (peek() == '=') {
        sym += '=';
        advance();
      }
      return {TokenKind::Symbol, std::move(sym), start};
    }
    if (c == '=' || c == '(' || c == ')' || c == ',' || c == '|' || c == '&' || c == '!') {
      advance();
      return {TokenKind::Symbol, std::string(1, c), start};
    }
    advance();
    const auto byte = static_cast<unsigned char>(c);
    std::string shown = std::isprint(byte) ? std::string("'") + c + "'" : "byte 0x" + hex(byte);
    return {TokenKind::Invalid, "unexpected character " + shown, start};
  }

  Token number(SourcePos start) {
    std::string spelling;
    if (peek() == '-') {
      spelling += '-';
      advance();
    }
    while (digit(peek())) {
      spelling += peek();
      advance();
    }
    if (peek() == '.') {
      spelling += '.';
      advance();
      if (!digit(peek())) return {TokenKind::Invalid, "malformed number '" + spelling + "'", start};
      while (digit(peek())) {
        spelling += peek();
        advance();
      }
    }
    if (ident_char(peek())) return {TokenKind::Invalid, "malformed number '" + spelling + peek() + "'", start};
    return {TokenKind::Number, std::move(spelling), start};
  }

  Token string(SourcePos start) {
    advance();  // opening quote
    std::string value;
    while (true) {
      if (at_end() || peek() == '\n') return {TokenKind::Invalid, "unterminated string literal", start};
      const char c = peek();
      advance();
      if (c == '"') break;
      if (c == '\\') {
        if (at_end()) return {TokenKind::Invalid, "unterminated string literal", start};
        const char escaped = peek();
        if (escaped != '"' && escaped != '\\')
          return {TokenKind::Invalid, std::string("unknown escape '\\") + escaped + "'", start};
        value += escaped;
        advance();
        continue;
      }
      value += c;
    }
    return {TokenKind::String, std::move(value), start};
  }

  static std::string hex(unsigned char b) {
    static constexpr char digits[] = "0123456789abcdef";
    return {digits[b >> 4], digits[b & 15]};
  }

  std::string_view text_;
  std::size_t i_ = 0;
  SourcePos pos_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace voxql::lang

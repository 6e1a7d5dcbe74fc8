#include "pct/speclang/lexer.hpp"

#include <cctype>
#include <cstdio>

#include "pct/speclang/diagnostics.hpp"

namespace pct::speclang {

std::string Diagnostic::format() const {
  static constexpr const char* kinds[] = {"lexical", "syntax", "resolution", "semantic"};
  return std::to_string(span.begin.line) + ":" + std::to_string(span.begin.column) + ": " +
         kinds[static_cast<int>(kind)] + " error: " + message;
}

SpecError::SpecError(Diagnostic diag) : Error(Errc::parse, diag.format()), diag_(std::move(diag)) {}

std::string_view spelling(TokenKind kind) {
  switch (kind) {
    case TokenKind::identifier: return "identifier";
    case TokenKind::number: return "number";
    case TokenKind::semicolon: return "';'";
    case TokenKind::colon: return "':'";
    case TokenKind::comma: return "','";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::lbracket: return "'['";
    case TokenKind::rbracket: return "']'";
    case TokenKind::assign: return "'='";
    case TokenKind::equal: return "'=='";
    case TokenKind::not_equal: return "'!='";
    case TokenKind::end: return "end of input";
  }
  return "?";
}

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_blank();
      const Location begin = here();
      if (pos_ >= text_.size()) {
        out.push_back({TokenKind::end, "", {begin, begin}});
        return out;
      }
      const char c = text_[pos_];
      if (is_ident_start(c)) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && is_ident_char(text_[pos_])) advance();
        out.push_back({TokenKind::identifier, std::string(text_.substr(start, pos_ - start)), {begin, here()}});
      } else if (is_digit(c)) {
        out.push_back(number(begin));
      } else {
        out.push_back(punct(begin));
      }
    }
  }

 private:
  Location here() const { return {line_, column_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(Location at, const std::string& msg) const {
    throw SpecError({DiagKind::lexical, {at, at}, msg});
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
      } else if (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  void digits() {
    while (pos_ < text_.size() && is_digit(text_[pos_])) advance();
  }

  Token number(Location begin) {
    const std::size_t start = pos_;
    digits();
    if (pos_ + 1 < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.') && is_digit(text_[pos_ + 1])) {
      advance();
      digits();
    } else if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) {
      fail(here(), "malformed number");
    }
    if (pos_ < text_.size() && is_ident_start(text_[pos_])) fail(here(), "malformed number");
    return {TokenKind::number, std::string(text_.substr(start, pos_ - start)), {begin, here()}};
  }

  Token punct(Location begin) {
    const char c = text_[pos_];
    auto single = [&](TokenKind k) {
      advance();
      return Token{k, std::string(1, c), {begin, here()}};
    };
    switch (c) {
      case ';': return single(TokenKind::semicolon);
      case ':': return single(TokenKind::colon);
      case ',': return single(TokenKind::comma);
      case '(': return single(TokenKind::lparen);
      case ')': return single(TokenKind::rparen);
      case '{': return single(TokenKind::lbrace);
      case '}': return single(TokenKind::rbrace);
      case '[': return single(TokenKind::lbracket);
      case ']': return single(TokenKind::rbracket);
      case '=':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          return {TokenKind::equal, "==", {begin, here()}};
        }
        return {TokenKind::assign, "=", {begin, here()}};
      case '!':
        advance();
        if (pos_ < text_.size() && text_[pos_] == '=') {
          advance();
          return {TokenKind::not_equal, "!=", {begin, here()}};
        }
        fail(begin, "expected '!='");
      default:
        break;
    }
    const auto byte = static_cast<unsigned char>(c);
    if (byte >= 0x80 || !std::isprint(byte)) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "0x%02X", byte);
      fail(begin, std::string("unexpected byte ") + buf);
    }
    fail(begin, std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) { return Lexer(text).run(); }

}  // namespace pct::speclang

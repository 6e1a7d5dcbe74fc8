#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pct/speclang/ast.hpp"

namespace pct::speclang {

enum class TokenKind {
  identifier,
  number,      // 12, 1/10, 0.25
  semicolon,
  colon,
  comma,
  lparen,
  rparen,
  lbrace,
  rbrace,
  lbracket,
  rbracket,
  assign,      // =
  equal,       // ==
  not_equal,   // !=
  end,
};

struct Token {
  TokenKind kind;
  std::string text;
  Span span;
};

std::string_view spelling(TokenKind kind);

/// Splits the whole input; throws SpecError (lexical) on the first bad character.
std::vector<Token> tokenize(std::string_view text);

}  // namespace pct::speclang

// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_SYNTAX_LEXER_H
#define EHAP_SYNTAX_LEXER_H

#include "ehap/syntax/ast.h"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ehap::syntax {

enum class TokenKind : std::uint8_t {
  Identifier,
  Keyword,
  IntLiteral,
  FloatLiteral,
  CharLiteral,
  StringLiteral,
  Punct,
  Eof,
};

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string text;
  std::size_t offset = 0;
  int line = 1;
  int column = 1;
  /// Index into LexedSource::comments of the doc comment immediately
  /// preceding this token, or -1.
  int doc_comment = -1;

  bool is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool is_punct(std::string_view t) const { return is(TokenKind::Punct, t); }
  bool is_keyword(std::string_view t) const { return is(TokenKind::Keyword, t); }
};

struct LexedComment {
  Comment comment;
  std::size_t offset = 0;
};

struct LexedSource {
  std::vector<Token> tokens; // always terminated by an Eof token
  std::vector<LexedComment> comments;
};

class LexError : public std::runtime_error {
public:
  LexError(SourcePosition pos, const std::string &msg)
      : std::runtime_error(msg), position(std::move(pos)) {}
  SourcePosition position;
};

/// Tokenizes `text`. A leading UTF-8 byte-order mark is skipped. Every `>`
/// is emitted as its own token so that nested generic closers need no
/// re-splitting; the parser reassembles shift and comparison operators from
/// adjacent tokens. Columns count bytes.
LexedSource lex(std::string_view text, const std::string &file);

bool is_java_keyword(std::string_view word);

} // namespace ehap::syntax

#endif // EHAP_SYNTAX_LEXER_H

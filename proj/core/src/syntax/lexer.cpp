// SPDX-License-Identifier: Apache-2.0

#include "ehap/syntax/lexer.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace ehap::syntax {
namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
    "true",       "false",        "null",
};

// Longest first so that maximal munch works with a linear scan.
constexpr std::array<std::string_view, 38> kPuncts = {
    "<<=", "...", "::", "->", "++", "--", "&&", "||", "==", "!=", "<=",
    "+=",  "-=",  "*=", "/=", "&=", "|=", "^=", "%=", "<<", "(",  ")",
    "{",   "}",   "[",  "]",  ";",  ",",  ".",  "@",  "=",  "<",  "!",
    "~",   "?",   ":",  "+",  "-",
};
constexpr std::string_view kSinglePuncts = "*/&|^%>";

bool is_ident_start(unsigned char c) {
  return std::isalpha(c) || c == '_' || c == '$' || c >= 0x80;
}
bool is_ident_part(unsigned char c) {
  return std::isalnum(c) || c == '_' || c == '$' || c >= 0x80;
}

class Lexer {
public:
  Lexer(std::string_view text, const std::string &file)
      : text_(text), file_(file) {
    if (text_.starts_with("\xEF\xBB\xBF"))
      text_.remove_prefix(3);
  }

  LexedSource run() {
    LexedSource out;
    int pending_doc = -1;
    while (true) {
      skip_trivia(out, pending_doc);
      if (pos_ >= text_.size())
        break;
      Token tok = next_token();
      tok.doc_comment = pending_doc;
      pending_doc = -1;
      out.tokens.push_back(std::move(tok));
    }
    Token eof;
    eof.kind = TokenKind::Eof;
    eof.offset = pos_;
    eof.line = line_;
    eof.column = column_;
    out.tokens.push_back(eof);
    return out;
  }

private:
  SourcePosition here() const { return {file_, line_, column_}; }

  [[noreturn]] void fail(const std::string &msg) const {
    throw LexError(here(), msg);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip_trivia(LexedSource &out, int &pending_doc) {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f') {
        advance();
      } else if (c == '/' && peek(1) == '/') {
        LexedComment lc{{"", here(), false}, pos_};
        std::size_t start = pos_;
        while (pos_ < text_.size() && peek() != '\n')
          advance();
        lc.comment.text = std::string(text_.substr(start, pos_ - start));
        out.comments.push_back(std::move(lc));
      } else if (c == '/' && peek(1) == '*') {
        LexedComment lc{{"", here(), false}, pos_};
        std::size_t start = pos_;
        bool doc = peek(2) == '*' && peek(3) != '/';
        advance();
        advance();
        while (true) {
          if (pos_ >= text_.size())
            throw LexError(lc.comment.position, "unterminated block comment");
          if (peek() == '*' && peek(1) == '/') {
            advance();
            advance();
            break;
          }
          advance();
        }
        lc.comment.text = std::string(text_.substr(start, pos_ - start));
        lc.comment.is_doc = doc;
        out.comments.push_back(std::move(lc));
        if (doc)
          pending_doc = static_cast<int>(out.comments.size()) - 1;
      } else {
        break;
      }
    }
  }

  Token make(TokenKind kind, std::size_t start, int line, int col) const {
    Token t;
    t.kind = kind;
    t.text = std::string(text_.substr(start, pos_ - start));
    t.offset = start;
    t.line = line;
    t.column = col;
    return t;
  }

  Token next_token() {
    const std::size_t start = pos_;
    const int line = line_, col = column_;
    const auto c = static_cast<unsigned char>(peek());

    if (is_ident_start(c)) {
      while (pos_ < text_.size() && is_ident_part(static_cast<unsigned char>(peek())))
        advance();
      Token t = make(TokenKind::Identifier, start, line, col);
      if (is_java_keyword(t.text))
        t.kind = TokenKind::Keyword;
      return t;
    }
    if (std::isdigit(c) || (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))))
      return number(start, line, col);
    if (c == '"') {
      if (peek(1) == '"' && peek(2) == '"')
        fail("text blocks are not supported");
      quoted('"');
      return make(TokenKind::StringLiteral, start, line, col);
    }
    if (c == '\'') {
      quoted('\'');
      return make(TokenKind::CharLiteral, start, line, col);
    }
    for (std::string_view p : kPuncts) {
      if (text_.substr(pos_).starts_with(p)) {
        for (std::size_t i = 0; i < p.size(); ++i)
          advance();
        return make(TokenKind::Punct, start, line, col);
      }
    }
    if (kSinglePuncts.find(static_cast<char>(c)) != std::string_view::npos) {
      advance();
      return make(TokenKind::Punct, start, line, col);
    }
    fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
  }

  Token number(std::size_t start, int line, int col) {
    bool floating = false;
    auto digits = [&](auto pred) {
      while (pos_ < text_.size() &&
             (pred(static_cast<unsigned char>(peek())) || peek() == '_'))
        advance();
    };
    auto dec = [](unsigned char ch) { return std::isdigit(ch) != 0; };
    if (peek() == '0' && (peek(1) == 'x' || peek(1) == 'X')) {
      advance();
      advance();
      digits([](unsigned char ch) { return std::isxdigit(ch) != 0; });
    } else if (peek() == '0' && (peek(1) == 'b' || peek(1) == 'B')) {
      advance();
      advance();
      digits([](unsigned char ch) { return ch == '0' || ch == '1'; });
    } else {
      digits(dec);
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        floating = true;
        advance();
        digits(dec);
      } else if (peek() == '.' && !is_ident_start(static_cast<unsigned char>(peek(1))) &&
                 peek(1) != '.') {
        floating = true;
        advance();
      }
      if (peek() == 'e' || peek() == 'E') {
        floating = true;
        advance();
        if (peek() == '+' || peek() == '-')
          advance();
        digits(dec);
      }
    }
    char s = peek();
    if (s == 'l' || s == 'L') {
      advance();
    } else if (s == 'f' || s == 'F' || s == 'd' || s == 'D') {
      floating = true;
      advance();
    }
    return make(floating ? TokenKind::FloatLiteral : TokenKind::IntLiteral, start, line, col);
  }

  void quoted(char quote) {
    const SourcePosition open = here();
    advance();
    while (true) {
      if (pos_ >= text_.size() || peek() == '\n')
        throw LexError(open, "unterminated literal");
      char ch = peek();
      if (ch == '\\') {
        advance();
        if (pos_ < text_.size())
          advance();
        continue;
      }
      advance();
      if (ch == quote)
        return;
    }
  }

  std::string_view text_;
  const std::string &file_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

} // namespace

bool is_java_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

LexedSource lex(std::string_view text, const std::string &file) {
  return Lexer(text, file).run();
}

} // namespace ehap::syntax

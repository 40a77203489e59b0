// SPDX-License-Identifier: Apache-2.0

#include "ehap/syntax/parser.h"

#include "ehap/syntax/lexer.h"

#include <algorithm>
#include <array>
#include <optional>
#include <stdexcept>

namespace ehap::syntax {
namespace {

class ParseError : public std::runtime_error {
public:
  ParseError(SourcePosition pos, const std::string &msg)
      : std::runtime_error(msg), position(std::move(pos)) {}
  SourcePosition position;
};

constexpr std::array<std::string_view, 8> kPrimitiveTypes = {
    "boolean", "byte", "char", "short", "int", "long", "float", "double"};

constexpr std::array<std::string_view, 12> kAssignOps = {
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>="};

bool is_primitive(std::string_view word) {
  return std::find(kPrimitiveTypes.begin(), kPrimitiveTypes.end(), word) !=
         kPrimitiveTypes.end();
}

int binary_precedence(std::string_view op) {
  if (op == "||") return 1;
  if (op == "&&") return 2;
  if (op == "|") return 3;
  if (op == "^") return 4;
  if (op == "&") return 5;
  if (op == "==" || op == "!=") return 6;
  if (op == "<" || op == ">" || op == "<=" || op == ">=" || op == "instanceof")
    return 7;
  if (op == "<<" || op == ">>" || op == ">>>") return 8;
  if (op == "+" || op == "-") return 9;
  if (op == "*" || op == "/" || op == "%") return 10;
  return 0;
}

class Parser {
public:
  Parser(LexedSource lexed, std::string file)
      : toks_(std::move(lexed.tokens)), comments_(std::move(lexed.comments)),
        file_(std::move(file)) {}

  CompilationUnit parse() {
    CompilationUnit unit;
    unit.file = file_;
    skip_annotations();
    if (accept_keyword("package")) {
      unit.package_name = qualified_identifier();
      expect(";");
    }
    while (cur().is_keyword("import")) {
      advance();
      ImportDecl imp;
      if (accept_keyword("static"))
        imp.is_static = true;
      imp.qualified_name = identifier();
      while (accept(".")) {
        if (accept("*")) {
          imp.on_demand = true;
          break;
        }
        imp.qualified_name += "." + identifier();
      }
      expect(";");
      unit.imports.push_back(std::move(imp));
    }
    while (!at_eof()) {
      if (accept(";"))
        continue;
      skip_modifiers();
      unit.types.push_back(type_declaration(package_prefix(unit)));
    }
    return unit;
  }

private:
  // ---- token plumbing -------------------------------------------------

  const Token &cur() const { return toks_[idx_]; }
  const Token &peek(std::size_t n = 1) const {
    return toks_[std::min(idx_ + n, toks_.size() - 1)];
  }
  bool at_eof() const { return cur().kind == TokenKind::Eof; }
  void advance() {
    if (!at_eof())
      ++idx_;
  }
  SourcePosition pos_of(const Token &t) const { return {file_, t.line, t.column}; }
  SourcePosition pos() const { return pos_of(cur()); }

  [[noreturn]] void fail(const std::string &msg) const {
    std::string got = at_eof() ? "end of file" : "'" + cur().text + "'";
    throw ParseError(pos(), msg + " (found " + got + ")");
  }
  [[noreturn]] void unsupported(const std::string &what) const {
    throw ParseError(pos(), "unsupported construct: " + what);
  }

  bool accept(std::string_view punct) {
    if (cur().is_punct(punct)) {
      advance();
      return true;
    }
    return false;
  }
  bool accept_keyword(std::string_view kw) {
    if (cur().is_keyword(kw)) {
      advance();
      return true;
    }
    return false;
  }
  void expect(std::string_view punct) {
    if (!accept(punct))
      fail("expected '" + std::string(punct) + "'");
  }
  void expect_keyword(std::string_view kw) {
    if (!accept_keyword(kw))
      fail("expected '" + std::string(kw) + "'");
  }
  std::string identifier() {
    if (cur().kind != TokenKind::Identifier)
      fail("expected identifier");
    std::string s = cur().text;
    advance();
    return s;
  }
  std::string qualified_identifier() {
    std::string s = identifier();
    while (cur().is_punct(".") && peek().kind == TokenKind::Identifier) {
      advance();
      s += "." + identifier();
    }
    return s;
  }
  bool adjacent(std::size_t a, std::size_t b) const {
    return toks_[b].offset == toks_[a].offset + toks_[a].text.size();
  }

  static std::string package_prefix(const CompilationUnit &unit) {
    return unit.package_name ? *unit.package_name + "." : std::string();
  }

  std::vector<Comment> comments_between(std::size_t begin, std::size_t end) const {
    std::vector<Comment> out;
    auto it = std::lower_bound(
        comments_.begin(), comments_.end(), begin,
        [](const LexedComment &c, std::size_t off) { return c.offset < off; });
    for (; it != comments_.end() && it->offset < end; ++it)
      out.push_back(it->comment);
    return out;
  }

  // ---- modifiers, annotations, types ------------------------------------

  void skip_balanced(std::string_view open, std::string_view close) {
    expect(open);
    int depth = 1;
    while (depth > 0) {
      if (at_eof())
        fail("unbalanced '" + std::string(open) + "'");
      if (cur().is_punct(open))
        ++depth;
      else if (cur().is_punct(close))
        --depth;
      advance();
    }
  }

  void annotation() {
    expect("@");
    if (cur().is_keyword("interface"))
      unsupported("annotation type declaration");
    qualified_identifier();
    if (cur().is_punct("("))
      skip_balanced("(", ")");
  }

  void skip_annotations() {
    while (cur().is_punct("@") && !peek().is_keyword("interface"))
      annotation();
  }

  struct Modifiers {
    bool is_static = false;
  };

  Modifiers skip_modifiers() {
    Modifiers mods;
    static constexpr std::array<std::string_view, 11> kMods = {
        "public",   "protected", "private",   "static",
        "final",    "abstract",  "native",    "synchronized",
        "transient", "volatile", "strictfp"};
    while (true) {
      if (cur().is_punct("@")) {
        annotation();
        continue;
      }
      if (cur().kind == TokenKind::Keyword &&
          std::find(kMods.begin(), kMods.end(), cur().text) != kMods.end()) {
        // `synchronized (` is a statement, not a modifier.
        if (cur().text == "synchronized" && peek().is_punct("("))
          return mods;
        if (cur().text == "static")
          mods.is_static = true;
        advance();
        continue;
      }
      if (cur().is_keyword("default") && !peek().is_punct(":")) {
        advance();
        continue;
      }
      if (cur().kind == TokenKind::Identifier &&
          (cur().text == "sealed" || cur().text == "non") &&
          (peek().is_keyword("class") || peek().is_keyword("interface") ||
           peek().is_punct("-")))
        unsupported("sealed type");
      return mods;
    }
  }

  void type_arguments() {
    expect("<");
    if (accept(">"))
      return; // diamond
    do {
      skip_annotations();
      if (accept("?")) {
        if (accept_keyword("extends") || accept_keyword("super"))
          type();
      } else {
        type();
      }
    } while (accept(","));
    expect(">");
  }

  void type_parameters() {
    expect("<");
    do {
      skip_annotations();
      identifier();
      if (accept_keyword("extends")) {
        type();
        while (accept("&"))
          type();
      }
    } while (accept(","));
    expect(">");
  }

  /// Parses a type and returns its erasure as written, e.g.
  /// `java.util.List` for `java.util.List<String>` and `int[]` for `int[]`.
  std::string type() {
    skip_annotations();
    std::string name;
    if (cur().kind == TokenKind::Keyword && is_primitive(cur().text)) {
      name = cur().text;
      advance();
    } else {
      name = identifier();
      if (cur().is_punct("<"))
        type_arguments();
      while (cur().is_punct(".") && peek().kind == TokenKind::Identifier) {
        advance();
        name += "." + identifier();
        if (cur().is_punct("<"))
          type_arguments();
      }
    }
    while (cur().is_punct("[") && peek().is_punct("]")) {
      advance();
      advance();
      name += "[]";
    }
    return name;
  }

  /// Speculatively parses a type; restores the cursor and returns nullopt on
  /// failure.
  std::optional<std::string> try_type() {
    const std::size_t save = idx_;
    try {
      return type();
    } catch (const ParseError &) {
      idx_ = save;
      return std::nullopt;
    }
  }

  std::vector<std::string> type_list() {
    std::vector<std::string> out;
    do {
      out.push_back(type());
    } while (accept(","));
    return out;
  }

  // ---- declarations -----------------------------------------------------

  TypeDecl type_declaration(const std::string &prefix) {
    TypeDecl decl;
    decl.position = pos();
    if (cur().is_punct("@"))
      unsupported("annotation type declaration");
    if (cur().kind == TokenKind::Identifier && cur().text == "record" &&
        peek().kind == TokenKind::Identifier)
      unsupported("record declaration");
    if (accept_keyword("class")) {
      decl.kind = TypeKind::Class;
    } else if (accept_keyword("interface")) {
      decl.kind = TypeKind::Interface;
    } else if (accept_keyword("enum")) {
      decl.kind = TypeKind::Enum;
    } else {
      fail("expected type declaration");
    }
    decl.simple_name = identifier();
    decl.qualified_name = prefix + decl.simple_name;
    if (cur().is_punct("<"))
      type_parameters();
    if (decl.kind == TypeKind::Class && accept_keyword("extends"))
      decl.superclass_name = type();
    if (decl.kind == TypeKind::Interface && accept_keyword("extends"))
      type_list();
    if (accept_keyword("implements"))
      type_list();
    if (cur().kind == TokenKind::Identifier && cur().text == "permits")
      unsupported("permits clause");
    if (decl.kind == TypeKind::Enum)
      enum_body(decl);
    else
      class_body(decl);
    return decl;
  }

  void enum_body(TypeDecl &decl) {
    expect("{");
    while (!cur().is_punct(";") && !cur().is_punct("}")) {
      skip_annotations();
      identifier();
      if (cur().is_punct("(")) {
        for (Expr &arg : arguments())
          decl.member_exprs.push_back(std::move(arg));
      }
      if (cur().is_punct("{")) {
        TypeDecl scratch;
        scratch.qualified_name = decl.qualified_name + "$";
        class_body(scratch);
      }
      if (!accept(","))
        break;
    }
    if (accept(";")) {
      members_until_close(decl);
      return;
    }
    expect("}");
  }

  void class_body(TypeDecl &decl) {
    expect("{");
    members_until_close(decl);
  }

  void members_until_close(TypeDecl &decl) {
    while (!accept("}")) {
      if (at_eof())
        fail("expected '}'");
      if (accept(";"))
        continue;
      member(decl);
    }
  }

  void member(TypeDecl &decl) {
    const int doc = cur().doc_comment;
    const Modifiers mods = skip_modifiers();
    if (cur().is_punct("{"))
      unsupported("initializer block");
    if (cur().is_keyword("class") || cur().is_keyword("interface") ||
        cur().is_keyword("enum") || cur().is_punct("@") ||
        (cur().kind == TokenKind::Identifier && cur().text == "record" &&
         peek().kind == TokenKind::Identifier)) {
      decl.nested.push_back(type_declaration(decl.qualified_name + "$"));
      return;
    }
    if (cur().is_punct("<"))
      type_parameters();

    MethodDecl method;
    method.owner = decl.qualified_name;
    method.is_static = mods.is_static;
    if (doc >= 0)
      method.doc_throws = extract_javadoc_throws(comments_[static_cast<std::size_t>(doc)].comment.text);

    if (cur().kind == TokenKind::Identifier && cur().text == decl.simple_name &&
        peek().is_punct("(")) {
      method.position = pos();
      advance();
      method.name = "<init>";
      method_rest(method);
      decl.methods.push_back(std::move(method));
      return;
    }

    std::string result_type;
    if (accept_keyword("void"))
      result_type = "void";
    else
      result_type = type();
    const SourcePosition name_pos = pos();
    std::string name = identifier();
    if (cur().is_punct("(")) {
      method.position = name_pos;
      method.name = std::move(name);
      method_rest(method);
      decl.methods.push_back(std::move(method));
      return;
    }
    if (result_type == "void")
      fail("expected '('");
    // Field declarators.
    SourcePosition field_pos = name_pos;
    while (true) {
      FieldDecl field;
      field.type_name = result_type;
      field.name = name;
      field.position = field_pos;
      field.is_static = mods.is_static;
      while (cur().is_punct("[") && peek().is_punct("]")) {
        advance();
        advance();
      }
      if (accept("=")) {
        field.init = variable_initializer();
        decl.member_exprs.push_back(*field.init);
      }
      decl.fields.push_back(std::move(field));
      if (!accept(","))
        break;
      field_pos = pos();
      name = identifier();
    }
    expect(";");
  }

  void method_rest(MethodDecl &method) {
    expect("(");
    if (!cur().is_punct(")")) {
      do {
        skip_modifiers();
        Parameter p;
        p.type_name = type();
        if (accept("..."))
          p.type_name += "[]";
        if (cur().is_keyword("this")) {
          advance(); // receiver parameter
          continue;
        }
        p.name = identifier();
        while (cur().is_punct("[") && peek().is_punct("]")) {
          advance();
          advance();
          p.type_name += "[]";
        }
        method.params.push_back(std::move(p));
      } while (accept(","));
    }
    expect(")");
    while (cur().is_punct("[") && peek().is_punct("]")) {
      advance();
      advance();
    }
    if (accept_keyword("throws"))
      method.declared_throws = type_list();
    if (cur().is_keyword("default"))
      unsupported("annotation element default");
    if (accept(";"))
      return;
    method.body = block();
  }

  // ---- statements -------------------------------------------------------

  Block block() {
    Block b;
    b.position = pos();
    const std::size_t open = cur().offset;
    expect("{");
    while (!cur().is_punct("}")) {
      if (at_eof())
        fail("expected '}'");
      statement_into(b.statements);
    }
    b.comments = comments_between(open, cur().offset);
    advance();
    return b;
  }

  /// Wraps a single non-block statement in a synthetic block so that every
  /// nested region is a Block.
  Block statement_as_block() {
    if (cur().is_punct("{"))
      return block();
    Block b;
    b.position = pos();
    statement_into(b.statements);
    return b;
  }

  void statement_into(std::vector<Stmt> &out) {
    if (accept(";"))
      return;
    out.push_back(statement());
  }

  Stmt make_stmt(StmtKind kind, SourcePosition at) {
    Stmt s;
    s.kind = kind;
    s.position = std::move(at);
    return s;
  }

  Stmt statement() {
    const SourcePosition at = pos();
    const Token &t = cur();

    if (t.is_punct("{")) {
      Stmt s = make_stmt(StmtKind::Block, at);
      s.blocks.push_back(block());
      return s;
    }
    if (t.kind == TokenKind::Keyword) {
      if (t.text == "if") {
        advance();
        Stmt s = make_stmt(StmtKind::If, at);
        s.exprs.push_back(paren_expression());
        s.blocks.push_back(statement_as_block());
        if (accept_keyword("else"))
          s.blocks.push_back(statement_as_block());
        return s;
      }
      if (t.text == "while") {
        advance();
        Stmt s = make_stmt(StmtKind::While, at);
        s.exprs.push_back(paren_expression());
        s.blocks.push_back(statement_as_block());
        return s;
      }
      if (t.text == "do") {
        advance();
        Stmt s = make_stmt(StmtKind::DoWhile, at);
        s.blocks.push_back(statement_as_block());
        expect_keyword("while");
        s.exprs.push_back(paren_expression());
        expect(";");
        return s;
      }
      if (t.text == "for")
        return for_statement(at);
      if (t.text == "switch")
        return switch_statement(at);
      if (t.text == "return") {
        advance();
        Stmt s = make_stmt(StmtKind::Return, at);
        if (!cur().is_punct(";"))
          s.exprs.push_back(expression());
        expect(";");
        return s;
      }
      if (t.text == "throw") {
        advance();
        Stmt s = make_stmt(StmtKind::Throw, at);
        s.exprs.push_back(expression());
        expect(";");
        return s;
      }
      if (t.text == "try")
        return try_statement(at);
      if (t.text == "break" || t.text == "continue") {
        const bool is_break = t.text == "break";
        advance();
        if (cur().kind == TokenKind::Identifier)
          advance();
        expect(";");
        return make_stmt(is_break ? StmtKind::Break : StmtKind::Continue, at);
      }
      if (t.text == "synchronized" && peek().is_punct("(")) {
        advance();
        Stmt s = make_stmt(StmtKind::Synchronized, at);
        s.exprs.push_back(paren_expression());
        s.blocks.push_back(block());
        return s;
      }
      if (t.text == "assert")
        unsupported("assert statement");
      if (t.text == "class" || t.text == "interface" || t.text == "enum" ||
          t.text == "abstract" || t.text == "static")
        unsupported("local type declaration");
    }
    if (t.kind == TokenKind::Identifier && peek().is_punct(":"))
      unsupported("labeled statement");
    if (t.kind == TokenKind::Identifier && t.text == "yield" &&
        peek().kind != TokenKind::Punct)
      unsupported("yield statement");

    if (auto decl = try_local_var_decl(at)) {
      expect(";");
      return std::move(*decl);
    }
    Stmt s = make_stmt(StmtKind::Expression, at);
    s.exprs.push_back(expression());
    expect(";");
    return s;
  }

  /// Recognizes `[final] [@A] Type name` and parses the declarators; leaves
  /// the terminating token (`;`, `:` or `)`) unconsumed. Restores the cursor
  /// and returns nullopt when the tokens do not form a declaration.
  std::optional<Stmt> try_local_var_decl(const SourcePosition &at,
                                         bool allow_foreach = false) {
    const std::size_t save = idx_;
    while (cur().is_keyword("final") || cur().is_punct("@")) {
      if (cur().is_punct("@"))
        annotation();
      else
        advance();
    }
    if (cur().is_keyword("class") || cur().is_keyword("interface") ||
        cur().is_keyword("enum") || cur().is_keyword("abstract"))
      unsupported("local type declaration");
    auto ty = try_type();
    if (!ty || cur().kind != TokenKind::Identifier) {
      idx_ = save;
      return std::nullopt;
    }
    const Token &after = peek();
    const bool looks_like_decl =
        after.is_punct("=") || after.is_punct(";") || after.is_punct(",") ||
        after.is_punct("[") || (allow_foreach && after.is_punct(":"));
    if (!looks_like_decl) {
      idx_ = save;
      return std::nullopt;
    }
    Stmt s = make_stmt(StmtKind::LocalVarDecl, at);
    s.type_name = *ty;
    while (true) {
      VarDeclarator var;
      var.position = pos();
      var.name = identifier();
      while (cur().is_punct("[") && peek().is_punct("]")) {
        advance();
        advance();
      }
      if (accept("="))
        var.init = variable_initializer();
      s.vars.push_back(std::move(var));
      if (!accept(","))
        break;
    }
    return s;
  }

  Stmt for_statement(const SourcePosition &at) {
    expect_keyword("for");
    expect("(");
    Stmt s = make_stmt(StmtKind::For, at);
    if (!cur().is_punct(";")) {
      if (auto decl = try_local_var_decl(pos(), /*allow_foreach=*/true)) {
        if (accept(":")) {
          s.kind = StmtKind::ForEach;
          s.type_name = decl->type_name;
          s.vars = std::move(decl->vars);
          s.exprs.push_back(expression());
          expect(")");
          s.blocks.push_back(statement_as_block());
          return s;
        }
        s.init_stmts.push_back(std::move(*decl));
      } else {
        do {
          Stmt init = make_stmt(StmtKind::Expression, pos());
          init.exprs.push_back(expression());
          s.init_stmts.push_back(std::move(init));
        } while (accept(","));
      }
    }
    expect(";");
    if (!cur().is_punct(";"))
      s.exprs.push_back(expression());
    else
      s.exprs.push_back(Expr{ExprKind::Literal, pos(), "true", LiteralKind::Boolean, false, false, {}});
    expect(";");
    if (!cur().is_punct(")")) {
      do {
        s.exprs.push_back(expression());
      } while (accept(","));
    }
    expect(")");
    s.blocks.push_back(statement_as_block());
    return s;
  }

  Stmt switch_statement(const SourcePosition &at) {
    expect_keyword("switch");
    Stmt s = make_stmt(StmtKind::Switch, at);
    s.exprs.push_back(paren_expression());
    expect("{");
    while (!accept("}")) {
      Block group;
      group.position = pos();
      const std::size_t open = cur().offset;
      bool saw_label = false;
      while (cur().is_keyword("case") || cur().is_keyword("default")) {
        saw_label = true;
        if (accept_keyword("default")) {
          if (cur().is_punct("->"))
            unsupported("switch rule");
        } else {
          advance();
          s.exprs.push_back(conditional());
          if (cur().is_punct(","))
            unsupported("multi-label case");
          if (cur().is_punct("->"))
            unsupported("switch rule");
        }
        expect(":");
      }
      if (!saw_label)
        fail("expected 'case' or 'default'");
      while (!cur().is_keyword("case") && !cur().is_keyword("default") &&
             !cur().is_punct("}")) {
        if (at_eof())
          fail("expected '}'");
        statement_into(group.statements);
      }
      group.comments = comments_between(open, cur().offset);
      s.blocks.push_back(std::move(group));
    }
    return s;
  }

  Stmt try_statement(const SourcePosition &at) {
    expect_keyword("try");
    Stmt s = make_stmt(StmtKind::Try, at);
    const bool has_resources = cur().is_punct("(");
    if (has_resources) {
      advance();
      while (!cur().is_punct(")")) {
        const SourcePosition rat = pos();
        if (auto decl = try_local_var_decl(rat)) {
          if (decl->vars.size() != 1 || !decl->vars.front().init)
            fail("malformed resource declaration");
          s.resources.push_back(*decl->vars.front().init);
          s.resource_vars.push_back(std::move(*decl));
        } else {
          s.resources.push_back(expression());
        }
        if (!accept(";"))
          break;
      }
      expect(")");
    }
    s.blocks.push_back(block());
    while (cur().is_keyword("catch")) {
      CatchClause clause;
      clause.position = pos();
      advance();
      expect("(");
      while (cur().is_keyword("final") || cur().is_punct("@")) {
        if (cur().is_punct("@"))
          annotation();
        else
          advance();
      }
      clause.declared_types.push_back(type());
      while (accept("|"))
        clause.declared_types.push_back(type());
      clause.variable_name = identifier();
      expect(")");
      clause.body = block();
      s.catches.push_back(std::move(clause));
    }
    if (accept_keyword("finally"))
      s.finally_block = block();

    if (s.catches.empty() && !s.finally_block) {
      if (!has_resources)
        fail("expected 'catch' or 'finally'");
      // A bare try-with-resources handles nothing: lower it to a block that
      // declares the resources and then runs the body.
      Stmt lowered = make_stmt(StmtKind::Block, at);
      Block body;
      body.position = s.blocks.front().position;
      body.comments = s.blocks.front().comments;
      for (std::size_t i = 0, d = 0; i < s.resources.size(); ++i) {
        if (d < s.resource_vars.size() &&
            s.resource_vars[d].vars.front().init->position == s.resources[i].position) {
          body.statements.push_back(std::move(s.resource_vars[d++]));
        } else {
          Stmt e = make_stmt(StmtKind::Expression, s.resources[i].position);
          e.exprs.push_back(std::move(s.resources[i]));
          body.statements.push_back(std::move(e));
        }
      }
      for (Stmt &inner : s.blocks.front().statements)
        body.statements.push_back(std::move(inner));
      lowered.blocks.push_back(std::move(body));
      return lowered;
    }
    return s;
  }

  // ---- expressions ------------------------------------------------------

  Expr paren_expression() {
    expect("(");
    Expr e = expression();
    expect(")");
    return e;
  }

  std::vector<Expr> arguments() {
    std::vector<Expr> args;
    expect("(");
    if (!cur().is_punct(")")) {
      do {
        args.push_back(expression());
      } while (accept(","));
    }
    expect(")");
    return args;
  }

  Expr variable_initializer() {
    if (cur().is_punct("{"))
      return array_initializer();
    return expression();
  }

  Expr array_initializer() {
    Expr e;
    e.kind = ExprKind::ArrayInit;
    e.position = pos();
    expect("{");
    while (!cur().is_punct("}")) {
      e.children.push_back(variable_initializer());
      if (!accept(","))
        break;
    }
    expect("}");
    return e;
  }

  bool at_lambda() const {
    if (cur().kind == TokenKind::Identifier && peek().is_punct("->"))
      return true;
    if (!cur().is_punct("("))
      return false;
    int depth = 0;
    for (std::size_t i = idx_; i < toks_.size(); ++i) {
      const Token &t = toks_[i];
      if (t.kind == TokenKind::Eof)
        return false;
      if (t.is_punct("("))
        ++depth;
      else if (t.is_punct(")") && --depth == 0)
        return i + 1 < toks_.size() && toks_[i + 1].is_punct("->");
    }
    return false;
  }

  Expr lambda() {
    Expr e;
    e.kind = ExprKind::Lambda;
    e.position = pos();
    e.opaque = true;
    if (cur().kind == TokenKind::Identifier) {
      advance();
    } else {
      expect("(");
      while (!cur().is_punct(")")) {
        skip_modifiers();
        // Either `name` or `Type name`.
        if (cur().kind == TokenKind::Identifier &&
            (peek().is_punct(",") || peek().is_punct(")"))) {
          advance();
        } else {
          type();
          accept("...");
          identifier();
        }
        if (!accept(","))
          break;
      }
      expect(")");
    }
    expect("->");
    if (cur().is_punct("{"))
      block();
    else
      expression();
    return e;
  }

  /// Reads an assignment operator at the cursor, reassembling `>>=` and
  /// `>>>=` from single `>` tokens. Returns the operator and token count.
  std::pair<std::string, std::size_t> assign_op_at() const {
    const Token &t = cur();
    if (t.kind == TokenKind::Punct && t.text != ">") {
      if (std::find(kAssignOps.begin(), kAssignOps.end(), t.text) != kAssignOps.end())
        return {t.text, 1};
      return {"", 0};
    }
    if (!t.is_punct(">"))
      return {"", 0};
    const std::size_t i = idx_;
    if (toks_[i + 1].is_punct(">") && adjacent(i, i + 1)) {
      if (toks_[i + 2].is_punct("=") && adjacent(i + 1, i + 2))
        return {">>=", 3};
      if (toks_[i + 2].is_punct(">") && adjacent(i + 1, i + 2) &&
          toks_[i + 3].is_punct("=") && adjacent(i + 2, i + 3))
        return {">>>=", 4};
    }
    return {"", 0};
  }

  std::pair<std::string, std::size_t> binary_op_at() const {
    const Token &t = cur();
    if (t.is_keyword("instanceof"))
      return {"instanceof", 1};
    if (t.kind != TokenKind::Punct)
      return {"", 0};
    if (t.text == ">") {
      const std::size_t i = idx_;
      const Token &n1 = toks_[i + 1];
      if (n1.is_punct("=") && adjacent(i, i + 1))
        return {">=", 2};
      if (n1.is_punct(">") && adjacent(i, i + 1)) {
        const Token &n2 = toks_[i + 2];
        if (n2.is_punct("=") && adjacent(i + 1, i + 2))
          return {"", 0}; // >>= is an assignment
        if (n2.is_punct(">") && adjacent(i + 1, i + 2)) {
          if (toks_[i + 3].is_punct("=") && adjacent(i + 2, i + 3))
            return {"", 0};
          return {">>>", 3};
        }
        return {">>", 2};
      }
      return {">", 1};
    }
    if (binary_precedence(t.text) > 0)
      return {t.text, 1};
    return {"", 0};
  }

  Expr expression() {
    if (at_lambda())
      return lambda();
    Expr lhs = conditional();
    auto [op, n] = assign_op_at();
    if (n == 0)
      return lhs;
    for (std::size_t i = 0; i < n; ++i)
      advance();
    Expr e;
    e.kind = ExprKind::Assign;
    e.position = lhs.position;
    e.name = op;
    e.children.push_back(std::move(lhs));
    e.children.push_back(cur().is_punct("{") ? array_initializer() : expression());
    return e;
  }

  Expr conditional() {
    Expr c = binary(1);
    if (!cur().is_punct("?"))
      return c;
    advance();
    Expr e;
    e.kind = ExprKind::Conditional;
    e.position = c.position;
    e.children.push_back(std::move(c));
    e.children.push_back(at_lambda() ? lambda() : expression());
    expect(":");
    e.children.push_back(at_lambda() ? lambda() : conditional());
    return e;
  }

  Expr binary(int min_prec) {
    Expr lhs = unary();
    while (true) {
      auto [op, n] = binary_op_at();
      const int prec = n ? binary_precedence(op) : 0;
      if (prec < min_prec || prec == 0)
        return lhs;
      for (std::size_t i = 0; i < n; ++i)
        advance();
      Expr e;
      e.position = lhs.position;
      if (op == "instanceof") {
        e.kind = ExprKind::InstanceOf;
        accept_keyword("final");
        e.name = type();
        if (cur().kind == TokenKind::Identifier)
          unsupported("instanceof pattern");
        e.children.push_back(std::move(lhs));
      } else {
        e.kind = ExprKind::Binary;
        e.name = op;
        e.children.push_back(std::move(lhs));
        e.children.push_back(binary(prec + 1));
      }
      lhs = std::move(e);
    }
  }

  Expr unary() {
    const Token &t = cur();
    if (t.is_punct("+") || t.is_punct("-") || t.is_punct("++") ||
        t.is_punct("--") || t.is_punct("!") || t.is_punct("~")) {
      Expr e;
      e.kind = ExprKind::Unary;
      e.position = pos();
      e.name = t.text;
      advance();
      e.children.push_back(unary());
      return e;
    }
    if (t.is_punct("(")) {
      if (auto cast = try_cast())
        return std::move(*cast);
    }
    Expr e = postfix(primary());
    while (cur().is_punct("++") || cur().is_punct("--")) {
      Expr p;
      p.kind = ExprKind::Postfix;
      p.position = e.position;
      p.name = cur().text;
      advance();
      p.children.push_back(std::move(e));
      e = std::move(p);
    }
    return e;
  }

  std::optional<Expr> try_cast() {
    const std::size_t save = idx_;
    const SourcePosition at = pos();
    advance(); // (
    auto ty = try_type();
    if (!ty || !cur().is_punct(")")) {
      idx_ = save;
      return std::nullopt;
    }
    const bool prim = is_primitive(ty->substr(0, ty->find('[')));
    const Token &next = peek();
    const bool operand_follows =
        next.kind == TokenKind::Identifier || next.kind == TokenKind::StringLiteral ||
        next.kind == TokenKind::CharLiteral || next.kind == TokenKind::IntLiteral ||
        next.kind == TokenKind::FloatLiteral || next.is_punct("(") ||
        next.is_punct("!") || next.is_punct("~") || next.is_keyword("this") ||
        next.is_keyword("super") || next.is_keyword("new") ||
        next.is_keyword("true") || next.is_keyword("false") ||
        next.is_keyword("null") || next.is_keyword("switch") ||
        (next.kind == TokenKind::Keyword && is_primitive(next.text));
    if (!prim && !operand_follows) {
      idx_ = save;
      return std::nullopt;
    }
    if (prim && !operand_follows && !next.is_punct("+") && !next.is_punct("-") &&
        !next.is_punct("++") && !next.is_punct("--")) {
      idx_ = save;
      return std::nullopt;
    }
    advance(); // )
    Expr e;
    e.kind = ExprKind::Cast;
    e.position = at;
    e.name = *ty;
    e.children.push_back(at_lambda() ? lambda() : unary());
    return e;
  }

  Expr literal(LiteralKind kind) {
    Expr e;
    e.kind = ExprKind::Literal;
    e.position = pos();
    e.literal = kind;
    e.name = cur().text;
    advance();
    return e;
  }

  Expr call(Expr *receiver, std::string name, SourcePosition at) {
    Expr e;
    e.kind = ExprKind::MethodCall;
    e.position = std::move(at);
    e.name = std::move(name);
    if (receiver) {
      e.has_receiver = true;
      e.children.push_back(std::move(*receiver));
    }
    for (Expr &a : arguments())
      e.children.push_back(std::move(a));
    return e;
  }

  Expr primary() {
    const Token &t = cur();
    switch (t.kind) {
    case TokenKind::IntLiteral:
      return literal(LiteralKind::Integer);
    case TokenKind::FloatLiteral:
      return literal(LiteralKind::Floating);
    case TokenKind::CharLiteral:
      return literal(LiteralKind::Character);
    case TokenKind::StringLiteral:
      return literal(LiteralKind::String);
    default:
      break;
    }
    if (t.is_keyword("null"))
      return literal(LiteralKind::Null);
    if (t.is_keyword("true") || t.is_keyword("false"))
      return literal(LiteralKind::Boolean);
    if (t.is_punct("("))
      return paren_expression();
    if (t.is_keyword("new"))
      return creator();
    if (t.is_keyword("switch"))
      unsupported("switch expression");
    if (t.is_keyword("this") || t.is_keyword("super")) {
      Expr self;
      self.kind = t.text == "this" ? ExprKind::This : ExprKind::Super;
      self.position = pos();
      advance();
      if (cur().is_punct("(")) // explicit constructor invocation
        return call(&self, "<init>", self.position);
      return self;
    }
    if ((t.kind == TokenKind::Keyword && (is_primitive(t.text) || t.text == "void"))) {
      Expr e;
      e.kind = ExprKind::ClassLiteral;
      e.position = pos();
      e.name = t.text;
      advance();
      while (accept("[")) {
        expect("]");
        e.name += "[]";
      }
      expect(".");
      expect_keyword("class");
      return e;
    }
    if (t.kind == TokenKind::Identifier) {
      const SourcePosition at = pos();
      std::string chain = identifier();
      SourcePosition last_at = at;
      while (cur().is_punct(".") && peek().kind == TokenKind::Identifier) {
        if (toks_[idx_ + 2].is_punct("(")) {
          advance();
          const SourcePosition name_at = pos();
          std::string method = identifier();
          Expr recv;
          recv.kind = ExprKind::Name;
          recv.position = at;
          recv.name = std::move(chain);
          return call(&recv, std::move(method), name_at);
        }
        advance();
        last_at = pos();
        chain += "." + identifier();
      }
      if (cur().is_punct("("))
        return call(nullptr, std::move(chain), at);
      if (cur().is_punct("[") && peek().is_punct("]")) {
        // Array type class literal, e.g. String[].class
        Expr e;
        e.kind = ExprKind::ClassLiteral;
        e.position = at;
        e.name = chain;
        while (accept("[")) {
          expect("]");
          e.name += "[]";
        }
        expect(".");
        expect_keyword("class");
        return e;
      }
      Expr e;
      e.kind = ExprKind::Name;
      e.position = at;
      e.name = std::move(chain);
      return e;
    }
    fail("expected expression");
  }

  Expr postfix(Expr e) {
    while (true) {
      if (cur().is_punct("::"))
        unsupported("method reference");
      if (cur().is_punct("[")) {
        Expr a;
        a.kind = ExprKind::ArrayAccess;
        a.position = e.position;
        advance();
        a.children.push_back(std::move(e));
        a.children.push_back(expression());
        expect("]");
        e = std::move(a);
        continue;
      }
      if (!cur().is_punct("."))
        return e;
      advance();
      if (cur().is_punct("<")) {
        type_arguments();
        const SourcePosition at = pos();
        std::string name = identifier();
        if (!cur().is_punct("("))
          fail("expected '('");
        e = call(&e, std::move(name), at);
        continue;
      }
      if (accept_keyword("class")) {
        Expr c;
        c.kind = ExprKind::ClassLiteral;
        c.position = e.position;
        c.name = e.name;
        e = std::move(c);
        continue;
      }
      if (cur().is_keyword("this")) {
        Expr self;
        self.kind = ExprKind::This;
        self.position = e.position;
        self.name = e.name; // qualified this
        advance();
        e = std::move(self);
        continue;
      }
      if (cur().is_keyword("new"))
        unsupported("qualified instance creation");
      if (cur().is_keyword("super"))
        unsupported("qualified super access");
      const SourcePosition at = pos();
      std::string name = identifier();
      if (cur().is_punct("(")) {
        e = call(&e, std::move(name), at);
        continue;
      }
      Expr f;
      f.kind = ExprKind::FieldAccess;
      f.position = e.position;
      f.name = std::move(name);
      f.children.push_back(std::move(e));
      e = std::move(f);
    }
  }

  Expr creator() {
    const SourcePosition at = pos();
    expect_keyword("new");
    if (cur().is_punct("<"))
      type_arguments();
    skip_annotations();
    std::string name;
    if (cur().kind == TokenKind::Keyword && is_primitive(cur().text)) {
      name = cur().text;
      advance();
    } else {
      name = identifier();
      if (cur().is_punct("<"))
        type_arguments();
      while (accept(".")) {
        skip_annotations();
        name += "." + identifier();
        if (cur().is_punct("<"))
          type_arguments();
      }
    }
    if (cur().is_punct("[")) {
      Expr arr;
      arr.kind = ExprKind::ArrayCreation;
      arr.position = at;
      arr.name = name;
      while (accept("[")) {
        if (!cur().is_punct("]"))
          arr.children.push_back(expression());
        expect("]");
      }
      if (cur().is_punct("{"))
        arr.children.push_back(array_initializer());
      return arr;
    }
    if (is_primitive(name))
      fail("expected '['");
    Expr e;
    e.kind = ExprKind::New;
    e.position = at;
    e.name = std::move(name);
    e.children = arguments();
    if (cur().is_punct("{")) {
      TypeDecl scratch;
      scratch.qualified_name = "$anonymous";
      class_body(scratch);
      e.kind = ExprKind::AnonymousClass;
      e.opaque = true;
    }
    return e;
  }

  std::vector<Token> toks_;
  std::vector<LexedComment> comments_;
  std::string file_;
  std::size_t idx_ = 0;
};

} // namespace

CompilationUnit parse_unit(std::string_view source_text, const std::string &file) {
  CompilationUnit failed;
  failed.file = file;
  failed.skipped = true;
  try {
    Parser parser(lex(source_text, file), file);
    return parser.parse();
  } catch (const LexError &err) {
    failed.diagnostic = Diagnostic{err.position, err.what()};
  } catch (const ParseError &err) {
    failed.diagnostic = Diagnostic{err.position, err.what()};
  }
  return failed;
}

} // namespace ehap::syntax

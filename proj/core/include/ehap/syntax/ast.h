// SPDX-License-Identifier: Apache-2.0
//
// Syntax tree for the analyzed Java-style subset.
//
// Trees are plain values: every node owns its children through std::vector,
// so a parsed CompilationUnit can be moved, copied and shared read-only
// between threads. Names are kept exactly as written; resolution happens in
// the types module.

#ifndef EHAP_SYNTAX_AST_H
#define EHAP_SYNTAX_AST_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ehap::syntax {

struct SourcePosition {
  std::string file;
  int line = 1;
  int column = 1;

  friend bool operator==(const SourcePosition &, const SourcePosition &) = default;
  friend auto operator<=>(const SourcePosition &, const SourcePosition &) = default;
};

struct Diagnostic {
  SourcePosition position;
  std::string message;
};

struct Comment {
  std::string text;
  SourcePosition position;
  bool is_doc = false;
};

enum class ExprKind : std::uint8_t {
  MethodCall,
  New,
  AnonymousClass,
  Name,
  Literal,
  Lambda,
  FieldAccess,
  ArrayAccess,
  ArrayCreation,
  ArrayInit,
  Cast,
  InstanceOf,
  Binary,
  Unary,
  Postfix,
  Assign,
  Conditional,
  This,
  Super,
  ClassLiteral,
};

enum class LiteralKind : std::uint8_t {
  None,
  Null,
  Boolean,
  Integer,
  Floating,
  Character,
  String,
};

/// One expression node.
///
/// The meaning of `name` and `children` depends on `kind`:
///   MethodCall      name = method name; children = [receiver?] + args
///   New             name = created type; children = args
///   AnonymousClass  name = created type; children = args (body is opaque)
///   Name            name = dotted identifier chain
///   Literal         name = literal text
///   Lambda          opaque; no children
///   FieldAccess     name = field; children = [object]
///   ArrayAccess     children = [array, index]
///   ArrayCreation   name = element type; children = dims + initializer
///   ArrayInit       children = elements
///   Cast/InstanceOf name = type; children = [operand]
///   Binary/Assign   name = operator; children = [lhs, rhs]
///   Unary/Postfix   name = operator; children = [operand]
///   Conditional     children = [cond, then, else]
///   ClassLiteral    name = type
struct Expr {
  ExprKind kind = ExprKind::Name;
  SourcePosition position;
  std::string name;
  LiteralKind literal = LiteralKind::None;
  bool has_receiver = false;
  bool opaque = false;
  std::vector<Expr> children;

  const Expr *receiver() const {
    return has_receiver && !children.empty() ? &children.front() : nullptr;
  }
  /// Call/New arguments (receiver excluded).
  std::vector<Expr>::const_iterator args_begin() const {
    return children.begin() + (has_receiver ? 1 : 0);
  }
  std::vector<Expr>::const_iterator args_end() const { return children.end(); }
  std::size_t arg_count() const {
    return children.size() - (has_receiver ? 1 : 0);
  }
  bool is_null_literal() const {
    return kind == ExprKind::Literal && literal == LiteralKind::Null;
  }
};

struct Stmt;

struct Block {
  std::vector<Stmt> statements;
  /// Every comment lexically between the braces, nested ones included.
  std::vector<Comment> comments;
  SourcePosition position;
};

struct CatchClause {
  std::vector<std::string> declared_types;
  std::string variable_name;
  Block body;
  SourcePosition position;
};

struct VarDeclarator {
  std::string name;
  std::optional<Expr> init;
  SourcePosition position;
};

enum class StmtKind : std::uint8_t {
  Block,
  LocalVarDecl,
  Expression,
  If,
  While,
  DoWhile,
  For,
  ForEach,
  Switch,
  Return,
  Throw,
  Try,
  Break,
  Continue,
  Synchronized,
};

/// One statement.
///
///   Block         blocks = [body]
///   LocalVarDecl  type_name, vars
///   Expression    exprs = [expr]
///   If            exprs = [cond]; blocks = [then, else?]
///   While/DoWhile exprs = [cond]; blocks = [body]
///   For           init_stmts; exprs = [cond?] + updates; blocks = [body]
///   ForEach       type_name, vars = [loop var]; exprs = [iterable]; blocks = [body]
///   Switch        exprs = [selector, labels...]; blocks = one per case group
///   Return        exprs = [value?]
///   Throw         exprs = [value]
///   Try           blocks = [try block]; resources, resource_vars, catches,
///                 finally_block
///   Synchronized  exprs = [lock]; blocks = [body]
struct Stmt {
  StmtKind kind = StmtKind::Expression;
  SourcePosition position;
  std::vector<Expr> exprs;
  std::vector<Block> blocks;

  std::string type_name;
  std::vector<VarDeclarator> vars;
  std::vector<Stmt> init_stmts;

  std::vector<Expr> resources;
  std::vector<Stmt> resource_vars;
  std::vector<CatchClause> catches;
  std::optional<Block> finally_block;

  const Block &try_block() const { return blocks.front(); }
};

struct Parameter {
  std::string type_name;
  std::string name;
};

struct FieldDecl {
  std::string type_name;
  std::string name;
  std::optional<Expr> init;
  bool is_static = false;
  SourcePosition position;
};

struct MethodDecl {
  std::string owner;
  std::string name;
  std::vector<Parameter> params;
  std::vector<std::string> declared_throws;
  std::vector<std::string> doc_throws;
  std::optional<Block> body;
  bool is_static = false;
  SourcePosition position;

  std::size_t arity() const { return params.size(); }
  bool is_constructor() const { return name == "<init>"; }
};

enum class TypeKind : std::uint8_t { Class, Interface, Enum };

struct TypeDecl {
  std::string qualified_name;
  std::string simple_name;
  TypeKind kind = TypeKind::Class;
  std::optional<std::string> superclass_name;
  std::vector<FieldDecl> fields;
  std::vector<MethodDecl> methods;
  std::vector<TypeDecl> nested;
  /// Enum constant arguments and field initializers, kept for flow walks.
  std::vector<Expr> member_exprs;
  SourcePosition position;
};

struct ImportDecl {
  std::string qualified_name;
  bool on_demand = false;
  bool is_static = false;
};

struct CompilationUnit {
  std::string file;
  std::optional<std::string> package_name;
  std::vector<ImportDecl> imports;
  std::vector<TypeDecl> types;
  bool skipped = false;
  std::optional<Diagnostic> diagnostic;
};

} // namespace ehap::syntax

#endif // EHAP_SYNTAX_AST_H

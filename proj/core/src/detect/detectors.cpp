// SPDX-License-Identifier: Apache-2.0

#include "ehap/detect/detectors.h"

#include <algorithm>
#include <cctype>
#include <functional>

namespace ehap::detect {

using syntax::Block;
using syntax::Expr;
using syntax::ExprKind;
using syntax::Stmt;
using syntax::StmtKind;

std::set<std::string> default_log_methods() {
  return {"log",   "trace",  "debug", "info",  "warn",   "warning", "error",           "fatal",
          "severe", "fine", "finer", "finest", "print", "println", "printStackTrace"};
}

bool is_log_call(const Expr &e, const DetectorConfig &config) {
  return e.kind == ExprKind::MethodCall && config.log_methods.contains(e.name);
}

namespace {

using StmtFn = std::function<void(const Stmt &)>;
using ExprFn = std::function<void(const Expr &)>;

void walk_expr(const Expr &e, const ExprFn &on_expr) {
  on_expr(e);
  for (const auto &c : e.children)
    walk_expr(c, on_expr);
}

void walk_block(const Block &b, const StmtFn &on_stmt, const ExprFn &on_expr);

// Visits every statement and expression below `s`, nested try sections
// included.
void walk_stmt(const Stmt &s, const StmtFn &on_stmt, const ExprFn &on_expr) {
  on_stmt(s);
  for (const auto &init : s.init_stmts)
    walk_stmt(init, on_stmt, on_expr);
  for (const auto &r : s.resource_vars)
    walk_stmt(r, on_stmt, on_expr);
  for (const auto &r : s.resources)
    walk_expr(r, on_expr);
  for (const auto &v : s.vars)
    if (v.init)
      walk_expr(*v.init, on_expr);
  for (const auto &e : s.exprs)
    walk_expr(e, on_expr);
  for (const auto &b : s.blocks)
    walk_block(b, on_stmt, on_expr);
  for (const auto &c : s.catches)
    walk_block(c.body, on_stmt, on_expr);
  if (s.finally_block)
    walk_block(*s.finally_block, on_stmt, on_expr);
}

void walk_block(const Block &b, const StmtFn &on_stmt, const ExprFn &on_expr) {
  for (const auto &s : b.statements)
    walk_stmt(s, on_stmt, on_expr);
}

bool last_segment_is(std::string_view dotted, std::string_view want) {
  const auto dot = dotted.rfind('.');
  return (dot == std::string_view::npos ? dotted : dotted.substr(dot + 1)) == want;
}

// System.exit(..), Runtime.getRuntime().exit(..) / .halt(..), also with a
// qualified java.lang receiver.
bool is_abort_call(const Expr &e) {
  if (e.kind != ExprKind::MethodCall || (e.name != "exit" && e.name != "halt"))
    return false;
  const Expr *recv = e.receiver();
  if (!recv)
    return false;
  if (recv->kind == ExprKind::Name)
    return last_segment_is(recv->name, "System") || last_segment_is(recv->name, "Runtime");
  if (recv->kind == ExprKind::MethodCall && recv->name == "getRuntime") {
    const Expr *inner = recv->receiver();
    return inner && inner->kind == ExprKind::Name && last_segment_is(inner->name, "Runtime");
  }
  return false;
}

bool mentions_variable(const Expr &e, std::string_view var) {
  if (e.kind == ExprKind::Name) {
    const auto dot = e.name.find('.');
    if (std::string_view(e.name).substr(0, dot) == var)
      return true;
  }
  return std::any_of(e.children.begin(), e.children.end(),
                     [&](const Expr &c) { return mentions_variable(c, var); });
}

bool contains_ci(std::string_view text, std::string_view needle) {
  auto it = std::search(text.begin(), text.end(), needle.begin(), needle.end(),
                        [](char a, char b) {
                          return std::tolower(static_cast<unsigned char>(a)) ==
                                 std::tolower(static_cast<unsigned char>(b));
                        });
  return it != text.end();
}

bool returns_null(const Stmt &s) {
  return s.kind == StmtKind::Return && !s.exprs.empty() && s.exprs.front().is_null_literal();
}

struct BodyFacts {
  bool has_throw = false;
  bool destructive_throw = false;
  bool returns_null = false;
  bool calls_get_cause = false;
  bool calls_interrupt = false;
  bool aborts = false;
  int log_stmts = 0;
  int log_calls = 0;
};

BodyFacts body_facts(const syntax::CatchClause &clause, const DetectorConfig &config) {
  BodyFacts f;
  walk_block(
      clause.body,
      [&](const Stmt &s) {
        if (s.kind == StmtKind::Throw) {
          f.has_throw = true;
          const Expr &thrown = s.exprs.front();
          if ((thrown.kind == ExprKind::New || thrown.kind == ExprKind::AnonymousClass) &&
              !mentions_variable(thrown, clause.variable_name))
            f.destructive_throw = true;
        } else if (s.kind == StmtKind::Expression && is_log_call(s.exprs.front(), config)) {
          ++f.log_stmts;
        } else if (returns_null(s)) {
          f.returns_null = true;
        }
      },
      [&](const Expr &e) {
        if (e.kind != ExprKind::MethodCall)
          return;
        if (is_log_call(e, config))
          ++f.log_calls;
        if (e.name == "getCause")
          f.calls_get_cause = true;
        if (e.name == "interrupt")
          f.calls_interrupt = true;
        if (is_abort_call(e))
          f.aborts = true;
      });
  return f;
}

bool is_dummy(const Block &body, const DetectorConfig &config) {
  const auto &stmts = body.statements;
  if (stmts.empty())
    return false;
  std::size_t n = stmts.size();
  const Stmt &last = stmts.back();
  if (last.kind == StmtKind::Return && (last.exprs.empty() || returns_null(last)))
    --n;
  if (n == 0)
    return false; // a lone return logs nothing
  for (std::size_t i = 0; i < n; ++i)
    if (stmts[i].kind != StmtKind::Expression || !is_log_call(stmts[i].exprs.front(), config))
      return false;
  return true;
}

std::string join_types(const flow::FlowSet &flows) {
  std::set<std::string> names;
  for (const auto &f : flows)
    names.insert(f.type);
  std::string out;
  for (const auto &n : names) {
    if (!out.empty())
      out += ", ";
    out += n;
  }
  return out;
}

std::string join(const std::vector<std::string> &names) {
  std::string out;
  for (const auto &n : names) {
    if (!out.empty())
      out += ", ";
    out += n;
  }
  return out;
}

} // namespace

std::vector<Finding> classify_catch(const CatchContext &ctx, const types::TypeHierarchy &h,
                                    const DetectorConfig &config) {
  const syntax::CatchClause &clause = *ctx.clause;
  const syntax::SourcePosition &at = clause.position;
  const BodyFacts facts = body_facts(clause, config);
  std::vector<Finding> out;
  auto emit = [&](AntiPatternId id, std::size_t count = 0, std::string detail = {}) {
    out.push_back({id, at, count, std::move(detail)});
  };

  flow::FlowSet lower;
  for (const auto &f : ctx.caught) {
    if (!h.contains(f.type))
      continue;
    for (const auto &declared : ctx.resolved_declared_types) {
      if (h.contains(declared) && h.is_strict_subtype(f.type, declared)) {
        lower.insert(f);
        break;
      }
    }
  }
  std::set<std::string> lower_types;
  for (const auto &f : lower)
    lower_types.insert(f.type);
  const bool over_catch = lower_types.size() >= 2;

  const bool empty = clause.body.statements.empty();
  const bool dummy = is_dummy(clause.body, config);
  const bool interrupted = std::any_of(
      ctx.resolved_declared_types.begin(), ctx.resolved_declared_types.end(),
      [&](const std::string &t) {
        if (t == types::kInterruptedException)
          return true;
        return h.contains(t) && h.contains(types::kInterruptedException) &&
               h.is_subtype(t, types::kInterruptedException);
      });
  const bool todo = std::any_of(clause.body.comments.begin(), clause.body.comments.end(),
                                [](const syntax::Comment &c) {
                                  return contains_ci(c.text, "todo") ||
                                         contains_ci(c.text, "fixme");
                                });

  if (over_catch)
    emit(AntiPatternId::OverCatch, lower.size(), join_types(lower));
  if (over_catch && facts.aborts)
    emit(AntiPatternId::OverCatchAndAbort, lower.size(), join_types(lower));
  if (!ctx.try_uncaught.empty()) {
    std::string detail = join_types(ctx.try_uncaught);
    if (!ctx.enclosing_throws.empty())
      detail += "; enclosing method throws " + join(ctx.enclosing_throws);
    emit(AntiPatternId::UnhandledExceptions, ctx.try_uncaught.size(), std::move(detail));
  }
  if (ctx.caught.empty())
    emit(AntiPatternId::UnreachableHandler, ctx.try_uncaught.size());
  if (empty)
    emit(AntiPatternId::CatchAndDoNothing);
  if (facts.returns_null)
    emit(AntiPatternId::CatchAndReturnNull);
  if (ctx.is_generic)
    emit(AntiPatternId::CatchGeneric, 0, join(ctx.resolved_declared_types));
  if (facts.destructive_throw)
    emit(AntiPatternId::DestructiveWrapping);
  if (dummy)
    emit(AntiPatternId::DummyHandler);
  if (interrupted && !facts.has_throw && !facts.calls_interrupt)
    emit(AntiPatternId::IgnoringInterruptedException);
  if (empty && todo)
    emit(AntiPatternId::IncompleteImplementation);
  if (dummy && returns_null(clause.body.statements.back()))
    emit(AntiPatternId::LogAndReturnNull);
  if (facts.log_stmts >= 1 && facts.has_throw)
    emit(AntiPatternId::LogAndThrow);
  if (facts.log_calls >= 2)
    emit(AntiPatternId::MultiLineLog);
  if (ctx.inside_outer_try_block)
    emit(AntiPatternId::NestedTry);
  if (facts.calls_get_cause)
    emit(AntiPatternId::RelyingOnGetCause);
  if (!ctx.finally_escapes.empty())
    emit(AntiPatternId::ThrowWithinFinally, 0, join_types(ctx.finally_escapes));
  return out;
}

std::vector<Finding> classify_throws(const syntax::MethodDecl &m,
                                     const std::vector<std::string> &resolved_throws,
                                     const types::TypeHierarchy &h, const DetectorConfig &config) {
  std::vector<Finding> out;
  if (m.declared_throws.empty())
    return out;
  std::vector<std::string> generic;
  for (const auto &t : resolved_throws)
    if (h.is_generic(t))
      generic.push_back(t);
  if (!generic.empty())
    out.push_back({AntiPatternId::ThrowsGeneric, m.position, 0, join(generic)});
  const std::set<std::string> distinct(resolved_throws.begin(), resolved_throws.end());
  if (static_cast<long>(distinct.size()) >= config.kitchen_sink_threshold)
    out.push_back({AntiPatternId::ThrowsKitchenSink, m.position, 0,
                   join({distinct.begin(), distinct.end()})});
  return out;
}

} // namespace ehap::detect

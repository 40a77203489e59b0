// SPDX-License-Identifier: Apache-2.0

#include "ehap/flow/flow_engine.h"

namespace ehap::flow {

using syntax::Block;
using syntax::Expr;
using syntax::ExprKind;
using syntax::Stmt;
using syntax::StmtKind;

std::string_view to_string(FlowSource source) {
  switch (source) {
  case FlowSource::ExplicitThrow:
    return "ExplicitThrow";
  case FlowSource::CalleeThrowsClause:
    return "CalleeThrowsClause";
  case FlowSource::CalleeDoc:
    return "CalleeDoc";
  case FlowSource::LibraryCatalog:
    return "LibraryCatalog";
  }
  return "?";
}

namespace {

// Duplicates collapse onto the lowest-numbered source so the result does not
// depend on insertion order.
void add_flow(FlowSet &set, ExceptionFlow flow) {
  auto it = set.find(flow);
  if (it == set.end()) {
    set.insert(std::move(flow));
  } else if (flow.source < it->source) {
    set.erase(it);
    set.insert(std::move(flow));
  }
}

} // namespace

void merge_into(FlowSet &into, const FlowSet &from) {
  for (const auto &f : from)
    add_flow(into, f);
}

const ScopeVar *Scope::find(std::string_view name) const {
  for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
    if (it->name == name)
      return &*it;
  return nullptr;
}

void Scope::declare_locals(const Stmt &decl) {
  for (const auto &var : decl.vars) {
    std::string type = decl.type_name;
    if (type == "var" && var.init &&
        (var.init->kind == ExprKind::New || var.init->kind == ExprKind::AnonymousClass))
      type = var.init->name;
    push({var.name, std::move(type), {}});
  }
}

void Scope::declare_catch_param(const syntax::CatchClause &clause) {
  push({clause.variable_name,
        clause.declared_types.size() == 1 ? clause.declared_types.front() : std::string(),
        clause.declared_types});
}

class FlowEngine::Collector {
public:
  Collector(const FlowEngine &engine, const MethodContext &mc, Scope scope, FlowSet &out)
      : engine_(engine), mc_(mc), scope_(std::move(scope)), out_(out) {}

  void block(const Block &b) {
    const auto mark = scope_.mark();
    statements(b.statements);
    scope_.restore(mark);
  }

  void statements(const std::vector<Stmt> &stmts) {
    for (const auto &s : stmts)
      stmt(s);
  }

  void stmt(const Stmt &s) {
    switch (s.kind) {
    case StmtKind::Block:
      block(s.blocks.front());
      break;
    case StmtKind::LocalVarDecl:
      for (const auto &var : s.vars)
        if (var.init)
          expr(*var.init);
      scope_.declare_locals(s);
      break;
    case StmtKind::For: {
      const auto mark = scope_.mark();
      for (const auto &init : s.init_stmts)
        stmt(init);
      exprs_and_blocks(s);
      scope_.restore(mark);
      break;
    }
    case StmtKind::ForEach: {
      expr(s.exprs.front());
      const auto mark = scope_.mark();
      scope_.push({s.vars.front().name, s.type_name, {}});
      block(s.blocks.front());
      scope_.restore(mark);
      break;
    }
    case StmtKind::Switch: {
      for (const auto &e : s.exprs)
        expr(e);
      const auto mark = scope_.mark();
      for (const auto &group : s.blocks)
        statements(group.statements);
      scope_.restore(mark);
      break;
    }
    case StmtKind::Throw:
      expr(s.exprs.front());
      merge_into(out_, engine_.throw_flows(s, mc_, scope_));
      break;
    case StmtKind::Try: {
      const FlowSet protected_flows = engine_.try_region_flows(s, mc_, scope_);
      const CatchMatching m = engine_.match_catches(s, protected_flows, mc_.ctx);
      merge_into(out_, m.uncaught);
      merge_into(out_, engine_.finally_escaping_flows(s, mc_, scope_));
      break;
    }
    case StmtKind::Break:
    case StmtKind::Continue:
      break;
    case StmtKind::Expression:
    case StmtKind::If:
    case StmtKind::While:
    case StmtKind::DoWhile:
    case StmtKind::Return:
    case StmtKind::Synchronized:
      exprs_and_blocks(s);
      break;
    }
  }

  void expr(const Expr &e) {
    if (e.kind == ExprKind::Lambda)
      return;
    for (const auto &child : e.children)
      expr(child);
    if (e.kind == ExprKind::MethodCall || e.kind == ExprKind::New ||
        e.kind == ExprKind::AnonymousClass)
      merge_into(out_, engine_.resolve_call(e, mc_, scope_).flows);
  }

  void declare_resources(const Stmt &try_stmt) {
    for (const auto &r : try_stmt.resources)
      expr(r);
    for (const auto &decl : try_stmt.resource_vars)
      scope_.declare_locals(decl);
  }

private:
  void exprs_and_blocks(const Stmt &s) {
    for (const auto &e : s.exprs)
      expr(e);
    for (const auto &b : s.blocks)
      block(b);
  }

  const FlowEngine &engine_;
  const MethodContext &mc_;
  Scope scope_;
  FlowSet &out_;
};

FlowSet FlowEngine::collect_flows(const Block &region, const MethodContext &mc,
                                  Scope scope) const {
  FlowSet out;
  Collector c(*this, mc, std::move(scope), out);
  c.block(region);
  return out;
}

FlowSet FlowEngine::try_region_flows(const Stmt &try_stmt, const MethodContext &mc,
                                     Scope scope) const {
  FlowSet out;
  Collector c(*this, mc, std::move(scope), out);
  c.declare_resources(try_stmt);
  c.block(try_stmt.try_block());
  return out;
}

FlowSet FlowEngine::finally_escaping_flows(const Stmt &try_stmt, const MethodContext &mc,
                                           Scope scope) const {
  if (!try_stmt.finally_block)
    return {};
  return collect_flows(*try_stmt.finally_block, mc, std::move(scope));
}

std::vector<std::string> FlowEngine::clause_types(const syntax::CatchClause &clause,
                                                  const types::ResolutionContext &ctx) const {
  std::vector<std::string> out;
  for (const auto &t : clause.declared_types)
    out.push_back(types::exception_name(resolver_, ctx, t));
  return out;
}

CatchMatching FlowEngine::match_catches(const Stmt &try_stmt, const FlowSet &flows,
                                        const types::ResolutionContext &ctx) const {
  CatchMatching m;
  std::vector<std::vector<std::string>> declared;
  for (const auto &clause : try_stmt.catches)
    declared.push_back(clause_types(clause, ctx));
  m.per_clause.resize(declared.size());

  // Names missing from the hierarchy behave like synthesized children of
  // java.lang.Exception.
  auto caught_by = [&](const std::string &type, const std::string &handler) {
    if (type == handler)
      return true;
    if (!h_.contains(handler))
      return false;
    if (!h_.contains(type))
      return h_.contains(types::kException) && h_.is_subtype(types::kException, handler);
    return h_.is_subtype(type, handler);
  };

  for (const auto &flow : flows) {
    bool assigned = false;
    for (std::size_t i = 0; i < declared.size() && !assigned; ++i) {
      for (const auto &handler : declared[i]) {
        if (caught_by(flow.type, handler)) {
          m.per_clause[i].insert(flow);
          assigned = true;
          break;
        }
      }
    }
    if (!assigned)
      m.uncaught.insert(flow);
  }
  return m;
}

FlowSet FlowEngine::throw_flows(const Stmt &throw_stmt, const MethodContext &mc,
                                const Scope &scope) const {
  FlowSet out;
  const Expr &thrown = throw_stmt.exprs.front();
  auto add = [&](std::string type) {
    add_flow(out, {std::move(type), throw_stmt.position, FlowSource::ExplicitThrow});
  };
  if (thrown.kind == ExprKind::New || thrown.kind == ExprKind::AnonymousClass) {
    add(types::exception_name(resolver_, mc.ctx, thrown.name));
    return out;
  }
  if (thrown.kind == ExprKind::Name && thrown.name.find('.') == std::string::npos) {
    if (const ScopeVar *var = scope.find(thrown.name); var && !var->catch_types.empty()) {
      for (const auto &t : var->catch_types)
        add(types::exception_name(resolver_, mc.ctx, t));
      return out;
    }
  }
  add(std::string(types::kUnknownThrown));
  return out;
}

std::optional<std::string> FlowEngine::variable_type(std::string_view name,
                                                     const MethodContext &mc,
                                                     const Scope &scope) const {
  if (const ScopeVar *var = scope.find(name))
    return var->type_written;
  if (mc.method)
    for (const auto &p : mc.method->params)
      if (p.name == name)
        return p.type_name;
  for (auto it = mc.ctx.type_chain.rbegin(); it != mc.ctx.type_chain.rend(); ++it)
    for (const auto &f : (*it)->fields)
      if (f.name == name)
        return f.type_name;
  return std::nullopt;
}

// A declared type is evident even when it is outside the universe: the
// written name then matches nothing, so the call stays unresolved instead of
// picking up every same-named method.
std::string FlowEngine::resolve_or_written(const MethodContext &mc, std::string_view written) const {
  if (auto r = resolver_.resolve(mc.ctx, written))
    return *r;
  return std::string(written);
}

std::optional<std::string> FlowEngine::receiver_type(const Expr &recv, const MethodContext &mc,
                                                     const Scope &scope) const {
  switch (recv.kind) {
  case ExprKind::Name: {
    const auto dot = recv.name.find('.');
    const std::string head = recv.name.substr(0, dot);
    if (auto vt = variable_type(head, mc, scope)) {
      if (dot != std::string::npos || vt->empty() || *vt == "var")
        return std::nullopt;
      return resolve_or_written(mc, *vt);
    }
    return resolver_.resolve(mc.ctx, recv.name);
  }
  case ExprKind::New:
  case ExprKind::AnonymousClass:
  case ExprKind::Cast:
    return resolve_or_written(mc, recv.name);
  case ExprKind::This:
    if (recv.name.empty())
      return mc.owner() ? std::optional<std::string>(mc.owner()->qualified_name) : std::nullopt;
    return resolver_.resolve(mc.ctx, recv.name);
  case ExprKind::Super:
    if (const syntax::TypeDecl *owner = mc.owner())
      if (const IndexedType *t = index_.type(owner->qualified_name))
        return t->superclass;
    return std::nullopt;
  case ExprKind::Literal:
    if (recv.literal == syntax::LiteralKind::String)
      return std::string("java.lang.String");
    return std::nullopt;
  case ExprKind::ClassLiteral:
    return std::string("java.lang.Class");
  default:
    return std::nullopt;
  }
}

bool FlowEngine::add_methods(const std::vector<const IndexedMethod *> &methods,
                             const syntax::SourcePosition &at, FlowSet &out) const {
  for (const IndexedMethod *m : methods) {
    for (const auto &t : m->throws_types)
      add_flow(out, {t, at, FlowSource::CalleeThrowsClause});
    for (const auto &t : m->doc_types)
      add_flow(out, {t, at, FlowSource::CalleeDoc});
  }
  return !methods.empty();
}

bool FlowEngine::add_catalog(const std::vector<std::string> &types,
                             const syntax::SourcePosition &at, FlowSet &out) const {
  for (const auto &t : types)
    add_flow(out, {t, at, FlowSource::LibraryCatalog});
  return true;
}

bool FlowEngine::lookup_typed(std::string_view type, std::string_view method, std::size_t arity,
                              const syntax::SourcePosition &at, FlowSet &out) const {
  const ChainLookup found = index_.find_in_chain(type, method, arity);
  if (!found.methods.empty())
    return add_methods(found.methods, at, out);
  if (method == "<init>" && found.project_type)
    return true; // implicit constructor
  if (found.library_ancestor)
    if (const auto *types = catalog_.find(*found.library_ancestor, method, arity))
      return add_catalog(*types, at, out);
  return false;
}

bool FlowEngine::lookup_by_name(std::string_view method, std::size_t arity,
                                const syntax::SourcePosition &at, FlowSet &out) const {
  if (add_methods(index_.find_by_name(method, arity), at, out))
    return true;
  if (catalog_.has_name(method, arity))
    return add_catalog(catalog_.find_by_name(method, arity), at, out);
  return false;
}

CallResolution FlowEngine::resolve_call(const Expr &call, const MethodContext &mc,
                                        const Scope &scope) const {
  CallResolution r;
  const syntax::SourcePosition &at = call.position;
  const std::size_t arity = call.arg_count();

  if (call.kind == ExprKind::New || call.kind == ExprKind::AnonymousClass) {
    if (auto type = resolver_.resolve(mc.ctx, call.name))
      r.resolved = lookup_typed(*type, "<init>", arity, at, r.flows);
    return r;
  }
  if (call.kind != ExprKind::MethodCall)
    return r;

  const Expr *recv = call.receiver();
  const syntax::TypeDecl *owner = mc.owner();

  if (call.name == "<init>") { // this(...) or super(...)
    std::optional<std::string> target;
    if (recv && recv->kind == ExprKind::This && owner)
      target = owner->qualified_name;
    else if (owner)
      if (const IndexedType *t = index_.type(owner->qualified_name))
        target = t->superclass;
    if (!target) {
      r.resolved = true; // java.lang.Object()
      return r;
    }
    r.resolved = lookup_typed(*target, "<init>", arity, at, r.flows);
    return r;
  }

  const bool implicit_self =
      !recv || ((recv->kind == ExprKind::This || recv->kind == ExprKind::Super) && recv->name.empty());
  if (implicit_self) {
    std::vector<std::string> starts;
    if (recv && recv->kind == ExprKind::Super) {
      if (auto st = receiver_type(*recv, mc, scope))
        starts.push_back(*st);
    } else if (recv) {
      if (owner)
        starts.push_back(owner->qualified_name);
    } else {
      for (auto it = mc.ctx.type_chain.rbegin(); it != mc.ctx.type_chain.rend(); ++it)
        starts.push_back((*it)->qualified_name);
    }
    for (const auto &start : starts) {
      if (lookup_typed(start, call.name, arity, at, r.flows)) {
        r.resolved = true;
        return r;
      }
    }
    r.resolved = lookup_by_name(call.name, arity, at, r.flows);
    return r;
  }

  if (auto type = receiver_type(*recv, mc, scope)) {
    r.resolved = lookup_typed(*type, call.name, arity, at, r.flows);
    return r;
  }
  r.resolved = lookup_by_name(call.name, arity, at, r.flows);
  return r;
}

} // namespace ehap::flow

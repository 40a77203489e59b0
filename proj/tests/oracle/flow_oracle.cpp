// SPDX-License-Identifier: Apache-2.0

#include "flow_oracle.h"

#include <optional>
#include <set>

namespace ehap::oracle {

using flow::FlowSource;
using syntax::Block;
using syntax::Expr;
using syntax::ExprKind;
using syntax::SourcePosition;
using syntax::Stmt;
using syntax::StmtKind;

FlowMap to_map(const flow::FlowSet &flows) {
  FlowMap out;
  for (const auto &f : flows)
    out[{f.origin, f.type}] = f.source;
  return out;
}

namespace {

void put(FlowMap &m, const SourcePosition &at, const std::string &type, FlowSource src) {
  auto [it, fresh] = m.emplace(std::make_pair(at, type), src);
  if (!fresh && src < it->second)
    it->second = src;
}

struct ProjectType {
  const syntax::TypeDecl *decl;
  types::ResolutionContext ctx; // includes decl itself
};

enum class Region { Try, Catch, Finally };

struct Frame {
  const Stmt *try_stmt;
  Region region;
};

struct Site {
  std::vector<Frame> path;
  FlowMap raw;
};

struct Var {
  std::string name;
  std::string type;
  std::vector<std::string> catch_types;
};

class Oracle {
public:
  Oracle(const std::vector<syntax::CompilationUnit> &units, const types::TypeResolver &resolver,
         const types::TypeHierarchy &h, const flow::LibraryCatalog &catalog)
      : resolver_(resolver), h_(h), catalog_(catalog) {
    for (const auto &u : units) {
      if (u.skipped)
        continue;
      for (const auto &t : u.types)
        collect(t, types::ResolutionContext{&u, {}});
    }
  }

  std::map<SourcePosition, OracleTry> run() {
    for (const auto &[name, pt] : types_) {
      for (const auto &m : pt.decl->methods) {
        if (!m.body)
          continue;
        ctx_ = &pt.ctx;
        method_ = &m;
        env_.clear();
        path_.clear();
        walk_block(*m.body);
      }
    }
    std::map<SourcePosition, OracleTry> out;
    for (const Stmt *t : tries_)
      out[t->position] = evaluate(*t);
    return out;
  }

private:
  void collect(const syntax::TypeDecl &d, const types::ResolutionContext &outer) {
    ProjectType pt{&d, outer.nested(d)};
    types_.emplace(d.qualified_name, pt);
    for (const auto &n : d.nested)
      collect(n, pt.ctx);
  }

  // ---- subtype checks, walking parent links directly --------------------

  bool below(const std::string &type, const std::string &handler) const {
    if (type == handler)
      return true;
    if (!h_.contains(handler))
      return false;
    std::optional<std::string> cur = type;
    if (!h_.contains(type))
      cur = std::string(types::kException);
    while (cur) {
      if (*cur == handler)
        return true;
      cur = h_.get(*cur).parent;
    }
    return false;
  }

  std::optional<std::size_t> handler_for(const Stmt &t, const std::string &type) const {
    for (std::size_t i = 0; i < t.catches.size(); ++i)
      for (const auto &written : t.catches[i].declared_types)
        if (below(type, types::exception_name(resolver_, *ctx_of(t), written)))
          return i;
    return std::nullopt;
  }

  // ---- evaluation --------------------------------------------------------

  // Flows of `s` that get past every try between the frame at `k` and the
  // site.
  FlowMap escape(const Site &s, std::size_t k) const {
    FlowMap flows = s.raw;
    for (std::size_t j = s.path.size(); j-- > k + 1;) {
      const Frame &f = s.path[j];
      if (f.region == Region::Catch)
        return {};
      if (f.region == Region::Try) {
        FlowMap kept;
        for (const auto &[key, src] : flows)
          if (!handler_for(*f.try_stmt, key.second))
            kept[key] = src;
        flows = std::move(kept);
      }
    }
    return flows;
  }

  OracleTry evaluate(const Stmt &t) const {
    OracleTry r;
    r.position = t.position;
    for (const Site &s : sites_) {
      for (std::size_t k = 0; k < s.path.size(); ++k) {
        if (s.path[k].try_stmt != &t)
          continue;
        FlowMap &dst = s.path[k].region == Region::Try       ? r.flows
                       : s.path[k].region == Region::Finally ? r.finally_flows
                                                             : scratch_;
        for (const auto &[key, src] : escape(s, k))
          put(dst, key.first, key.second, src);
        break;
      }
    }
    r.per_clause.resize(t.catches.size());
    for (const auto &[key, src] : r.flows) {
      if (auto i = handler_for(t, key.second))
        r.per_clause[*i][key] = src;
      else
        r.uncaught[key] = src;
    }
    return r;
  }

  // ---- enumeration -------------------------------------------------------

  void walk_block(const Block &b) {
    const std::size_t mark = env_.size();
    for (const auto &s : b.statements)
      walk_stmt(s);
    env_.resize(mark);
  }

  void declare(const Stmt &decl) {
    for (const auto &v : decl.vars) {
      std::string type = decl.type_name;
      if (type == "var" && v.init &&
          (v.init->kind == ExprKind::New || v.init->kind == ExprKind::AnonymousClass))
        type = v.init->name;
      env_.push_back({v.name, type, {}});
    }
  }

  void walk_stmt(const Stmt &s) {
    switch (s.kind) {
    case StmtKind::LocalVarDecl:
      for (const auto &v : s.vars)
        if (v.init)
          walk_expr(*v.init);
      declare(s);
      return;
    case StmtKind::For: {
      const std::size_t mark = env_.size();
      for (const auto &i : s.init_stmts)
        walk_stmt(i);
      for (const auto &e : s.exprs)
        walk_expr(e);
      walk_block(s.blocks.front());
      env_.resize(mark);
      return;
    }
    case StmtKind::ForEach: {
      walk_expr(s.exprs.front());
      const std::size_t mark = env_.size();
      env_.push_back({s.vars.front().name, s.type_name, {}});
      walk_block(s.blocks.front());
      env_.resize(mark);
      return;
    }
    case StmtKind::Switch: {
      for (const auto &e : s.exprs)
        walk_expr(e);
      const std::size_t mark = env_.size();
      for (const auto &g : s.blocks)
        for (const auto &inner : g.statements)
          walk_stmt(inner);
      env_.resize(mark);
      return;
    }
    case StmtKind::Throw: {
      walk_expr(s.exprs.front());
      Site site{path_, {}};
      for (const auto &t : thrown_types(s.exprs.front()))
        put(site.raw, s.position, t, FlowSource::ExplicitThrow);
      sites_.push_back(std::move(site));
      return;
    }
    case StmtKind::Try: {
      tries_.push_back(&s);
      try_ctx_[&s] = ctx_;
      const std::size_t mark = env_.size();
      path_.push_back({&s, Region::Try});
      for (const auto &r : s.resources)
        walk_expr(r);
      for (const auto &d : s.resource_vars)
        declare(d);
      walk_block(s.try_block());
      env_.resize(mark);
      path_.back().region = Region::Catch;
      for (const auto &c : s.catches) {
        env_.push_back({c.variable_name,
                        c.declared_types.size() == 1 ? c.declared_types.front() : "",
                        c.declared_types});
        walk_block(c.body);
        env_.resize(mark);
      }
      if (s.finally_block) {
        path_.back().region = Region::Finally;
        walk_block(*s.finally_block);
      }
      path_.pop_back();
      return;
    }
    default:
      for (const auto &e : s.exprs)
        walk_expr(e);
      for (const auto &b : s.blocks)
        walk_block(b);
      return;
    }
  }

  void walk_expr(const Expr &e) {
    if (e.kind == ExprKind::Lambda)
      return;
    for (const auto &c : e.children)
      walk_expr(c);
    if (e.kind == ExprKind::MethodCall || e.kind == ExprKind::New ||
        e.kind == ExprKind::AnonymousClass) {
      Site site{path_, {}};
      call_flows(e, site.raw);
      sites_.push_back(std::move(site));
    }
  }

  std::vector<std::string> thrown_types(const Expr &e) const {
    if (e.kind == ExprKind::New || e.kind == ExprKind::AnonymousClass)
      return {types::exception_name(resolver_, *ctx_, e.name)};
    if (e.kind == ExprKind::Name && e.name.find('.') == std::string::npos) {
      for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
        if (it->name != e.name)
          continue;
        if (it->catch_types.empty())
          break;
        std::vector<std::string> out;
        for (const auto &t : it->catch_types)
          out.push_back(types::exception_name(resolver_, *ctx_, t));
        return out;
      }
    }
    return {std::string(types::kUnknownThrown)};
  }

  // ---- callee lookup -----------------------------------------------------

  const syntax::TypeDecl *owner() const { return ctx_->innermost(); }

  const types::ResolutionContext *ctx_of(const Stmt &t) const { return try_ctx_.at(&t); }

  std::optional<std::string> superclass_of(const std::string &type) const {
    auto it = types_.find(type);
    if (it == types_.end() || !it->second.decl->superclass_name)
      return std::nullopt;
    return resolver_.resolve(it->second.ctx, *it->second.decl->superclass_name);
  }

  void add_decl(const syntax::MethodDecl &m, const types::ResolutionContext &ctx,
                const SourcePosition &at, FlowMap &out) const {
    for (const auto &t : m.declared_throws)
      put(out, at, types::exception_name(resolver_, ctx, t), FlowSource::CalleeThrowsClause);
    for (const auto &t : m.doc_throws)
      put(out, at, types::exception_name(resolver_, ctx, t), FlowSource::CalleeDoc);
  }

  bool typed(const std::string &start, const std::string &name, std::size_t arity,
             const SourcePosition &at, FlowMap &out) const {
    std::set<std::string> visited;
    std::string cur = start;
    while (true) {
      auto it = types_.find(cur);
      if (it == types_.end()) {
        const auto *entry = catalog_.find(cur, name, arity);
        if (!entry)
          return false;
        for (const auto &t : *entry)
          put(out, at, t, FlowSource::LibraryCatalog);
        return true;
      }
      if (!visited.insert(cur).second)
        return false;
      bool found = false;
      for (const auto &m : it->second.decl->methods) {
        if (m.name == name && m.arity() == arity) {
          add_decl(m, it->second.ctx, at, out);
          found = true;
        }
      }
      if (found || name == "<init>")
        return true;
      auto sup = superclass_of(cur);
      if (!sup)
        return false;
      cur = *sup;
    }
  }

  bool by_name(const std::string &name, std::size_t arity, const SourcePosition &at,
               FlowMap &out) const {
    bool found = false;
    for (const auto &[qn, pt] : types_) {
      for (const auto &m : pt.decl->methods) {
        if (!m.is_constructor() && m.name == name && m.arity() == arity) {
          add_decl(m, pt.ctx, at, out);
          found = true;
        }
      }
    }
    if (found)
      return true;
    const std::string suffix = "#" + name + "/" + std::to_string(arity);
    for (const auto &[key, exceptions] : catalog_.entries()) {
      if (key.size() > suffix.size() && key.ends_with(suffix)) {
        for (const auto &t : exceptions)
          put(out, at, t, FlowSource::LibraryCatalog);
        found = true;
      }
    }
    return found;
  }

  std::optional<std::string> declared_type_of(const std::string &var) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->name == var)
        return it->type;
    for (const auto &p : method_->params)
      if (p.name == var)
        return p.type_name;
    for (auto t = ctx_->type_chain.rbegin(); t != ctx_->type_chain.rend(); ++t)
      for (const auto &f : (*t)->fields)
        if (f.name == var)
          return f.type_name;
    return std::nullopt;
  }

  std::string exact(const std::string &written) const {
    auto r = resolver_.resolve(*ctx_, written);
    return r ? *r : written;
  }

  // nullopt: no evident static type.
  std::optional<std::string> evident(const Expr &recv) const {
    switch (recv.kind) {
    case ExprKind::Name: {
      const auto dot = recv.name.find('.');
      if (auto t = declared_type_of(recv.name.substr(0, dot))) {
        if (dot != std::string::npos || t->empty() || *t == "var")
          return std::nullopt;
        return exact(*t);
      }
      return resolver_.resolve(*ctx_, recv.name);
    }
    case ExprKind::New:
    case ExprKind::AnonymousClass:
    case ExprKind::Cast:
      return exact(recv.name);
    case ExprKind::This:
      if (recv.name.empty())
        return owner()->qualified_name;
      return resolver_.resolve(*ctx_, recv.name);
    case ExprKind::Super:
      return superclass_of(owner()->qualified_name);
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

  void call_flows(const Expr &e, FlowMap &out) const {
    const std::size_t n = e.arg_count();
    if (e.kind != ExprKind::MethodCall) {
      if (auto t = resolver_.resolve(*ctx_, e.name))
        typed(*t, "<init>", n, e.position, out);
      return;
    }
    const Expr *recv = e.receiver();
    if (e.name == "<init>") {
      std::optional<std::string> target =
          recv && recv->kind == ExprKind::This ? std::optional<std::string>(owner()->qualified_name)
                                               : superclass_of(owner()->qualified_name);
      if (target)
        typed(*target, "<init>", n, e.position, out);
      return;
    }
    const bool self = !recv || ((recv->kind == ExprKind::This || recv->kind == ExprKind::Super) &&
                                recv->name.empty());
    if (self) {
      std::vector<std::string> starts;
      if (recv && recv->kind == ExprKind::Super) {
        if (auto s = superclass_of(owner()->qualified_name))
          starts.push_back(*s);
      } else if (recv) {
        starts.push_back(owner()->qualified_name);
      } else {
        for (auto t = ctx_->type_chain.rbegin(); t != ctx_->type_chain.rend(); ++t)
          starts.push_back((*t)->qualified_name);
      }
      for (const auto &s : starts) {
        FlowMap tmp;
        if (typed(s, e.name, n, e.position, tmp)) {
          out.insert(tmp.begin(), tmp.end());
          return;
        }
      }
      by_name(e.name, n, e.position, out);
      return;
    }
    if (auto t = evident(*recv)) {
      typed(*t, e.name, n, e.position, out);
      return;
    }
    by_name(e.name, n, e.position, out);
  }

  const types::TypeResolver &resolver_;
  const types::TypeHierarchy &h_;
  const flow::LibraryCatalog &catalog_;
  std::map<std::string, ProjectType> types_;

  const types::ResolutionContext *ctx_ = nullptr;
  const syntax::MethodDecl *method_ = nullptr;
  std::vector<Var> env_;
  std::vector<Frame> path_;

  std::vector<const Stmt *> tries_;
  std::map<const Stmt *, const types::ResolutionContext *> try_ctx_;
  std::vector<Site> sites_;
  mutable FlowMap scratch_; // sink for sites in catch bodies
};

} // namespace

std::map<SourcePosition, OracleTry>
oracle_tries(const std::vector<syntax::CompilationUnit> &units,
             const types::TypeResolver &resolver, const types::TypeHierarchy &hierarchy,
             const flow::LibraryCatalog &catalog) {
  return Oracle(units, resolver, hierarchy, catalog).run();
}

} // namespace ehap::oracle

// SPDX-License-Identifier: Apache-2.0
//
// Exception flow collection and catch matching.
//
// A flow is one exception type that may escape from one program point. Flows
// come from four sources: explicit `throw` statements, throws clauses of
// project callees, `@throws` doc tags of project callees, and the library
// catalog. A nested try statement contributes only what its own catches let
// through plus whatever its finally block can throw.

#ifndef EHAP_FLOW_FLOW_ENGINE_H
#define EHAP_FLOW_FLOW_ENGINE_H

#include "ehap/flow/catalog.h"
#include "ehap/flow/project_index.h"
#include "ehap/syntax/ast.h"
#include "ehap/types/hierarchy.h"
#include "ehap/types/resolver.h"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ehap::flow {

enum class FlowSource : std::uint8_t {
  ExplicitThrow,
  CalleeThrowsClause,
  CalleeDoc,
  LibraryCatalog,
};

std::string_view to_string(FlowSource source);

struct ExceptionFlow {
  std::string type;
  syntax::SourcePosition origin;
  FlowSource source = FlowSource::ExplicitThrow;
};

/// Flows are identified by (origin, type); the source of the first inserted
/// duplicate wins.
struct FlowOrder {
  bool operator()(const ExceptionFlow &a, const ExceptionFlow &b) const {
    if (a.origin != b.origin)
      return a.origin < b.origin;
    return a.type < b.type;
  }
};
using FlowSet = std::set<ExceptionFlow, FlowOrder>;

void merge_into(FlowSet &into, const FlowSet &from);

struct CatchMatching {
  std::vector<FlowSet> per_clause; // parallel to the try's catches
  FlowSet uncaught;
};

/// A variable visible at some point of a method body.
struct ScopeVar {
  std::string name;
  std::string type_written;
  /// Declared types when the variable is a catch parameter.
  std::vector<std::string> catch_types;
};

/// Lexical variable scope; later declarations shadow earlier ones.
class Scope {
public:
  void push(ScopeVar var) { vars_.push_back(std::move(var)); }
  std::size_t mark() const { return vars_.size(); }
  void restore(std::size_t mark) { vars_.resize(mark); }
  const ScopeVar *find(std::string_view name) const;

  void declare_locals(const syntax::Stmt &local_var_decl);
  void declare_catch_param(const syntax::CatchClause &clause);

private:
  std::vector<ScopeVar> vars_;
};

/// The method whose body is being analyzed.
struct MethodContext {
  types::ResolutionContext ctx; // innermost type is the owner
  const syntax::MethodDecl *method = nullptr;

  const syntax::TypeDecl *owner() const { return ctx.innermost(); }
};

struct CallResolution {
  FlowSet flows;
  bool resolved = false;
};

class FlowEngine {
public:
  FlowEngine(const types::TypeHierarchy &hierarchy, const types::TypeResolver &resolver,
             const LibraryCatalog &catalog, const ProjectIndex &index)
      : h_(hierarchy), resolver_(resolver), catalog_(catalog), index_(index) {}

  /// Flows that may escape `region`. Catch bodies of nested try statements
  /// and lambda/anonymous class bodies are not walked; a nested try
  /// contributes its uncaught flows plus its finally-escaping flows.
  FlowSet collect_flows(const syntax::Block &region, const MethodContext &mc,
                        Scope scope) const;

  /// Flows of a try statement's protected region: resource expressions plus
  /// the try block, with resource variables in scope.
  FlowSet try_region_flows(const syntax::Stmt &try_stmt, const MethodContext &mc,
                           Scope scope) const;

  /// Assigns each flow to the first catch clause (source order) declaring a
  /// supertype of it; the rest are uncaught.
  CatchMatching match_catches(const syntax::Stmt &try_stmt, const FlowSet &flows,
                              const types::ResolutionContext &ctx) const;

  /// Flows that may escape the finally block; empty without one.
  FlowSet finally_escaping_flows(const syntax::Stmt &try_stmt, const MethodContext &mc,
                                 Scope scope) const;

  /// Flows contributed by one call site (MethodCall, New or AnonymousClass).
  /// `resolved` is false when neither the project nor the catalog knows it.
  CallResolution resolve_call(const syntax::Expr &call, const MethodContext &mc,
                              const Scope &scope) const;

  /// Explicit flows of one throw statement.
  FlowSet throw_flows(const syntax::Stmt &throw_stmt, const MethodContext &mc,
                      const Scope &scope) const;

  /// Resolved declared types of a catch clause (UNRESOLVED names keep their
  /// written form).
  std::vector<std::string> clause_types(const syntax::CatchClause &clause,
                                        const types::ResolutionContext &ctx) const;

  /// Statically evident class of a receiver expression, if any.
  std::optional<std::string> receiver_type(const syntax::Expr &receiver,
                                           const MethodContext &mc, const Scope &scope) const;

  const types::TypeHierarchy &hierarchy() const { return h_; }
  const types::TypeResolver &resolver() const { return resolver_; }

private:
  class Collector;

  std::string resolve_or_written(const MethodContext &mc, std::string_view written) const;
  std::optional<std::string> variable_type(std::string_view name, const MethodContext &mc,
                                           const Scope &scope) const;
  bool add_methods(const std::vector<const IndexedMethod *> &methods,
                   const syntax::SourcePosition &at, FlowSet &out) const;
  bool add_catalog(const std::vector<std::string> &types, const syntax::SourcePosition &at,
                   FlowSet &out) const;
  bool lookup_typed(std::string_view type, std::string_view method, std::size_t arity,
                    const syntax::SourcePosition &at, FlowSet &out) const;
  bool lookup_by_name(std::string_view method, std::size_t arity,
                      const syntax::SourcePosition &at, FlowSet &out) const;

  const types::TypeHierarchy &h_;
  const types::TypeResolver &resolver_;
  const LibraryCatalog &catalog_;
  const ProjectIndex &index_;
};

} // namespace ehap::flow

#endif // EHAP_FLOW_FLOW_ENGINE_H

// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_TYPES_RESOLVER_H
#define EHAP_TYPES_RESOLVER_H

#include "ehap/syntax/ast.h"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace ehap::types {

/// Where a name is written: its compilation unit and the chain of enclosing
/// type declarations, outermost first.
struct ResolutionContext {
  const syntax::CompilationUnit *unit = nullptr;
  std::vector<const syntax::TypeDecl *> type_chain;

  const syntax::TypeDecl *innermost() const {
    return type_chain.empty() ? nullptr : type_chain.back();
  }
  ResolutionContext nested(const syntax::TypeDecl &decl) const {
    ResolutionContext ctx = *this;
    ctx.type_chain.push_back(&decl);
    return ctx;
  }
};

/// The set of qualified type names the resolver may bind to: seed
/// exceptions, every project type declaration and every class named in the
/// library catalog. Nested types use `$`.
class TypeUniverse {
public:
  void add(std::string qualified_name) { names_.insert(std::move(qualified_name)); }
  void add_units(const std::vector<syntax::CompilationUnit> &units);
  bool contains(std::string_view name) const { return names_.contains(std::string(name)); }
  std::size_t size() const { return names_.size(); }

private:
  std::unordered_set<std::string> names_;
};

/// Resolves a written type name to a qualified name. nullopt means
/// UNRESOLVED. The order is: already-qualified match, single-type import,
/// types nested in the same compilation unit, same package, on-demand
/// imports (ambiguous matches give UNRESOLVED), implicit `java.lang`.
class TypeResolver {
public:
  explicit TypeResolver(const TypeUniverse &universe) : universe_(&universe) {}

  std::optional<std::string> resolve(const ResolutionContext &ctx,
                                     std::string_view name) const;

  const TypeUniverse &universe() const { return *universe_; }

private:
  std::optional<std::string> resolve_simple(const ResolutionContext &ctx,
                                            std::string_view name) const;
  std::optional<std::string> known_variant(std::string_view dotted) const;

  const TypeUniverse *universe_;
};

/// Strips a trailing array suffix (`[]`) from a written type.
std::string_view element_type(std::string_view written);

} // namespace ehap::types

#endif // EHAP_TYPES_RESOLVER_H

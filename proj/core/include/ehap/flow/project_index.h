// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_FLOW_PROJECT_INDEX_H
#define EHAP_FLOW_PROJECT_INDEX_H

#include "ehap/syntax/ast.h"
#include "ehap/types/resolver.h"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ehap::flow {

/// A project method with its throws clause and doc tags resolved in the
/// method's own declaration context.
struct IndexedMethod {
  const syntax::MethodDecl *decl = nullptr;
  std::string owner;
  std::vector<std::string> throws_types;
  std::vector<std::string> doc_types;
};

struct IndexedType {
  const syntax::TypeDecl *decl = nullptr;
  types::ResolutionContext ctx;
  /// Resolved superclass; may name a non-project (library) class.
  std::optional<std::string> superclass;
  std::map<std::string, std::vector<std::size_t>> methods; // "name/arity" -> index
  bool has_constructors = false;
};

/// Result of looking a method up along a class's superclass chain.
struct ChainLookup {
  std::vector<const IndexedMethod *> methods;
  /// Set when the chain leaves the project: the first non-project ancestor,
  /// which is where a catalog lookup continues.
  std::optional<std::string> library_ancestor;
  /// True when the starting type is a project type.
  bool project_type = false;
};

/// Every method declared in the analyzed units, for callee resolution.
/// Anonymous and lambda bodies are not indexed.
class ProjectIndex {
public:
  static ProjectIndex build(const std::vector<syntax::CompilationUnit> &units,
                            const types::TypeResolver &resolver);

  const IndexedType *type(std::string_view qualified_name) const;
  ChainLookup find_in_chain(std::string_view qualified_name, std::string_view method,
                            std::size_t arity) const;
  std::vector<const IndexedMethod *> find_by_name(std::string_view method,
                                                  std::size_t arity) const;
  std::size_t method_count() const { return methods_.size(); }

  static std::string method_key(std::string_view name, std::size_t arity);

private:
  std::vector<IndexedMethod> methods_;
  std::map<std::string, IndexedType, std::less<>> types_;
  std::map<std::string, std::vector<std::size_t>, std::less<>> by_name_;
};

} // namespace ehap::flow

#endif // EHAP_FLOW_PROJECT_INDEX_H

// SPDX-License-Identifier: Apache-2.0

#include "ehap/flow/project_index.h"

#include "ehap/types/hierarchy.h"

#include <set>

namespace ehap::flow {

std::string ProjectIndex::method_key(std::string_view name, std::size_t arity) {
  return std::string(name) + "/" + std::to_string(arity);
}

namespace {

void index_type(const syntax::TypeDecl &decl, const types::ResolutionContext &outer,
                const types::TypeResolver &resolver, std::vector<IndexedMethod> &methods,
                std::map<std::string, IndexedType, std::less<>> &types,
                std::map<std::string, std::vector<std::size_t>, std::less<>> &by_name) {
  const types::ResolutionContext ctx = outer.nested(decl);
  IndexedType entry;
  entry.decl = &decl;
  entry.ctx = ctx;
  if (decl.superclass_name)
    entry.superclass = resolver.resolve(ctx, *decl.superclass_name);
  for (const auto &m : decl.methods) {
    IndexedMethod im;
    im.decl = &m;
    im.owner = decl.qualified_name;
    for (const auto &t : m.declared_throws)
      im.throws_types.push_back(types::exception_name(resolver, ctx, t));
    for (const auto &t : m.doc_throws)
      im.doc_types.push_back(types::exception_name(resolver, ctx, t));
    const std::size_t idx = methods.size();
    methods.push_back(std::move(im));
    const std::string key = ProjectIndex::method_key(m.name, m.arity());
    entry.methods[key].push_back(idx);
    if (m.is_constructor())
      entry.has_constructors = true;
    else
      by_name[key].push_back(idx);
  }
  types.emplace(decl.qualified_name, std::move(entry));
  for (const auto &n : decl.nested)
    index_type(n, ctx, resolver, methods, types, by_name);
}

} // namespace

ProjectIndex ProjectIndex::build(const std::vector<syntax::CompilationUnit> &units,
                                 const types::TypeResolver &resolver) {
  ProjectIndex index;
  for (const auto &unit : units) {
    if (unit.skipped)
      continue;
    types::ResolutionContext ctx{&unit, {}};
    for (const auto &decl : unit.types)
      index_type(decl, ctx, resolver, index.methods_, index.types_, index.by_name_);
  }
  return index;
}

const IndexedType *ProjectIndex::type(std::string_view qualified_name) const {
  auto it = types_.find(qualified_name);
  return it == types_.end() ? nullptr : &it->second;
}

ChainLookup ProjectIndex::find_in_chain(std::string_view qualified_name, std::string_view method,
                                        std::size_t arity) const {
  ChainLookup result;
  const std::string key = method_key(method, arity);
  std::set<std::string, std::less<>> seen;
  std::string current(qualified_name);
  bool first = true;
  while (true) {
    const IndexedType *t = type(current);
    if (!t) {
      result.library_ancestor = current;
      return result;
    }
    if (first)
      result.project_type = true;
    first = false;
    if (!seen.insert(current).second)
      return result; // cyclic extends
    if (auto it = t->methods.find(key); it != t->methods.end()) {
      for (std::size_t idx : it->second)
        result.methods.push_back(&methods_[idx]);
      return result;
    }
    // Constructors are not inherited.
    if (method == "<init>" || !t->superclass)
      return result;
    current = *t->superclass;
  }
}

std::vector<const IndexedMethod *> ProjectIndex::find_by_name(std::string_view method,
                                                              std::size_t arity) const {
  std::vector<const IndexedMethod *> out;
  auto it = by_name_.find(method_key(method, arity));
  if (it == by_name_.end())
    return out;
  for (std::size_t idx : it->second)
    out.push_back(&methods_[idx]);
  return out;
}

} // namespace ehap::flow

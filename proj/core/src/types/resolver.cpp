// SPDX-License-Identifier: Apache-2.0

#include "ehap/types/resolver.h"

#include <functional>

namespace ehap::types {
namespace {

void add_decl(TypeUniverse &u, const syntax::TypeDecl &decl) {
  u.add(decl.qualified_name);
  for (const auto &n : decl.nested)
    add_decl(u, n);
}

std::string dollar_join(std::string_view head, std::string_view rest) {
  std::string out(head);
  out += '$';
  for (char c : rest)
    out += c == '.' ? '$' : c;
  return out;
}

std::string_view last_segment(std::string_view dotted) {
  const auto dot = dotted.rfind('.');
  return dot == std::string_view::npos ? dotted : dotted.substr(dot + 1);
}

} // namespace

void TypeUniverse::add_units(const std::vector<syntax::CompilationUnit> &units) {
  for (const auto &unit : units)
    for (const auto &decl : unit.types)
      add_decl(*this, decl);
}

std::string_view element_type(std::string_view written) {
  const auto bracket = written.find('[');
  return bracket == std::string_view::npos ? written : written.substr(0, bracket);
}

std::optional<std::string> TypeResolver::known_variant(std::string_view dotted) const {
  if (universe_->contains(dotted))
    return std::string(dotted);
  // Try `a.b.Outer.Inner` as `a.b.Outer$Inner`, longest known prefix first.
  for (auto dot = dotted.rfind('.'); dot != std::string_view::npos && dot > 0;
       dot = dotted.rfind('.', dot - 1)) {
    const std::string_view prefix = dotted.substr(0, dot);
    if (universe_->contains(prefix)) {
      std::string candidate = dollar_join(prefix, dotted.substr(dot + 1));
      if (universe_->contains(candidate))
        return candidate;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::optional<std::string> TypeResolver::resolve(const ResolutionContext &ctx,
                                                 std::string_view written) const {
  const std::string_view name = element_type(written);
  if (name.empty())
    return std::nullopt;
  const auto dot = name.find('.');
  if (dot == std::string_view::npos)
    return resolve_simple(ctx, name);

  if (auto known = known_variant(name))
    return known;
  // `Outer.Inner` where Outer is resolvable by its simple name.
  if (auto head = resolve_simple(ctx, name.substr(0, dot))) {
    std::string candidate = dollar_join(*head, name.substr(dot + 1));
    if (universe_->contains(candidate))
      return candidate;
  }
  return std::nullopt;
}

std::optional<std::string> TypeResolver::resolve_simple(const ResolutionContext &ctx,
                                                        std::string_view name) const {
  const syntax::CompilationUnit *unit = ctx.unit;

  if (unit) {
    for (const auto &imp : unit->imports) {
      if (imp.on_demand || imp.is_static)
        continue;
      if (last_segment(imp.qualified_name) == name) {
        if (auto known = known_variant(imp.qualified_name))
          return known;
        return imp.qualified_name;
      }
    }
  }

  for (auto it = ctx.type_chain.rbegin(); it != ctx.type_chain.rend(); ++it) {
    const syntax::TypeDecl &decl = **it;
    if (decl.simple_name == name)
      return decl.qualified_name;
    for (const auto &nested : decl.nested)
      if (nested.simple_name == name)
        return nested.qualified_name;
  }
  if (unit) {
    for (const auto &decl : unit->types)
      if (decl.simple_name == name)
        return decl.qualified_name;
  }

  const std::string pkg = unit && unit->package_name ? *unit->package_name + "." : "";
  if (std::string same = pkg + std::string(name); universe_->contains(same))
    return same;

  if (unit) {
    std::optional<std::string> found;
    for (const auto &imp : unit->imports) {
      if (!imp.on_demand || imp.is_static)
        continue;
      std::optional<std::string> hit;
      if (std::string c = imp.qualified_name + "." + std::string(name); universe_->contains(c))
        hit = std::move(c);
      else if (auto owner = known_variant(imp.qualified_name)) {
        if (std::string n = *owner + "$" + std::string(name); universe_->contains(n))
          hit = std::move(n);
      }
      if (!hit)
        continue;
      if (found && *found != *hit)
        return std::nullopt; // ambiguous
      found = std::move(hit);
    }
    if (found)
      return found;
  }

  if (std::string lang = "java.lang." + std::string(name); universe_->contains(lang))
    return lang;
  return std::nullopt;
}

} // namespace ehap::types

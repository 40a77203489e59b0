// SPDX-License-Identifier: Apache-2.0

#include "ehap/types/hierarchy.h"

#include "ehap/error.h"
#include "ehap/syntax/parser.h"

#include <nlohmann/json.hpp>

#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace ehap::types {

using nlohmann::json;

std::vector<SeedEntry> parse_seed(std::string_view text, const std::string &origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError("taxonomy " + origin + ": invalid JSON: " + e.what());
  }
  if (!doc.is_array())
    throw ConfigError("taxonomy " + origin + ": expected a JSON list");

  std::vector<SeedEntry> entries;
  std::set<std::string> seen;
  int roots = 0;
  for (const auto &item : doc) {
    if (!item.is_object() || !item.contains("name") || !item["name"].is_string() ||
        !item.contains("parent") || !(item["parent"].is_string() || item["parent"].is_null()))
      throw ConfigError("taxonomy " + origin + ": each entry needs a string \"name\" and a "
                        "string-or-null \"parent\": " + item.dump());
    SeedEntry e;
    e.name = item["name"].get<std::string>();
    if (item["parent"].is_string())
      e.parent = item["parent"].get<std::string>();
    if (!seen.insert(e.name).second)
      throw ConfigError("taxonomy " + origin + ": duplicate entry " + e.name);
    if (!e.parent) {
      ++roots;
      if (e.name != kThrowable)
        throw ConfigError("taxonomy " + origin + ": only " + std::string(kThrowable) +
                          " may have a null parent, found " + e.name);
    }
    entries.push_back(std::move(e));
  }
  if (roots != 1)
    throw ConfigError("taxonomy " + origin + ": expected exactly one root entry");
  for (const auto &e : entries)
    if (e.parent && !seen.contains(*e.parent))
      throw ConfigError("taxonomy " + origin + ": " + e.name + " has unknown parent " + *e.parent);
  for (std::string_view required : {kException, kError, kRuntimeException, kInterruptedException})
    if (!seen.contains(std::string(required)))
      throw ConfigError("taxonomy " + origin + ": missing required type " + std::string(required));
  return entries;
}

std::vector<SeedEntry> load_seed(const std::filesystem::path &path) {
  std::string text;
  try {
    text = syntax::read_file(path);
  } catch (const std::exception &) {
    throw ConfigError("cannot read taxonomy file " + path.string());
  }
  return parse_seed(text, path.string());
}

std::set<std::string> default_generic_types() {
  return {std::string(kThrowable), std::string(kException)};
}

bool TypeHierarchy::contains(std::string_view name) const {
  return types_.find(name) != types_.end();
}

const ExceptionType &TypeHierarchy::get(std::string_view name) const {
  auto it = types_.find(name);
  if (it == types_.end())
    throw std::logic_error("type not in hierarchy: " + std::string(name));
  return it->second;
}

bool TypeHierarchy::is_subtype(std::string_view sub, std::string_view sup) const {
  get(sup);
  const ExceptionType *t = &get(sub);
  while (true) {
    if (t->qualified_name == sup)
      return true;
    if (!t->parent)
      return false;
    t = &get(*t->parent);
  }
}

bool TypeHierarchy::is_unchecked(std::string_view name) const {
  return is_subtype(name, kRuntimeException) || is_subtype(name, kError);
}

HierarchyBuilder::HierarchyBuilder(const std::vector<SeedEntry> &seed,
                                   std::set<std::string> generic_types) {
  for (const auto &e : seed)
    h_.types_[e.name] = ExceptionType{e.name, e.parent, TypeOrigin::Seed};
  for (const auto &g : generic_types)
    synthesize(g);
  h_.generic_ = std::move(generic_types);
}

void HierarchyBuilder::synthesize(const std::string &name) {
  if (!h_.contains(name))
    h_.types_[name] = ExceptionType{name, std::string(kException), TypeOrigin::SynthesizedUnknown};
}

namespace {

struct DeclSite {
  const syntax::TypeDecl *decl;
  ResolutionContext ctx;
};

void collect_decls(const syntax::TypeDecl &decl, const ResolutionContext &outer,
                   std::vector<DeclSite> &out) {
  ResolutionContext ctx = outer.nested(decl);
  out.push_back({&decl, ctx});
  for (const auto &n : decl.nested)
    collect_decls(n, ctx, out);
}

std::string where(const syntax::SourcePosition &p) {
  return p.file + ":" + std::to_string(p.line) + ":" + std::to_string(p.column);
}

} // namespace

void HierarchyBuilder::add_project_types(const std::vector<syntax::CompilationUnit> &units,
                                         const TypeResolver &resolver) {
  std::vector<DeclSite> sites;
  for (const auto &unit : units) {
    if (unit.skipped)
      continue;
    ResolutionContext ctx{&unit, {}};
    for (const auto &decl : unit.types)
      collect_decls(decl, ctx, sites);
  }

  std::unordered_map<std::string, const DeclSite *> by_name;
  for (const auto &site : sites) {
    const auto &qn = site.decl->qualified_name;
    if (auto [it, fresh] = by_name.emplace(qn, &site); !fresh)
      throw ConfigError("duplicate type " + qn + " declared at " +
                        where(it->second->decl->position) + " and " + where(site.decl->position));
    if (h_.contains(qn))
      throw ConfigError("project type " + qn + " at " + where(site.decl->position) +
                        " duplicates a taxonomy seed type");
  }

  enum class State { InProgress, Exception, NotException };
  std::unordered_map<std::string, State> state;

  std::function<bool(const std::string &)> classify = [&](const std::string &qn) -> bool {
    if (h_.contains(qn))
      return true;
    auto found = by_name.find(qn);
    if (found == by_name.end())
      return false;
    if (auto st = state.find(qn); st != state.end())
      return st->second == State::Exception;
    state[qn] = State::InProgress;

    const DeclSite &site = *found->second;
    bool is_exception = false;
    if (site.decl->superclass_name) {
      const auto super = resolver.resolve(site.ctx, *site.decl->superclass_name);
      if (!super || (!resolver.universe().contains(*super) && !h_.contains(*super))) {
        h_.types_[qn] = ExceptionType{qn, std::string(kException), TypeOrigin::SynthesizedUnknown};
        is_exception = true;
      } else if (classify(*super)) {
        h_.types_[qn] = ExceptionType{qn, *super, TypeOrigin::Project};
        is_exception = true;
      }
    }
    state[qn] = is_exception ? State::Exception : State::NotException;
    return is_exception;
  };

  for (const auto &site : sites)
    classify(site.decl->qualified_name);
}

namespace {

void visit_block(const syntax::Block &b, const std::function<void(const syntax::Stmt &)> &fn);

void visit_stmt(const syntax::Stmt &s, const std::function<void(const syntax::Stmt &)> &fn) {
  fn(s);
  for (const auto &b : s.blocks)
    visit_block(b, fn);
  for (const auto &init : s.init_stmts)
    visit_stmt(init, fn);
  for (const auto &c : s.catches)
    visit_block(c.body, fn);
  if (s.finally_block)
    visit_block(*s.finally_block, fn);
}

void visit_block(const syntax::Block &b, const std::function<void(const syntax::Stmt &)> &fn) {
  for (const auto &s : b.statements)
    visit_stmt(s, fn);
}

} // namespace

void HierarchyBuilder::synthesize_references(const std::vector<syntax::CompilationUnit> &units,
                                             const TypeResolver &resolver) {
  std::function<void(const syntax::TypeDecl &, const ResolutionContext &)> walk =
      [&](const syntax::TypeDecl &decl, const ResolutionContext &outer) {
        const ResolutionContext ctx = outer.nested(decl);
        auto add = [&](std::string_view written) {
          synthesize(exception_name(resolver, ctx, written));
        };
        for (const auto &m : decl.methods) {
          for (const auto &t : m.declared_throws)
            add(t);
          for (const auto &t : m.doc_throws)
            add(t);
          if (!m.body)
            continue;
          visit_block(*m.body, [&](const syntax::Stmt &s) {
            for (const auto &c : s.catches)
              for (const auto &t : c.declared_types)
                add(t);
            if (s.kind == syntax::StmtKind::Throw) {
              const syntax::Expr &thrown = s.exprs.front();
              if (thrown.kind == syntax::ExprKind::New ||
                  thrown.kind == syntax::ExprKind::AnonymousClass)
                add(thrown.name);
              else
                synthesize(std::string(kUnknownThrown));
            }
          });
        }
        for (const auto &n : decl.nested)
          walk(n, ctx);
      };
  for (const auto &unit : units) {
    if (unit.skipped)
      continue;
    ResolutionContext ctx{&unit, {}};
    for (const auto &decl : unit.types)
      walk(decl, ctx);
  }
}

TypeHierarchy HierarchyBuilder::build() && { return std::move(h_); }

TypeHierarchy build_hierarchy(const std::filesystem::path &seed_file,
                              const std::vector<syntax::CompilationUnit> &units) {
  const auto seed = load_seed(seed_file);
  TypeUniverse universe;
  for (const auto &e : seed)
    universe.add(e.name);
  universe.add_units(units);
  TypeResolver resolver(universe);
  HierarchyBuilder builder(seed, default_generic_types());
  builder.add_project_types(units, resolver);
  builder.synthesize_references(units, resolver);
  return std::move(builder).build();
}

std::string exception_name(const TypeResolver &resolver, const ResolutionContext &ctx,
                           std::string_view written) {
  if (auto r = resolver.resolve(ctx, written))
    return *r;
  return std::string(element_type(written));
}

} // namespace ehap::types

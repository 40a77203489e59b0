// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_TYPES_HIERARCHY_H
#define EHAP_TYPES_HIERARCHY_H

#include "ehap/syntax/ast.h"
#include "ehap/types/resolver.h"

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ehap::types {

inline constexpr std::string_view kThrowable = "java.lang.Throwable";
inline constexpr std::string_view kException = "java.lang.Exception";
inline constexpr std::string_view kError = "java.lang.Error";
inline constexpr std::string_view kRuntimeException = "java.lang.RuntimeException";
inline constexpr std::string_view kInterruptedException = "java.lang.InterruptedException";
/// Type given to thrown values whose static type cannot be determined.
inline constexpr std::string_view kUnknownThrown = "<unknown>";

enum class TypeOrigin { Seed, Project, SynthesizedUnknown };

struct ExceptionType {
  std::string qualified_name;
  std::optional<std::string> parent;
  TypeOrigin origin = TypeOrigin::Seed;
};

struct SeedEntry {
  std::string name;
  std::optional<std::string> parent;
};

/// Loads a taxonomy seed: a JSON list of {"name", "parent"} objects with a
/// single null-parent entry, java.lang.Throwable. Throws ConfigError.
std::vector<SeedEntry> load_seed(const std::filesystem::path &path);
std::vector<SeedEntry> parse_seed(std::string_view json_text, const std::string &origin);

std::set<std::string> default_generic_types();

/// Immutable exception tree. Queries on names that are not present throw
/// std::logic_error: callers synthesize unknown names while building.
class TypeHierarchy {
public:
  bool contains(std::string_view name) const;
  const ExceptionType &get(std::string_view name) const;

  bool is_subtype(std::string_view sub, std::string_view sup) const;
  bool is_strict_subtype(std::string_view sub, std::string_view sup) const {
    return sub != sup && is_subtype(sub, sup);
  }
  bool is_unchecked(std::string_view name) const;
  bool is_generic(std::string_view name) const { return generic_.contains(std::string(name)); }

  const std::map<std::string, ExceptionType, std::less<>> &types() const { return types_; }
  const std::set<std::string> &generic_types() const { return generic_; }
  std::size_t size() const { return types_.size(); }

private:
  friend class HierarchyBuilder;
  std::map<std::string, ExceptionType, std::less<>> types_;
  std::set<std::string> generic_;
};

/// Assembles a TypeHierarchy. Project types enter when their superclass
/// chain reaches the root; types whose superclass cannot be resolved become
/// synthesized children of java.lang.Exception. `synthesize` adds any other
/// name that will be queried later (unresolved catch types, catalog values).
class HierarchyBuilder {
public:
  HierarchyBuilder(const std::vector<SeedEntry> &seed, std::set<std::string> generic_types);

  void add_project_types(const std::vector<syntax::CompilationUnit> &units,
                         const TypeResolver &resolver);

  /// Walks every exception-bearing name in the units (catch types, throws
  /// clauses, doc tags, `throw new T`) and synthesizes those not yet known.
  void synthesize_references(const std::vector<syntax::CompilationUnit> &units,
                             const TypeResolver &resolver);

  /// Ensures `name` exists; unknown names become children of Exception.
  void synthesize(const std::string &name);

  TypeHierarchy build() &&;

private:
  TypeHierarchy h_;
};

/// Convenience wrapper: seed file plus project declarations, with
/// references synthesized and the default generic set.
TypeHierarchy build_hierarchy(const std::filesystem::path &seed_file,
                              const std::vector<syntax::CompilationUnit> &units);

/// Resolves a written exception name, falling back to the written text when
/// the name is UNRESOLVED (that text is what gets synthesized).
std::string exception_name(const TypeResolver &resolver, const ResolutionContext &ctx,
                           std::string_view written);

} // namespace ehap::types

#endif // EHAP_TYPES_HIERARCHY_H

// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_FLOW_CATALOG_H
#define EHAP_FLOW_CATALOG_H

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace ehap::flow {

/// Exceptions documented for library methods, keyed by
/// `qualifiedClass#methodName/arity` (`<init>` for constructors).
class LibraryCatalog {
public:
  LibraryCatalog() = default;

  /// Parses catalog JSON. Throws ConfigError naming the offending key for a
  /// malformed key or a value that is not a list of strings.
  static LibraryCatalog parse(std::string_view json_text, const std::string &origin);
  static LibraryCatalog load(const std::filesystem::path &path);

  static std::string key(std::string_view cls, std::string_view method, std::size_t arity);
  static bool is_valid_key(std::string_view key);

  void add(const std::string &key, std::vector<std::string> exceptions);

  /// Exact lookup; nullptr when absent.
  const std::vector<std::string> *find(std::string_view cls, std::string_view method,
                                       std::size_t arity) const;
  /// Union over every class with a `method/arity` entry, in key order,
  /// duplicates dropped. Empty when no class has one.
  std::vector<std::string> find_by_name(std::string_view method, std::size_t arity) const;
  bool has_name(std::string_view method, std::size_t arity) const;

  const std::map<std::string, std::vector<std::string>> &entries() const { return entries_; }
  const std::set<std::string> &classes() const { return classes_; }
  /// Every exception name mentioned in a value.
  std::set<std::string> exception_names() const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

private:
  std::map<std::string, std::vector<std::string>> entries_;
  std::set<std::string> classes_;
  std::map<std::string, std::vector<std::string>> by_name_; // "m/n" -> keys
};

} // namespace ehap::flow

#endif // EHAP_FLOW_CATALOG_H

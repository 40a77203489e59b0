// SPDX-License-Identifier: Apache-2.0

#include "ehap/flow/catalog.h"

#include "ehap/error.h"
#include "ehap/syntax/parser.h"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <regex>

namespace ehap::flow {

using nlohmann::json;

bool LibraryCatalog::is_valid_key(std::string_view key) {
  static const std::regex kKey(
      R"(^[A-Za-z_$][\w$]*(\.[A-Za-z_$][\w$]*)*#(<init>|[A-Za-z_$][\w$]*)/(0|[1-9][0-9]*)$)");
  return std::regex_match(key.begin(), key.end(), kKey);
}

std::string LibraryCatalog::key(std::string_view cls, std::string_view method,
                                std::size_t arity) {
  std::string k(cls);
  k += '#';
  k += method;
  k += '/';
  k += std::to_string(arity);
  return k;
}

void LibraryCatalog::add(const std::string &k, std::vector<std::string> exceptions) {
  const auto hash = k.find('#');
  classes_.insert(k.substr(0, hash));
  auto &keys = by_name_[k.substr(hash + 1)];
  if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
    keys.push_back(k);
    std::sort(keys.begin(), keys.end());
  }
  entries_[k] = std::move(exceptions);
}

LibraryCatalog LibraryCatalog::parse(std::string_view text, const std::string &origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError("catalog " + origin + ": invalid JSON: " + e.what());
  }
  if (!doc.is_object())
    throw ConfigError("catalog " + origin + ": expected a JSON object");
  LibraryCatalog cat;
  for (const auto &[k, value] : doc.items()) {
    if (!is_valid_key(k))
      throw ConfigError("catalog " + origin + ": malformed key \"" + k +
                        "\" (expected qualifiedClass#method/arity)");
    if (!value.is_array())
      throw ConfigError("catalog " + origin + ": value of \"" + k + "\" is not a list");
    std::vector<std::string> names;
    for (const auto &v : value) {
      if (!v.is_string() || v.get<std::string>().empty())
        throw ConfigError("catalog " + origin + ": value of \"" + k +
                          "\" must contain only exception names");
      names.push_back(v.get<std::string>());
    }
    cat.add(k, std::move(names));
  }
  return cat;
}

LibraryCatalog LibraryCatalog::load(const std::filesystem::path &path) {
  std::string text;
  try {
    text = syntax::read_file(path);
  } catch (const std::exception &) {
    throw ConfigError("cannot read catalog file " + path.string());
  }
  return parse(text, path.string());
}

const std::vector<std::string> *LibraryCatalog::find(std::string_view cls, std::string_view method,
                                                     std::size_t arity) const {
  auto it = entries_.find(key(cls, method, arity));
  return it == entries_.end() ? nullptr : &it->second;
}

bool LibraryCatalog::has_name(std::string_view method, std::size_t arity) const {
  return by_name_.contains(std::string(method) + "/" + std::to_string(arity));
}

std::vector<std::string> LibraryCatalog::find_by_name(std::string_view method,
                                                      std::size_t arity) const {
  std::vector<std::string> out;
  auto it = by_name_.find(std::string(method) + "/" + std::to_string(arity));
  if (it == by_name_.end())
    return out;
  for (const auto &k : it->second)
    for (const auto &name : entries_.at(k))
      if (std::find(out.begin(), out.end(), name) == out.end())
        out.push_back(name);
  return out;
}

std::set<std::string> LibraryCatalog::exception_names() const {
  std::set<std::string> out;
  for (const auto &[k, names] : entries_)
    out.insert(names.begin(), names.end());
  return out;
}

} // namespace ehap::flow

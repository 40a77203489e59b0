// SPDX-License-Identifier: Apache-2.0

#include "ehap/syntax/parser.h"

#include <cctype>

namespace ehap::syntax {
namespace {

bool is_name_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_name_part(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$' || c == '.';
}

} // namespace

std::vector<std::string> extract_javadoc_throws(std::string_view doc) {
  std::vector<std::string> names;
  std::size_t i = 0;
  while ((i = doc.find('@', i)) != std::string_view::npos) {
    // A tag must start a word: `{@throws` or `foo@throws` are not block tags.
    const bool boundary = i == 0 || std::isspace(static_cast<unsigned char>(doc[i - 1])) ||
                          doc[i - 1] == '*';
    std::size_t tag_end = i + 1;
    while (tag_end < doc.size() && std::isalpha(static_cast<unsigned char>(doc[tag_end])))
      ++tag_end;
    const std::string_view tag = doc.substr(i + 1, tag_end - i - 1);
    i = tag_end;
    if (!boundary || (tag != "throws" && tag != "exception"))
      continue;
    if (tag_end < doc.size() && !std::isspace(static_cast<unsigned char>(doc[tag_end])))
      continue;
    std::size_t j = tag_end;
    while (j < doc.size() && (doc[j] == ' ' || doc[j] == '\t'))
      ++j;
    if (j >= doc.size() || !is_name_start(doc[j]))
      continue;
    std::size_t k = j;
    while (k < doc.size() && is_name_part(doc[k]))
      ++k;
    std::string name(doc.substr(j, k - j));
    while (!name.empty() && name.back() == '.')
      name.pop_back();
    names.push_back(std::move(name));
    i = k;
  }
  return names;
}

} // namespace ehap::syntax

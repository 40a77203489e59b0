// SPDX-License-Identifier: Apache-2.0

#include "ehap/syntax/parser.h"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ehap::syntax {

namespace fs = std::filesystem;

std::vector<fs::path> discover_sources(const std::vector<fs::path> &roots,
                                       const std::string &extension) {
  std::vector<fs::path> files;
  auto matches = [&](const fs::path &p) {
    const std::string name = p.filename().string();
    return name.size() >= extension.size() &&
           name.compare(name.size() - extension.size(), extension.size(), extension) == 0;
  };
  for (const fs::path &root : roots) {
    if (fs::is_regular_file(root)) {
      files.push_back(root);
      continue;
    }
    for (const auto &entry : fs::recursive_directory_iterator(
             root, fs::directory_options::skip_permission_denied)) {
      if (entry.is_regular_file() && matches(entry.path()))
        files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  files.erase(std::unique(files.begin(), files.end()), files.end());
  return files;
}

std::string read_file(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

} // namespace ehap::syntax

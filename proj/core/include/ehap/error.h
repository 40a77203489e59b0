// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_ERROR_H
#define EHAP_ERROR_H

#include <stdexcept>
#include <string>

namespace ehap {

/// A problem with the tool's inputs (taxonomy seed, catalog, flags) that
/// prevents analysis from starting. The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace ehap

#endif // EHAP_ERROR_H

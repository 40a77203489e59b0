// SPDX-License-Identifier: Apache-2.0
//
// Generated source text for the benchmarks.

#ifndef EHAP_BENCHMARKS_SYNTHETIC_H
#define EHAP_BENCHMARKS_SYNTHETIC_H

#include <string>

namespace ehap::bench {

/// One compilation unit with `methods` methods, each holding a try statement
/// with nested regions, library calls and calls to sibling methods.
inline std::string synthetic_unit(int index, int methods) {
  std::string cls = "Gen" + std::to_string(index);
  std::string s = "package gen;\n\nimport java.io.*;\nimport java.util.*;\n\n"
                  "class " + cls + " {\n  private final Map<String, Object> cache = new HashMap<>();\n\n";
  for (int m = 0; m < methods; ++m) {
    std::string name = "step" + std::to_string(m);
    s += "  /**\n   * Step " + std::to_string(m) + ".\n   * @throws IOException on read errors\n   */\n";
    s += "  Object " + name + "(File f, int n) throws IOException {\n";
    s += "    try (FileInputStream in = new FileInputStream(f)) {\n";
    s += "      for (int i = 0; i < n; i++) {\n";
    s += "        if (i % 3 == 0) {\n          Thread.sleep(1);\n        }\n";
    s += "        try {\n          cache.put(f.getName(), Integer.parseInt(\"\" + in.read()));\n";
    s += "        } catch (NumberFormatException e) {\n          e.printStackTrace();\n";
    s += "          return null;\n        }\n      }\n";
    if (m > 0)
      s += "      step" + std::to_string(m - 1) + "(f, n - 1);\n";
    s += "    } catch (InterruptedException e) {\n      // TODO restore the interrupt\n";
    s += "    } catch (Exception e) {\n      throw new IllegalStateException(\"step failed\");\n";
    s += "    } finally {\n      cache.clear();\n    }\n    return cache;\n  }\n\n";
  }
  s += "}\n";
  return s;
}

} // namespace ehap::bench

#endif // EHAP_BENCHMARKS_SYNTHETIC_H

// SPDX-License-Identifier: Apache-2.0
//
// Reading per-project prevalence tables. Two CSV layouts are accepted:
//
//   long  - the `analyze` report: project,anti_pattern,unit,affected,total,percent
//   wide  - one row per project with meta columns (project, language, type,
//           ...), one column per anti-pattern and `#`-prefixed unit totals
//
// Percent cells may carry a trailing `%`. Empty cells are missing values.

#ifndef EHAP_REPORT_TABLE_IO_H
#define EHAP_REPORT_TABLE_IO_H

#include "ehap/detect/anti_pattern.h"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ehap::report {

struct TableRow {
  std::string project;
  /// Non-numeric columns keyed by normalized header ("language", "type").
  std::map<std::string, std::string> meta;
  std::map<detect::AntiPatternId, double> percents;
  /// `#` columns keyed by normalized name ("catch", "throws").
  std::map<std::string, double> totals;
};

struct PrevalenceTable {
  std::vector<TableRow> rows;
};

/// Splits CSV text into records (RFC 4180 quoting).
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Throws ConfigError on unreadable files, unknown layouts and malformed
/// numbers.
PrevalenceTable parse_table(std::string_view csv_text, const std::string &origin);
PrevalenceTable read_table(const std::filesystem::path &path);

/// A `key=value` row filter on meta columns (or `project`), compared
/// case-insensitively.
struct RowFilter {
  std::string key;
  std::string value;

  static RowFilter parse(std::string_view text); // throws std::invalid_argument
  bool matches(const TableRow &row) const;
};

/// Values of one anti-pattern column, rows without the value skipped.
std::vector<double> column_values(const PrevalenceTable &table, detect::AntiPatternId id,
                                  const std::vector<RowFilter> &filters = {});

struct MedianRow {
  detect::AntiPatternId id = detect::AntiPatternId::OverCatch;
  std::size_t n = 0;
  std::optional<double> median;
};

/// One entry per anti-pattern, in id order.
std::vector<MedianRow> summarize_prevalence(const PrevalenceTable &table);

} // namespace ehap::report

#endif // EHAP_REPORT_TABLE_IO_H

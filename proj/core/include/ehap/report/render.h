// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_REPORT_RENDER_H
#define EHAP_REPORT_RENDER_H

#include "ehap/detect/analyzer.h"
#include "ehap/report/project_report.h"
#include "ehap/report/stats.h"
#include "ehap/report/table_io.h"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ehap::report {

enum class Format { Csv, Json };

std::optional<Format> parse_format(std::string_view text);

/// Up to 10 significant digits, trailing zeros dropped ("40.84", "0.0001234").
std::string format_number(double value);

/// CSV: `project,anti_pattern,unit,affected,total,percent`, rows ordered by
/// project then anti-pattern id. JSON: one object per project with raw and
/// formatted percents plus breakdowns.
std::string render(const std::vector<ProjectReport> &reports, Format format);
std::string render(const FlowDistribution &dist, Format format);
std::string render(const std::vector<MedianRow> &medians, Format format);
std::string render(const RankSumResult &result, Format format);

nlohmann::json to_json(const ProjectReport &report);
nlohmann::json to_json(const FlowDistribution &dist);

using PathMapper = std::function<std::string(const std::string &)>;

/// Findings document for one run. `display_path` maps unit file names to
/// the form written out (for example relative to the analysis root).
nlohmann::json findings_json(const std::string &project, const detect::ProjectAnalysis &pa,
                             const PathMapper &display_path);

/// Pretty-printed JSON with sorted keys and a trailing newline.
std::string dump(const nlohmann::json &doc);

} // namespace ehap::report

#endif // EHAP_REPORT_RENDER_H

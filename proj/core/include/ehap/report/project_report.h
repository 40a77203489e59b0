// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_REPORT_PROJECT_REPORT_H
#define EHAP_REPORT_PROJECT_REPORT_H

#include "ehap/detect/analyzer.h"
#include "ehap/detect/anti_pattern.h"
#include "ehap/detect/detectors.h"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ehap::report {

/// 100·affected/total in hundredths of a percent, rounded half-up. Zero
/// when total is zero.
std::int64_t percent_hundredths(std::size_t affected, std::size_t total);

/// "40.00" style text for percent_hundredths.
std::string format_hundredths(std::int64_t hundredths);
inline std::string format_percent(std::size_t affected, std::size_t total) {
  return format_hundredths(percent_hundredths(affected, total));
}

struct PatternCount {
  detect::AntiPatternId id = detect::AntiPatternId::OverCatch;
  std::size_t affected = 0;
  std::size_t total = 0;
  double percent = 0.0; // unrounded
  bool zero_denominator = false;

  std::string percent_text() const { return format_percent(affected, total); }
};

/// Catch-level counts restricted to one slice of the catch clauses.
struct Slice {
  std::string name;
  std::size_t total = 0;
  std::array<std::size_t, detect::kCatchPatternCount> affected{};
};

struct ProjectTotals {
  std::string project;
  std::size_t total_catches = 0;
  std::size_t total_throws_sites = 0;
  std::size_t files_analyzed = 0;
  std::size_t files_skipped = 0;
  std::size_t unresolved_calls = 0;
};

struct ProjectReport {
  ProjectTotals totals;
  std::vector<PatternCount> patterns; // all 19, in id order
  std::vector<Slice> generic_breakdown; // "generic", "non_generic"
  /// "runtime" (every caught flow unchecked), "non_runtime" (every caught
  /// flow checked), "mixed", "no_flows".
  std::vector<Slice> runtime_breakdown;

  const PatternCount &operator[](detect::AntiPatternId id) const {
    return patterns[static_cast<std::size_t>(id)];
  }
};

/// Counts distinct affected units per anti-pattern: each inner vector holds
/// the findings of one catch clause (or one throws site). Breakdowns are
/// left empty. Throws std::invalid_argument if a list is longer than its
/// total.
ProjectReport aggregate_project(const ProjectTotals &totals,
                                const std::vector<std::vector<detect::Finding>> &catch_findings,
                                const std::vector<std::vector<detect::Finding>> &throws_findings);

/// Full report for an analysis run, breakdowns included.
ProjectReport aggregate_project(const std::string &project, const detect::ProjectAnalysis &pa);

inline constexpr std::size_t kFlowBuckets = 6; // 1, 2, 3, 4, 5, >5

struct FlowBucketRow {
  std::string group;
  std::array<std::size_t, kFlowBuckets> counts{};
  /// Bucket shares in hundredths of a percent, largest-remainder rounded so
  /// that a non-empty row sums to exactly 10000.
  std::array<std::int64_t, kFlowBuckets> hundredths{};
  std::size_t affected = 0;
  std::size_t max_count = 0;
  bool empty = true;

  static std::string_view bucket_label(std::size_t i);
};

struct FlowDistribution {
  FlowBucketRow unhandled_unreachable;
  FlowBucketRow over_catch;
};

/// Buckets positive counts; zero counts are ignored.
FlowBucketRow bucket_row(std::string group, const std::vector<std::size_t> &counts);

/// Per catch clause, the largest count among its Unhandled/Unreachable
/// findings goes to the first row and among its OverCatch/OverCatchAndAbort
/// findings to the second.
FlowDistribution flow_distribution(const std::vector<std::vector<detect::Finding>> &catch_findings);
FlowDistribution flow_distribution(const detect::ProjectAnalysis &pa);

} // namespace ehap::report

#endif // EHAP_REPORT_PROJECT_REPORT_H

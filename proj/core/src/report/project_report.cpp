// SPDX-License-Identifier: Apache-2.0

#include "ehap/report/project_report.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ehap::report {

using detect::AntiPatternId;
using detect::Finding;

std::int64_t percent_hundredths(std::size_t affected, std::size_t total) {
  if (total == 0)
    return 0;
  const auto a = static_cast<std::int64_t>(affected);
  const auto t = static_cast<std::int64_t>(total);
  return (20000 * a + t) / (2 * t);
}

std::string format_hundredths(std::int64_t hundredths) {
  const bool negative = hundredths < 0;
  if (negative)
    hundredths = -hundredths;
  std::string frac = std::to_string(hundredths % 100);
  if (frac.size() < 2)
    frac.insert(0, "0");
  return (negative ? "-" : "") + std::to_string(hundredths / 100) + "." + frac;
}

namespace {

std::set<AntiPatternId> ids_of(const std::vector<Finding> &findings) {
  std::set<AntiPatternId> ids;
  for (const auto &f : findings)
    ids.insert(f.id);
  return ids;
}

void count_into(Slice &slice, const std::vector<Finding> &findings) {
  ++slice.total;
  for (AntiPatternId id : ids_of(findings))
    if (static_cast<std::size_t>(id) < detect::kCatchPatternCount)
      ++slice.affected[static_cast<std::size_t>(id)];
}

} // namespace

ProjectReport aggregate_project(const ProjectTotals &totals,
                                const std::vector<std::vector<Finding>> &catch_findings,
                                const std::vector<std::vector<Finding>> &throws_findings) {
  if (catch_findings.size() > totals.total_catches ||
      throws_findings.size() > totals.total_throws_sites)
    throw std::invalid_argument("more finding lists than counted units");

  std::array<std::size_t, detect::kAntiPatternCount> affected{};
  for (const auto *lists : {&catch_findings, &throws_findings})
    for (const auto &findings : *lists)
      for (AntiPatternId id : ids_of(findings))
        ++affected[static_cast<std::size_t>(id)];

  ProjectReport r;
  r.totals = totals;
  for (AntiPatternId id : detect::all_anti_patterns()) {
    PatternCount pc;
    pc.id = id;
    pc.affected = affected[static_cast<std::size_t>(id)];
    pc.total = detect::unit(id) == detect::CountingUnit::Catch ? totals.total_catches
                                                               : totals.total_throws_sites;
    pc.zero_denominator = pc.total == 0;
    pc.percent = pc.total == 0 ? 0.0 : 100.0 * static_cast<double>(pc.affected) /
                                           static_cast<double>(pc.total);
    r.patterns.push_back(pc);
  }
  return r;
}

ProjectReport aggregate_project(const std::string &project, const detect::ProjectAnalysis &pa) {
  ProjectTotals totals;
  totals.project = project;
  totals.total_catches = pa.total_catches();
  totals.total_throws_sites = pa.total_throws_sites();
  totals.files_analyzed = pa.files_analyzed();
  totals.files_skipped = pa.files_skipped();
  totals.unresolved_calls = pa.unresolved_calls();

  std::vector<std::vector<Finding>> catches, throws_sites;
  for (const auto &file : pa.files) {
    for (const auto &c : file.catches)
      catches.push_back(c.findings);
    for (const auto &t : file.throws_sites)
      throws_sites.push_back(t.findings);
  }
  ProjectReport r = aggregate_project(totals, catches, throws_sites);

  r.generic_breakdown = {{"generic", 0, {}}, {"non_generic", 0, {}}};
  r.runtime_breakdown = {{"runtime", 0, {}}, {"non_runtime", 0, {}}, {"mixed", 0, {}},
                         {"no_flows", 0, {}}};
  const types::TypeHierarchy &h = *pa.hierarchy;
  for (const auto &file : pa.files) {
    for (const auto &c : file.catches) {
      count_into(r.generic_breakdown[c.is_generic ? 0 : 1], c.findings);
      std::size_t unchecked = 0;
      for (const auto &f : c.caught)
        if (h.contains(f.type) && h.is_unchecked(f.type))
          ++unchecked;
      std::size_t slice = 3;
      if (!c.caught.empty())
        slice = unchecked == c.caught.size() ? 0 : unchecked == 0 ? 1 : 2;
      count_into(r.runtime_breakdown[slice], c.findings);
    }
  }
  return r;
}

std::string_view FlowBucketRow::bucket_label(std::size_t i) {
  static constexpr std::string_view kLabels[kFlowBuckets] = {"1", "2", "3", "4", "5", ">5"};
  return kLabels[i];
}

FlowBucketRow bucket_row(std::string group, const std::vector<std::size_t> &counts) {
  FlowBucketRow row;
  row.group = std::move(group);
  for (std::size_t c : counts) {
    if (c == 0)
      continue;
    ++row.counts[std::min<std::size_t>(c, kFlowBuckets) - 1];
    ++row.affected;
    row.max_count = std::max(row.max_count, c);
  }
  row.empty = row.affected == 0;
  if (row.empty)
    return row;

  // Largest remainder: floor every share, then hand the missing hundredths
  // to the largest remainders (lower bucket first on ties).
  const auto total = static_cast<std::int64_t>(row.affected);
  std::array<std::int64_t, kFlowBuckets> rem{};
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < kFlowBuckets; ++i) {
    const std::int64_t num = 10000 * static_cast<std::int64_t>(row.counts[i]);
    row.hundredths[i] = num / total;
    rem[i] = num % total;
    assigned += row.hundredths[i];
  }
  std::array<std::size_t, kFlowBuckets> order{0, 1, 2, 3, 4, 5};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t k = 0; assigned < 10000; ++k, ++assigned)
    ++row.hundredths[order[k]];
  return row;
}

FlowDistribution flow_distribution(const std::vector<std::vector<Finding>> &catch_findings) {
  std::vector<std::size_t> uu, oc;
  for (const auto &findings : catch_findings) {
    std::size_t a = 0, b = 0;
    for (const auto &f : findings) {
      if (f.id == AntiPatternId::UnhandledExceptions || f.id == AntiPatternId::UnreachableHandler)
        a = std::max(a, f.affected_flow_count);
      else if (f.id == AntiPatternId::OverCatch || f.id == AntiPatternId::OverCatchAndAbort)
        b = std::max(b, f.affected_flow_count);
    }
    if (a > 0)
      uu.push_back(a);
    if (b > 0)
      oc.push_back(b);
  }
  return {bucket_row("unhandled_or_unreachable", uu), bucket_row("over_catch", oc)};
}

FlowDistribution flow_distribution(const detect::ProjectAnalysis &pa) {
  std::vector<std::vector<Finding>> catches;
  for (const auto &file : pa.files)
    for (const auto &c : file.catches)
      catches.push_back(c.findings);
  return flow_distribution(catches);
}

} // namespace ehap::report

// SPDX-License-Identifier: Apache-2.0

#include "ehap/report/render.h"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace ehap::report {

using detect::AntiPatternId;
using nlohmann::json;

std::optional<Format> parse_format(std::string_view text) {
  if (text == "csv")
    return Format::Csv;
  if (text == "json")
    return Format::Json;
  return std::nullopt;
}

std::string format_number(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 10);
  return ec == std::errc() ? std::string(buf, end) : std::string("nan");
}

std::string dump(const json &doc) { return doc.dump(2) + "\n"; }

namespace {

std::string csv_cell(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"')
      out += '"';
    out += c;
  }
  return out + "\"";
}

json slice_json(const Slice &s) {
  json counts = json::object();
  for (std::size_t i = 0; i < detect::kCatchPatternCount; ++i)
    counts[std::string(detect::id_name(static_cast<AntiPatternId>(i)))] = s.affected[i];
  return {{"name", s.name}, {"total", s.total}, {"affected", counts}};
}

json row_json(const FlowBucketRow &row) {
  json buckets = json::array();
  for (std::size_t i = 0; i < kFlowBuckets; ++i)
    buckets.push_back({{"bucket", FlowBucketRow::bucket_label(i)},
                       {"count", row.counts[i]},
                       {"percent", static_cast<double>(row.hundredths[i]) / 100.0},
                       {"percent_text", format_hundredths(row.hundredths[i]) + "%"}});
  return {{"group", row.group},
          {"affected", row.affected},
          {"max", row.max_count},
          {"empty", row.empty},
          {"buckets", buckets}};
}

json flow_json(const flow::ExceptionFlow &f, const PathMapper &path) {
  return {{"type", f.type},
          {"source", flow::to_string(f.source)},
          {"origin_file", path(f.origin.file)},
          {"origin_line", f.origin.line},
          {"origin_column", f.origin.column}};
}

json flows_json(const flow::FlowSet &flows, const PathMapper &path) {
  json out = json::array();
  for (const auto &f : flows)
    out.push_back(flow_json(f, path));
  return out;
}

json findings_detail(const std::vector<detect::Finding> &findings, json &flags) {
  json details = json::object();
  for (const auto &f : findings) {
    flags.push_back(detect::id_name(f.id));
    json d = json::object();
    if (detect::is_flow_pattern(f.id))
      d["affected_flow_count"] = f.affected_flow_count;
    if (!f.detail.empty())
      d["detail"] = f.detail;
    if (!d.empty())
      details[std::string(detect::id_name(f.id))] = d;
  }
  return details;
}

} // namespace

json to_json(const ProjectReport &r) {
  json patterns = json::array();
  for (const auto &pc : r.patterns)
    patterns.push_back({{"anti_pattern", detect::id_name(pc.id)},
                        {"display_name", detect::display_name(pc.id)},
                        {"unit", detect::to_string(detect::unit(pc.id))},
                        {"affected", pc.affected},
                        {"total", pc.total},
                        {"percent", pc.percent},
                        {"percent_text", pc.percent_text() + "%"},
                        {"zero_denominator", pc.zero_denominator}});
  json generic = json::array(), runtime = json::array();
  for (const auto &s : r.generic_breakdown)
    generic.push_back(slice_json(s));
  for (const auto &s : r.runtime_breakdown)
    runtime.push_back(slice_json(s));
  const ProjectTotals &t = r.totals;
  return {{"project", t.project},
          {"total_catches", t.total_catches},
          {"total_throws_sites", t.total_throws_sites},
          {"files_analyzed", t.files_analyzed},
          {"files_skipped", t.files_skipped},
          {"unresolved_calls", t.unresolved_calls},
          {"anti_patterns", patterns},
          {"generic_breakdown", generic},
          {"runtime_breakdown", runtime}};
}

json to_json(const FlowDistribution &d) {
  return {{"unhandled_or_unreachable", row_json(d.unhandled_unreachable)},
          {"over_catch", row_json(d.over_catch)}};
}

std::string render(const std::vector<ProjectReport> &reports, Format format) {
  std::vector<const ProjectReport *> sorted;
  for (const auto &r : reports)
    sorted.push_back(&r);
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto *a, const auto *b) {
    return a->totals.project < b->totals.project;
  });
  if (format == Format::Json) {
    json doc = json::array();
    for (const auto *r : sorted)
      doc.push_back(to_json(*r));
    return dump({{"schema_version", 1}, {"projects", doc}});
  }
  std::ostringstream out;
  out << "project,anti_pattern,unit,affected,total,percent\n";
  for (const auto *r : sorted)
    for (const auto &pc : r->patterns)
      out << csv_cell(r->totals.project) << ',' << detect::id_name(pc.id) << ','
          << detect::to_string(detect::unit(pc.id)) << ',' << pc.affected << ',' << pc.total
          << ',' << pc.percent_text() << "%\n";
  return out.str();
}

std::string render(const FlowDistribution &d, Format format) {
  if (format == Format::Json)
    return dump(to_json(d));
  std::ostringstream out;
  out << "group,affected,max";
  for (std::size_t i = 0; i < kFlowBuckets; ++i)
    out << ",flows_" << FlowBucketRow::bucket_label(i);
  out << '\n';
  for (const FlowBucketRow *row : {&d.unhandled_unreachable, &d.over_catch}) {
    out << row->group << ',' << row->affected << ',' << row->max_count;
    for (std::size_t i = 0; i < kFlowBuckets; ++i)
      out << ',' << format_hundredths(row->hundredths[i]) << '%';
    out << '\n';
  }
  return out.str();
}

std::string render(const std::vector<MedianRow> &medians, Format format) {
  if (format == Format::Json) {
    json rows = json::array();
    for (const auto &m : medians)
      rows.push_back({{"anti_pattern", detect::id_name(m.id)},
                      {"display_name", detect::display_name(m.id)},
                      {"n", m.n},
                      {"median", m.median ? json(*m.median) : json(nullptr)}});
    return dump({{"medians", rows}});
  }
  std::ostringstream out;
  out << "anti_pattern,n,median\n";
  for (const auto &m : medians)
    out << detect::id_name(m.id) << ',' << m.n << ','
        << (m.median ? format_number(*m.median) : std::string()) << '\n';
  return out.str();
}

std::string render(const RankSumResult &r, Format format) {
  if (format == Format::Json)
    return dump({{"n_a", r.n_a},
                 {"n_b", r.n_b},
                 {"median_a", r.median_a},
                 {"median_b", r.median_b},
                 {"w", r.w},
                 {"z", r.z},
                 {"p_normal", r.p_normal},
                 {"exact_p", r.exact_p ? json(*r.exact_p) : json(nullptr)},
                 {"p_two_sided", r.p_two_sided}});
  std::ostringstream out;
  out << "n_a,n_b,median_a,median_b,w,z,p_normal,exact_p,p_two_sided\n"
      << r.n_a << ',' << r.n_b << ',' << format_number(r.median_a) << ','
      << format_number(r.median_b) << ',' << format_number(r.w) << ',' << format_number(r.z) << ','
      << format_number(r.p_normal) << ',' << (r.exact_p ? format_number(*r.exact_p) : "") << ','
      << format_number(r.p_two_sided) << '\n';
  return out.str();
}

json findings_json(const std::string &project, const detect::ProjectAnalysis &pa,
                   const PathMapper &display_path) {
  json catches = json::array(), throws_sites = json::array(), skipped = json::array();
  for (const auto &file : pa.files) {
    const std::string fname = display_path(file.file);
    if (file.skipped) {
      json entry = {{"file", fname}};
      if (file.diagnostic) {
        entry["line"] = file.diagnostic->position.line;
        entry["column"] = file.diagnostic->position.column;
        entry["message"] = file.diagnostic->message;
      }
      skipped.push_back(entry);
      continue;
    }
    std::vector<const detect::CatchAnalysis *> ordered;
    for (const auto &c : file.catches)
      ordered.push_back(&c);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto *a, const auto *b) { return a->position < b->position; });
    for (const auto *c : ordered) {
      const detect::TryAnalysis &t = file.tries[c->try_index];
      json flags = json::array();
      json details = findings_detail(c->findings, flags);
      catches.push_back({{"file", fname},
                         {"line", c->position.line},
                         {"column", c->position.column},
                         {"method", c->method},
                         {"try_line", t.position.line},
                         {"try_column", t.position.column},
                         {"declared_types", c->declared_types},
                         {"resolved_types", c->resolved_types},
                         {"flags", flags},
                         {"details", details},
                         {"caught_flows", flows_json(c->caught, display_path)},
                         {"uncaught_flows", flows_json(t.matching.uncaught, display_path)},
                         {"finally_flows", flows_json(t.finally_flows, display_path)}});
    }
    for (const auto &s : file.throws_sites) {
      json flags = json::array();
      json details = findings_detail(s.findings, flags);
      throws_sites.push_back({{"file", fname},
                              {"line", s.position.line},
                              {"column", s.position.column},
                              {"method", s.method},
                              {"declared_types", s.declared_types},
                              {"resolved_types", s.resolved_types},
                              {"flags", flags},
                              {"details", details}});
    }
  }
  return {{"schema_version", 1},
          {"project", project},
          {"files_analyzed", pa.files_analyzed()},
          {"files_skipped", pa.files_skipped()},
          {"unresolved_calls", pa.unresolved_calls()},
          {"total_catches", pa.total_catches()},
          {"total_throws_sites", pa.total_throws_sites()},
          {"catches", catches},
          {"throws_sites", throws_sites},
          {"skipped_files", skipped}};
}

} // namespace ehap::report

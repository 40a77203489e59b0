// SPDX-License-Identifier: Apache-2.0

#include "cli.h"

#include "ehap/detect/analyzer.h"
#include "ehap/error.h"
#include "ehap/report/render.h"
#include "ehap/syntax/parser.h"

#include <CLI11.hpp>

#include <fstream>
#include <ostream>

namespace ehap::cli {
namespace fs = std::filesystem;

namespace {

struct AnalyzeArgs {
  std::vector<std::string> roots;
  std::string taxonomy;
  std::string catalog;
  std::string out = "ehap";
  std::string format = "csv";
  std::string ext = ".java";
  std::string project;
  std::vector<std::string> log_methods;
  std::vector<std::string> generic_types;
  int kitchen_sink_threshold = 3;
  unsigned threads = 0;
};

struct RankSumArgs {
  std::string column;
  std::vector<std::string> group_a;
  std::vector<std::string> group_b;
  std::vector<std::string> filter_a;
  std::vector<std::string> filter_b;
  std::string format = "csv";
};

void write_file(const fs::path &path, const std::string &text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  f.close();
  if (!f)
    throw ConfigError("cannot write " + path.string());
}

std::string project_name(const fs::path &root) {
  fs::path p = fs::absolute(root).lexically_normal();
  if (p.filename().empty())
    p = p.parent_path();
  if (fs::is_regular_file(p))
    p = p.parent_path();
  return p.filename().string();
}

// Findings name files relative to the root they were found under; with
// several roots, the root's own name is kept as the first component.
report::PathMapper path_mapper(const std::vector<fs::path> &roots) {
  std::vector<std::pair<fs::path, fs::path>> bases; // (normalized root, prefix)
  for (const auto &r : roots) {
    fs::path norm = fs::absolute(r).lexically_normal();
    if (norm.filename().empty())
      norm = norm.parent_path();
    fs::path base = fs::is_regular_file(norm) ? norm.parent_path() : norm;
    fs::path prefix = roots.size() > 1 ? base.filename() : fs::path();
    bases.emplace_back(base, prefix);
  }
  return [bases](const std::string &file) {
    const fs::path abs = fs::absolute(file).lexically_normal();
    for (const auto &[base, prefix] : bases) {
      const fs::path rel = abs.lexically_relative(base);
      if (!rel.empty() && *rel.begin() != "..")
        return (prefix / rel).generic_string();
    }
    return fs::path(file).generic_string();
  };
}

// Unqualified names pick the taxonomy entry with that simple name; names
// the taxonomy does not know are kept as written.
std::set<std::string> generic_set(const std::vector<std::string> &names,
                                  const std::vector<types::SeedEntry> &seed) {
  std::set<std::string> out;
  for (const auto &n : names) {
    bool matched = false;
    if (n.find('.') == std::string::npos) {
      for (const auto &e : seed) {
        const auto dot = e.name.rfind('.');
        if (e.name.substr(dot == std::string::npos ? 0 : dot + 1) == n) {
          out.insert(e.name);
          matched = true;
        }
      }
    }
    if (!matched)
      out.insert(n);
  }
  return out;
}

int analyze(const AnalyzeArgs &args, std::ostream &out) {
  const auto format = report::parse_format(args.format);
  std::vector<fs::path> roots(args.roots.begin(), args.roots.end());
  for (const auto &r : roots)
    if (!fs::exists(r))
      throw ConfigError("source root does not exist: " + r.string());

  detect::AnalysisOptions options;
  options.taxonomy = args.taxonomy;
  if (!args.catalog.empty())
    options.catalog = fs::path(args.catalog);
  if (!args.generic_types.empty())
    options.generic_types = generic_set(args.generic_types, types::load_seed(args.taxonomy));
  if (!args.log_methods.empty())
    options.detectors.log_methods = {args.log_methods.begin(), args.log_methods.end()};
  options.detectors.kitchen_sink_threshold = args.kitchen_sink_threshold;
  options.threads = args.threads;

  const std::vector<fs::path> files = syntax::discover_sources(roots, args.ext);
  const detect::ProjectAnalysis pa = detect::analyze_files(files, options);
  const std::string project = args.project.empty() ? project_name(roots.front()) : args.project;

  const report::ProjectReport rep = report::aggregate_project(project, pa);
  const report::FlowDistribution dist = report::flow_distribution(pa);
  const std::string suffix = *format == report::Format::Csv ? ".csv" : ".json";

  write_file(args.out + ".findings.json",
             report::dump(report::findings_json(project, pa, path_mapper(roots))));
  write_file(args.out + suffix, report::render({rep}, *format));
  write_file(args.out + ".distribution" + suffix, report::render(dist, *format));

  out << project << ": " << pa.files_analyzed() << " files analyzed, " << pa.files_skipped()
      << " skipped, " << pa.total_catches() << " catch clauses, " << pa.total_throws_sites()
      << " throws clauses, " << pa.unresolved_calls() << " unresolved calls\n";
  for (const auto &f : pa.files)
    if (f.skipped && f.diagnostic)
      out << "skipped " << path_mapper(roots)(f.file) << ":" << f.diagnostic->position.line
          << ":" << f.diagnostic->position.column << ": " << f.diagnostic->message << "\n";
  return kOk;
}

report::PrevalenceTable load_tables(const std::vector<std::string> &paths) {
  report::PrevalenceTable all;
  for (const auto &p : paths) {
    report::PrevalenceTable t = report::read_table(p);
    all.rows.insert(all.rows.end(), t.rows.begin(), t.rows.end());
  }
  return all;
}

std::vector<report::RowFilter> parse_filters(const std::vector<std::string> &texts) {
  std::vector<report::RowFilter> out;
  for (const auto &t : texts)
    out.push_back(report::RowFilter::parse(t));
  return out;
}

int ranksum(const RankSumArgs &args, std::ostream &out, std::ostream &err) {
  const auto id = detect::parse_anti_pattern(args.column);
  if (!id) {
    err << "error: unknown anti-pattern column '" << args.column << "'\n";
    return kUsage;
  }
  std::vector<report::RowFilter> fa, fb;
  try {
    fa = parse_filters(args.filter_a);
    fb = parse_filters(args.filter_b);
  } catch (const std::invalid_argument &e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  const auto a = report::column_values(load_tables(args.group_a), *id, fa);
  const auto b = report::column_values(load_tables(args.group_b), *id, fb);
  if (a.empty() || b.empty()) {
    err << "error: column " << detect::id_name(*id) << " has no values in group "
        << (a.empty() ? "a" : "b") << "\n";
    return kConfig;
  }
  out << report::render(report::wilcoxon_rank_sum(a, b), *report::parse_format(args.format));
  return kOk;
}

std::vector<std::string> split_list(const std::string &text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? std::string::npos
                                                                     : comma - start);
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty())
      out.push_back(item);
    if (comma == std::string::npos)
      break;
    start = comma + 1;
  }
  return out;
}

} // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
  CLI::App app{"Detects exception-handling anti-patterns in Java sources and summarizes "
               "their prevalence.",
               "ehap"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "ehap 0.1.0");

  AnalyzeArgs aa;
  std::string log_methods, generic_types;
  CLI::App *an = app.add_subcommand("analyze", "Analyze source trees; write findings and a "
                                               "prevalence report");
  an->add_option("roots", aa.roots, "Source directories or files")->required();
  an->add_option("--taxonomy", aa.taxonomy, "Exception taxonomy seed (JSON)")->required();
  an->add_option("--catalog", aa.catalog, "Library exception catalog (JSON)");
  an->add_option("--out", aa.out,
                 "Output prefix: writes <prefix>.findings.json, <prefix>.<format> and "
                 "<prefix>.distribution.<format>")
      ->capture_default_str();
  an->add_option("--format", aa.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  an->add_option("--ext", aa.ext, "Source file suffix")->capture_default_str();
  an->add_option("--project", aa.project, "Project name (default: name of the first root)");
  an->add_option("--log-methods", log_methods,
                 "Comma-separated method names treated as logging (default: log, trace, debug, "
                 "info, warn, warning, error, fatal, severe, fine, finer, finest, print, "
                 "println, printStackTrace)");
  an->add_option("--generic-types", generic_types,
                 "Comma-separated generic exception types; simple names are looked up in the "
                 "taxonomy (default: java.lang.Exception, java.lang.Throwable)");
  an->add_option("--kitchen-sink-threshold", aa.kitchen_sink_threshold,
                 "Distinct declared types that make a throws clause a kitchen sink")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  an->add_option("--threads", aa.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();

  CLI::App *stats = app.add_subcommand("stats", "Statistics over report or table CSVs");
  stats->require_subcommand(1);

  std::vector<std::string> prevalence_files;
  std::string prevalence_format = "csv";
  CLI::App *prev = stats->add_subcommand("prevalence", "Per-anti-pattern medians across projects");
  prev->add_option("tables", prevalence_files, "Report or table CSV files")->required();
  prev->add_option("--format", prevalence_format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  RankSumArgs ra;
  CLI::App *rs = stats->add_subcommand("ranksum", "Wilcoxon rank-sum test between two groups");
  rs->add_option("--column", ra.column, "Anti-pattern column (id or display name)")->required();
  rs->add_option("--group-a", ra.group_a, "CSV file(s) for group A")->required();
  rs->add_option("--group-b", ra.group_b, "CSV file(s) for group B")->required();
  rs->add_option("--filter-a", ra.filter_a, "Keep group A rows whose key=value matches");
  rs->add_option("--filter-b", ra.filter_b, "Keep group B rows whose key=value matches");
  rs->add_option("--format", ra.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  CLI::App *cat = app.add_subcommand("catalog", "Anti-pattern catalog");
  cat->require_subcommand(1);
  CLI::App *list = cat->add_subcommand("list", "List anti-pattern ids with descriptions");

  // Deepest subcommand reached, for scoped usage text.
  auto innermost = [&]() -> const CLI::App * {
    for (const CLI::App *sub : {prev, rs, list, an, stats, cat})
      if (sub->parsed())
        return sub;
    return &app;
  };
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << innermost()->help();
    return kOk;
  } catch (const CLI::CallForVersion &) {
    out << app.version() << "\n";
    return kOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << innermost()->help();
    return kUsage;
  }

  try {
    if (an->parsed()) {
      aa.log_methods = split_list(log_methods);
      aa.generic_types = split_list(generic_types);
      if (!generic_types.empty() && aa.generic_types.empty()) {
        err << "error: --generic-types must name at least one type\n";
        return kUsage;
      }
      if (!log_methods.empty() && aa.log_methods.empty()) {
        err << "error: --log-methods must name at least one method\n";
        return kUsage;
      }
      return analyze(aa, out);
    }
    if (prev->parsed()) {
      const auto medians = report::summarize_prevalence(load_tables(prevalence_files));
      out << report::render(medians, *report::parse_format(prevalence_format));
      return kOk;
    }
    if (rs->parsed())
      return ranksum(ra, out, err);
    if (list->parsed()) {
      for (auto id : detect::all_anti_patterns())
        out << detect::id_name(id) << '\t' << detect::to_string(detect::unit(id)) << '\t'
            << detect::description(id) << '\n';
      return kOk;
    }
  } catch (const ConfigError &e) {
    err << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kUsage;
}

} // namespace ehap::cli

// SPDX-License-Identifier: Apache-2.0
//
// Per-file and per-project analysis: runs the flow engine over every try
// statement of every method body and the detectors over every catch clause
// and throws clause.

#ifndef EHAP_DETECT_ANALYZER_H
#define EHAP_DETECT_ANALYZER_H

#include "ehap/detect/detectors.h"
#include "ehap/flow/catalog.h"
#include "ehap/flow/flow_engine.h"
#include "ehap/flow/project_index.h"
#include "ehap/syntax/ast.h"
#include "ehap/types/hierarchy.h"

#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ehap::detect {

struct TryAnalysis {
  syntax::SourcePosition position;
  flow::FlowSet flows; // resources + try block
  flow::CatchMatching matching;
  flow::FlowSet finally_flows;
};

struct CatchAnalysis {
  syntax::SourcePosition position;
  std::size_t try_index = 0; // into FileAnalysis::tries
  std::string method;        // owner#name/arity
  std::vector<std::string> declared_types;
  std::vector<std::string> resolved_types;
  bool is_generic = false;
  flow::FlowSet caught;
  std::vector<Finding> findings;

  bool has(AntiPatternId id) const;
  const Finding *finding(AntiPatternId id) const;
};

struct ThrowsAnalysis {
  syntax::SourcePosition position;
  std::string method;
  std::vector<std::string> declared_types;
  std::vector<std::string> resolved_types;
  std::vector<Finding> findings;

  bool has(AntiPatternId id) const;
};

struct FileAnalysis {
  std::string file;
  bool skipped = false;
  std::optional<syntax::Diagnostic> diagnostic;
  std::vector<TryAnalysis> tries;
  std::vector<CatchAnalysis> catches;
  std::vector<ThrowsAnalysis> throws_sites;
  std::size_t unresolved_calls = 0;
};

class Analyzer {
public:
  Analyzer(const flow::FlowEngine &engine, const DetectorConfig &config)
      : engine_(engine), config_(config) {}

  FileAnalysis analyze_unit(const syntax::CompilationUnit &unit) const;

private:
  class Walker;
  const flow::FlowEngine &engine_;
  const DetectorConfig &config_;
};

struct AnalysisOptions {
  std::filesystem::path taxonomy;
  std::optional<std::filesystem::path> catalog;
  std::set<std::string> generic_types = types::default_generic_types();
  DetectorConfig detectors;
  unsigned threads = 0; // 0 = hardware concurrency
};

/// Everything built for one analysis run. Owns the parsed units, so the
/// hierarchy, index and engine stay valid for the result's lifetime.
struct ProjectAnalysis {
  std::vector<syntax::CompilationUnit> units;
  std::unique_ptr<types::TypeUniverse> universe;
  std::unique_ptr<types::TypeResolver> resolver;
  std::unique_ptr<types::TypeHierarchy> hierarchy;
  std::unique_ptr<flow::LibraryCatalog> catalog;
  std::unique_ptr<flow::ProjectIndex> index;
  std::unique_ptr<flow::FlowEngine> engine;
  std::vector<FileAnalysis> files; // parallel to units

  std::size_t files_analyzed() const;
  std::size_t files_skipped() const;
  std::size_t unresolved_calls() const;
  std::size_t total_catches() const;
  std::size_t total_throws_sites() const;
};

/// Builds the analysis state for already-parsed units. Throws ConfigError
/// for taxonomy/catalog problems or duplicate project types.
ProjectAnalysis analyze_units(std::vector<syntax::CompilationUnit> units,
                              const AnalysisOptions &options);

/// Reads and parses `files` (concurrently), then calls analyze_units. Each
/// unit's `file` is the path as given.
ProjectAnalysis analyze_files(const std::vector<std::filesystem::path> &files,
                              const AnalysisOptions &options);

} // namespace ehap::detect

#endif // EHAP_DETECT_ANALYZER_H

// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_DETECT_DETECTORS_H
#define EHAP_DETECT_DETECTORS_H

#include "ehap/detect/anti_pattern.h"
#include "ehap/flow/flow_engine.h"
#include "ehap/syntax/ast.h"
#include "ehap/types/hierarchy.h"

#include <set>
#include <string>
#include <vector>

namespace ehap::detect {

std::set<std::string> default_log_methods();

struct DetectorConfig {
  std::set<std::string> log_methods = default_log_methods();
  int kitchen_sink_threshold = 3;
};

struct Finding {
  AntiPatternId id = AntiPatternId::OverCatch;
  syntax::SourcePosition position;
  std::size_t affected_flow_count = 0;
  std::string detail;
};

/// Everything the catch-level predicates look at for one clause.
struct CatchContext {
  const syntax::CatchClause *clause = nullptr;
  std::vector<std::string> resolved_declared_types;
  flow::FlowSet caught;
  flow::FlowSet try_uncaught;
  flow::FlowSet finally_escapes;
  bool inside_outer_try_block = false;
  bool is_generic = false;
  /// Resolved throws clause of the enclosing method, reported in the detail
  /// of UnhandledExceptions.
  std::vector<std::string> enclosing_throws;
};

/// Name-based: a MethodCall whose method name is in the configured set.
bool is_log_call(const syntax::Expr &e, const DetectorConfig &config);

/// Findings for one catch clause, ordered by anti-pattern id.
std::vector<Finding> classify_catch(const CatchContext &ctx, const types::TypeHierarchy &h,
                                    const DetectorConfig &config);

/// Findings for one method's throws clause. Methods without a throws clause
/// yield nothing. `resolved_throws` parallels `m.declared_throws`.
std::vector<Finding> classify_throws(const syntax::MethodDecl &m,
                                     const std::vector<std::string> &resolved_throws,
                                     const types::TypeHierarchy &h, const DetectorConfig &config);

} // namespace ehap::detect

#endif // EHAP_DETECT_DETECTORS_H

// SPDX-License-Identifier: Apache-2.0

#include "ehap/detect/analyzer.h"

#include "ehap/syntax/parser.h"

#include <algorithm>
#include <atomic>
#include <thread>

namespace ehap::detect {

using syntax::Block;
using syntax::Expr;
using syntax::ExprKind;
using syntax::Stmt;
using syntax::StmtKind;

bool CatchAnalysis::has(AntiPatternId id) const { return finding(id) != nullptr; }

const Finding *CatchAnalysis::finding(AntiPatternId id) const {
  for (const auto &f : findings)
    if (f.id == id)
      return &f;
  return nullptr;
}

bool ThrowsAnalysis::has(AntiPatternId id) const {
  return std::any_of(findings.begin(), findings.end(),
                     [&](const Finding &f) { return f.id == id; });
}

class Analyzer::Walker {
public:
  Walker(const flow::FlowEngine &engine, const DetectorConfig &config, FileAnalysis &out)
      : engine_(engine), config_(config), out_(out) {}

  void type(const syntax::TypeDecl &decl, const types::ResolutionContext &outer) {
    const types::ResolutionContext ctx = outer.nested(decl);
    for (const auto &m : decl.methods)
      method(m, ctx);
    for (const auto &n : decl.nested)
      type(n, ctx);
  }

private:
  void method(const syntax::MethodDecl &m, const types::ResolutionContext &ctx) {
    method_name_ = ctx.innermost()->qualified_name + "#" + m.name + "/" +
                   std::to_string(m.arity());
    throws_.clear();
    for (const auto &t : m.declared_throws)
      throws_.push_back(types::exception_name(engine_.resolver(), ctx, t));
    if (!m.declared_throws.empty()) {
      ThrowsAnalysis ta;
      ta.position = m.position;
      ta.method = method_name_;
      ta.declared_types = m.declared_throws;
      ta.resolved_types = throws_;
      ta.findings = classify_throws(m, throws_, engine_.hierarchy(), config_);
      out_.throws_sites.push_back(std::move(ta));
    }
    if (!m.body)
      return;
    mc_ = flow::MethodContext{ctx, &m};
    scope_ = flow::Scope();
    block(*m.body, false);
  }

  void block(const Block &b, bool inside_try) {
    const auto mark = scope_.mark();
    for (const auto &s : b.statements)
      stmt(s, inside_try);
    scope_.restore(mark);
  }

  void stmt(const Stmt &s, bool inside_try) {
    switch (s.kind) {
    case StmtKind::Block:
      block(s.blocks.front(), inside_try);
      return;
    case StmtKind::LocalVarDecl:
      for (const auto &v : s.vars)
        if (v.init)
          expr(*v.init);
      scope_.declare_locals(s);
      return;
    case StmtKind::For: {
      const auto mark = scope_.mark();
      for (const auto &init : s.init_stmts)
        stmt(init, inside_try);
      exprs_and_blocks(s, inside_try);
      scope_.restore(mark);
      return;
    }
    case StmtKind::ForEach: {
      expr(s.exprs.front());
      const auto mark = scope_.mark();
      scope_.push({s.vars.front().name, s.type_name, {}});
      block(s.blocks.front(), inside_try);
      scope_.restore(mark);
      return;
    }
    case StmtKind::Switch: {
      for (const auto &e : s.exprs)
        expr(e);
      const auto mark = scope_.mark();
      for (const auto &group : s.blocks)
        for (const auto &inner : group.statements)
          stmt(inner, inside_try);
      scope_.restore(mark);
      return;
    }
    case StmtKind::Try:
      try_stmt(s, inside_try);
      return;
    default:
      exprs_and_blocks(s, inside_try);
      return;
    }
  }

  void exprs_and_blocks(const Stmt &s, bool inside_try) {
    for (const auto &e : s.exprs)
      expr(e);
    for (const auto &b : s.blocks)
      block(b, inside_try);
  }

  void expr(const Expr &e) {
    if (e.kind == ExprKind::Lambda)
      return;
    for (const auto &c : e.children)
      expr(c);
    if ((e.kind == ExprKind::MethodCall || e.kind == ExprKind::New ||
         e.kind == ExprKind::AnonymousClass) &&
        !engine_.resolve_call(e, mc_, scope_).resolved)
      ++out_.unresolved_calls;
  }

  void try_stmt(const Stmt &s, bool inside_try) {
    const types::TypeHierarchy &h = engine_.hierarchy();
    TryAnalysis ta;
    ta.position = s.position;
    ta.flows = engine_.try_region_flows(s, mc_, scope_);
    ta.matching = engine_.match_catches(s, ta.flows, mc_.ctx);
    ta.finally_flows = engine_.finally_escaping_flows(s, mc_, scope_);
    const std::size_t try_index = out_.tries.size();

    for (std::size_t i = 0; i < s.catches.size(); ++i) {
      const syntax::CatchClause &clause = s.catches[i];
      CatchContext cc;
      cc.clause = &clause;
      cc.resolved_declared_types = engine_.clause_types(clause, mc_.ctx);
      cc.caught = ta.matching.per_clause[i];
      cc.try_uncaught = ta.matching.uncaught;
      cc.finally_escapes = ta.finally_flows;
      cc.inside_outer_try_block = inside_try;
      cc.is_generic = std::any_of(cc.resolved_declared_types.begin(),
                                  cc.resolved_declared_types.end(),
                                  [&](const std::string &t) { return h.is_generic(t); });
      cc.enclosing_throws = throws_;

      CatchAnalysis ca;
      ca.position = clause.position;
      ca.try_index = try_index;
      ca.method = method_name_;
      ca.declared_types = clause.declared_types;
      ca.resolved_types = cc.resolved_declared_types;
      ca.is_generic = cc.is_generic;
      ca.caught = cc.caught;
      ca.findings = classify_catch(cc, h, config_);
      out_.catches.push_back(std::move(ca));
    }
    out_.tries.push_back(std::move(ta));

    const auto mark = scope_.mark();
    for (const auto &r : s.resources)
      expr(r);
    for (const auto &decl : s.resource_vars)
      scope_.declare_locals(decl);
    block(s.try_block(), true);
    scope_.restore(mark);

    for (const auto &clause : s.catches) {
      const auto m = scope_.mark();
      scope_.declare_catch_param(clause);
      block(clause.body, inside_try);
      scope_.restore(m);
    }
    if (s.finally_block)
      block(*s.finally_block, inside_try);
  }

  const flow::FlowEngine &engine_;
  const DetectorConfig &config_;
  FileAnalysis &out_;
  flow::MethodContext mc_;
  flow::Scope scope_;
  std::string method_name_;
  std::vector<std::string> throws_;
};

FileAnalysis Analyzer::analyze_unit(const syntax::CompilationUnit &unit) const {
  FileAnalysis out;
  out.file = unit.file;
  out.skipped = unit.skipped;
  out.diagnostic = unit.diagnostic;
  if (unit.skipped)
    return out;
  Walker w(engine_, config_, out);
  types::ResolutionContext root{&unit, {}};
  for (const auto &t : unit.types)
    w.type(t, root);
  return out;
}

std::size_t ProjectAnalysis::files_analyzed() const {
  return static_cast<std::size_t>(
      std::count_if(files.begin(), files.end(), [](const FileAnalysis &f) { return !f.skipped; }));
}

std::size_t ProjectAnalysis::files_skipped() const { return files.size() - files_analyzed(); }

std::size_t ProjectAnalysis::unresolved_calls() const {
  std::size_t n = 0;
  for (const auto &f : files)
    n += f.unresolved_calls;
  return n;
}

std::size_t ProjectAnalysis::total_catches() const {
  std::size_t n = 0;
  for (const auto &f : files)
    n += f.catches.size();
  return n;
}

std::size_t ProjectAnalysis::total_throws_sites() const {
  std::size_t n = 0;
  for (const auto &f : files)
    n += f.throws_sites.size();
  return n;
}

namespace {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index writes
// its own slot, so results are independent of scheduling.
template <typename Fn> void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++)
        fn(i);
    });
  for (auto &th : pool)
    th.join();
}

} // namespace

ProjectAnalysis analyze_units(std::vector<syntax::CompilationUnit> units,
                              const AnalysisOptions &options) {
  ProjectAnalysis pa;
  pa.units = std::move(units);

  const std::vector<types::SeedEntry> seed = types::load_seed(options.taxonomy);
  pa.catalog = std::make_unique<flow::LibraryCatalog>(
      options.catalog ? flow::LibraryCatalog::load(*options.catalog) : flow::LibraryCatalog());

  pa.universe = std::make_unique<types::TypeUniverse>();
  for (const auto &e : seed)
    pa.universe->add(e.name);
  pa.universe->add_units(pa.units);
  for (const auto &cls : pa.catalog->classes())
    pa.universe->add(cls);
  for (const auto &name : pa.catalog->exception_names())
    pa.universe->add(name);
  pa.resolver = std::make_unique<types::TypeResolver>(*pa.universe);

  types::HierarchyBuilder builder(seed, options.generic_types);
  builder.add_project_types(pa.units, *pa.resolver);
  builder.synthesize_references(pa.units, *pa.resolver);
  for (const auto &name : pa.catalog->exception_names())
    builder.synthesize(name);
  pa.hierarchy = std::make_unique<types::TypeHierarchy>(std::move(builder).build());

  pa.index = std::make_unique<flow::ProjectIndex>(flow::ProjectIndex::build(pa.units, *pa.resolver));
  pa.engine = std::make_unique<flow::FlowEngine>(*pa.hierarchy, *pa.resolver, *pa.catalog,
                                                 *pa.index);

  const Analyzer analyzer(*pa.engine, options.detectors);
  pa.files.resize(pa.units.size());
  parallel_for(pa.units.size(), options.threads,
               [&](std::size_t i) { pa.files[i] = analyzer.analyze_unit(pa.units[i]); });
  return pa;
}

ProjectAnalysis analyze_files(const std::vector<std::filesystem::path> &files,
                              const AnalysisOptions &options) {
  std::vector<syntax::CompilationUnit> units(files.size());
  parallel_for(files.size(), options.threads, [&](std::size_t i) {
    const std::string name = files[i].generic_string();
    std::string text;
    try {
      text = syntax::read_file(files[i]);
    } catch (const std::exception &e) {
      units[i].file = name;
      units[i].skipped = true;
      units[i].diagnostic = syntax::Diagnostic{{name, 1, 1}, e.what()};
      return;
    }
    units[i] = syntax::parse_unit(text, name);
  });
  return analyze_units(std::move(units), options);
}

} // namespace ehap::detect

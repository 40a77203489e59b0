// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_SYNTAX_PARSER_H
#define EHAP_SYNTAX_PARSER_H

#include "ehap/syntax/ast.h"

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ehap::syntax {

/// Parses one source file of the supported subset.
///
/// Never throws for bad input: a file that fails to lex, fails to parse, or
/// uses a construct outside the subset comes back with `skipped = true`, no
/// types, and a diagnostic carrying the first error position.
///
/// Supported: package and imports; class/interface/enum declarations with
/// nesting; fields; methods and constructors with throws clauses; block,
/// local variable, expression, if/else, while, do, for, for-each, switch
/// (colon labels), return, throw, try/catch/finally, try-with-resources,
/// multi-catch, break, continue and synchronized statements; calls, object
/// creation, names, field and array access, literals, operators, casts,
/// instanceof, conditionals, array creation, lambdas and anonymous classes.
/// Annotation uses and generic type arguments are accepted and discarded.
/// Lambda and anonymous class bodies are checked for well-formedness and
/// kept as opaque nodes.
CompilationUnit parse_unit(std::string_view source_text, const std::string &file);

/// Returns every type name following an `@throws` or `@exception` tag in a
/// raw `/** ... */` comment, in order. Tags without a following name are
/// ignored.
std::vector<std::string> extract_javadoc_throws(std::string_view doc_comment);

/// Recursively collects regular files under each root whose name ends in
/// `extension`. A root that is itself a file is taken as-is. Results are
/// sorted so directory iteration order never leaks into reports.
std::vector<std::filesystem::path>
discover_sources(const std::vector<std::filesystem::path> &roots,
                 const std::string &extension);

/// Reads a whole file as bytes. Throws std::runtime_error on I/O failure.
std::string read_file(const std::filesystem::path &path);

} // namespace ehap::syntax

#endif // EHAP_SYNTAX_PARSER_H

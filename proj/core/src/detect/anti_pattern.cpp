// SPDX-License-Identifier: Apache-2.0

#include "ehap/detect/anti_pattern.h"

#include <cctype>

namespace ehap::detect {
namespace {

struct Info {
  std::string_view id;
  std::string_view display;
  PatternGroup group;
  std::string_view description;
};

constexpr std::array<Info, kAntiPatternCount> kInfo = {{
    {"OverCatch", "Over-catch", PatternGroup::Flow,
     "Handler declares a supertype that absorbs two or more distinct, more specific exceptions."},
    {"OverCatchAndAbort", "Over-catch and Abort", PatternGroup::Flow,
     "Over-catching handler that also terminates the process."},
    {"UnhandledExceptions", "Unhandled Exceptions", PatternGroup::Flow,
     "Some exception raised in the try block is matched by none of its handlers."},
    {"UnreachableHandler", "Unreachable Handler", PatternGroup::Flow,
     "No exception raised in the try block can reach this handler."},
    {"CatchAndDoNothing", "Catch and Do Nothing", PatternGroup::Handler,
     "Handler body has no statements."},
    {"CatchAndReturnNull", "Catch and Return Null", PatternGroup::Handler,
     "Handler answers the failure with a null return value."},
    {"CatchGeneric", "Catch Generic", PatternGroup::Handler,
     "Handler declares a catch-all type such as Exception or Throwable."},
    {"DestructiveWrapping", "Destructive Wrapping", PatternGroup::Handler,
     "Handler throws a new exception without passing the caught one along."},
    {"DummyHandler", "Dummy Handler", PatternGroup::Handler,
     "Handler does nothing except log or print."},
    {"IgnoringInterruptedException", "Ignoring Interrupted Exception", PatternGroup::Handler,
     "Handler swallows an interruption: no rethrow and no interrupt() call."},
    {"IncompleteImplementation", "Incomplete Implementation", PatternGroup::Handler,
     "Empty handler left with a TODO or FIXME note."},
    {"LogAndReturnNull", "Log and Return Null", PatternGroup::Handler,
     "Logging-only handler that ends by returning null."},
    {"LogAndThrow", "Log and Throw", PatternGroup::Handler,
     "Handler logs the failure and also throws, so it gets reported twice."},
    {"MultiLineLog", "Multi-Line Log", PatternGroup::Handler,
     "Handler splits one report across several log calls."},
    {"NestedTry", "Nested Try", PatternGroup::Handler,
     "Try statement placed inside the try block of another try statement."},
    {"RelyingOnGetCause", "Relying on getCause()", PatternGroup::Handler,
     "Handler inspects the wrapped cause via getCause()."},
    {"ThrowWithinFinally", "Throw within Finally", PatternGroup::Handler,
     "The finally block of the same try can itself raise an exception."},
    {"ThrowsGeneric", "Throws Generic", PatternGroup::Throws,
     "Method declares a catch-all type in its throws clause."},
    {"ThrowsKitchenSink", "Throws Kitchen Sink", PatternGroup::Throws,
     "Method declares many unrelated exception types."},
}};

const Info &info(AntiPatternId id) { return kInfo[static_cast<std::size_t>(id)]; }

} // namespace

const std::array<AntiPatternId, kAntiPatternCount> &all_anti_patterns() {
  static const auto all = [] {
    std::array<AntiPatternId, kAntiPatternCount> out{};
    for (std::size_t i = 0; i < kAntiPatternCount; ++i)
      out[i] = static_cast<AntiPatternId>(i);
    return out;
  }();
  return all;
}

std::string_view id_name(AntiPatternId id) { return info(id).id; }
std::string_view display_name(AntiPatternId id) { return info(id).display; }
std::string_view description(AntiPatternId id) { return info(id).description; }
PatternGroup group(AntiPatternId id) { return info(id).group; }

std::string_view to_string(PatternGroup g) {
  switch (g) {
  case PatternGroup::Flow:
    return "flow";
  case PatternGroup::Handler:
    return "handler";
  case PatternGroup::Throws:
    return "throws";
  }
  return "?";
}

bool is_flow_pattern(AntiPatternId id) { return group(id) == PatternGroup::Flow; }

std::string normalize_label(std::string_view text) {
  std::string out;
  for (unsigned char c : text)
    if (std::isalnum(c))
      out.push_back(static_cast<char>(std::tolower(c)));
  return out;
}

std::optional<AntiPatternId> parse_anti_pattern(std::string_view text) {
  const std::string key = normalize_label(text);
  if (key.empty())
    return std::nullopt;
  for (AntiPatternId id : all_anti_patterns())
    if (normalize_label(id_name(id)) == key || normalize_label(display_name(id)) == key)
      return id;
  return std::nullopt;
}

} // namespace ehap::detect

// SPDX-License-Identifier: Apache-2.0

#ifndef EHAP_DETECT_ANTI_PATTERN_H
#define EHAP_DETECT_ANTI_PATTERN_H

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace ehap::detect {

/// The 19 detected anti-patterns; the first 17 are judged per catch clause,
/// the last two per method throws clause. Declaration order is report order.
enum class AntiPatternId : std::uint8_t {
  OverCatch,
  OverCatchAndAbort,
  UnhandledExceptions,
  UnreachableHandler,
  CatchAndDoNothing,
  CatchAndReturnNull,
  CatchGeneric,
  DestructiveWrapping,
  DummyHandler,
  IgnoringInterruptedException,
  IncompleteImplementation,
  LogAndReturnNull,
  LogAndThrow,
  MultiLineLog,
  NestedTry,
  RelyingOnGetCause,
  ThrowWithinFinally,
  ThrowsGeneric,
  ThrowsKitchenSink,
};

inline constexpr std::size_t kAntiPatternCount = 19;
inline constexpr std::size_t kCatchPatternCount = 17;

enum class PatternGroup : std::uint8_t { Flow, Handler, Throws };
enum class CountingUnit : std::uint8_t { Catch, Throws };

const std::array<AntiPatternId, kAntiPatternCount> &all_anti_patterns();

std::string_view id_name(AntiPatternId id);      // "OverCatch"
std::string_view display_name(AntiPatternId id); // "Over-catch"
std::string_view description(AntiPatternId id);
PatternGroup group(AntiPatternId id);
std::string_view to_string(PatternGroup g);

inline CountingUnit unit(AntiPatternId id) {
  return static_cast<std::size_t>(id) < kCatchPatternCount ? CountingUnit::Catch
                                                           : CountingUnit::Throws;
}
inline std::string_view to_string(CountingUnit u) {
  return u == CountingUnit::Catch ? "catch" : "throws";
}

/// True for the four patterns whose findings carry an affected-flow count.
bool is_flow_pattern(AntiPatternId id);

/// Accepts an id name or a display name, ignoring case, spaces and
/// punctuation: "Destructive Wrapping", "destructive_wrapping" and
/// "DestructiveWrapping" all match.
std::optional<AntiPatternId> parse_anti_pattern(std::string_view text);

/// Lowercase alphanumerics only.
std::string normalize_label(std::string_view text);

} // namespace ehap::detect

#endif // EHAP_DETECT_ANTI_PATTERN_H

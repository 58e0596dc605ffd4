#pragma once

// Verb dispatch shared by the CLI and the HTTP service. Both build a JSON
// argument object and render the returned JSON the same way, so their
// outputs agree byte for byte.

#include <atomic>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "relim/errors.hpp"
#include "relim/json_io.hpp"

namespace relim::commands {

/// Malformed or missing arguments. Maps to exit code 2 / HTTP 400.
class UsageError : public Error {
 public:
  using Error::Error;
};

struct Context {
  const std::atomic<bool>* cancel = nullptr;
  std::function<void(const SearchStats&)> progress;
  unsigned threads = 1;
};

struct Output {
  Json json;
  /// Human-readable rendering for --format text.
  std::string text;
  /// 0, or 1 when the computed verdict is negative.
  int exit_code = 0;
  /// Enumeration statistics, when the verb ran one.
  std::optional<SearchStats> stats;
};

/// Verbs accepted by `run`, in help order.
const std::vector<std::string>& verbs();
bool is_verb(const std::string& verb);

/// Throws UsageError, ParseError, PreconditionError, BlowUpError or
/// CancelledError.
///
/// Problem-valued arguments accept the text format as a string or the JSON
/// mirror as an object. Trees use the tree JSON mirror.
Output run(const std::string& verb, const Json& args, const Context& context = {});

/// "NAME = L1 L2 ..." lines (or "NAME: ..."), or a JSON dictionary
/// [{"name": ..., "members": [...]}], or a lifted problem carrying one.
Json parse_rename(const std::string& text);

}  // namespace relim::commands

#pragma once

#include <string>
#include <string_view>

#include "relim/problem.hpp"

namespace relim {

// Problem text format (UTF-8, LF):
//
//   # optional note lines
//   delta: 3
//   nodes:
//   M^3
//   P O^2
//   edges:
//   M [P O]
//   O O
//
// config := item (SP item)* ; item := group ("^" INT)? ;
// group := LABEL | "[" LABEL (SP? LABEL)* "]" ; LABEL := [A-Z][A-Z0-9']*
// `#` starts a comment. Comment lines before `delta:` become the note.

/// Throws ParseError with line and column.
Problem parse_problem(std::string_view text);

/// Canonical text: labels, groups and configurations sorted, `^` exponents.
std::string serialize_problem(const Problem& problem);

/// Parses a single configuration line. `line` is used for error positions.
CondensedConfig parse_config(std::string_view text, std::size_t line = 1);

}  // namespace relim

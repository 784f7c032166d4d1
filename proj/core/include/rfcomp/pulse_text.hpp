#pragma once

// Bracket notation for pulse programs, one program per line:
//
//   program := block+
//   block   := "[" segment+ "]" "^"? ( "{" rep "}" | rep )
//   rep     := ( "×" | "x" | "\times" ) INT
//   segment := "(" DECIMAL ")" "_" ( "{" DECIMAL "}" | DECIMAL | "z" | "{z}" )
//
// "(f)_p" is an RF segment of flip f at phase p; "(a)_z" is an exact
// z-frame shift by a. Angles are degrees; whitespace is ignored.

#include <string>
#include <string_view>

#include "rfcomp/pulse.hpp"

namespace rfcomp {

/// Throws ParseError carrying the byte offset of the first bad character.
PulseProgram parse_program(std::string_view text);

/// Canonical text, angles rounded to 0.1 degree.
std::string serialize_program(const PulseProgram& program);

/// Canonical text of one block.
std::string serialize_block(const Block& block);

/// Format an angle to one decimal, never printing "-0.0".
std::string format_deg(double deg);

}  // namespace rfcomp

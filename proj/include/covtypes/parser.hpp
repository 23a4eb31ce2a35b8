#pragma once

#include <string_view>

#include "covtypes/syntax.hpp"

namespace covtypes {

/// Parses a `.cov` source file. Throws ParseError (with position and the
/// expected-token set) or ScopeError for duplicate top-level names.
SurfaceProgram parse_program(std::string_view source);

SExprPtr parse_expr(std::string_view source);
RType parse_rtype(std::string_view source);
Qualifier parse_qualifier(std::string_view source);
BaseType parse_base_type(std::string_view source);

/// Reads `(* covcheck: window=N expect=accept|reject *)` headers.
Pragma parse_pragma(std::string_view source);

/// True for names the surface syntax reserves.
bool is_keyword(std::string_view word);

}  // namespace covtypes

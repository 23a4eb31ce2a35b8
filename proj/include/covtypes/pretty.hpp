#pragma once

#include <string>

#include "covtypes/syntax.hpp"

namespace covtypes {

/// Core terms and programs rendered in the surface syntax; parsing and
/// elaborating the text gives back an alpha-equivalent term.
std::string pretty_print(const CorePtr& t);
std::string pretty_print(const Value& v);
std::string pretty_print(const CoreProgram& p);

/// Surface expressions/programs (used for desugaring round trips).
std::string print_surface(const SExprPtr& e);
std::string print_surface(const SurfaceProgram& p);

}  // namespace covtypes

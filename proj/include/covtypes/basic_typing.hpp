#pragma once

#include <map>
#include <optional>
#include <string>

#include "covtypes/syntax.hpp"

namespace covtypes {

using SimpleEnv = std::map<std::string, SimpleType>;

/// Simple (erased) type of a value / term. Unannotated lambda parameters
/// take their type from `expected`. `unit_payload` selects the assert
/// result `bool * unit` instead of `bool * b`. Throws SortError / ScopeError.
SimpleType basic_type(const Value& v, const SimpleEnv& env, const std::optional<SimpleType>& expected = std::nullopt,
                      SourcePos pos = {}, bool unit_payload = false);
SimpleType basic_type(const CorePtr& t, const SimpleEnv& env,
                      const std::optional<SimpleType>& expected = std::nullopt, bool unit_payload = false);

/// Checks the whole program against the erasure of its goal.
void basic_check(const CoreProgram& p, bool unit_payload = false);

/// Simple type of a builtin used as a first-class value (projections need
/// the argument sort and are rejected here).
std::optional<SimpleType> builtin_simple_type(const std::string& name);

}  // namespace covtypes

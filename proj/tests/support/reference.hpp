#pragma once
// Independent oracles for the test suites. Nothing here calls the
// interpreter, the elaborator or the VC deciders under test.

#include <cstdint>
#include <map>
#include <set>
#include <string>

#include "covtypes/parser.hpp"
#include "covtypes/qualifier.hpp"
#include "covtypes/rtype.hpp"

namespace reftest {

using covtypes::Qualifier;
using covtypes::SemanticValue;

using Env = std::map<std::string, SemanticValue>;

/// Direct recursive evaluation of a qualifier. `nu` may be null. Bounded
/// quantifiers range over [-window, window] (ints) or both booleans.
SemanticValue ref_term(const Qualifier& q, const Env& env, const SemanticValue* nu, std::int64_t window);
bool ref_holds(const Qualifier& q, const Env& env, const SemanticValue* nu, std::int64_t window);

/// Every outcome of a surface program, computed by a big-step list-monad
/// evaluator over the surface syntax (let* included, no ANF). Throws
/// std::runtime_error on stuck terms.
std::set<SemanticValue> surface_outcomes(const covtypes::SurfaceProgram& p, std::int64_t window,
                                         bool unit_payload = false);

}  // namespace reftest

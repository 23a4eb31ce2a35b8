#pragma once
// Seeded random generators for the property suites.

#include <random>
#include <string>
#include <vector>

#include "covtypes/qualifier.hpp"
#include "covtypes/vc.hpp"

namespace reftest {

using Rng = std::mt19937_64;

/// Integer term over `names` (and ν when `nu`), literals in [-3, 3].
covtypes::Qualifier random_int_term(Rng& rng, int depth, const std::vector<std::string>& names, bool nu);

/// Boolean formula over integer `names` (and ν). `quantifiers` allows nested
/// bounded ∀/∃ over fresh names drawn from {"z", "z2"}.
covtypes::Qualifier random_formula(Rng& rng, int depth, const std::vector<std::string>& names, bool nu,
                                   bool quantifiers = false);

/// Closed VC with 1-3 integer prefix entries and an optional nested
/// quantifier in the matrix. Literals stay within [-3, 3].
covtypes::VC random_vc(Rng& rng, bool universal_only = false);

/// Source text of a random well-typed `.cov` program (with a matching
/// `check ... : [T | true]` goal). Exercises let, let-pair, let*, if,
/// lambdas, top-level definitions, assume, assert, generators and shadowing.
std::string random_program(Rng& rng, int depth = 3);

}  // namespace reftest

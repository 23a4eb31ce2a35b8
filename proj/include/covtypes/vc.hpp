#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covtypes/qualifier.hpp"

namespace covtypes {

enum class Quant { Forall, Exists };

/// One quantifier of a VC prefix. The bound mentions the quantified variable
/// by `name`, plus earlier prefix entries.
struct PrefixEntry {
  Quant quant;
  std::string name;
  BaseType sort;
  Qualifier bound;
};

/// Verification condition: Q1 x1:b1 [bound1]. ... Qn xn:bn [boundn]. matrix.
/// A universal entry reads `forall x. bound ==> rest`, an existential one
/// `exists x. bound && rest`. The matrix may nest further bounded quantifiers
/// (used when several symbolic paths are merged).
struct VC {
  std::vector<PrefixEntry> prefix;
  Qualifier matrix;

  /// The whole VC as a single closed formula.
  Qualifier as_formula() const;
  std::string to_string() const;
};

/// Throws ScopeError unless every free name is bound by the prefix (or an
/// enclosing nested quantifier) and ν does not occur.
void check_closed(const VC& vc);

struct Verdict {
  enum class Kind { Valid, Invalid, WindowInsufficient };

  Kind kind = Kind::Valid;
  /// For Invalid: the falsifying assignment of the leading universal block.
  std::vector<std::pair<std::string, SemanticValue>> witness;

  bool valid() const { return kind == Kind::Valid; }
  std::string witness_string() const;
};

const char* to_string(Verdict::Kind k);

/// Decides `vc` by exhaustive enumeration with integers ranging over
/// [-window, window]. The outermost quantifier is split across OpenMP
/// threads and integer domains are narrowed from equality/interval conjuncts
/// of each bound. Witnesses are the first counterexample in enumeration
/// order, so the result is identical to decide_bounded_reference.
Verdict decide_bounded(const VC& vc, std::int64_t window);

/// Serial reference: plain enumeration over full window domains using the
/// tree-walking qualifier evaluator. Kept for differential testing.
Verdict decide_bounded_reference(const VC& vc, std::int64_t window);

/// True iff some windowed valuation of the free names of `q` (sorts from
/// `env`) and of ν (when `nu_sort` is given) satisfies `q`.
bool satisfiable(const Qualifier& q, const SortEnv& env, std::int64_t window,
                 const std::optional<BaseType>& nu_sort = std::nullopt);

}  // namespace covtypes

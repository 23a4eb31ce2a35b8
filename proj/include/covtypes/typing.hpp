#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "covtypes/rtype.hpp"
#include "covtypes/syntax.hpp"
#include "covtypes/vc.hpp"

namespace covtypes {

/// Name of ν inside verification conditions.
inline const std::string kNuName = "\xce\xbd";

struct Binding {
  enum class Kind { Over, Cover, Fun };

  std::string name;
  Kind kind = Kind::Cover;
  RType type;
  /// The qualifier is also an upper bound on the bound value (builtin and
  /// value results). Inexact coverage bindings are unconstrained when an
  /// over-approximate judgment quantifies over them.
  bool exact = true;
  bool param = false;
  /// Branch refinement on ν added by `if`.
  std::optional<Qualifier> guard;
  /// Passed to an under-parameter; any later use is a linearity error.
  bool consumed = false;
  /// Unannotated lambda, checked only against an expected arrow.
  std::shared_ptr<const Value> pending;

  bool is_base() const { return kind != Kind::Fun; }
};

using Context = std::vector<Binding>;

Binding over_binding(std::string name, RType t);
Binding cover_binding(std::string name, RType t, bool exact = true);
Binding fun_binding(std::string name, RType t);

const Binding* lookup(const Context& ctx, const std::string& name);
SortEnv sort_env(const Context& ctx);

/// Sorting and scoping of every qualifier in `t`. Throws SortError/ScopeError.
void wf_type(const Context& ctx, const RType& t);

/// Each coverage binding must be inhabited given the bindings before it.
/// Throws CovError "empty-coverage".
void wf_ctx(const Context& ctx, std::int64_t window);

/// Base subtyping VC. Cover/Cover: over bindings universally, then ν, then
/// cover bindings existentially. Over/Over: everything universal.
VC sub_base(const Context& ctx, const RType& sub, const RType& super);

struct Obligation {
  std::string rule;
  VC vc;
};

/// Structural subtyping; the VCs whose joint validity decides `sub <: super`.
/// Throws CovError "shape-mismatch".
std::vector<Obligation> sub_type(const Context& ctx, const RType& sub, const RType& super);

/// First failing verdict of sub_type (Valid when all hold).
Verdict decide_sub_type(const Context& ctx, const RType& sub, const RType& super, std::int64_t window);

/// Synthesized type of a value: constants and base variables get their
/// singleton coverage type.
RType synth_value(const Context& ctx, const Value& v, SourcePos pos = {});

// ---------------------------------------------------------------------------
// Checking

enum class Backend { Bounded, Smt };

struct CheckOptions {
  std::int64_t window = 8;
  Backend backend = Backend::Bounded;
  std::string solver_cmd = "z3 -in";
  int timeout_ms = 10000;
  bool strict_overapp = false;
  bool assert_unit_payload = false;
};

struct VcRecord {
  int id = 0;
  std::string rule;
  SourcePos pos;
  VC vc;
  std::string verdict;  // valid | invalid | window-insufficient | unknown | timeout | solver-failed
  std::string method;   // bounded | smt
  std::string witness;
};

struct Diagnostic {
  std::string code;  // vc-invalid, linearity, annotation-required, sort-error, ...
  std::string rule;
  std::string message;
  SourcePos pos;
  std::string witness;
};

struct CheckResult {
  enum class Outcome { Accepted, Rejected, Inconclusive };

  Outcome outcome = Outcome::Accepted;
  std::int64_t window = 8;
  std::vector<VcRecord> vcs;
  std::vector<Diagnostic> diagnostics;

  bool accepted() const { return outcome == Outcome::Accepted; }
};

const char* to_string(CheckResult::Outcome o);

/// Effective window: the flag, raised to the file's pragma when that is larger.
std::int64_t effective_window(std::int64_t flag, const Pragma& pragma);

/// Checks `p.term` against `p.goal`. Never throws for ill-typed programs;
/// failures become diagnostics. `opts.window` is used as given.
CheckResult check_program(const CoreProgram& p, const CheckOptions& opts);

}  // namespace covtypes

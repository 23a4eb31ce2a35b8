#pragma once

#include <string>

#include "covtypes/vc.hpp"

namespace covtypes {

/// Stable SMT symbol for a VC variable: `x!name`, with `'` spelled `!q` and
/// ν spelled `!nu`.
std::string smt_symbol(const std::string& name);

/// SMT-LIB2 script asserting the negation of `vc`; `unsat` means valid.
/// Integers are unbounded here, unlike decide_bounded.
std::string emit_smt2(const VC& vc);

enum class SolverAnswer { Sat, Unsat, Unknown, Timeout, Failed };

const char* to_string(SolverAnswer a);

struct SolverResult {
  SolverAnswer answer = SolverAnswer::Failed;
  std::string output;  // raw stdout (and stderr) of the solver
};

/// Runs an external solver (`/bin/sh -c cmd`) with the script on stdin.
/// One subprocess per call; safe to use from several threads.
class SolverClient {
 public:
  explicit SolverClient(std::string command = "z3 -in", int timeout_ms = 10000)
      : command_(std::move(command)), timeout_ms_(timeout_ms) {}

  SolverResult check(const std::string& script) const;

  const std::string& command() const { return command_; }

  /// True when `command` answers a trivial query with sat/unsat.
  static bool available(const std::string& command);

 private:
  std::string command_;
  int timeout_ms_;
};

}  // namespace covtypes

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "covtypes/interpreter.hpp"
#include "covtypes/typing.hpp"

namespace covtypes {

enum class Membership { Member, NonMember, Inconclusive };

const char* to_string(Membership m);

struct MemberResult {
  Membership membership = Membership::Member;
  std::string detail;  // why not a member / why inconclusive

  bool member() const { return membership == Membership::Member; }
};

struct OracleOptions {
  std::int64_t window = 8;
  bool assert_unit_payload = false;
  Strategy strategy = Strategy::DepthFirst;
  /// Closed function terms used to instantiate higher-order parameters, in
  /// addition to the builtins.
  std::vector<std::pair<std::string, CorePtr>> function_probes;
};

/// Window values of `b` satisfying `q` under `sigma`.
std::vector<SemanticValue> window_values(const Qualifier& q, const BaseType& b, const Valuation& sigma,
                                         std::int64_t window);

/// Generators standing in for "every term of [b | q]": the canonical one
/// followed by up to three strict supersets (first missing value added,
/// last missing value added, whole window). Each is closed: the names of
/// `sigma` are let-bound in front of the assume.
std::vector<CorePtr> probe_generators(const Qualifier& q, const BaseType& b, const Valuation& sigma,
                                      std::int64_t window);

/// Is the closed term `e` in the denotation of `tau`? Free names of `tau`
/// take their values from `sigma`. Over types are judged on in-window
/// outcomes only.
MemberResult member_type(const CorePtr& e, const RType& tau, const OracleOptions& opts, const Valuation& sigma = {});

/// Context denotation: coverage bindings become probe generators, over
/// bindings range over their window values, function bindings over the
/// probe functions that belong to their type.
MemberResult member_ctx(const CorePtr& e, const RType& tau, const Context& ctx, const OracleOptions& opts);

/// Closed term for each top-level definition of `p`, for use as probes.
std::vector<std::pair<std::string, CorePtr>> top_level_functions(const CoreProgram& p);

struct FundamentalReport {
  std::string checker;    // ok | err | inconclusive
  std::string oracle;     // member | nonmember | inconclusive
  std::string verdict;    // consistent | SOUNDNESS-BUG | incomplete | inconclusive
  std::string corollary;  // holds | fails | n/a
  std::string detail;
};

/// Compares a checker verdict with oracle membership of the program in its
/// goal; for arrow goals also searches argument tuples reaching each value
/// the result qualifier allows.
FundamentalReport fundamental_check(const CoreProgram& p, const CheckResult& checked, const OracleOptions& opts);

}  // namespace covtypes

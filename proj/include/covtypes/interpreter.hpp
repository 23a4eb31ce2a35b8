#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "covtypes/builtins.hpp"
#include "covtypes/syntax.hpp"

namespace covtypes {

struct Closure;
using RtValue = std::variant<SemanticValue, std::shared_ptr<const Closure>>;

/// Persistent environment: a shared linked list, so extending is O(1) and
/// branches of the exploration share structure.
class RtEnv {
 public:
  RtEnv() = default;

  RtEnv extend(std::string name, RtValue value) const;
  const RtValue* lookup(const std::string& name) const;

 private:
  struct Node {
    std::string name;
    RtValue value;
    std::shared_ptr<const Node> next;
  };
  std::shared_ptr<const Node> head_;
};

/// A lambda with its captured environment, or a partially applied builtin.
struct Closure {
  std::string param;
  CorePtr body;
  RtEnv env;
  const Builtin* builtin = nullptr;
  std::vector<SemanticValue> args;
};

/// The set of values a closed program can reach.
struct OutcomeSet {
  std::set<SemanticValue> values;
  bool diverged_or_stuck = false;  // always false in this recursion-free fragment

  bool contains(const SemanticValue& v) const { return values.count(v) > 0; }
  friend bool operator==(const OutcomeSet&, const OutcomeSet&) = default;
  std::string to_string() const;
};

enum class Strategy {
  DepthFirst,    // continuation per choice, values streamed
  BreadthFirst,  // each binder's full result set computed before continuing
};

struct EvalOptions {
  std::int64_t window = 8;
  bool assert_unit_payload = false;
  Strategy strategy = Strategy::DepthFirst;
  std::uint64_t step_budget = 200'000'000;
};

/// Every result of `t` under `env`. Throws EvalError (stuck term, overflow,
/// empty int_range, budget) or ScopeError.
OutcomeSet outcomes(const CorePtr& t, const RtEnv& env, const EvalOptions& opts);
OutcomeSet outcomes(const CorePtr& t, const EvalOptions& opts);

/// Raw results, closures included.
std::vector<RtValue> evaluate(const CorePtr& t, const RtEnv& env, const EvalOptions& opts);

/// Every builtin bound under its own name.
RtEnv builtin_env();

/// `let x = assume [b | q] in x`: its outcomes are exactly the window values
/// satisfying `q` (closed). Throws EvalError when there are none.
CorePtr canonical_generator(const Qualifier& q, const BaseType& b, std::int64_t window);

}  // namespace covtypes

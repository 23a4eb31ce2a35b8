#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "covtypes/rtype.hpp"

namespace covtypes {

/// A primitive operation. Builtins are curried; `apply` receives all
/// `arity` arguments at once and returns every possible result (generators
/// return several).
struct Builtin {
  std::string name;
  int arity = 1;
  /// Refinement type; for the polymorphic projections it is built from the
  /// argument sort by `instantiate`.
  std::optional<RType> type;
  std::function<std::optional<RType>(const BaseType& arg)> instantiate;
  std::function<std::vector<SemanticValue>(const std::vector<SemanticValue>& args, std::int64_t window)> apply;
  bool deterministic = true;
};

const std::vector<Builtin>& builtins();
const Builtin* find_builtin(std::string_view name);
bool is_builtin(std::string_view name);

/// Refinement type of builtin `b` given the erased sort of its first
/// argument (only consulted for fst/snd). Empty when the sort does not fit.
std::optional<RType> builtin_type(const Builtin& b, const std::optional<BaseType>& first_arg = std::nullopt);

/// Largest number of values int_range may enumerate.
inline constexpr std::int64_t kMaxRange = 1 << 20;

}  // namespace covtypes

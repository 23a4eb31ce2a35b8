#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "covtypes/base_type.hpp"

namespace covtypes {

/// A first-order value of the object language: (), booleans, 64-bit integers
/// and pairs. Immutable; pairs share their components.
class SemanticValue {
 public:
  static SemanticValue unit() { return SemanticValue(Repr(std::monostate{})); }
  static SemanticValue boolean(bool b) { return SemanticValue(Repr(b)); }
  static SemanticValue integer(std::int64_t n) { return SemanticValue(Repr(n)); }
  static SemanticValue pair(SemanticValue a, SemanticValue b);

  SemanticValue() = default;

  bool is_unit() const { return std::holds_alternative<std::monostate>(repr_); }
  bool is_bool() const { return std::holds_alternative<bool>(repr_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(repr_); }
  bool is_pair() const { return std::holds_alternative<PairPtr>(repr_); }

  bool as_bool() const;
  std::int64_t as_int() const;
  const SemanticValue& first() const;
  const SemanticValue& second() const;

  /// True when the value structurally inhabits `type`.
  bool has_type(const BaseType& type) const;

  /// Surface rendering: `()`, `true`, `-3`, `(false, 3)`.
  std::string to_string() const;

  friend bool operator==(const SemanticValue& a, const SemanticValue& b);
  /// Total order: unit < bool < int < pair; pairs lexicographic.
  friend std::strong_ordering operator<=>(const SemanticValue& a, const SemanticValue& b);

 private:
  using PairPtr = std::shared_ptr<const std::pair<SemanticValue, SemanticValue>>;
  using Repr = std::variant<std::monostate, bool, std::int64_t, PairPtr>;

  explicit SemanticValue(Repr r) : repr_(std::move(r)) {}

  Repr repr_;
};

/// Every value of `type` whose integers lie in [-window, window], in
/// ascending order.
std::vector<SemanticValue> window_domain(const BaseType& type, std::int64_t window);

}  // namespace covtypes

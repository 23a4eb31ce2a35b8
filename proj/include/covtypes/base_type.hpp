#pragma once

#include <memory>
#include <string>

namespace covtypes {

/// Erased base type of the object language: unit, bool, int and (nested)
/// products of those.
class BaseType {
 public:
  enum class Kind { Unit, Bool, Int, Prod };

  static BaseType unit() { return BaseType(Kind::Unit); }
  static BaseType boolean() { return BaseType(Kind::Bool); }
  static BaseType integer() { return BaseType(Kind::Int); }
  static BaseType prod(BaseType left, BaseType right);

  BaseType() : kind_(Kind::Unit) {}

  Kind kind() const { return kind_; }
  bool is_prod() const { return kind_ == Kind::Prod; }
  const BaseType& left() const;
  const BaseType& right() const;

  std::string to_string() const;

  friend bool operator==(const BaseType& a, const BaseType& b);
  friend bool operator!=(const BaseType& a, const BaseType& b) { return !(a == b); }

 private:
  explicit BaseType(Kind k) : kind_(k) {}

  Kind kind_;
  std::shared_ptr<const BaseType> left_;
  std::shared_ptr<const BaseType> right_;
};

}  // namespace covtypes

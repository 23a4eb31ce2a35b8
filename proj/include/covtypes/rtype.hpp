#pragma once

#include <memory>
#include <set>
#include <string>

#include "covtypes/qualifier.hpp"

namespace covtypes {

/// Refinement type.
///   Over        {b | phi}            may-reach
///   Cover       [b | phi]            must-reach
///   OverArrow   x:{b | phi} -> t     dependent, over-approximate parameter
///   UnderArrow  [b | phi] -> t       nameless, coverage parameter
///   HoArrow     (f: arrow) -> t      higher-order parameter
class RType {
 public:
  enum class Kind { Over, Cover, OverArrow, UnderArrow, HoArrow };

  static RType over(BaseType b, Qualifier phi);
  static RType cover(BaseType b, Qualifier phi);
  static RType over_arrow(std::string param, RType dom, RType cod);
  static RType under_arrow(RType dom, RType cod);
  static RType ho_arrow(std::string param, RType dom, RType cod);

  RType();  // [unit | true]

  Kind kind() const { return node_->kind; }
  bool is_base() const { return kind() == Kind::Over || kind() == Kind::Cover; }
  bool is_arrow() const { return !is_base(); }
  bool is_over() const { return kind() == Kind::Over; }
  bool is_cover() const { return kind() == Kind::Cover; }

  // base types
  const BaseType& base() const { return node_->base; }
  const Qualifier& qual() const { return node_->qual; }
  // arrows; param() is empty for UnderArrow
  const std::string& param() const { return node_->param; }
  const RType& dom() const { return *node_->dom; }
  const RType& cod() const { return *node_->cod; }

  std::string to_string() const;

  friend bool operator==(const RType& a, const RType& b);
  friend bool operator!=(const RType& a, const RType& b) { return !(a == b); }

 private:
  struct Node {
    Kind kind;
    BaseType base;
    Qualifier qual;
    std::string param;
    std::shared_ptr<const RType> dom;
    std::shared_ptr<const RType> cod;
  };
  explicit RType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  std::shared_ptr<const Node> node_;
};

/// Erased (simple) type: a base type or an arrow between simple types.
class SimpleType {
 public:
  static SimpleType base(BaseType b);
  static SimpleType arrow(SimpleType dom, SimpleType cod);

  SimpleType() = default;

  bool is_arrow() const { return dom_ != nullptr; }
  const BaseType& base_type() const { return base_; }
  const SimpleType& dom() const { return *dom_; }
  const SimpleType& cod() const { return *cod_; }

  std::string to_string() const;
  friend bool operator==(const SimpleType& a, const SimpleType& b);

 private:
  BaseType base_;
  std::shared_ptr<const SimpleType> dom_;
  std::shared_ptr<const SimpleType> cod_;
};

SimpleType erase(const RType& t);

/// Replaces program variable `name` by `term` in every qualifier of `t`,
/// stopping under an arrow that rebinds `name`.
RType subst(const RType& t, const std::string& name, const Qualifier& term);

/// Program variables occurring free in `t` (ν excluded).
std::set<std::string> free_names(const RType& t);

/// Largest |n| over all integer literals in the qualifiers of `t`.
std::int64_t max_abs_literal(const RType& t);

}  // namespace covtypes

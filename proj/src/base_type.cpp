#include "covtypes/base_type.hpp"

#include <cassert>

#include "covtypes/semantic_value.hpp"
#include "covtypes/error.hpp"

namespace covtypes {

BaseType BaseType::prod(BaseType left, BaseType right) {
  BaseType t(Kind::Prod);
  t.left_ = std::make_shared<const BaseType>(std::move(left));
  t.right_ = std::make_shared<const BaseType>(std::move(right));
  return t;
}

const BaseType& BaseType::left() const {
  assert(kind_ == Kind::Prod);
  return *left_;
}

const BaseType& BaseType::right() const {
  assert(kind_ == Kind::Prod);
  return *right_;
}

std::string BaseType::to_string() const {
  switch (kind_) {
    case Kind::Unit:
      return "unit";
    case Kind::Bool:
      return "bool";
    case Kind::Int:
      return "int";
    case Kind::Prod: {
      // `*` is right associative in the surface grammar.
      std::string l = left_->to_string();
      if (left_->is_prod()) l = "(" + l + ")";
      return l + " * " + right_->to_string();
    }
  }
  return "?";
}

bool operator==(const BaseType& a, const BaseType& b) {
  if (a.kind_ != b.kind_) return false;
  if (a.kind_ != BaseType::Kind::Prod) return true;
  return *a.left_ == *b.left_ && *a.right_ == *b.right_;
}

// ---------------------------------------------------------------------------

SemanticValue SemanticValue::pair(SemanticValue a, SemanticValue b) {
  return SemanticValue(Repr(std::make_shared<const std::pair<SemanticValue, SemanticValue>>(
      std::move(a), std::move(b))));
}

bool SemanticValue::as_bool() const {
  if (!is_bool()) throw SortError("expected a boolean value, got " + to_string());
  return std::get<bool>(repr_);
}

std::int64_t SemanticValue::as_int() const {
  if (!is_int()) throw SortError("expected an integer value, got " + to_string());
  return std::get<std::int64_t>(repr_);
}

const SemanticValue& SemanticValue::first() const {
  if (!is_pair()) throw SortError("expected a pair value, got " + to_string());
  return std::get<PairPtr>(repr_)->first;
}

const SemanticValue& SemanticValue::second() const {
  if (!is_pair()) throw SortError("expected a pair value, got " + to_string());
  return std::get<PairPtr>(repr_)->second;
}

bool SemanticValue::has_type(const BaseType& type) const {
  switch (type.kind()) {
    case BaseType::Kind::Unit:
      return is_unit();
    case BaseType::Kind::Bool:
      return is_bool();
    case BaseType::Kind::Int:
      return is_int();
    case BaseType::Kind::Prod:
      return is_pair() && first().has_type(type.left()) && second().has_type(type.right());
  }
  return false;
}

std::string SemanticValue::to_string() const {
  if (is_unit()) return "()";
  if (is_bool()) return as_bool() ? "true" : "false";
  if (is_int()) return std::to_string(as_int());
  return "(" + first().to_string() + ", " + second().to_string() + ")";
}

bool operator==(const SemanticValue& a, const SemanticValue& b) {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const SemanticValue& a, const SemanticValue& b) {
  if (a.repr_.index() != b.repr_.index()) return a.repr_.index() <=> b.repr_.index();
  if (a.is_unit()) return std::strong_ordering::equal;
  if (a.is_bool()) return a.as_bool() <=> b.as_bool();
  if (a.is_int()) return a.as_int() <=> b.as_int();
  if (auto c = a.first() <=> b.first(); c != 0) return c;
  return a.second() <=> b.second();
}

std::vector<SemanticValue> window_domain(const BaseType& type, std::int64_t window) {
  std::vector<SemanticValue> out;
  switch (type.kind()) {
    case BaseType::Kind::Unit:
      out.push_back(SemanticValue::unit());
      break;
    case BaseType::Kind::Bool:
      out.push_back(SemanticValue::boolean(false));
      out.push_back(SemanticValue::boolean(true));
      break;
    case BaseType::Kind::Int:
      out.reserve(static_cast<std::size_t>(2 * window + 1));
      for (std::int64_t n = -window; n <= window; ++n) out.push_back(SemanticValue::integer(n));
      break;
    case BaseType::Kind::Prod: {
      auto ls = window_domain(type.left(), window);
      auto rs = window_domain(type.right(), window);
      out.reserve(ls.size() * rs.size());
      for (const auto& l : ls)
        for (const auto& r : rs) out.push_back(SemanticValue::pair(l, r));
      break;
    }
  }
  return out;
}

}  // namespace covtypes

#include "covtypes/rtype.hpp"

#include <algorithm>

namespace covtypes {

RType::RType() : node_(std::make_shared<const Node>(Node{Kind::Cover, BaseType::unit(), q::tt(), {}, {}, {}})) {}

RType RType::over(BaseType b, Qualifier phi) {
  return RType(std::make_shared<const Node>(Node{Kind::Over, std::move(b), std::move(phi), {}, {}, {}}));
}

RType RType::cover(BaseType b, Qualifier phi) {
  return RType(std::make_shared<const Node>(Node{Kind::Cover, std::move(b), std::move(phi), {}, {}, {}}));
}

RType RType::over_arrow(std::string param, RType dom, RType cod) {
  return RType(std::make_shared<const Node>(Node{Kind::OverArrow, {}, q::tt(), std::move(param),
                                                 std::make_shared<const RType>(std::move(dom)),
                                                 std::make_shared<const RType>(std::move(cod))}));
}

RType RType::under_arrow(RType dom, RType cod) {
  return RType(std::make_shared<const Node>(Node{Kind::UnderArrow, {}, q::tt(), {},
                                                 std::make_shared<const RType>(std::move(dom)),
                                                 std::make_shared<const RType>(std::move(cod))}));
}

RType RType::ho_arrow(std::string param, RType dom, RType cod) {
  return RType(std::make_shared<const Node>(Node{Kind::HoArrow, {}, q::tt(), std::move(param),
                                                 std::make_shared<const RType>(std::move(dom)),
                                                 std::make_shared<const RType>(std::move(cod))}));
}

std::string RType::to_string() const {
  switch (kind()) {
    case Kind::Over:
      return "{" + base().to_string() + " | " + covtypes::to_string(qual()) + "}";
    case Kind::Cover:
      return "[" + base().to_string() + " | " + covtypes::to_string(qual()) + "]";
    case Kind::OverArrow:
      return param() + ":" + dom().to_string() + " -> " + cod().to_string();
    case Kind::UnderArrow:
      return dom().to_string() + " -> " + cod().to_string();
    case Kind::HoArrow:
      return "(" + param() + ": " + dom().to_string() + ") -> " + cod().to_string();
  }
  return "?";
}

bool operator==(const RType& a, const RType& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.is_base()) return a.base() == b.base() && a.qual() == b.qual();
  return a.param() == b.param() && a.dom() == b.dom() && a.cod() == b.cod();
}

SimpleType SimpleType::base(BaseType b) {
  SimpleType t;
  t.base_ = std::move(b);
  return t;
}

SimpleType SimpleType::arrow(SimpleType dom, SimpleType cod) {
  SimpleType t;
  t.dom_ = std::make_shared<const SimpleType>(std::move(dom));
  t.cod_ = std::make_shared<const SimpleType>(std::move(cod));
  return t;
}

std::string SimpleType::to_string() const {
  if (!is_arrow()) {
    std::string s = base_.to_string();
    return base_.is_prod() ? "(" + s + ")" : s;
  }
  std::string d = dom().to_string();
  if (dom().is_arrow()) d = "(" + d + ")";
  return d + " -> " + cod().to_string();
}

bool operator==(const SimpleType& a, const SimpleType& b) {
  if (a.is_arrow() != b.is_arrow()) return false;
  if (!a.is_arrow()) return a.base_ == b.base_;
  return a.dom() == b.dom() && a.cod() == b.cod();
}

SimpleType erase(const RType& t) {
  if (t.is_base()) return SimpleType::base(t.base());
  return SimpleType::arrow(erase(t.dom()), erase(t.cod()));
}

RType subst(const RType& t, const std::string& name, const Qualifier& term) {
  switch (t.kind()) {
    case RType::Kind::Over:
      return RType::over(t.base(), subst(t.qual(), name, term));
    case RType::Kind::Cover:
      return RType::cover(t.base(), subst(t.qual(), name, term));
    case RType::Kind::UnderArrow:
      return RType::under_arrow(subst(t.dom(), name, term), subst(t.cod(), name, term));
    case RType::Kind::OverArrow:
    case RType::Kind::HoArrow: {
      RType dom = subst(t.dom(), name, term);
      std::string param = t.param();
      RType cod = t.cod();
      if (param != name) {
        if (mentions(term, param)) {
          // rename the binder so `term` is not captured
          std::set<std::string> avoid = free_names(cod);
          for (const auto& n : free_names(term)) avoid.insert(n);
          avoid.insert(name);
          std::string fresh;
          for (int i = 1;; ++i) {
            fresh = param + "'" + std::to_string(i);
            if (!avoid.count(fresh)) break;
          }
          cod = subst(cod, param, q::var(fresh));
          param = fresh;
        }
        cod = subst(cod, name, term);
      }
      return t.kind() == RType::Kind::OverArrow ? RType::over_arrow(param, dom, cod)
                                                : RType::ho_arrow(param, dom, cod);
    }
  }
  return t;
}

std::set<std::string> free_names(const RType& t) {
  if (t.is_base()) return free_names(t.qual());
  std::set<std::string> out = free_names(t.dom());
  std::set<std::string> cod = free_names(t.cod());
  if (!t.param().empty()) cod.erase(t.param());
  out.insert(cod.begin(), cod.end());
  return out;
}

std::int64_t max_abs_literal(const RType& t) {
  if (t.is_base()) return max_abs_literal(t.qual());
  return std::max(max_abs_literal(t.dom()), max_abs_literal(t.cod()));
}

}  // namespace covtypes

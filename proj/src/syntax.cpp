#include "covtypes/syntax.hpp"

namespace covtypes {

Value Value::constant_of(SemanticValue v) {
  Value out;
  out.kind = Kind::Const;
  out.constant = std::move(v);
  return out;
}

Value Value::var(std::string n) {
  Value out;
  out.kind = Kind::Var;
  out.name = std::move(n);
  return out;
}

Value Value::lambda(std::string param, ParamAnnot annot, CorePtr body) {
  Value out;
  out.kind = Kind::Lambda;
  out.name = std::move(param);
  out.param = std::move(annot);
  out.body = std::move(body);
  return out;
}

Value Value::pair(Value a, Value b) {
  Value out;
  out.kind = Kind::Pair;
  out.first = std::make_shared<const Value>(std::move(a));
  out.second = std::make_shared<const Value>(std::move(b));
  return out;
}

}  // namespace covtypes

#include "covtypes/basic_typing.hpp"

#include "covtypes/builtins.hpp"

namespace covtypes {

namespace {

SimpleType value_type_of(const SemanticValue& v) {
  if (v.is_int()) return SimpleType::base(BaseType::integer());
  if (v.is_bool()) return SimpleType::base(BaseType::boolean());
  if (v.is_unit()) return SimpleType::base(BaseType::unit());
  return SimpleType::base(BaseType::prod(value_type_of(v.first()).base_type(), value_type_of(v.second()).base_type()));
}

[[noreturn]] void mismatch(const std::string& what, const SimpleType& want, const SimpleType& got, SourcePos pos) {
  throw SortError(what + ": expected " + want.to_string() + ", got " + got.to_string(), pos);
}

BaseType expect_base(const SimpleType& t, const std::string& what, SourcePos pos) {
  if (t.is_arrow()) throw SortError(what + " has function type " + t.to_string() + ", expected a base type", pos);
  return t.base_type();
}

}  // namespace

std::optional<SimpleType> builtin_simple_type(const std::string& name) {
  const Builtin* b = find_builtin(name);
  if (!b || !b->type) return std::nullopt;
  return erase(*b->type);
}

SimpleType basic_type(const Value& v, const SimpleEnv& env, const std::optional<SimpleType>& expected,
                      SourcePos pos, bool unit_payload) {
  switch (v.kind) {
    case Value::Kind::Const:
      return value_type_of(v.constant);
    case Value::Kind::Var: {
      auto it = env.find(v.name);
      if (it != env.end()) return it->second;
      if (auto t = builtin_simple_type(v.name)) return *t;
      if (is_builtin(v.name))
        throw SortError("`" + v.name + "` can only be applied directly to a pair", pos);
      throw ScopeError("unbound identifier `" + v.name + "`", pos);
    }
    case Value::Kind::Pair: {
      const BaseType a = expect_base(basic_type(*v.first, env, std::nullopt, pos), "pair component", pos);
      const BaseType b = expect_base(basic_type(*v.second, env, std::nullopt, pos), "pair component", pos);
      return SimpleType::base(BaseType::prod(a, b));
    }
    case Value::Kind::Lambda: {
      SimpleType dom;
      if (v.param.rtype) dom = erase(*v.param.rtype);
      else if (v.param.base) dom = SimpleType::base(*v.param.base);
      else if (expected && expected->is_arrow()) dom = expected->dom();
      else throw CovError("annotation-required", "parameter `" + v.name + "` needs a type annotation", pos);
      if (expected && expected->is_arrow() && !(expected->dom() == dom))
        mismatch("lambda parameter `" + v.name + "`", expected->dom(), dom, pos);
      SimpleEnv inner = env;
      inner[v.name] = dom;
      std::optional<SimpleType> cod;
      if (expected && expected->is_arrow()) cod = expected->cod();
      return SimpleType::arrow(dom, basic_type(v.body, inner, cod, unit_payload));
    }
  }
  throw SortError("unknown value form", pos);
}

SimpleType basic_type(const CorePtr& t, const SimpleEnv& env, const std::optional<SimpleType>& expected,
                      bool unit_payload) {
  const auto check_against = [&](const SimpleType& got) {
    if (expected && !(got == *expected)) mismatch("term", *expected, got, t->pos);
    return got;
  };
  switch (t->kind) {
    case CoreTerm::Kind::Val:
      return check_against(basic_type(t->value, env, expected, t->pos, unit_payload));
    case CoreTerm::Kind::LetApp: {
      SimpleType result;
      const bool projection =
          t->value.kind == Value::Kind::Var && !env.count(t->value.name) && (t->value.name == "fst" || t->value.name == "snd");
      if (projection) {
        const BaseType p = expect_base(basic_type(t->arg, env, std::nullopt, t->pos), "argument of " + t->value.name, t->pos);
        if (!p.is_prod()) throw SortError("`" + t->value.name + "` applied to non-pair " + p.to_string(), t->pos);
        result = SimpleType::base(t->value.name == "fst" ? p.left() : p.right());
      } else {
        SimpleType f = basic_type(t->value, env, std::nullopt, t->pos, unit_payload);
        if (!f.is_arrow()) throw SortError("applying a non-function of type " + f.to_string(), t->pos);
        SimpleType a = basic_type(t->arg, env, f.dom(), t->pos);
        if (!(a == f.dom())) mismatch("argument", f.dom(), a, t->pos);
        result = f.cod();
      }
      if (t->annot && !(result == SimpleType::base(*t->annot)))
        mismatch("annotation of `" + t->name + "`", SimpleType::base(*t->annot), result, t->pos);
      SimpleEnv inner = env;
      inner[t->name] = result;
      return basic_type(t->body, inner, expected, unit_payload);
    }
    case CoreTerm::Kind::LetTerm: {
      std::optional<SimpleType> want;
      if (t->ascription) want = erase(*t->ascription);
      if (t->annot) want = SimpleType::base(*t->annot);
      SimpleType bound = basic_type(t->bound, env, want, unit_payload);
      SimpleEnv inner = env;
      inner[t->name] = bound;
      return basic_type(t->body, inner, expected, unit_payload);
    }
    case CoreTerm::Kind::LetPair: {
      const BaseType p = expect_base(basic_type(t->value, env, std::nullopt, t->pos), "destructured value", t->pos);
      if (!p.is_prod()) throw SortError("destructuring a non-pair of type " + p.to_string(), t->pos);
      SimpleEnv inner = env;
      inner[t->name] = SimpleType::base(p.left());
      inner[t->name2] = SimpleType::base(p.right());
      return basic_type(t->body, inner, expected, unit_payload);
    }
    case CoreTerm::Kind::If: {
      SimpleType c = basic_type(t->value, env, std::nullopt, t->pos);
      if (!(c == SimpleType::base(BaseType::boolean())))
        mismatch("if condition", SimpleType::base(BaseType::boolean()), c, t->pos);
      SimpleType a = basic_type(t->body, env, expected, unit_payload);
      basic_type(t->other, env, a, unit_payload);
      return a;
    }
    case CoreTerm::Kind::LetAssume: {
      if (t->annot && *t->annot != t->type.base())
        mismatch("annotation of `" + t->name + "`", SimpleType::base(*t->annot), SimpleType::base(t->type.base()), t->pos);
      SimpleEnv inner = env;
      inner[t->name] = SimpleType::base(t->type.base());
      return basic_type(t->body, inner, expected, unit_payload);
    }
    case CoreTerm::Kind::Assert: {
      SimpleType v = basic_type(t->value, env, std::nullopt, t->pos);
      if (!(v == SimpleType::base(t->type.base())))
        mismatch("asserted value", SimpleType::base(t->type.base()), v, t->pos);
      return check_against(SimpleType::base(
          BaseType::prod(BaseType::boolean(), unit_payload ? BaseType::unit() : t->type.base())));
    }
  }
  throw SortError("unknown term form", t->pos);
}

void basic_check(const CoreProgram& p, bool unit_payload) {
  basic_type(p.term, SimpleEnv{}, erase(p.goal), unit_payload);
}

}  // namespace covtypes

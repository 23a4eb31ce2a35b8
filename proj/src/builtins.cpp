#include "covtypes/builtins.hpp"

#include <algorithm>

#include "covtypes/error.hpp"
#include "covtypes/parser.hpp"

namespace covtypes {

namespace {

using Args = std::vector<SemanticValue>;

std::int64_t checked(std::int64_t a, std::int64_t b, bool add) {
  std::int64_t r;
  bool overflow = add ? __builtin_add_overflow(a, b, &r) : __builtin_sub_overflow(a, b, &r);
  if (overflow) throw EvalError("integer overflow in " + std::string(add ? "+" : "-"));
  return r;
}

std::vector<SemanticValue> one(SemanticValue v) { return {std::move(v)}; }

Builtin det(std::string name, int arity, const char* type,
            std::function<SemanticValue(const Args&)> f) {
  Builtin b;
  b.name = std::move(name);
  b.arity = arity;
  b.type = parse_rtype(type);
  b.apply = [f](const Args& args, std::int64_t) { return one(f(args)); };
  return b;
}

Builtin int_cmp(std::string name, const char* rel, std::function<bool(std::int64_t, std::int64_t)> f) {
  std::string type = std::string("a:{int | true} -> b:{int | true} -> [bool | v <=> ") + rel + "]";
  return det(std::move(name), 2, type.c_str(), [f](const Args& a) {
    return SemanticValue::boolean(f(a[0].as_int(), a[1].as_int()));
  });
}

std::vector<Builtin> make_builtins() {
  std::vector<Builtin> out;

  Builtin gen;
  gen.name = "int_gen";
  gen.arity = 1;
  gen.type = parse_rtype("_:{unit | true} -> [int | true]");
  gen.deterministic = false;
  gen.apply = [](const Args& a, std::int64_t w) {
    (void)a[0];
    return window_domain(BaseType::integer(), w);
  };
  out.push_back(gen);

  Builtin bgen;
  bgen.name = "bool_gen";
  bgen.arity = 1;
  bgen.type = parse_rtype("_:{unit | true} -> [bool | true]");
  bgen.deterministic = false;
  bgen.apply = [](const Args&, std::int64_t) {
    return std::vector<SemanticValue>{SemanticValue::boolean(false), SemanticValue::boolean(true)};
  };
  out.push_back(bgen);

  Builtin range;
  range.name = "int_range";
  range.arity = 2;
  range.type = parse_rtype("lo:{int | true} -> hi:{int | lo <= v} -> [int | lo <= v && v <= hi]");
  range.deterministic = false;
  // Not clipped to the window: the bounds are program values.
  range.apply = [](const Args& a, std::int64_t) {
    std::int64_t lo = a[0].as_int(), hi = a[1].as_int();
    if (lo > hi)
      throw EvalError("int_range " + std::to_string(lo) + " " + std::to_string(hi) + ": empty range");
    if (hi - lo >= kMaxRange) throw EvalError("int_range: range too large to enumerate");
    std::vector<SemanticValue> vs;
    for (std::int64_t n = lo; n <= hi; ++n) vs.push_back(SemanticValue::integer(n));
    return vs;
  };
  out.push_back(range);

  out.push_back(det("is_even", 1, "x:{int | true} -> [bool | v <=> even(x)]",
                    [](const Args& a) { return SemanticValue::boolean(a[0].as_int() % 2 == 0); }));
  out.push_back(det("is_odd", 1, "x:{int | true} -> [bool | v <=> odd(x)]",
                    [](const Args& a) { return SemanticValue::boolean(a[0].as_int() % 2 != 0); }));
  out.push_back(det("+", 2, "a:{int | true} -> b:{int | true} -> [int | v == a + b]", [](const Args& a) {
    return SemanticValue::integer(checked(a[0].as_int(), a[1].as_int(), true));
  }));
  out.push_back(det("-", 2, "a:{int | true} -> b:{int | true} -> [int | v == a - b]", [](const Args& a) {
    return SemanticValue::integer(checked(a[0].as_int(), a[1].as_int(), false));
  }));
  out.push_back(int_cmp("==", "a == b", [](auto x, auto y) { return x == y; }));
  out.push_back(int_cmp("<=", "a <= b", [](auto x, auto y) { return x <= y; }));
  out.push_back(int_cmp("<", "a < b", [](auto x, auto y) { return x < y; }));
  out.push_back(int_cmp(">", "b < a", [](auto x, auto y) { return x > y; }));
  out.push_back(int_cmp(">=", "b <= a", [](auto x, auto y) { return x >= y; }));
  out.push_back(det("&&", 2, "a:{bool | true} -> b:{bool | true} -> [bool | v <=> (a && b)]",
                    [](const Args& a) { return SemanticValue::boolean(a[0].as_bool() && a[1].as_bool()); }));
  out.push_back(det("||", 2, "a:{bool | true} -> b:{bool | true} -> [bool | v <=> (a || b)]",
                    [](const Args& a) { return SemanticValue::boolean(a[0].as_bool() || a[1].as_bool()); }));
  out.push_back(det("not", 1, "a:{bool | true} -> [bool | v <=> !a]",
                    [](const Args& a) { return SemanticValue::boolean(!a[0].as_bool()); }));

  for (bool first : {true, false}) {
    Builtin proj;
    proj.name = first ? "fst" : "snd";
    proj.arity = 1;
    proj.instantiate = [first](const BaseType& arg) -> std::optional<RType> {
      if (!arg.is_prod()) return std::nullopt;
      Qualifier p = q::var("p");
      Qualifier body = q::eq(q::nu(), first ? q::fst(p) : q::snd(p));
      return RType::over_arrow("p", RType::over(arg, q::tt()),
                               RType::cover(first ? arg.left() : arg.right(), body));
    };
    proj.apply = [first](const Args& a, std::int64_t) { return one(first ? a[0].first() : a[0].second()); };
    out.push_back(proj);
  }
  return out;
}

}  // namespace

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> table = make_builtins();
  return table;
}

const Builtin* find_builtin(std::string_view name) {
  const auto& t = builtins();
  auto it = std::find_if(t.begin(), t.end(), [&](const Builtin& b) { return b.name == name; });
  return it == t.end() ? nullptr : &*it;
}

bool is_builtin(std::string_view name) { return find_builtin(name) != nullptr; }

std::optional<RType> builtin_type(const Builtin& b, const std::optional<BaseType>& first_arg) {
  if (b.type) return b.type;
  if (b.instantiate && first_arg) return b.instantiate(*first_arg);
  return std::nullopt;
}

}  // namespace covtypes

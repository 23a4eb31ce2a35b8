#include "reference.hpp"

#include <functional>
#include <memory>
#include <stdexcept>
#include <variant>
#include <vector>

namespace reftest {

using namespace covtypes;

namespace {

std::vector<SemanticValue> domain(const BaseType& b, std::int64_t w) {
  switch (b.kind()) {
    case BaseType::Kind::Unit: return {SemanticValue::unit()};
    case BaseType::Kind::Bool: return {SemanticValue::boolean(false), SemanticValue::boolean(true)};
    case BaseType::Kind::Int: {
      std::vector<SemanticValue> out;
      for (std::int64_t n = -w; n <= w; ++n) out.push_back(SemanticValue::integer(n));
      return out;
    }
    case BaseType::Kind::Prod: {
      std::vector<SemanticValue> out;
      for (const auto& a : domain(b.left(), w))
        for (const auto& c : domain(b.right(), w)) out.push_back(SemanticValue::pair(a, c));
      return out;
    }
  }
  return {};
}

std::int64_t i(const SemanticValue& v) {
  if (!v.is_int()) throw std::runtime_error("reference: expected int");
  return v.as_int();
}

bool b(const SemanticValue& v) {
  if (!v.is_bool()) throw std::runtime_error("reference: expected bool");
  return v.as_bool();
}

}  // namespace

SemanticValue ref_term(const Qualifier& q, const Env& env, const SemanticValue* nu, std::int64_t w) {
  const auto sub = [&](std::size_t k) { return ref_term(q.arg(k), env, nu, w); };
  const auto I = [](std::int64_t n) { return SemanticValue::integer(n); };
  const auto B = [](bool x) { return SemanticValue::boolean(x); };
  switch (q.op()) {
    case QOp::True: return B(true);
    case QOp::False: return B(false);
    case QOp::Nu:
      if (!nu) throw std::runtime_error("reference: ν unbound");
      return *nu;
    case QOp::Var: {
      auto it = env.find(q.name());
      if (it == env.end()) throw std::runtime_error("reference: unbound " + q.name());
      return it->second;
    }
    case QOp::IntLit: return I(q.value());
    case QOp::Eq: return B(sub(0) == sub(1));
    case QOp::Le: return B(i(sub(0)) <= i(sub(1)));
    case QOp::Lt: return B(i(sub(0)) < i(sub(1)));
    case QOp::Add: return I(i(sub(0)) + i(sub(1)));
    case QOp::Sub: return I(i(sub(0)) - i(sub(1)));
    case QOp::Not: return B(!b(sub(0)));
    case QOp::And: {
      bool all = true;
      for (std::size_t k = 0; k < q.arity(); ++k) all = all && b(sub(k));
      return B(all);
    }
    case QOp::Or: {
      bool any = false;
      for (std::size_t k = 0; k < q.arity(); ++k) any = any || b(sub(k));
      return B(any);
    }
    case QOp::Implies: return B(!b(sub(0)) || b(sub(1)));
    case QOp::Iff: return B(b(sub(0)) == b(sub(1)));
    case QOp::Even: return B(i(sub(0)) % 2 == 0);
    case QOp::Odd: return B(i(sub(0)) % 2 != 0);
    case QOp::Fst: return sub(0).first();
    case QOp::Snd: return sub(0).second();
    case QOp::Forall:
    case QOp::Exists: {
      const bool forall = q.op() == QOp::Forall;
      for (const auto& v : domain(q.bound_sort(), w)) {
        Env inner = env;
        inner[q.name()] = v;
        const bool in = b(ref_term(q.arg(0), inner, nu, w));
        if (!in) continue;
        const bool body = b(ref_term(q.arg(1), inner, nu, w));
        if (forall && !body) return B(false);
        if (!forall && body) return B(true);
      }
      return B(forall);
    }
  }
  throw std::runtime_error("reference: unknown qualifier form");
}

bool ref_holds(const Qualifier& q, const Env& env, const SemanticValue* nu, std::int64_t w) {
  return b(ref_term(q, env, nu, w));
}

// ---------------------------------------------------------------------------
// Surface evaluator

namespace {

struct Fn;
using RV = std::variant<SemanticValue, std::shared_ptr<const Fn>>;
using REnv = std::map<std::string, RV>;

struct Fn {
  // primitive (partially applied) or lambda
  std::string prim;
  std::vector<SemanticValue> args;
  std::string param;
  SExprPtr body;
  REnv env;
};

const std::map<std::string, int> kArity = {
    {"int_gen", 1}, {"bool_gen", 1}, {"int_range", 2}, {"is_even", 1}, {"is_odd", 1}, {"+", 2},
    {"-", 2},       {"==", 2},       {"<=", 2},        {"<", 2},       {">", 2},      {">=", 2},
    {"&&", 2},      {"||", 2},       {"not", 1},       {"fst", 1},     {"snd", 1}};

class Surface {
 public:
  Surface(std::int64_t w, bool unit_payload) : w_(w), unit_payload_(unit_payload) {}

  std::vector<RV> eval(const SExprPtr& e, const REnv& env) {
    using K = SExpr::Kind;
    switch (e->kind) {
      case K::Int: return {SemanticValue::integer(e->int_value)};
      case K::Bool: return {SemanticValue::boolean(e->bool_value)};
      case K::Unit: return {SemanticValue::unit()};
      case K::Var: return {lookup(e->name, env)};
      case K::Pair: {
        std::vector<RV> out;
        for (const auto& a : eval(e->kids[0], env))
          for (const auto& c : eval(e->kids[1], env)) out.push_back(SemanticValue::pair(base(a), base(c)));
        return out;
      }
      case K::App: {
        std::vector<RV> out;
        for (const auto& f : eval(e->kids[0], env))
          for (const auto& a : eval(e->kids[1], env))
            for (auto& r : apply(f, a)) out.push_back(std::move(r));
        return out;
      }
      case K::Let: {
        std::vector<RV> out;
        for (const auto& v : eval(e->kids[0], env))
          for (auto& r : eval(e->kids[1], bind(e->pat, v, env))) out.push_back(std::move(r));
        return out;
      }
      case K::LetStar: {
        std::vector<RV> out;
        for (const auto& v : eval(e->kids[0], env)) {
          const SemanticValue p = base(v);
          if (!p.is_pair() || !p.first().is_bool()) throw std::runtime_error("reference: let* on non (bool, _)");
          if (!p.first().as_bool()) {
            out.push_back(SemanticValue::pair(SemanticValue::boolean(false), p.second()));
            continue;
          }
          for (auto& r : eval(e->kids[1], bind(e->pat, p.second(), env))) out.push_back(std::move(r));
        }
        return out;
      }
      case K::If: {
        std::vector<RV> out;
        for (const auto& c : eval(e->kids[0], env))
          for (auto& r : eval(b(base(c)) ? e->kids[1] : e->kids[2], env)) out.push_back(std::move(r));
        return out;
      }
      case K::Assume: {
        std::vector<RV> out;
        const Env sigma = valuation(e->type.qual(), env);
        for (const auto& v : domain(e->type.base(), w_))
          if (ref_holds(e->type.qual(), sigma, &v, w_)) out.push_back(v);
        return out;
      }
      case K::Assert: {
        std::vector<RV> out;
        const Env sigma = valuation(e->type.qual(), env);
        for (const auto& rv : eval(e->kids[0], env)) {
          const SemanticValue v = base(rv);
          const bool ok = ref_holds(e->type.qual(), sigma, &v, w_);
          out.push_back(SemanticValue::pair(SemanticValue::boolean(ok), unit_payload_ ? SemanticValue::unit() : v));
        }
        return out;
      }
      case K::Lambda: {
        auto f = std::make_shared<Fn>();
        f->param = e->name;
        f->body = e->kids[0];
        f->env = env;
        return {RV(std::shared_ptr<const Fn>(f))};
      }
    }
    throw std::runtime_error("reference: unknown expression");
  }

 private:
  static SemanticValue base(const RV& v) {
    if (const auto* s = std::get_if<SemanticValue>(&v)) return *s;
    throw std::runtime_error("reference: function where a base value was expected");
  }

  Env valuation(const Qualifier& q, const REnv& env) const {
    Env out;
    for (const auto& n : free_names(q)) {
      auto it = env.find(n);
      if (it == env.end()) throw std::runtime_error("reference: qualifier name " + n + " unbound");
      out[n] = base(it->second);
    }
    return out;
  }

  RV lookup(const std::string& name, const REnv& env) const {
    auto it = env.find(name);
    if (it != env.end()) return it->second;
    if (kArity.count(name)) {
      auto f = std::make_shared<Fn>();
      f->prim = name;
      return std::shared_ptr<const Fn>(f);
    }
    throw std::runtime_error("reference: unbound " + name);
  }

  static REnv bind(const Pattern& p, const RV& v, REnv env) {
    switch (p.kind) {
      case Pattern::Kind::Name:
        env[p.first] = v;
        return env;
      case Pattern::Kind::Unit:
        return env;
      case Pattern::Kind::Pair: {
        const SemanticValue s = base(v);
        if (!s.is_pair()) throw std::runtime_error("reference: pair pattern on non-pair");
        env[p.first] = s.first();
        env[p.second] = s.second();
        return env;
      }
    }
    return env;
  }

  std::vector<RV> apply(const RV& fv, const RV& a) {
    const auto* fp = std::get_if<std::shared_ptr<const Fn>>(&fv);
    if (!fp) throw std::runtime_error("reference: applying a base value");
    const Fn& f = **fp;
    if (f.prim.empty()) {
      REnv env = f.env;
      env[f.param] = a;
      return eval(f.body, env);
    }
    auto args = f.args;
    args.push_back(base(a));
    if (static_cast<int>(args.size()) < kArity.at(f.prim)) {
      auto g = std::make_shared<Fn>(f);
      g->args = args;
      return {RV(std::shared_ptr<const Fn>(g))};
    }
    std::vector<RV> out;
    for (auto& v : prim(f.prim, args)) out.push_back(std::move(v));
    return out;
  }

  std::vector<SemanticValue> prim(const std::string& p, const std::vector<SemanticValue>& a) const {
    const auto I = [](std::int64_t n) { return SemanticValue::integer(n); };
    const auto B = [](bool x) { return SemanticValue::boolean(x); };
    if (p == "int_gen") return domain(BaseType::integer(), w_);
    if (p == "bool_gen") return domain(BaseType::boolean(), w_);
    if (p == "int_range") {
      if (i(a[0]) > i(a[1])) throw std::runtime_error("reference: empty int_range");
      std::vector<SemanticValue> out;
      for (std::int64_t n = i(a[0]); n <= i(a[1]); ++n) out.push_back(I(n));
      return out;
    }
    if (p == "is_even") return {B(i(a[0]) % 2 == 0)};
    if (p == "is_odd") return {B(i(a[0]) % 2 != 0)};
    if (p == "+") return {I(i(a[0]) + i(a[1]))};
    if (p == "-") return {I(i(a[0]) - i(a[1]))};
    if (p == "==") return {B(i(a[0]) == i(a[1]))};
    if (p == "<=") return {B(i(a[0]) <= i(a[1]))};
    if (p == "<") return {B(i(a[0]) < i(a[1]))};
    if (p == ">") return {B(i(a[0]) > i(a[1]))};
    if (p == ">=") return {B(i(a[0]) >= i(a[1]))};
    if (p == "&&") return {B(b(a[0]) && b(a[1]))};
    if (p == "||") return {B(b(a[0]) || b(a[1]))};
    if (p == "not") return {B(!b(a[0]))};
    if (p == "fst") return {a[0].first()};
    if (p == "snd") return {a[0].second()};
    throw std::runtime_error("reference: unknown primitive " + p);
  }

  std::int64_t w_;
  bool unit_payload_;
};

SExprPtr curried(const SurfaceDef& d) {
  SExprPtr body = d.body;
  for (auto it = d.params.rbegin(); it != d.params.rend(); ++it) {
    SExpr lam{SExpr::Kind::Lambda};
    lam.name = it->first;
    lam.param = it->second;
    lam.kids = {body};
    body = SExpr::make(std::move(lam));
  }
  return body;
}

}  // namespace

std::set<SemanticValue> surface_outcomes(const SurfaceProgram& p, std::int64_t window, bool unit_payload) {
  Surface s(window, unit_payload);
  std::set<SemanticValue> out;
  std::function<void(std::size_t, const REnv&)> go = [&](std::size_t k, const REnv& env) {
    if (k == p.defs.size()) {
      for (const auto& v : s.eval(p.main, env)) {
        const auto* sv = std::get_if<SemanticValue>(&v);
        if (!sv) throw std::runtime_error("reference: program result is a function");
        out.insert(*sv);
      }
      return;
    }
    for (const auto& v : s.eval(curried(p.defs[k]), env)) {
      REnv inner = env;
      inner[p.defs[k].name] = v;
      go(k + 1, inner);
    }
  };
  go(0, REnv{});
  return out;
}

}  // namespace reftest

#include "covtypes/elaborate.hpp"

#include <functional>
#include <map>
#include <set>

#include "covtypes/builtins.hpp"
#include "covtypes/parser.hpp"

namespace covtypes {

namespace {

// ---------------------------------------------------------------------------
// Identifier collection and fresh names

void collect(const RType& t, std::set<std::string>& out) {
  if (t.is_base()) {
    for (const auto& n : free_names(t.qual())) out.insert(n);
    return;
  }
  if (!t.param().empty()) out.insert(t.param());
  collect(t.dom(), out);
  collect(t.cod(), out);
}

void collect(const ParamAnnot& a, std::set<std::string>& out) {
  if (a.rtype) collect(*a.rtype, out);
}

void collect(const SExprPtr& e, std::set<std::string>& out) {
  if (!e) return;
  switch (e->kind) {
    case SExpr::Kind::Var:
      out.insert(e->name);
      break;
    case SExpr::Kind::Lambda:
      out.insert(e->name);
      collect(e->param, out);
      break;
    case SExpr::Kind::Let:
    case SExpr::Kind::LetStar:
      if (!e->pat.first.empty()) out.insert(e->pat.first);
      if (!e->pat.second.empty()) out.insert(e->pat.second);
      break;
    case SExpr::Kind::Assume:
    case SExpr::Kind::Assert:
      collect(e->type, out);
      break;
    default:
      break;
  }
  for (const auto& k : e->kids) collect(k, out);
}

std::set<std::string> identifiers(const SurfaceProgram& p) {
  std::set<std::string> out;
  for (const auto& d : p.defs) {
    out.insert(d.name);
    for (const auto& [n, a] : d.params) {
      out.insert(n);
      collect(a, out);
    }
    if (d.ascription) collect(*d.ascription, out);
    collect(d.body, out);
  }
  collect(p.main, out);
  collect(p.goal, out);
  return out;
}

class NameSupply {
 public:
  explicit NameSupply(std::set<std::string> used) : used_(std::move(used)) {}

  std::string fresh(const std::string& prefix) {
    for (;;) {
      std::string n = prefix + std::to_string(++counter_);
      if (used_.insert(n).second) return n;
    }
  }
  bool used(const std::string& n) const { return used_.count(n) > 0; }
  void reserve(const std::string& n) { used_.insert(n); }

 private:
  std::set<std::string> used_;
  int counter_ = 0;
};

// ---------------------------------------------------------------------------
// Desugaring

SExprPtr node(SExpr::Kind k, SourcePos pos, std::vector<SExprPtr> kids = {}) {
  SExpr e{k};
  e.pos = pos;
  e.kids = std::move(kids);
  return SExpr::make(std::move(e));
}

SExprPtr var_node(const std::string& n, SourcePos pos) {
  SExpr e{SExpr::Kind::Var};
  e.pos = pos;
  e.name = n;
  return SExpr::make(std::move(e));
}

SExprPtr let_node(Pattern pat, SExprPtr bound, SExprPtr body, SourcePos pos) {
  SExpr e{SExpr::Kind::Let};
  e.pos = pos;
  e.pat = std::move(pat);
  e.kids = {std::move(bound), std::move(body)};
  return SExpr::make(std::move(e));
}

SExprPtr desugar_expr(const SExprPtr& e, NameSupply& names) {
  if (!e) return e;
  std::vector<SExprPtr> kids;
  kids.reserve(e->kids.size());
  for (const auto& k : e->kids) kids.push_back(desugar_expr(k, names));
  if (e->kind != SExpr::Kind::LetStar) {
    SExpr copy = *e;
    copy.kids = std::move(kids);
    return SExpr::make(std::move(copy));
  }
  const SourcePos pos = e->pos;
  const std::string p = names.fresh("_p");
  const std::string ok = names.fresh("_ok");
  const std::string r = names.fresh("_r");

  SExpr f{SExpr::Kind::Bool};
  f.pos = pos;
  f.bool_value = false;
  SExprPtr err = node(SExpr::Kind::Pair, pos, {SExpr::make(std::move(f)), var_node(r, pos)});
  SExprPtr cont = let_node(e->pat, var_node(r, pos), kids[1], pos);
  SExprPtr branch = node(SExpr::Kind::If, pos, {var_node(ok, pos), cont, err});
  Pattern pair_pat;
  pair_pat.kind = Pattern::Kind::Pair;
  pair_pat.first = ok;
  pair_pat.second = r;
  SExprPtr destructure = let_node(pair_pat, var_node(p, pos), branch, pos);
  Pattern bind_pat;
  bind_pat.first = p;
  return let_node(bind_pat, kids[0], destructure, pos);
}

// ---------------------------------------------------------------------------
// A-normal form

using Env = std::map<std::string, std::string>;
using K = std::function<CorePtr(const Value&)>;

RType rename(const RType& t, const Env& env) {
  RType out = t;
  for (const auto& n : free_names(t)) {
    auto it = env.find(n);
    if (it != env.end() && it->second != n) out = subst(out, n, q::var(it->second));
  }
  return out;
}

ParamAnnot rename(const ParamAnnot& a, const Env& env) {
  ParamAnnot out = a;
  if (out.rtype) out.rtype = rename(*out.rtype, env);
  return out;
}

class Normalizer {
 public:
  explicit Normalizer(NameSupply names) : names_(std::move(names)) {}

  CoreProgram program(const SurfaceProgram& p) {
    CoreProgram out;
    out.pragma = p.pragma;
    out.term = defs(p, 0, Env{}, out);
    return out;
  }

 private:
  CorePtr defs(const SurfaceProgram& p, std::size_t i, const Env& env, CoreProgram& out) {
    if (i == p.defs.size()) {
      out.goal = rename(p.goal, env);
      return term(p.main, env);
    }
    const SurfaceDef& d = p.defs[i];
    SExprPtr body = d.body;
    for (auto it = d.params.rbegin(); it != d.params.rend(); ++it) {
      SExpr lam{SExpr::Kind::Lambda};
      lam.pos = d.pos;
      lam.name = it->first;
      lam.param = it->second;
      lam.kids = {body};
      body = SExpr::make(std::move(lam));
    }
    const std::string name = bind(d.name);
    out.top_level.push_back(name);
    Env inner = env;
    inner[d.name] = name;
    if (d.ascription) {
      CoreTerm t{CoreTerm::Kind::LetTerm};
      t.pos = d.pos;
      t.name = name;
      t.ascription = rename(*d.ascription, env);
      t.bound = term(body, env);
      t.body = defs(p, i + 1, inner, out);
      return CoreTerm::make(std::move(t));
    }
    return let(name, std::nullopt, body, env, d.pos, [&]() { return defs(p, i + 1, inner, out); });
  }

  std::string bind(const std::string& surface) {
    std::string n = surface;
    for (int k = 1; bound_.count(n) || (n != surface && names_.used(n)); ++k)
      n = surface + "'" + std::to_string(k);
    bound_.insert(n);
    names_.reserve(n);
    return n;
  }

  std::string fresh(const std::string& prefix) {
    std::string n = names_.fresh(prefix);
    bound_.insert(n);
    return n;
  }

  Value resolve(const SExpr& e, const Env& env) const {
    auto it = env.find(e.name);
    if (it != env.end()) return Value::var(it->second);
    if (is_builtin(e.name)) return Value::var(e.name);
    throw ScopeError("unbound identifier `" + e.name + "`", e.pos);
  }

  static bool is_const(const SExpr& e) {
    return e.kind == SExpr::Kind::Int || e.kind == SExpr::Kind::Bool || e.kind == SExpr::Kind::Unit;
  }

  static SemanticValue const_of(const SExpr& e) {
    switch (e.kind) {
      case SExpr::Kind::Int: return SemanticValue::integer(e.int_value);
      case SExpr::Kind::Bool: return SemanticValue::boolean(e.bool_value);
      default: return SemanticValue::unit();
    }
  }

  // Const or Var.
  CorePtr atom(const SExprPtr& e, const Env& env, const K& k) {
    if (is_const(*e)) return k(Value::constant_of(const_of(*e)));
    if (e->kind == SExpr::Kind::Var) return k(resolve(*e, env));
    const std::string t = fresh("_t");
    return let(t, std::nullopt, e, env, e->pos, [&]() { return k(Value::var(t)); });
  }

  // Function and argument positions: also admit a lambda.
  CorePtr callee(const SExprPtr& e, const Env& env, const K& k) {
    if (e->kind == SExpr::Kind::Lambda) return k(lambda(*e, env));
    return atom(e, env, k);
  }

  CorePtr variable(const SExprPtr& e, const Env& env, const K& k) {
    if (e->kind == SExpr::Kind::Var) return k(resolve(*e, env));
    const std::string c = fresh("_c");
    return let(c, std::nullopt, e, env, e->pos, [&]() { return k(Value::var(c)); });
  }

  Value lambda(const SExpr& e, const Env& env) {
    ParamAnnot annot = rename(e.param, env);
    const std::string p = bind(e.name);
    Env inner = env;
    inner[e.name] = p;
    return Value::lambda(p, annot, term(e.kids[0], inner));
  }

  // let x = e in <body()>
  CorePtr let(const std::string& x, std::optional<BaseType> annot, const SExprPtr& e, const Env& env,
              SourcePos pos, const std::function<CorePtr()>& body) {
    if (e->kind == SExpr::Kind::App) {
      return callee(e->kids[0], env, [&](const Value& f) {
        return callee(e->kids[1], env, [&](const Value& a) {
          CoreTerm t{CoreTerm::Kind::LetApp};
          t.pos = e->pos;
          t.name = x;
          t.value = f;
          t.arg = a;
          t.annot = annot;
          t.body = body();
          return CoreTerm::make(std::move(t));
        });
      });
    }
    if (e->kind == SExpr::Kind::Assume) {
      CoreTerm t{CoreTerm::Kind::LetAssume};
      t.pos = e->pos;
      t.name = x;
      t.type = rename(e->type, env);
      t.annot = annot;
      t.body = body();
      return CoreTerm::make(std::move(t));
    }
    CoreTerm t{CoreTerm::Kind::LetTerm};
    t.pos = pos;
    t.name = x;
    t.annot = annot;
    t.bound = term(e, env);
    t.body = body();
    return CoreTerm::make(std::move(t));
  }

  CorePtr val(Value v, SourcePos pos) {
    CoreTerm t{CoreTerm::Kind::Val};
    t.pos = pos;
    t.value = std::move(v);
    return CoreTerm::make(std::move(t));
  }

  CorePtr term(const SExprPtr& e, const Env& env) {
    switch (e->kind) {
      case SExpr::Kind::Int:
      case SExpr::Kind::Bool:
      case SExpr::Kind::Unit:
        return val(Value::constant_of(const_of(*e)), e->pos);
      case SExpr::Kind::Var:
        return val(resolve(*e, env), e->pos);
      case SExpr::Kind::Lambda:
        return val(lambda(*e, env), e->pos);
      case SExpr::Kind::Pair:
        return atom(e->kids[0], env, [&](const Value& a) {
          return atom(e->kids[1], env, [&](const Value& b) { return val(Value::pair(a, b), e->pos); });
        });
      case SExpr::Kind::App:
      case SExpr::Kind::Assume: {
        const std::string t = fresh(e->kind == SExpr::Kind::App ? "_t" : "_a");
        return let(t, std::nullopt, e, env, e->pos, [&]() { return val(Value::var(t), e->pos); });
      }
      case SExpr::Kind::Let: {
        const Pattern& pat = e->pat;
        const SExprPtr& bound = e->kids[0];
        const SExprPtr& body = e->kids[1];
        if (pat.kind == Pattern::Kind::Pair) {
          return atom(bound, env, [&](const Value& scrut) {
            CoreTerm t{CoreTerm::Kind::LetPair};
            t.pos = e->pos;
            t.name = bind(pat.first);
            t.name2 = bind(pat.second);
            t.value = scrut;
            Env inner = env;
            inner[pat.first] = t.name;
            inner[pat.second] = t.name2;
            t.body = term(body, inner);
            return CoreTerm::make(std::move(t));
          });
        }
        if (pat.kind == Pattern::Kind::Unit) {
          const std::string u = fresh("_u");
          return let(u, BaseType::unit(), bound, env, e->pos, [&]() { return term(body, env); });
        }
        const std::string x = bind(pat.first);
        Env inner = env;
        inner[pat.first] = x;
        return let(x, pat.annot, bound, env, e->pos, [&]() { return term(body, inner); });
      }
      case SExpr::Kind::If:
        return variable(e->kids[0], env, [&](const Value& c) {
          CoreTerm t{CoreTerm::Kind::If};
          t.pos = e->pos;
          t.value = c;
          t.body = term(e->kids[1], env);
          t.other = term(e->kids[2], env);
          return CoreTerm::make(std::move(t));
        });
      case SExpr::Kind::Assert:
        return atom(e->kids[0], env, [&](const Value& v) {
          CoreTerm t{CoreTerm::Kind::Assert};
          t.pos = e->pos;
          t.type = rename(e->type, env);
          t.value = v;
          return CoreTerm::make(std::move(t));
        });
      case SExpr::Kind::LetStar:
        throw CovError("internal", "let* must be desugared before A-normalization", e->pos);
    }
    throw CovError("internal", "unknown expression form", e->pos);
  }

  NameSupply names_;
  std::set<std::string> bound_;
};

// ---------------------------------------------------------------------------
// Alpha equivalence

struct Bijection {
  std::map<std::string, std::string> ab, ba;

  bool bind(const std::string& a, const std::string& b) {
    auto ia = ab.find(a);
    auto ib = ba.find(b);
    if (ia != ab.end() && ia->second != b) return false;
    if (ib != ba.end() && ib->second != a) return false;
    ab[a] = b;
    ba[b] = a;
    return true;
  }
  bool same_var(const std::string& a, const std::string& b) const {
    auto ia = ab.find(a);
    if (ia != ab.end()) return ia->second == b;
    return ba.find(b) == ba.end() && a == b;
  }
};

bool types_equal(const RType& a, const RType& b, const Bijection& m) {
  Env env(m.ab.begin(), m.ab.end());
  return rename(a, env) == b;
}

bool annots_equal(const ParamAnnot& a, const ParamAnnot& b, const Bijection& m) {
  if (a.base.has_value() != b.base.has_value() || a.rtype.has_value() != b.rtype.has_value()) return false;
  if (a.base && *a.base != *b.base) return false;
  return !a.rtype || types_equal(*a.rtype, *b.rtype, m);
}

bool alpha_term(const CorePtr& a, const CorePtr& b, Bijection m);

bool alpha_value(const Value& a, const Value& b, const Bijection& m) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Value::Kind::Const: return a.constant == b.constant;
    case Value::Kind::Var: return m.same_var(a.name, b.name);
    case Value::Kind::Pair: return alpha_value(*a.first, *b.first, m) && alpha_value(*a.second, *b.second, m);
    case Value::Kind::Lambda: {
      if (!annots_equal(a.param, b.param, m)) return false;
      Bijection inner = m;
      if (!inner.bind(a.name, b.name)) return false;
      return alpha_term(a.body, b.body, inner);
    }
  }
  return false;
}

bool alpha_term(const CorePtr& a, const CorePtr& b, Bijection m) {
  if (a->kind != b->kind) return false;
  if (a->annot.has_value() != b->annot.has_value() || (a->annot && *a->annot != *b->annot)) return false;
  switch (a->kind) {
    case CoreTerm::Kind::Val:
      return alpha_value(a->value, b->value, m);
    case CoreTerm::Kind::LetApp:
      if (!alpha_value(a->value, b->value, m) || !alpha_value(a->arg, b->arg, m)) return false;
      return m.bind(a->name, b->name) && alpha_term(a->body, b->body, m);
    case CoreTerm::Kind::LetTerm:
      if (a->ascription.has_value() != b->ascription.has_value()) return false;
      if (a->ascription && !types_equal(*a->ascription, *b->ascription, m)) return false;
      if (!alpha_term(a->bound, b->bound, m)) return false;
      return m.bind(a->name, b->name) && alpha_term(a->body, b->body, m);
    case CoreTerm::Kind::LetPair:
      if (!alpha_value(a->value, b->value, m)) return false;
      return m.bind(a->name, b->name) && m.bind(a->name2, b->name2) && alpha_term(a->body, b->body, m);
    case CoreTerm::Kind::If:
      return alpha_value(a->value, b->value, m) && alpha_term(a->body, b->body, m) &&
             alpha_term(a->other, b->other, m);
    case CoreTerm::Kind::LetAssume:
      if (!types_equal(a->type, b->type, m)) return false;
      return m.bind(a->name, b->name) && alpha_term(a->body, b->body, m);
    case CoreTerm::Kind::Assert:
      return types_equal(a->type, b->type, m) && alpha_value(a->value, b->value, m);
  }
  return false;
}

// ---------------------------------------------------------------------------
// ANF check

[[noreturn]] void violation(const std::string& msg, SourcePos pos) { throw CovError("anf-violation", msg, pos); }

void anf_binder(const std::string& n, std::set<std::string>& seen, SourcePos pos) {
  if (!seen.insert(n).second) violation("binder `" + n + "` is not unique", pos);
}

void anf_term(const CorePtr& t, std::set<std::string>& seen);

void anf_atom(const Value& v, SourcePos pos) {
  if (v.kind != Value::Kind::Const && v.kind != Value::Kind::Var)
    violation("expected a constant or variable in argument position", pos);
}

void anf_value(const Value& v, std::set<std::string>& seen, SourcePos pos) {
  switch (v.kind) {
    case Value::Kind::Pair:
      anf_atom(*v.first, pos);
      anf_atom(*v.second, pos);
      break;
    case Value::Kind::Lambda:
      anf_binder(v.name, seen, pos);
      anf_term(v.body, seen);
      break;
    default:
      break;
  }
}

void anf_term(const CorePtr& t, std::set<std::string>& seen) {
  if (!t) violation("missing subterm", {});
  switch (t->kind) {
    case CoreTerm::Kind::Val:
      anf_value(t->value, seen, t->pos);
      return;
    case CoreTerm::Kind::LetApp:
      if (t->value.kind == Value::Kind::Pair || t->value.kind == Value::Kind::Const)
        violation("application of a non-function value", t->pos);
      anf_value(t->value, seen, t->pos);
      if (t->arg.kind == Value::Kind::Lambda) anf_value(t->arg, seen, t->pos);
      else anf_atom(t->arg, t->pos);
      anf_binder(t->name, seen, t->pos);
      anf_term(t->body, seen);
      return;
    case CoreTerm::Kind::LetTerm:
      anf_term(t->bound, seen);
      anf_binder(t->name, seen, t->pos);
      anf_term(t->body, seen);
      return;
    case CoreTerm::Kind::LetPair:
      anf_atom(t->value, t->pos);
      anf_binder(t->name, seen, t->pos);
      anf_binder(t->name2, seen, t->pos);
      anf_term(t->body, seen);
      return;
    case CoreTerm::Kind::If:
      if (t->value.kind != Value::Kind::Var) violation("if condition must be a variable", t->pos);
      anf_term(t->body, seen);
      anf_term(t->other, seen);
      return;
    case CoreTerm::Kind::LetAssume:
      if (!t->type.is_cover()) violation("assume needs a coverage base type", t->pos);
      anf_binder(t->name, seen, t->pos);
      anf_term(t->body, seen);
      return;
    case CoreTerm::Kind::Assert:
      if (!t->type.is_over()) violation("assert needs an over base type", t->pos);
      anf_atom(t->value, t->pos);
      return;
  }
}

}  // namespace

SurfaceProgram desugar(const SurfaceProgram& prog) {
  NameSupply names(identifiers(prog));
  SurfaceProgram out = prog;
  for (auto& d : out.defs) d.body = desugar_expr(d.body, names);
  out.main = desugar_expr(prog.main, names);
  return out;
}

CoreProgram anf_normalize(const SurfaceProgram& prog) {
  Normalizer n{NameSupply(identifiers(prog))};
  return n.program(prog);
}

CoreProgram elaborate(const SurfaceProgram& prog) { return anf_normalize(desugar(prog)); }

CoreProgram load_program(std::string_view source) { return elaborate(parse_program(source)); }

bool alpha_equivalent(const CorePtr& a, const CorePtr& b) { return alpha_term(a, b, Bijection{}); }

bool alpha_equivalent(const CoreProgram& a, const CoreProgram& b) {
  // Goals are compared literally: top-level names are never renamed.
  return alpha_equivalent(a.term, b.term) && a.goal == b.goal;
}

void check_anf(const CorePtr& t) {
  std::set<std::string> seen;
  anf_term(t, seen);
}

bool has_monad_bind(const SExprPtr& e) {
  if (!e) return false;
  if (e->kind == SExpr::Kind::LetStar) return true;
  for (const auto& k : e->kids)
    if (has_monad_bind(k)) return true;
  return false;
}

}  // namespace covtypes

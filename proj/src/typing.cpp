#include "covtypes/typing.hpp"

#include <algorithm>
#include <set>

#include "covtypes/builtins.hpp"
#include "covtypes/error.hpp"
#include "covtypes/smt.hpp"

namespace covtypes {

Binding over_binding(std::string name, RType t) {
  Binding b;
  b.name = std::move(name);
  b.kind = Binding::Kind::Over;
  b.type = std::move(t);
  return b;
}

Binding cover_binding(std::string name, RType t, bool exact) {
  Binding b;
  b.name = std::move(name);
  b.kind = Binding::Kind::Cover;
  b.type = std::move(t);
  b.exact = exact;
  return b;
}

Binding fun_binding(std::string name, RType t) {
  Binding b;
  b.name = std::move(name);
  b.kind = Binding::Kind::Fun;
  b.type = std::move(t);
  b.exact = false;
  return b;
}

const Binding* lookup(const Context& ctx, const std::string& name) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
    if (it->name == name) return &*it;
  return nullptr;
}

SortEnv sort_env(const Context& ctx) {
  SortEnv env;
  for (const auto& b : ctx)
    if (b.is_base()) env[b.name] = b.type.base();
  return env;
}

namespace {

Qualifier at_nu(const Qualifier& q) { return subst_nu(q, q::var(kNuName)); }

// Bound of a binding's prefix entry. Under the over reading an inexact
// coverage binding says nothing about its value.
Qualifier bound_of(const Binding& b, bool over_reading) {
  Qualifier q = (over_reading && b.kind == Binding::Kind::Cover && !b.exact) ? q::tt() : b.type.qual();
  if (b.guard) q = q::and_(q, *b.guard);
  return subst_nu(q, q::var(b.name));
}

void wf_type_in(SortEnv env, const RType& t) {
  switch (t.kind()) {
    case RType::Kind::Over:
    case RType::Kind::Cover:
      check_formula(t.qual(), env, t.base());
      return;
    case RType::Kind::OverArrow:
      wf_type_in(env, t.dom());
      env[t.param()] = t.dom().base();
      wf_type_in(env, t.cod());
      return;
    case RType::Kind::UnderArrow:
    case RType::Kind::HoArrow:
      wf_type_in(env, t.dom());
      wf_type_in(env, t.cod());
      return;
  }
}

}  // namespace

void wf_type(const Context& ctx, const RType& t) { wf_type_in(sort_env(ctx), t); }

void wf_ctx(const Context& ctx, std::int64_t window) {
  SortEnv env;
  for (std::size_t i = 0; i < ctx.size(); ++i) {
    const Binding& b = ctx[i];
    wf_type_in(env, b.type);
    if (b.is_base()) env[b.name] = b.type.base();
    if (b.kind != Binding::Kind::Cover) continue;
    VC vc;
    for (std::size_t j = 0; j <= i; ++j)
      if (ctx[j].is_base())
        vc.prefix.push_back({Quant::Exists, ctx[j].name, ctx[j].type.base(), bound_of(ctx[j], false)});
    vc.matrix = q::tt();
    if (!decide_bounded(vc, window).valid())
      throw CovError("empty-coverage", "coverage binding `" + b.name + "` has no inhabitant in the window");
  }
}

namespace {

// Over-approximate judgment for one path: every binding universal, then ν
// bounded by the path's qualifier, concluding the goal.
VC over_vc(const Context& ctx, const BaseType& b, const Qualifier& leaf, const Qualifier& goal) {
  VC vc;
  for (const auto& bd : ctx)
    if (bd.is_base()) vc.prefix.push_back({Quant::Forall, bd.name, bd.type.base(), bound_of(bd, true)});
  vc.prefix.push_back({Quant::Forall, kNuName, b, at_nu(leaf)});
  vc.matrix = at_nu(goal);
  return vc;
}

struct CoverLeaf {
  const Context* ctx;
  Qualifier qual;
};

// Coverage judgment over several paths that all extend `base`. Over
// bindings of `base` are hoisted in front of ν; every path contributes a
// disjunct existentially quantifying its coverage bindings. When the goal
// mentions a coverage name the matrix is self-framing.
VC cover_vc(const Context& base, const std::vector<CoverLeaf>& leaves, const BaseType& b, const Qualifier& goal) {
  VC vc;
  std::set<std::string> hoisted, cover_names;
  for (const auto& bd : base) {
    if (bd.kind == Binding::Kind::Cover) cover_names.insert(bd.name);
    if (bd.kind != Binding::Kind::Over) continue;
    Qualifier bound = bound_of(bd, false);
    bool closed = true;
    for (const auto& n : free_names(bound))
      if (n != bd.name && !hoisted.count(n)) closed = false;
    vc.prefix.push_back({Quant::Forall, bd.name, bd.type.base(), closed ? bound : q::tt()});
    hoisted.insert(bd.name);
  }
  bool self_framing = false;
  for (const auto& n : free_names(goal))
    if (cover_names.count(n)) self_framing = true;

  vc.prefix.push_back({Quant::Forall, kNuName, b, self_framing ? q::tt() : at_nu(goal)});

  const auto exists_block = [](const Context& ctx, Qualifier body) {
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
      if (it->kind == Binding::Kind::Cover) body = q::exists(it->name, it->type.base(), bound_of(*it, false), body);
    return body;
  };

  std::vector<Qualifier> disjuncts;
  for (const auto& leaf : leaves) {
    Qualifier body = self_framing ? q::and_(at_nu(goal), at_nu(leaf.qual)) : at_nu(leaf.qual);
    std::vector<Qualifier> parts;
    for (const auto& bd : *leaf.ctx)
      if (bd.kind == Binding::Kind::Over && bd.guard) parts.push_back(subst_nu(*bd.guard, q::var(bd.name)));
    parts.push_back(exists_block(*leaf.ctx, body));
    disjuncts.push_back(q::conj(parts));
  }
  Qualifier any = q::disj(disjuncts);
  vc.matrix = self_framing ? q::implies(exists_block(base, at_nu(goal)), any) : any;
  return vc;
}

[[noreturn]] void shape_mismatch(const RType& a, const RType& b) {
  throw CovError("shape-mismatch", "cannot compare " + a.to_string() + " with " + b.to_string());
}

void sub_type_rec(const Context& ctx, const RType& sub, const RType& super, std::vector<Obligation>& out,
                  int& fresh) {
  if (sub.is_base() || super.is_base()) {
    out.push_back({sub.is_cover() ? "SubBase-cover" : "SubBase-over", sub_base(ctx, sub, super)});
    return;
  }
  if (sub.kind() != super.kind()) shape_mismatch(sub, super);
  switch (sub.kind()) {
    case RType::Kind::OverArrow: {
      std::string z = "%s" + std::to_string(++fresh);
      if (!(sub.dom().base() == super.dom().base())) shape_mismatch(sub, super);
      out.push_back({"SubArr-dom", sub_base(ctx, super.dom(), sub.dom())});
      Context inner = ctx;
      Binding p = over_binding(z, super.dom());
      p.param = true;
      inner.push_back(p);
      sub_type_rec(inner, subst(sub.cod(), sub.param(), q::var(z)), subst(super.cod(), super.param(), q::var(z)), out,
                   fresh);
      return;
    }
    case RType::Kind::UnderArrow:
      if (!(sub.dom().base() == super.dom().base())) shape_mismatch(sub, super);
      out.push_back({"SubArr-dom", sub_base(ctx, super.dom(), sub.dom())});
      sub_type_rec(ctx, sub.cod(), super.cod(), out, fresh);
      return;
    case RType::Kind::HoArrow:
      sub_type_rec(ctx, super.dom(), sub.dom(), out, fresh);
      sub_type_rec(ctx, sub.cod(), super.cod(), out, fresh);
      return;
    default:
      shape_mismatch(sub, super);
  }
}

}  // namespace

VC sub_base(const Context& ctx, const RType& sub, const RType& super) {
  if (!sub.is_base() || !super.is_base() || sub.kind() != super.kind() || !(sub.base() == super.base()))
    shape_mismatch(sub, super);
  if (sub.is_over()) return over_vc(ctx, sub.base(), sub.qual(), super.qual());
  return cover_vc(ctx, {CoverLeaf{&ctx, sub.qual()}}, sub.base(), super.qual());
}

std::vector<Obligation> sub_type(const Context& ctx, const RType& sub, const RType& super) {
  std::vector<Obligation> out;
  int fresh = 0;
  sub_type_rec(ctx, sub, super, out, fresh);
  return out;
}

Verdict decide_sub_type(const Context& ctx, const RType& sub, const RType& super, std::int64_t window) {
  for (const auto& o : sub_type(ctx, sub, super)) {
    Verdict v = decide_bounded(o.vc, window);
    if (!v.valid()) return v;
  }
  return Verdict{};
}

// ---------------------------------------------------------------------------
// Values

namespace {

BaseType sort_of_constant(const SemanticValue& v) {
  if (v.is_int()) return BaseType::integer();
  if (v.is_bool()) return BaseType::boolean();
  if (v.is_unit()) return BaseType::unit();
  return BaseType::prod(sort_of_constant(v.first()), sort_of_constant(v.second()));
}

[[noreturn]] void not_base(const Value& v, SourcePos pos) {
  throw SortError("expected a base value, got " + std::string(v.kind == Value::Kind::Lambda ? "a lambda" : "a function `" + v.name + "`"), pos);
}

const Binding& bound_var(const Context& ctx, const std::string& name, SourcePos pos) {
  const Binding* b = lookup(ctx, name);
  if (!b) throw ScopeError("unbound identifier `" + name + "`", pos);
  return *b;
}

BaseType value_sort(const Context& ctx, const Value& v, SourcePos pos) {
  switch (v.kind) {
    case Value::Kind::Const: return sort_of_constant(v.constant);
    case Value::Kind::Var: {
      const Binding* b = lookup(ctx, v.name);
      if (!b && is_builtin(v.name)) not_base(v, pos);
      if (!bound_var(ctx, v.name, pos).is_base()) not_base(v, pos);
      return b->type.base();
    }
    case Value::Kind::Pair: return BaseType::prod(value_sort(ctx, *v.first, pos), value_sort(ctx, *v.second, pos));
    case Value::Kind::Lambda: not_base(v, pos);
  }
  not_base(v, pos);
}

// Qualifier over ν pinning ν to the value.
Qualifier value_qual(const Context& ctx, const Value& v, SourcePos pos) {
  switch (v.kind) {
    case Value::Kind::Const: return q::equals_value(q::nu(), v.constant);
    case Value::Kind::Var:
      value_sort(ctx, v, pos);
      return q::eq(q::nu(), q::var(v.name));
    case Value::Kind::Pair:
      return q::and_(subst_nu(value_qual(ctx, *v.first, pos), q::fst(q::nu())),
                     subst_nu(value_qual(ctx, *v.second, pos), q::snd(q::nu())));
    case Value::Kind::Lambda: not_base(v, pos);
  }
  not_base(v, pos);
}

}  // namespace

RType synth_value(const Context& ctx, const Value& v, SourcePos pos) {
  if (v.kind == Value::Kind::Lambda)
    throw CovError("annotation-required", "a lambda needs an expected arrow type", pos);
  if (v.kind == Value::Kind::Var) {
    const Binding* b = lookup(ctx, v.name);
    if (!b) {
      if (const Builtin* bi = find_builtin(v.name)) {
        if (auto t = builtin_type(*bi)) return *t;
        throw SortError("`" + v.name + "` can only be applied directly to a pair", pos);
      }
      throw ScopeError("unbound identifier `" + v.name + "`", pos);
    }
    if (b->pending) throw CovError("annotation-required", "`" + v.name + "` needs a type ascription", pos);
    if (b->kind == Binding::Kind::Fun) return b->type;
  }
  return RType::cover(value_sort(ctx, v, pos), value_qual(ctx, v, pos));
}

const char* to_string(CheckResult::Outcome o) {
  switch (o) {
    case CheckResult::Outcome::Accepted: return "accepted";
    case CheckResult::Outcome::Rejected: return "rejected";
    case CheckResult::Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::int64_t effective_window(std::int64_t flag, const Pragma& pragma) {
  return std::max(flag, pragma.window.value_or(0));
}

// ---------------------------------------------------------------------------
// Checker

namespace {

struct Leaf {
  Context ctx;
  RType type;  // base leaves are coverage types
  bool exact = true;
  std::shared_ptr<const Value> pending;
};

class Checker {
 public:
  explicit Checker(const CheckOptions& opts) : opts_(opts), solver_(opts.solver_cmd, opts.timeout_ms) {}

  CheckResult run(const CoreProgram& p) {
    result_.window = opts_.window;
    try {
      wf_type({}, p.goal);
      goal(Context{}, check(Context{}, p.term), p.goal, p.term->pos, "goal");
    } catch (const CovError& e) {
      result_.diagnostics.push_back({e.code(), "", e.what(), e.pos(), ""});
      rejected_ = true;
    }
    result_.outcome = rejected_ ? CheckResult::Outcome::Rejected
                      : inconclusive_ ? CheckResult::Outcome::Inconclusive
                                      : CheckResult::Outcome::Accepted;
    return std::move(result_);
  }

 private:
  // ---- obligations
  void discharge(const std::string& rule, SourcePos pos, const VC& vc) {
    VcRecord r;
    r.id = static_cast<int>(result_.vcs.size()) + 1;
    r.rule = rule;
    r.pos = pos;
    r.vc = vc;
    bool invalid = false;
    if (opts_.backend == Backend::Bounded) {
      r.method = "bounded";
      Verdict v = decide_bounded(vc, opts_.window);
      r.witness = v.witness_string();
      switch (v.kind) {
        case Verdict::Kind::Valid: r.verdict = "valid"; break;
        case Verdict::Kind::Invalid: r.verdict = "invalid"; invalid = true; break;
        case Verdict::Kind::WindowInsufficient: r.verdict = "window-insufficient"; inconclusive_ = true; break;
      }
    } else {
      r.method = "smt";
      SolverResult s = solver_.check(emit_smt2(vc));
      switch (s.answer) {
        case SolverAnswer::Unsat: r.verdict = "valid"; break;
        case SolverAnswer::Sat: r.verdict = "invalid"; invalid = true; break;
        case SolverAnswer::Unknown: r.verdict = "unknown"; inconclusive_ = true; break;
        case SolverAnswer::Timeout: r.verdict = "timeout"; inconclusive_ = true; break;
        case SolverAnswer::Failed: r.verdict = "solver-failed"; inconclusive_ = true; break;
      }
    }
    if (invalid) {
      rejected_ = true;
      std::string msg = rule + " verification condition does not hold";
      if (!r.witness.empty()) msg += " (counterexample: " + r.witness + ")";
      result_.diagnostics.push_back({"vc-invalid", rule, msg, pos, r.witness});
    }
    result_.vcs.push_back(std::move(r));
  }

  void subtype(const Context& ctx, const RType& sub, const RType& super, SourcePos pos) {
    for (auto& o : sub_type(ctx, sub, super)) discharge(o.rule, pos, o.vc);
  }

  // ---- linearity
  static void touch(const Context& ctx, const Value& v, SourcePos pos) {
    if (v.kind == Value::Kind::Var) {
      const Binding* b = lookup(ctx, v.name);
      if (b && b->consumed)
        throw CovError("linearity", "argument to under-parameter reused: `" + v.name + "`", pos);
    } else if (v.kind == Value::Kind::Pair) {
      touch(ctx, *v.first, pos);
      touch(ctx, *v.second, pos);
    }
  }

  static void no_consumed(const Context& ctx, const RType& t, SourcePos pos) {
    for (const auto& n : free_names(t)) {
      const Binding* b = lookup(ctx, n);
      if (b && b->consumed) throw CovError("linearity", "argument to under-parameter reused: `" + n + "`", pos);
    }
  }

  // A term for `v`, binding a fresh exact coverage name when the qualifier
  // language cannot spell the value.
  Qualifier term_for(Context& ctx, const Value& v, SourcePos pos) {
    if (v.kind == Value::Kind::Var) {
      value_sort(ctx, v, pos);
      return q::var(v.name);
    }
    if (v.kind == Value::Kind::Const)
      if (auto t = q::term_of(v.constant)) return *t;
    std::string n = "%t" + std::to_string(++fresh_);
    ctx.push_back(cover_binding(n, RType::cover(value_sort(ctx, v, pos), value_qual(ctx, v, pos))));
    return q::var(n);
  }

  static void bind_result(Context& ctx, const std::string& name, const RType& t, bool exact) {
    switch (t.kind()) {
      case RType::Kind::Over: ctx.push_back(over_binding(name, t)); break;
      case RType::Kind::Cover: ctx.push_back(cover_binding(name, t, exact)); break;
      default: {
        Binding b = fun_binding(name, t);
        b.exact = exact;
        ctx.push_back(b);
      }
    }
  }

  struct FnType {
    RType type;
    bool exact;
  };

  FnType function_type(const Context& ctx, const Value& f, const Value& arg, SourcePos pos) {
    if (f.kind == Value::Kind::Lambda)
      throw CovError("annotation-required", "applying an unannotated lambda; bind it with a type ascription", pos);
    if (f.kind != Value::Kind::Var) throw SortError("applying a non-function value", pos);
    if (const Binding* b = lookup(ctx, f.name)) {
      if (b->pending)
        throw CovError("annotation-required", "`" + f.name + "` is applied but has no type ascription", pos);
      if (b->kind != Binding::Kind::Fun) throw SortError("applying base variable `" + f.name + "`", pos);
      return {b->type, b->exact};
    }
    const Builtin* bi = find_builtin(f.name);
    if (!bi) throw ScopeError("unbound identifier `" + f.name + "`", pos);
    std::optional<BaseType> first;
    if (arg.kind != Value::Kind::Lambda) first = value_sort(ctx, arg, pos);
    auto t = builtin_type(*bi, first);
    if (!t) throw SortError("`" + f.name + "` does not apply to this argument", pos);
    return {*t, true};
  }

  // Checks a function-valued argument against an expected arrow.
  void function_arg(const Context& ctx, const Value& a, const RType& want, SourcePos pos) {
    if (a.kind == Value::Kind::Lambda) return lambda(ctx, a, want, pos);
    if (a.kind == Value::Kind::Var) {
      const Binding* b = lookup(ctx, a.name);
      if (b && b->pending) return lambda(ctx, *b->pending, want, pos);
      if (!b) {
        if (const Builtin* bi = find_builtin(a.name)) {
          std::optional<BaseType> first;
          if (want.dom().is_base()) first = want.dom().base();
          auto t = builtin_type(*bi, first);
          if (!t) throw SortError("`" + a.name + "` does not fit " + want.to_string(), pos);
          return subtype(ctx, *t, want, pos);
        }
      }
    }
    subtype(ctx, synth_value(ctx, a, pos), want, pos);
  }

  void lambda(const Context& ctx, const Value& lam, const RType& want, SourcePos pos) {
    if (!want.is_arrow()) throw SortError("lambda checked against base type " + want.to_string(), pos);
    Context inner = ctx;
    RType cod = want.cod();
    switch (want.kind()) {
      case RType::Kind::OverArrow: {
        Binding p = over_binding(lam.name, want.dom());
        p.param = true;
        inner.push_back(p);
        if (want.param() != lam.name) cod = subst(cod, want.param(), q::var(lam.name));
        break;
      }
      case RType::Kind::UnderArrow: {
        Binding p = cover_binding(lam.name, want.dom(), false);
        p.param = true;
        inner.push_back(p);
        break;
      }
      default: {
        Binding p = fun_binding(lam.name, want.dom());
        p.param = true;
        inner.push_back(p);
      }
    }
    goal(inner, check(inner, lam.body), cod, lam.body->pos, "lambda");
  }

  // ---- goals
  void goal(const Context& base, const std::vector<Leaf>& leaves, const RType& want, SourcePos pos,
            const std::string& what) {
    no_consumed(base, want, pos);
    if (want.is_cover()) {
      std::vector<CoverLeaf> kept;
      for (const auto& l : leaves) {
        if (!l.type.is_base() || l.pending) throw SortError("function value where " + want.to_string() + " is expected", pos);
        bool over_local = false;
        for (std::size_t i = base.size(); i < l.ctx.size(); ++i)
          if (l.ctx[i].kind == Binding::Kind::Over) over_local = true;
        if (!over_local) kept.push_back({&l.ctx, l.type.qual()});
      }
      discharge(what == "goal" ? "SubBase-cover" : what + ":SubBase-cover", pos, cover_vc(base, kept, want.base(), want.qual()));
      return;
    }
    if (want.is_over()) {
      for (const auto& l : leaves) {
        if (!l.type.is_base() || l.pending) throw SortError("function value where " + want.to_string() + " is expected", pos);
        discharge(what == "goal" ? "SubBase-over" : what + ":SubBase-over", pos,
                  over_vc(l.ctx, want.base(), l.type.qual(), want.qual()));
      }
      return;
    }
    for (const auto& l : leaves) {
      if (l.pending) lambda(l.ctx, *l.pending, want, pos);
      else if (l.type.is_arrow()) subtype(l.ctx, l.type, want, pos);
      else throw SortError("base value where " + want.to_string() + " is expected", pos);
    }
  }

  // ---- terms
  std::vector<Leaf> check(const Context& ctx, const CorePtr& t) {
    switch (t->kind) {
      case CoreTerm::Kind::Val: {
        touch(ctx, t->value, t->pos);
        if (t->value.kind == Value::Kind::Lambda)
          return {Leaf{ctx, RType(), false, std::make_shared<const Value>(t->value)}};
        if (t->value.kind == Value::Kind::Var) {
          const Binding* b = lookup(ctx, t->value.name);
          if (b && b->pending) return {Leaf{ctx, RType(), false, b->pending}};
          if (b && b->kind == Binding::Kind::Fun) return {Leaf{ctx, b->type, b->exact, nullptr}};
        }
        return {Leaf{ctx, synth_value(ctx, t->value, t->pos), true, nullptr}};
      }
      case CoreTerm::Kind::LetApp: return let_app(ctx, *t);
      case CoreTerm::Kind::LetTerm: return let_term(ctx, *t);
      case CoreTerm::Kind::LetPair: {
        touch(ctx, t->value, t->pos);
        Context c = ctx;
        BaseType s = value_sort(c, t->value, t->pos);
        if (!s.is_prod()) throw SortError("destructuring a non-pair of sort " + s.to_string(), t->pos);
        Qualifier p = term_for(c, t->value, t->pos);
        c.push_back(cover_binding(t->name, RType::cover(s.left(), q::eq(q::nu(), q::fst(p)))));
        c.push_back(cover_binding(t->name2, RType::cover(s.right(), q::eq(q::nu(), q::snd(p)))));
        return check(c, t->body);
      }
      case CoreTerm::Kind::If: {
        touch(ctx, t->value, t->pos);
        if (t->value.kind == Value::Kind::Const) {
          if (!t->value.constant.is_bool()) throw SortError("if condition is not a boolean", t->pos);
          return check(ctx, t->value.constant.as_bool() ? t->body : t->other);
        }
        if (t->value.kind != Value::Kind::Var) throw SortError("if condition must be a variable or constant", t->pos);
        if (!(value_sort(ctx, t->value, t->pos) == BaseType::boolean()))
          throw SortError("if condition `" + t->value.name + "` is not a boolean", t->pos);
        std::vector<Leaf> out;
        for (bool branch : {true, false}) {
          Context c = ctx;
          for (auto it = c.rbegin(); it != c.rend(); ++it) {
            if (it->name != t->value.name) continue;
            Qualifier g = branch ? q::nu() : q::not_(q::nu());
            it->guard = it->guard ? q::and_(*it->guard, g) : g;
            break;
          }
          auto leaves = check(c, branch ? t->body : t->other);
          std::move(leaves.begin(), leaves.end(), std::back_inserter(out));
        }
        return out;
      }
      case CoreTerm::Kind::LetAssume: {
        if (!t->type.is_cover()) throw SortError("assume takes a coverage type", t->pos);
        wf_type(ctx, t->type);
        no_consumed(ctx, t->type, t->pos);
        Context c = ctx;
        c.push_back(cover_binding(t->name, t->type));
        if (!inhabited(c) && inhabited(ctx))
          throw CovError("empty-coverage", "assumed coverage type " + t->type.to_string() + " has no inhabitant",
                         t->pos);
        return check(c, t->body);
      }
      case CoreTerm::Kind::Assert: {
        touch(ctx, t->value, t->pos);
        wf_type(ctx, t->type);
        no_consumed(ctx, t->type, t->pos);
        Context c = ctx;
        BaseType b = value_sort(c, t->value, t->pos);
        if (!(b == t->type.base())) throw SortError("asserted value has sort " + b.to_string(), t->pos);
        const Qualifier& phi = t->type.qual();
        Qualifier q;
        BaseType result;
        if (opts_.assert_unit_payload) {
          Qualifier a = term_for(c, t->value, t->pos);
          Qualifier holds = subst_nu(phi, a);
          q = q::or_(q::and_(q::fst(q::nu()), holds), q::and_(q::not_(q::fst(q::nu())), q::not_(holds)));
          result = BaseType::prod(BaseType::boolean(), BaseType::unit());
        } else {
          Qualifier vq = value_qual(c, t->value, t->pos);
          Qualifier ok = subst_nu(q::and_(vq, phi), q::snd(q::nu()));
          Qualifier bad = subst_nu(q::and_(vq, q::not_(phi)), q::snd(q::nu()));
          q = q::or_(q::and_(q::fst(q::nu()), ok), q::and_(q::not_(q::fst(q::nu())), bad));
          result = BaseType::prod(BaseType::boolean(), b);
        }
        return {Leaf{c, RType::cover(result, q), true, nullptr}};
      }
    }
    throw SortError("unknown term form", t->pos);
  }

  std::vector<Leaf> let_app(const Context& ctx, const CoreTerm& t) {
    touch(ctx, t.value, t.pos);
    touch(ctx, t.arg, t.pos);
    FnType f = function_type(ctx, t.value, t.arg, t.pos);
    Context c = ctx;
    RType res;
    switch (f.type.kind()) {
      case RType::Kind::OverArrow: {
        const RType& dom = f.type.dom();
        BaseType s = value_sort(c, t.arg, t.pos);
        if (!(s == dom.base())) throw SortError("argument of sort " + s.to_string() + ", expected " + dom.base().to_string(), t.pos);
        Qualifier aq = value_qual(c, t.arg, t.pos);
        if (opts_.strict_overapp)
          discharge("TOverApp-cover", t.pos, cover_vc(c, {CoverLeaf{&c, aq}}, s, dom.qual()));
        else
          discharge("TOverApp", t.pos, over_vc(c, s, aq, dom.qual()));
        Qualifier a = term_for(c, t.arg, t.pos);
        res = subst(f.type.cod(), f.type.param(), a);
        break;
      }
      case RType::Kind::UnderArrow: {
        const RType& dom = f.type.dom();
        BaseType s = value_sort(c, t.arg, t.pos);
        if (!(s == dom.base())) throw SortError("argument of sort " + s.to_string() + ", expected " + dom.base().to_string(), t.pos);
        discharge("TUnderApp", t.pos, cover_vc(c, {CoverLeaf{&c, value_qual(c, t.arg, t.pos)}}, s, dom.qual()));
        if (t.arg.kind == Value::Kind::Pair)
          throw CovError("linearity", "argument to an under-parameter must be a variable or constant", t.pos);
        if (t.arg.kind == Value::Kind::Var) consume(c, t.arg.name, t.pos);
        res = f.type.cod();
        break;
      }
      case RType::Kind::HoArrow:
        function_arg(c, t.arg, f.type.dom(), t.pos);
        res = f.type.cod();
        break;
      default:
        throw SortError("applying a value of base type", t.pos);
    }
    bind_result(c, t.name, res, f.exact);
    return check(c, t.body);
  }

  static void consume(Context& c, const std::string& x, SourcePos pos) {
    auto it = std::find_if(c.begin(), c.end(), [&](const Binding& b) { return b.name == x; });
    if (it == c.end()) return;
    for (auto later = it + 1; later != c.end(); ++later) {
      bool uses = later->is_base() && mentions(later->type.qual(), x);
      if (later->guard && mentions(*later->guard, x)) uses = true;
      if (uses)
        throw CovError("linearity",
                       "argument to under-parameter reused: `" + x + "` is referenced by `" + later->name + "`", pos);
    }
    it->consumed = true;
  }

  std::vector<Leaf> let_term(const Context& ctx, const CoreTerm& t) {
    if (t.ascription) {
      wf_type(ctx, *t.ascription);
      no_consumed(ctx, *t.ascription, t.pos);
      goal(ctx, check(ctx, t.bound), *t.ascription, t.pos, "let `" + t.name + "`");
      Context c = ctx;
      bind_result(c, t.name, *t.ascription, false);
      return check(c, t.body);
    }
    if (t.bound->kind == CoreTerm::Kind::Val && t.bound->value.kind == Value::Kind::Lambda) {
      Context c = ctx;
      Binding b = fun_binding(t.name, RType());
      b.pending = std::make_shared<const Value>(t.bound->value);
      c.push_back(b);
      return check(c, t.body);
    }
    std::vector<Leaf> out;
    for (auto& leaf : check(ctx, t.bound)) {
      Context c = std::move(leaf.ctx);
      if (leaf.pending) {
        Binding b = fun_binding(t.name, RType());
        b.pending = leaf.pending;
        c.push_back(b);
      } else {
        bind_result(c, t.name, leaf.type, leaf.exact);
      }
      auto leaves = check(c, t.body);
      std::move(leaves.begin(), leaves.end(), std::back_inserter(out));
    }
    return out;
  }

  bool inhabited(const Context& c) const {
    VC vc;
    for (const auto& b : c)
      if (b.is_base()) vc.prefix.push_back({Quant::Exists, b.name, b.type.base(), bound_of(b, false)});
    vc.matrix = q::tt();
    return decide_bounded(vc, opts_.window).valid();
  }

  const CheckOptions& opts_;
  SolverClient solver_;
  CheckResult result_;
  bool rejected_ = false;
  bool inconclusive_ = false;
  int fresh_ = 0;
};

}  // namespace

CheckResult check_program(const CoreProgram& p, const CheckOptions& opts) {
  Checker c(opts);
  return c.run(p);
}

}  // namespace covtypes

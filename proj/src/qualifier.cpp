#include "covtypes/qualifier.hpp"

#include <algorithm>
#include <cassert>

#include "covtypes/error.hpp"

namespace covtypes {

Qualifier::Qualifier() : node_(std::make_shared<const Node>(Node{QOp::True, {}, 0, {}, {}})) {}

Qualifier Qualifier::make(QOp op, std::vector<Qualifier> args, std::string name,
                          std::int64_t value, BaseType sort) {
  return Qualifier(std::make_shared<const Node>(
      Node{op, std::move(name), value, std::move(sort), std::move(args)}));
}

bool operator==(const Qualifier& a, const Qualifier& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.name() != b.name() || a.value() != b.value() ||
      a.arity() != b.arity())
    return false;
  if (a.is_quantifier() && a.bound_sort() != b.bound_sort()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i)
    if (!(a.arg(i) == b.arg(i))) return false;
  return true;
}

namespace q {

Qualifier tt() { return Qualifier::make(QOp::True, {}); }
Qualifier ff() { return Qualifier::make(QOp::False, {}); }
Qualifier boolean(bool b) { return b ? tt() : ff(); }
Qualifier nu() { return Qualifier::make(QOp::Nu, {}); }
Qualifier var(std::string name) { return Qualifier::make(QOp::Var, {}, std::move(name)); }
Qualifier lit(std::int64_t n) { return Qualifier::make(QOp::IntLit, {}, {}, n); }
Qualifier eq(Qualifier a, Qualifier b) { return Qualifier::make(QOp::Eq, {std::move(a), std::move(b)}); }
Qualifier le(Qualifier a, Qualifier b) { return Qualifier::make(QOp::Le, {std::move(a), std::move(b)}); }
Qualifier lt(Qualifier a, Qualifier b) { return Qualifier::make(QOp::Lt, {std::move(a), std::move(b)}); }
Qualifier add(Qualifier a, Qualifier b) { return Qualifier::make(QOp::Add, {std::move(a), std::move(b)}); }
Qualifier sub(Qualifier a, Qualifier b) { return Qualifier::make(QOp::Sub, {std::move(a), std::move(b)}); }

Qualifier not_(Qualifier a) {
  if (a.is_true()) return ff();
  if (a.is_false()) return tt();
  return Qualifier::make(QOp::Not, {std::move(a)});
}

Qualifier and_(Qualifier a, Qualifier b) {
  if (a.is_true()) return b;
  if (b.is_true()) return a;
  if (a.is_false() || b.is_false()) return ff();
  return Qualifier::make(QOp::And, {std::move(a), std::move(b)});
}

Qualifier or_(Qualifier a, Qualifier b) {
  if (a.is_false()) return b;
  if (b.is_false()) return a;
  if (a.is_true() || b.is_true()) return tt();
  return Qualifier::make(QOp::Or, {std::move(a), std::move(b)});
}

Qualifier implies(Qualifier a, Qualifier b) {
  if (a.is_true()) return b;
  if (a.is_false() || b.is_true()) return tt();
  return Qualifier::make(QOp::Implies, {std::move(a), std::move(b)});
}

Qualifier iff(Qualifier a, Qualifier b) { return Qualifier::make(QOp::Iff, {std::move(a), std::move(b)}); }
Qualifier even(Qualifier a) { return Qualifier::make(QOp::Even, {std::move(a)}); }
Qualifier odd(Qualifier a) { return Qualifier::make(QOp::Odd, {std::move(a)}); }
Qualifier fst(Qualifier a) { return Qualifier::make(QOp::Fst, {std::move(a)}); }
Qualifier snd(Qualifier a) { return Qualifier::make(QOp::Snd, {std::move(a)}); }

Qualifier forall(std::string name, BaseType sort, Qualifier bound, Qualifier body) {
  return Qualifier::make(QOp::Forall, {std::move(bound), std::move(body)}, std::move(name), 0,
                         std::move(sort));
}

Qualifier exists(std::string name, BaseType sort, Qualifier bound, Qualifier body) {
  return Qualifier::make(QOp::Exists, {std::move(bound), std::move(body)}, std::move(name), 0,
                         std::move(sort));
}

Qualifier conj(const std::vector<Qualifier>& parts) {
  Qualifier out = tt();
  for (const auto& p : parts) out = and_(out, p);
  return out;
}

Qualifier disj(const std::vector<Qualifier>& parts) {
  Qualifier out = ff();
  for (const auto& p : parts) out = or_(out, p);
  return out;
}

Qualifier equals_value(const Qualifier& term, const SemanticValue& v) {
  if (v.is_unit()) return tt();
  if (v.is_pair())
    return and_(equals_value(fst(term), v.first()), equals_value(snd(term), v.second()));
  return eq(term, *term_of(v));
}

std::optional<Qualifier> term_of(const SemanticValue& v) {
  if (v.is_int()) return lit(v.as_int());
  if (v.is_bool()) return boolean(v.as_bool());
  return std::nullopt;
}

}  // namespace q

// ---------------------------------------------------------------------------
// Sorting

namespace {

std::string op_symbol(QOp op) {
  switch (op) {
    case QOp::Eq: return "==";
    case QOp::Le: return "<=";
    case QOp::Lt: return "<";
    case QOp::Add: return "+";
    case QOp::Sub: return "-";
    case QOp::And: return "&&";
    case QOp::Or: return "||";
    case QOp::Implies: return "==>";
    case QOp::Iff: return "<=>";
    case QOp::Even: return "even";
    case QOp::Odd: return "odd";
    case QOp::Fst: return "fst";
    case QOp::Snd: return "snd";
    case QOp::Not: return "!";
    default: return "?";
  }
}

void expect_sort(const BaseType& got, const BaseType& want, const Qualifier& at) {
  if (got != want)
    throw SortError("qualifier `" + to_string(at) + "` expects " + want.to_string() +
                    " operands, got " + got.to_string());
}

}  // namespace

BaseType sort_of(const Qualifier& qual, const SortEnv& env,
                 const std::optional<BaseType>& nu_sort) {
  const auto rec = [&](const Qualifier& sub) { return sort_of(sub, env, nu_sort); };
  switch (qual.op()) {
    case QOp::True:
    case QOp::False:
      return BaseType::boolean();
    case QOp::Nu:
      if (!nu_sort) throw ScopeError("the value variable v is not in scope here");
      return *nu_sort;
    case QOp::Var: {
      auto it = env.find(qual.name());
      if (it == env.end()) throw ScopeError("unbound name `" + qual.name() + "` in qualifier");
      return it->second;
    }
    case QOp::IntLit:
      return BaseType::integer();
    case QOp::Eq: {
      BaseType a = rec(qual.arg(0));
      expect_sort(rec(qual.arg(1)), a, qual);
      return BaseType::boolean();
    }
    case QOp::Le:
    case QOp::Lt:
      expect_sort(rec(qual.arg(0)), BaseType::integer(), qual);
      expect_sort(rec(qual.arg(1)), BaseType::integer(), qual);
      return BaseType::boolean();
    case QOp::Add:
    case QOp::Sub:
      expect_sort(rec(qual.arg(0)), BaseType::integer(), qual);
      expect_sort(rec(qual.arg(1)), BaseType::integer(), qual);
      return BaseType::integer();
    case QOp::Not:
      expect_sort(rec(qual.arg(0)), BaseType::boolean(), qual);
      return BaseType::boolean();
    case QOp::And:
    case QOp::Or:
    case QOp::Implies:
    case QOp::Iff:
      expect_sort(rec(qual.arg(0)), BaseType::boolean(), qual);
      expect_sort(rec(qual.arg(1)), BaseType::boolean(), qual);
      return BaseType::boolean();
    case QOp::Even:
    case QOp::Odd:
      expect_sort(rec(qual.arg(0)), BaseType::integer(), qual);
      return BaseType::boolean();
    case QOp::Fst:
    case QOp::Snd: {
      BaseType p = rec(qual.arg(0));
      if (!p.is_prod())
        throw SortError("`" + op_symbol(qual.op()) + "` applied to non-pair sort " +
                        p.to_string() + " in `" + to_string(qual) + "`");
      return qual.op() == QOp::Fst ? p.left() : p.right();
    }
    case QOp::Forall:
    case QOp::Exists: {
      SortEnv inner = env;
      inner[qual.name()] = qual.bound_sort();
      expect_sort(sort_of(qual.arg(0), inner, nu_sort), BaseType::boolean(), qual);
      expect_sort(sort_of(qual.arg(1), inner, nu_sort), BaseType::boolean(), qual);
      return BaseType::boolean();
    }
  }
  throw SortError("unknown qualifier form");
}

void check_formula(const Qualifier& qual, const SortEnv& env,
                   const std::optional<BaseType>& nu_sort) {
  BaseType s = sort_of(qual, env, nu_sort);
  if (s != BaseType::boolean())
    throw SortError("qualifier `" + to_string(qual) + "` has sort " + s.to_string() +
                    ", expected bool");
}

// ---------------------------------------------------------------------------
// Free names and substitution

namespace {

void collect_free(const Qualifier& qual, std::set<std::string>& bound, std::set<std::string>& out) {
  if (qual.op() == QOp::Var) {
    if (!bound.count(qual.name())) out.insert(qual.name());
    return;
  }
  if (qual.is_quantifier()) {
    bool fresh = bound.insert(qual.name()).second;
    for (const auto& a : qual.args()) collect_free(a, bound, out);
    if (fresh) bound.erase(qual.name());
    return;
  }
  for (const auto& a : qual.args()) collect_free(a, bound, out);
}

std::string fresh_binder(const std::string& base, const std::set<std::string>& avoid) {
  for (int i = 1;; ++i) {
    std::string cand = base + "'" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

// `target` empty means ν.
Qualifier subst_impl(const Qualifier& qual, const std::string* target, const Qualifier& repl,
                     const std::set<std::string>& repl_free) {
  switch (qual.op()) {
    case QOp::Nu:
      return target ? qual : repl;
    case QOp::Var:
      return (target && qual.name() == *target) ? repl : qual;
    case QOp::True:
    case QOp::False:
    case QOp::IntLit:
      return qual;
    case QOp::Forall:
    case QOp::Exists: {
      if (target && qual.name() == *target) return qual;
      std::string binder = qual.name();
      Qualifier bound = qual.arg(0);
      Qualifier body = qual.arg(1);
      if (repl_free.count(binder)) {
        std::set<std::string> avoid = repl_free;
        auto fb = free_names(bound);
        auto fy = free_names(body);
        avoid.insert(fb.begin(), fb.end());
        avoid.insert(fy.begin(), fy.end());
        if (target) avoid.insert(*target);
        std::string renamed = fresh_binder(binder, avoid);
        bound = subst(bound, binder, q::var(renamed));
        body = subst(body, binder, q::var(renamed));
        binder = renamed;
      }
      return Qualifier::make(qual.op(),
                             {subst_impl(bound, target, repl, repl_free),
                              subst_impl(body, target, repl, repl_free)},
                             binder, 0, qual.bound_sort());
    }
    default: {
      std::vector<Qualifier> args;
      args.reserve(qual.arity());
      for (const auto& a : qual.args()) args.push_back(subst_impl(a, target, repl, repl_free));
      return Qualifier::make(qual.op(), std::move(args), qual.name(), qual.value(),
                             qual.bound_sort());
    }
  }
}

}  // namespace

std::set<std::string> free_names(const Qualifier& qual) {
  std::set<std::string> bound, out;
  collect_free(qual, bound, out);
  return out;
}

bool mentions(const Qualifier& qual, const std::string& name) {
  return free_names(qual).count(name) > 0;
}

bool mentions_nu(const Qualifier& qual) {
  if (qual.op() == QOp::Nu) return true;
  return std::any_of(qual.args().begin(), qual.args().end(),
                     [](const Qualifier& a) { return mentions_nu(a); });
}

Qualifier subst(const Qualifier& qual, const std::string& name, const Qualifier& replacement) {
  return subst_impl(qual, &name, replacement, free_names(replacement));
}

Qualifier subst_nu(const Qualifier& qual, const Qualifier& replacement) {
  return subst_impl(qual, nullptr, replacement, free_names(replacement));
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

std::int64_t checked(std::int64_t a, std::int64_t b, bool add) {
  std::int64_t out;
  bool overflow = add ? __builtin_add_overflow(a, b, &out) : __builtin_sub_overflow(a, b, &out);
  if (overflow) throw EvalError("integer overflow in qualifier arithmetic");
  return out;
}

}  // namespace

SemanticValue eval_term(const Qualifier& qual, const Valuation& valuation, const SemanticValue* nu,
                        std::int64_t window) {
  const auto rec = [&](const Qualifier& sub) { return eval_term(sub, valuation, nu, window); };
  const auto b = [](bool x) { return SemanticValue::boolean(x); };
  switch (qual.op()) {
    case QOp::True:
      return b(true);
    case QOp::False:
      return b(false);
    case QOp::Nu:
      if (!nu) throw ScopeError("the value variable v is not bound during evaluation");
      return *nu;
    case QOp::Var: {
      auto it = valuation.find(qual.name());
      if (it == valuation.end()) throw ScopeError("no value for `" + qual.name() + "`");
      return it->second;
    }
    case QOp::IntLit:
      return SemanticValue::integer(qual.value());
    case QOp::Eq:
      return b(rec(qual.arg(0)) == rec(qual.arg(1)));
    case QOp::Le:
      return b(rec(qual.arg(0)).as_int() <= rec(qual.arg(1)).as_int());
    case QOp::Lt:
      return b(rec(qual.arg(0)).as_int() < rec(qual.arg(1)).as_int());
    case QOp::Add:
      return SemanticValue::integer(checked(rec(qual.arg(0)).as_int(), rec(qual.arg(1)).as_int(), true));
    case QOp::Sub:
      return SemanticValue::integer(checked(rec(qual.arg(0)).as_int(), rec(qual.arg(1)).as_int(), false));
    case QOp::Not:
      return b(!rec(qual.arg(0)).as_bool());
    case QOp::And:
      return b(rec(qual.arg(0)).as_bool() && rec(qual.arg(1)).as_bool());
    case QOp::Or:
      return b(rec(qual.arg(0)).as_bool() || rec(qual.arg(1)).as_bool());
    case QOp::Implies:
      return b(!rec(qual.arg(0)).as_bool() || rec(qual.arg(1)).as_bool());
    case QOp::Iff:
      return b(rec(qual.arg(0)).as_bool() == rec(qual.arg(1)).as_bool());
    case QOp::Even:
      return b(rec(qual.arg(0)).as_int() % 2 == 0);
    case QOp::Odd:
      return b(rec(qual.arg(0)).as_int() % 2 != 0);
    case QOp::Fst:
      return rec(qual.arg(0)).first();
    case QOp::Snd:
      return rec(qual.arg(0)).second();
    case QOp::Forall:
    case QOp::Exists: {
      if (window <= 0) throw EvalError("quantified qualifier evaluated without a window");
      const bool universal = qual.op() == QOp::Forall;
      Valuation inner = valuation;
      for (const auto& v : window_domain(qual.bound_sort(), window)) {
        inner[qual.name()] = v;
        bool in_bound = eval_term(qual.arg(0), inner, nu, window).as_bool();
        if (!in_bound) continue;
        bool body = eval_term(qual.arg(1), inner, nu, window).as_bool();
        if (universal && !body) return b(false);
        if (!universal && body) return b(true);
      }
      return b(universal);
    }
  }
  throw EvalError("unknown qualifier form");
}

bool eval(const Qualifier& qual, const Valuation& valuation, const SemanticValue& nu,
          std::int64_t window) {
  return eval_term(qual, valuation, &nu, window).as_bool();
}

bool eval(const Qualifier& qual, const Valuation& valuation, std::int64_t window) {
  return eval_term(qual, valuation, nullptr, window).as_bool();
}

std::int64_t max_abs_literal(const Qualifier& qual) {
  std::int64_t best = 0;
  if (qual.op() == QOp::IntLit) {
    // |INT64_MIN| is not representable; saturate.
    best = qual.value() == INT64_MIN ? INT64_MAX : (qual.value() < 0 ? -qual.value() : qual.value());
  }
  for (const auto& a : qual.args()) best = std::max(best, max_abs_literal(a));
  return best;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(QOp op) {
  switch (op) {
    case QOp::Implies: return 1;
    case QOp::Iff: return 2;
    case QOp::Or: return 3;
    case QOp::And: return 4;
    case QOp::Not: return 5;
    case QOp::Eq:
    case QOp::Le:
    case QOp::Lt: return 6;
    case QOp::Add:
    case QOp::Sub: return 7;
    default: return 9;
  }
}

std::string print(const Qualifier& qual, int context);

std::string print(const Qualifier& qual, int context) {
  const int mine = precedence(qual.op());
  std::string s;
  switch (qual.op()) {
    case QOp::True: return "true";
    case QOp::False: return "false";
    case QOp::Nu: return "v";
    case QOp::Var: return qual.name();
    case QOp::IntLit:
      s = std::to_string(qual.value());
      return (qual.value() < 0 && context >= 7) ? "(" + s + ")" : s;
    case QOp::Even:
    case QOp::Odd:
    case QOp::Fst:
    case QOp::Snd:
      return op_symbol(qual.op()) + "(" + print(qual.arg(0), 0) + ")";
    case QOp::Not:
      s = "!" + print(qual.arg(0), mine);
      break;
    case QOp::Implies:
      // right associative
      s = print(qual.arg(0), mine + 1) + " ==> " + print(qual.arg(1), mine);
      break;
    case QOp::Eq:
    case QOp::Le:
    case QOp::Lt:
      // non-associative
      s = print(qual.arg(0), mine + 1) + " " + op_symbol(qual.op()) + " " +
          print(qual.arg(1), mine + 1);
      break;
    case QOp::Iff:
    case QOp::Or:
    case QOp::And:
    case QOp::Add:
    case QOp::Sub:
      // left associative
      s = print(qual.arg(0), mine) + " " + op_symbol(qual.op()) + " " +
          print(qual.arg(1), mine + 1);
      break;
    case QOp::Forall:
    case QOp::Exists:
      return std::string("(") + (qual.op() == QOp::Forall ? "forall" : "exists") + " (" +
             qual.name() + ":" + qual.bound_sort().to_string() + " | " +
             print(qual.arg(0), 0) + "). " + print(qual.arg(1), 0) + ")";
  }
  return mine < context ? "(" + s + ")" : s;
}

}  // namespace

std::string to_string(const Qualifier& qual) { return print(qual, 0); }

}  // namespace covtypes

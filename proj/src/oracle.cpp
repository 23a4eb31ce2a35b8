#include "covtypes/oracle.hpp"

#include <algorithm>
#include <optional>

#include "covtypes/basic_typing.hpp"
#include "covtypes/builtins.hpp"
#include "covtypes/error.hpp"

namespace covtypes {

const char* to_string(Membership m) {
  switch (m) {
    case Membership::Member: return "member";
    case Membership::NonMember: return "nonmember";
    case Membership::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

CorePtr val(Value v) {
  CoreTerm t{CoreTerm::Kind::Val};
  t.value = std::move(v);
  return CoreTerm::make(std::move(t));
}

CorePtr let_term(std::string name, CorePtr bound, CorePtr body) {
  CoreTerm t{CoreTerm::Kind::LetTerm};
  t.name = std::move(name);
  t.bound = std::move(bound);
  t.body = std::move(body);
  return CoreTerm::make(std::move(t));
}

CorePtr assume(const BaseType& b, Qualifier q) {
  CoreTerm ret{CoreTerm::Kind::Val};
  ret.value = Value::var("%g");
  CoreTerm t{CoreTerm::Kind::LetAssume};
  t.name = "%g";
  t.type = RType::cover(b, std::move(q));
  t.body = CoreTerm::make(std::move(ret));
  return CoreTerm::make(std::move(t));
}

// let %f = fn in let %a = arg in let %r = %f %a in %r
CorePtr apply_to(const CorePtr& fn, const CorePtr& arg) {
  CoreTerm app{CoreTerm::Kind::LetApp};
  app.name = "%r";
  app.value = Value::var("%f");
  app.arg = Value::var("%a");
  app.body = val(Value::var("%r"));
  return let_term("%f", fn, let_term("%a", arg, CoreTerm::make(std::move(app))));
}

// Binds the names of `sigma` that `q` mentions around `body`.
CorePtr close_over(const Qualifier& q, const Valuation& sigma, CorePtr body) {
  for (const auto& n : free_names(q)) {
    auto it = sigma.find(n);
    if (it != sigma.end()) body = let_term(n, val(Value::constant_of(it->second)), body);
  }
  return body;
}

bool in_window(const SemanticValue& v, std::int64_t w) {
  if (v.is_int()) return v.as_int() >= -w && v.as_int() <= w;
  if (v.is_pair()) return in_window(v.first(), w) && in_window(v.second(), w);
  return true;
}

bool holds(const Qualifier& q, const Valuation& sigma, const SemanticValue& v) {
  try {
    return eval(q, sigma, v);
  } catch (const EvalError&) {
    return false;
  }
}

MemberResult non_member(std::string detail) { return {Membership::NonMember, std::move(detail)}; }
MemberResult inconclusive(std::string detail) { return {Membership::Inconclusive, std::move(detail)}; }

struct Run {
  std::optional<OutcomeSet> set;
  MemberResult failure;
};

Run run(const CorePtr& e, const OracleOptions& opts) {
  EvalOptions eo;
  eo.window = opts.window;
  eo.assert_unit_payload = opts.assert_unit_payload;
  eo.strategy = opts.strategy;
  try {
    return {outcomes(e, eo), {}};
  } catch (const EvalError& err) {
    std::string what = err.what();
    if (what.find("budget") != std::string::npos) return {std::nullopt, inconclusive(what)};
    return {std::nullopt, non_member("evaluation error: " + what)};
  } catch (const CovError& err) {
    return {std::nullopt, non_member(err.what())};
  }
}

// Combines instance results: any non-member wins, then any inconclusive.
struct Fold {
  std::optional<MemberResult> bad;
  std::optional<MemberResult> unknown;

  void add(const MemberResult& r, const std::string& where) {
    if (r.membership == Membership::NonMember && !bad) bad = non_member(where + r.detail);
    if (r.membership == Membership::Inconclusive && !unknown) unknown = inconclusive(where + r.detail);
  }
  MemberResult result() const {
    if (bad) return *bad;
    if (unknown) return *unknown;
    return {};
  }
};

std::optional<SimpleType> simple_type_of(const CorePtr& t) {
  try {
    return basic_type(t, SimpleEnv{});
  } catch (const CovError&) {
    return std::nullopt;
  }
}

// Function terms of simple type `want` that belong to `dom`.
std::vector<CorePtr> function_candidates(const RType& dom, const OracleOptions& opts, const Valuation& sigma) {
  SimpleType want = erase(dom);
  std::vector<CorePtr> pool;
  for (const auto& b : builtins()) {
    std::optional<BaseType> first;
    if (want.is_arrow() && !want.dom().is_arrow()) first = want.dom().base_type();
    auto t = builtin_type(b, first);
    if (t && erase(*t) == want) pool.push_back(val(Value::var(b.name)));
  }
  for (const auto& [name, term] : opts.function_probes) {
    auto t = simple_type_of(term);
    if (t && *t == want) pool.push_back(term);
  }
  std::vector<CorePtr> out;
  for (const auto& c : pool)
    if (member_type(c, dom, opts, sigma).member()) out.push_back(c);
  return out;
}

std::string show(const SemanticValue& v) { return v.to_string(); }

}  // namespace

std::vector<SemanticValue> window_values(const Qualifier& q, const BaseType& b, const Valuation& sigma,
                                         std::int64_t window) {
  std::vector<SemanticValue> out;
  for (const auto& v : window_domain(b, window))
    if (holds(q, sigma, v)) out.push_back(v);
  return out;
}

std::vector<CorePtr> probe_generators(const Qualifier& q, const BaseType& b, const Valuation& sigma,
                                      std::int64_t window) {
  std::vector<CorePtr> out{close_over(q, sigma, assume(b, q))};
  std::vector<SemanticValue> missing;
  for (const auto& v : window_domain(b, window))
    if (!holds(q, sigma, v)) missing.push_back(v);
  if (missing.empty()) return out;
  out.push_back(close_over(q, sigma, assume(b, q::or_(q, q::equals_value(q::nu(), missing.front())))));
  if (missing.size() > 1)
    out.push_back(close_over(q, sigma, assume(b, q::or_(q, q::equals_value(q::nu(), missing.back())))));
  if (missing.size() > 2) out.push_back(assume(b, q::tt()));
  return out;
}

MemberResult member_type(const CorePtr& e, const RType& tau, const OracleOptions& opts, const Valuation& sigma) {
  if (max_abs_literal(tau) > opts.window)
    return inconclusive("window-insufficient: " + tau.to_string() + " mentions a literal beyond the window");
  switch (tau.kind()) {
    case RType::Kind::Cover: {
      Run r = run(e, opts);
      if (!r.set) return r.failure;
      for (const auto& v : window_values(tau.qual(), tau.base(), sigma, opts.window))
        if (!r.set->contains(v)) return non_member("value " + show(v) + " is not reachable");
      return {};
    }
    case RType::Kind::Over: {
      Run r = run(e, opts);
      if (!r.set) return r.failure;
      for (const auto& v : r.set->values)
        if (in_window(v, opts.window) && !holds(tau.qual(), sigma, v))
          return non_member("outcome " + show(v) + " violates " + to_string(tau.qual()));
      return {};
    }
    case RType::Kind::OverArrow: {
      auto vals = window_values(tau.dom().qual(), tau.dom().base(), sigma, opts.window);
      std::vector<MemberResult> res(vals.size());
#pragma omp parallel for schedule(dynamic, 1)
      for (std::size_t i = 0; i < vals.size(); ++i) {
        Valuation inner = sigma;
        inner[tau.param()] = vals[i];
        try {
          res[i] = member_type(apply_to(e, val(Value::constant_of(vals[i]))), tau.cod(), opts, inner);
        } catch (const std::exception& ex) {
          res[i] = inconclusive(ex.what());
        }
      }
      Fold f;
      for (std::size_t i = 0; i < vals.size(); ++i) f.add(res[i], tau.param() + "=" + show(vals[i]) + ": ");
      return f.result();
    }
    case RType::Kind::UnderArrow: {
      auto probes = probe_generators(tau.dom().qual(), tau.dom().base(), sigma, opts.window);
      Fold f;
      for (std::size_t i = 0; i < probes.size(); ++i)
        f.add(member_type(apply_to(e, probes[i]), tau.cod(), opts, sigma), "probe " + std::to_string(i) + ": ");
      return f.result();
    }
    case RType::Kind::HoArrow: {
      Fold f;
      auto cands = function_candidates(tau.dom(), opts, sigma);
      for (std::size_t i = 0; i < cands.size(); ++i)
        f.add(member_type(apply_to(e, cands[i]), tau.cod(), opts, sigma), "function probe " + std::to_string(i) + ": ");
      return f.result();
    }
  }
  return inconclusive("unknown type form");
}

namespace {

struct CtxWalk {
  const CorePtr& e;
  const RType& tau;
  const Context& ctx;
  const OracleOptions& opts;
  std::set<std::string> by_value;  // coverage names the goal mentions: enumerated like over bindings
  Fold fold;

  void go(std::size_t i, std::vector<std::pair<std::string, CorePtr>>& lets, Valuation& sigma) {
    if (fold.bad) return;
    if (i == ctx.size()) {
      CorePtr t = e;
      for (auto it = lets.rbegin(); it != lets.rend(); ++it) t = let_term(it->first, it->second, t);
      fold.add(member_type(t, tau, opts, sigma), "");
      return;
    }
    const Binding& b = ctx[i];
    Qualifier q = b.is_base() ? b.type.qual() : q::tt();
    if (b.guard) q = q::and_(q, *b.guard);
    bool closed = true;
    for (const auto& n : free_names(q))
      if (!sigma.count(n)) closed = false;
    const auto with = [&](CorePtr bound, const std::optional<SemanticValue>& v) {
      lets.emplace_back(b.name, std::move(bound));
      if (v) sigma[b.name] = *v;
      go(i + 1, lets, sigma);
      if (v) sigma.erase(b.name);
      lets.pop_back();
    };
    if (b.kind == Binding::Kind::Fun) {
      for (const auto& c : function_candidates(b.type, opts, sigma)) with(c, std::nullopt);
      return;
    }
    if (b.kind == Binding::Kind::Over || by_value.count(b.name)) {
      for (const auto& v : window_domain(b.type.base(), opts.window))
        if (!closed || holds(q, sigma, v)) with(val(Value::constant_of(v)), v);
      return;
    }
    if (closed) {
      for (auto& g : probe_generators(q, b.type.base(), sigma, opts.window)) with(g, std::nullopt);
    } else {
      with(assume(b.type.base(), q), std::nullopt);
      with(assume(b.type.base(), q::tt()), std::nullopt);
    }
  }
};

}  // namespace

MemberResult member_ctx(const CorePtr& e, const RType& tau, const Context& ctx, const OracleOptions& opts) {
  CtxWalk w{e, tau, ctx, opts, free_names(tau), {}};
  std::vector<std::pair<std::string, CorePtr>> lets;
  Valuation sigma;
  w.go(0, lets, sigma);
  return w.fold.result();
}

std::vector<std::pair<std::string, CorePtr>> top_level_functions(const CoreProgram& p) {
  std::vector<CorePtr> chain;
  for (CorePtr t = p.term; t; t = t->body) {
    bool top = std::find(p.top_level.begin(), p.top_level.end(), t->name) != p.top_level.end();
    bool binder = t->kind == CoreTerm::Kind::LetTerm || t->kind == CoreTerm::Kind::LetApp ||
                  t->kind == CoreTerm::Kind::LetAssume;
    if (!top || !binder) break;
    chain.push_back(t);
  }
  std::vector<std::pair<std::string, CorePtr>> out;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (chain[k]->kind != CoreTerm::Kind::LetTerm) continue;
    CorePtr body = val(Value::var(chain[k]->name));
    for (std::size_t j = k + 1; j-- > 0;) {
      CoreTerm c = *chain[j];
      c.body = body;
      body = CoreTerm::make(std::move(c));
    }
    auto t = simple_type_of(body);
    if (t && t->is_arrow()) out.emplace_back(chain[k]->name, body);
  }
  return out;
}

namespace {

// Argument tuples along an arrow goal; collects, over all tuples, the
// window values the result qualifier allows and the values actually reached.
struct Corollary {
  const OracleOptions& opts;
  std::set<SemanticValue> allowed, reached;
  bool applicable = true;
  std::string failure;

  void go(const CorePtr& e, const RType& tau, Valuation& sigma) {
    if (!applicable) return;
    switch (tau.kind()) {
      case RType::Kind::Cover: {
        for (const auto& v : window_values(tau.qual(), tau.base(), sigma, opts.window)) allowed.insert(v);
        Run r = run(e, opts);
        if (!r.set) {
          failure = r.failure.detail;
          return;
        }
        reached.insert(r.set->values.begin(), r.set->values.end());
        return;
      }
      case RType::Kind::OverArrow:
        for (const auto& v : window_values(tau.dom().qual(), tau.dom().base(), sigma, opts.window)) {
          sigma[tau.param()] = v;
          go(apply_to(e, val(Value::constant_of(v))), tau.cod(), sigma);
          sigma.erase(tau.param());
        }
        return;
      case RType::Kind::UnderArrow:
        go(apply_to(e, probe_generators(tau.dom().qual(), tau.dom().base(), sigma, opts.window).front()), tau.cod(),
           sigma);
        return;
      default:
        applicable = false;
    }
  }
};

}  // namespace

FundamentalReport fundamental_check(const CoreProgram& p, const CheckResult& checked, const OracleOptions& opts) {
  FundamentalReport r;
  r.checker = checked.outcome == CheckResult::Outcome::Accepted   ? "ok"
              : checked.outcome == CheckResult::Outcome::Rejected ? "err"
                                                                  : "inconclusive";
  OracleOptions o = opts;
  if (o.function_probes.empty()) o.function_probes = top_level_functions(p);

  MemberResult m;
  try {
    basic_check(p, o.assert_unit_payload);
    m = member_type(p.term, p.goal, o);
  } catch (const CovError& e) {
    m = non_member(std::string("not basically typed: ") + e.what());
  }
  r.oracle = to_string(m.membership);
  r.detail = m.detail;

  r.corollary = "n/a";
  if (p.goal.is_arrow() && m.membership != Membership::Inconclusive && r.oracle != "nonmember") {
    Corollary c{o, {}, {}, true, {}};
    Valuation sigma;
    c.go(p.term, p.goal, sigma);
    if (c.applicable && c.failure.empty()) {
      r.corollary = "holds";
      for (const auto& v : c.allowed) {
        if (!c.reached.count(v)) {
          r.corollary = "fails";
          if (r.detail.empty()) r.detail = "no argument tuple reaches " + v.to_string();
          break;
        }
      }
    }
  }

  if (r.checker == "inconclusive" || m.membership == Membership::Inconclusive) r.verdict = "inconclusive";
  else if (r.checker == "ok" && (!m.member() || r.corollary == "fails")) r.verdict = "SOUNDNESS-BUG";
  else if (r.checker == "err" && m.member()) r.verdict = "incomplete";
  else r.verdict = "consistent";
  return r;
}

}  // namespace covtypes

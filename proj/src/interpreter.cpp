#include "covtypes/interpreter.hpp"

#include "covtypes/error.hpp"

namespace covtypes {

RtEnv RtEnv::extend(std::string name, RtValue value) const {
  RtEnv out;
  out.head_ = std::make_shared<const Node>(Node{std::move(name), std::move(value), head_});
  return out;
}

const RtValue* RtEnv::lookup(const std::string& name) const {
  for (const Node* n = head_.get(); n; n = n->next.get())
    if (n->name == name) return &n->value;
  return nullptr;
}

std::string OutcomeSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& v : values) {
    if (!first) out += ", ";
    first = false;
    out += v.to_string();
  }
  return out + "}";
}

namespace {

using Sink = std::function<void(const RtValue&)>;

class Evaluator {
 public:
  explicit Evaluator(const EvalOptions& opts) : opts_(opts) {}

  std::vector<RtValue> run(const CorePtr& t, const RtEnv& env) {
    if (opts_.strategy == Strategy::BreadthFirst) return bfs(t, env);
    std::vector<RtValue> out;
    dfs(t, env, [&](const RtValue& v) { out.push_back(v); });
    return out;
  }

 private:
  void tick() {
    if (++steps_ > opts_.step_budget) throw EvalError("exploration budget exceeded");
  }

  RtValue value(const Value& v, const RtEnv& env, SourcePos pos) const {
    switch (v.kind) {
      case Value::Kind::Const:
        return v.constant;
      case Value::Kind::Var: {
        if (const RtValue* r = env.lookup(v.name)) return *r;
        if (const Builtin* b = find_builtin(v.name)) {
          auto c = std::make_shared<Closure>();
          c->builtin = b;
          return std::shared_ptr<const Closure>(c);
        }
        throw ScopeError("unbound identifier `" + v.name + "` at run time", pos);
      }
      case Value::Kind::Pair:
        return SemanticValue::pair(base(value(*v.first, env, pos), pos), base(value(*v.second, env, pos), pos));
      case Value::Kind::Lambda: {
        auto c = std::make_shared<Closure>();
        c->param = v.name;
        c->body = v.body;
        c->env = env;
        return std::shared_ptr<const Closure>(c);
      }
    }
    throw EvalError("unknown value form", pos);
  }

  static SemanticValue base(const RtValue& v, SourcePos pos) {
    if (const auto* s = std::get_if<SemanticValue>(&v)) return *s;
    throw EvalError("expected a base value, got a function", pos);
  }

  static Valuation valuation(const Qualifier& q, const RtEnv& env, SourcePos pos) {
    Valuation out;
    for (const auto& n : free_names(q)) {
      const RtValue* r = env.lookup(n);
      if (!r) throw ScopeError("qualifier mentions `" + n + "`, which has no value", pos);
      out[n] = base(*r, pos);
    }
    return out;
  }

  std::vector<SemanticValue> assume_values(const CoreTerm& t, const RtEnv& env) const {
    Valuation sigma = valuation(t.type.qual(), env, t.pos);
    std::vector<SemanticValue> out;
    for (const auto& v : window_domain(t.type.base(), opts_.window))
      if (eval(t.type.qual(), sigma, v)) out.push_back(v);
    return out;
  }

  SemanticValue assert_result(const CoreTerm& t, const RtEnv& env) const {
    SemanticValue v = base(value(t.value, env, t.pos), t.pos);
    bool ok = eval(t.type.qual(), valuation(t.type.qual(), env, t.pos), v);
    return SemanticValue::pair(SemanticValue::boolean(ok), opts_.assert_unit_payload ? SemanticValue::unit() : v);
  }

  bool condition(const CoreTerm& t, const RtEnv& env) const {
    const SemanticValue c = base(value(t.value, env, t.pos), t.pos);
    if (!c.is_bool()) throw EvalError("if condition is not a boolean: " + c.to_string(), t.pos);
    return c.as_bool();
  }

  // Calls `each` for every result of applying `f` to `a`, with `lambda_body`
  // deciding how a lambda body is explored.
  template <class Each, class Body>
  void apply(const RtValue& f, const RtValue& a, SourcePos pos, Each&& each, Body&& lambda_body) {
    const auto* cp = std::get_if<std::shared_ptr<const Closure>>(&f);
    if (!cp) throw EvalError("applying a non-function value " + std::get<SemanticValue>(f).to_string(), pos);
    const Closure& c = **cp;
    if (!c.builtin) {
      lambda_body(c.body, c.env.extend(c.param, a));
      return;
    }
    std::vector<SemanticValue> args = c.args;
    args.push_back(base(a, pos));
    if (static_cast<int>(args.size()) < c.builtin->arity) {
      auto next = std::make_shared<Closure>(c);
      next->args = std::move(args);
      each(RtValue(std::shared_ptr<const Closure>(next)));
      return;
    }
    std::vector<SemanticValue> results;
    try {
      results = c.builtin->apply(args, opts_.window);
    } catch (const EvalError& e) {
      throw EvalError(e.what(), pos);
    } catch (const SortError& e) {
      throw EvalError(std::string("builtin `") + c.builtin->name + "`: " + e.what(), pos);
    }
    for (const auto& r : results) each(RtValue(r));
  }

  // ---- depth first
  void dfs(const CorePtr& t, const RtEnv& env, const Sink& k) {
    tick();
    switch (t->kind) {
      case CoreTerm::Kind::Val:
        k(value(t->value, env, t->pos));
        return;
      case CoreTerm::Kind::LetApp: {
        RtValue f = value(t->value, env, t->pos);
        RtValue a = value(t->arg, env, t->pos);
        const Sink cont = [&](const RtValue& r) { dfs(t->body, env.extend(t->name, r), k); };
        apply(f, a, t->pos, cont, [&](const CorePtr& body, const RtEnv& benv) { dfs(body, benv, cont); });
        return;
      }
      case CoreTerm::Kind::LetTerm:
        dfs(t->bound, env, [&](const RtValue& r) { dfs(t->body, env.extend(t->name, r), k); });
        return;
      case CoreTerm::Kind::LetPair: {
        const SemanticValue p = base(value(t->value, env, t->pos), t->pos);
        if (!p.is_pair()) throw EvalError("destructuring a non-pair " + p.to_string(), t->pos);
        dfs(t->body, env.extend(t->name, p.first()).extend(t->name2, p.second()), k);
        return;
      }
      case CoreTerm::Kind::If:
        dfs(condition(*t, env) ? t->body : t->other, env, k);
        return;
      case CoreTerm::Kind::LetAssume:
        for (const auto& v : assume_values(*t, env)) dfs(t->body, env.extend(t->name, v), k);
        return;
      case CoreTerm::Kind::Assert:
        k(assert_result(*t, env));
        return;
    }
  }

  // ---- breadth first
  static void add_unique(std::vector<RtValue>& out, std::set<SemanticValue>& seen, const RtValue& v) {
    if (const auto* s = std::get_if<SemanticValue>(&v)) {
      if (!seen.insert(*s).second) return;
    }
    out.push_back(v);
  }

  std::vector<RtValue> bfs(const CorePtr& t, const RtEnv& env) {
    tick();
    std::vector<RtValue> out;
    std::set<SemanticValue> seen;
    const auto continue_with = [&](const std::vector<RtValue>& level, const std::string& name) {
      for (const auto& r : level)
        for (const auto& v : bfs(t->body, env.extend(name, r))) add_unique(out, seen, v);
    };
    switch (t->kind) {
      case CoreTerm::Kind::Val:
        out.push_back(value(t->value, env, t->pos));
        return out;
      case CoreTerm::Kind::LetApp: {
        RtValue f = value(t->value, env, t->pos);
        RtValue a = value(t->arg, env, t->pos);
        std::vector<RtValue> level;
        std::set<SemanticValue> level_seen;
        apply(
            f, a, t->pos, [&](const RtValue& r) { add_unique(level, level_seen, r); },
            [&](const CorePtr& body, const RtEnv& benv) {
              for (const auto& r : bfs(body, benv)) add_unique(level, level_seen, r);
            });
        continue_with(level, t->name);
        return out;
      }
      case CoreTerm::Kind::LetTerm:
        continue_with(bfs(t->bound, env), t->name);
        return out;
      case CoreTerm::Kind::LetPair: {
        const SemanticValue p = base(value(t->value, env, t->pos), t->pos);
        if (!p.is_pair()) throw EvalError("destructuring a non-pair " + p.to_string(), t->pos);
        return bfs(t->body, env.extend(t->name, p.first()).extend(t->name2, p.second()));
      }
      case CoreTerm::Kind::If:
        return bfs(condition(*t, env) ? t->body : t->other, env);
      case CoreTerm::Kind::LetAssume: {
        std::vector<RtValue> level;
        for (const auto& v : assume_values(*t, env)) level.push_back(v);
        continue_with(level, t->name);
        return out;
      }
      case CoreTerm::Kind::Assert:
        out.push_back(assert_result(*t, env));
        return out;
    }
    return out;
  }

  const EvalOptions& opts_;
  std::uint64_t steps_ = 0;
};

}  // namespace

std::vector<RtValue> evaluate(const CorePtr& t, const RtEnv& env, const EvalOptions& opts) {
  Evaluator ev(opts);
  return ev.run(t, env);
}

OutcomeSet outcomes(const CorePtr& t, const RtEnv& env, const EvalOptions& opts) {
  OutcomeSet out;
  for (const auto& r : evaluate(t, env, opts)) {
    const auto* s = std::get_if<SemanticValue>(&r);
    if (!s) throw EvalError("program evaluates to a function; outcome sets hold base values only", t->pos);
    out.values.insert(*s);
  }
  return out;
}

OutcomeSet outcomes(const CorePtr& t, const EvalOptions& opts) { return outcomes(t, RtEnv{}, opts); }

RtEnv builtin_env() {
  RtEnv env;
  for (const auto& b : builtins()) {
    auto c = std::make_shared<Closure>();
    c->builtin = &b;
    env = env.extend(b.name, std::shared_ptr<const Closure>(c));
  }
  return env;
}

CorePtr canonical_generator(const Qualifier& q, const BaseType& b, std::int64_t window) {
  bool any = false;
  for (const auto& v : window_domain(b, window)) {
    if (eval(q, Valuation{}, v)) {
      any = true;
      break;
    }
  }
  if (!any) throw EvalError("canonical_generator: `" + to_string(q) + "` has no value in the window");
  CoreTerm ret{CoreTerm::Kind::Val};
  ret.value = Value::var("_g");
  CoreTerm t{CoreTerm::Kind::LetAssume};
  t.name = "_g";
  t.type = RType::cover(b, q);
  t.body = CoreTerm::make(std::move(ret));
  return CoreTerm::make(std::move(t));
}

}  // namespace covtypes
